"""
Split-step Floquet operator: FFT free evolution composed with a kick.

U psi = kick(F^-1 exp(-i tau H0(k)) F psi) for FreeThenKick and
U psi = F^-1 exp(-i T H0(k)) F kick(psi) for KickThenFree. The DFT pair
is unitary (norm="ortho"), so U is unitary on the discrete L2 space and
roundtrip checks measure only floating-point roundoff.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Union

import numpy as np
from scipy import fft as sp_fft

from ..grid import PeriodicGrid, WaveField
from .kicks import MultiplicativeKick, SubstitutionKick
from .kinetic import KineticSpec, KineticVariant, kinetic_phase

logger = logging.getLogger(__name__)

KickSpec = Union[MultiplicativeKick, SubstitutionKick]


class CompositionOrder(str, Enum):
    KICK_THEN_FREE = "kick_then_free"  # U = U_F U_K
    FREE_THEN_KICK = "free_then_kick"  # U = exp(-iV) exp(-i tau H0)


@dataclass(frozen=True)
class FloquetSpec:
    """Complete description of one kicked system."""

    grid: PeriodicGrid
    kinetic: KineticSpec
    kick: KickSpec
    order: CompositionOrder = CompositionOrder.FREE_THEN_KICK

    def __post_init__(self):
        object.__setattr__(self, "order", CompositionOrder(self.order))
        kinetic_dim = self.kinetic.variant.dimension
        if kinetic_dim is not None and kinetic_dim != self.grid.dim:
            raise ValueError(
                f"Kinetic term {self.kinetic.variant.value} needs a {kinetic_dim}D grid, "
                f"got {self.grid.dim}D"
            )
        if self.kick.dimension != self.grid.dim:
            raise ValueError(
                f"{type(self.kick).__name__} needs a {self.kick.dimension}D grid, "
                f"got {self.grid.dim}D"
            )


class FloquetOperator:
    """
    One-period evolution U and its inverse for a FloquetSpec.

    Phase and permutation tables are built once and never modified. All
    ``*_values`` methods accept arrays with optional leading batch axes.
    """

    def __init__(self, spec: FloquetSpec):
        self.spec = spec
        self.grid = spec.grid
        self.kick = spec.kick.bind(spec.grid)
        if spec.kinetic.variant is KineticVariant.NO_KINETIC:
            self.free_phase = None
            self.free_phase_conj = None
        else:
            self.free_phase = kinetic_phase(spec.kinetic, spec.grid)
            self.free_phase_conj = np.conj(self.free_phase)
            self.free_phase.setflags(write=False)
            self.free_phase_conj.setflags(write=False)
        logger.debug(
            "Built Floquet operator: grid=%s kinetic=%s kick=%s order=%s",
            self.grid, spec.kinetic.variant.value, type(spec.kick).__name__, spec.order.value,
        )

    # -- transforms -------------------------------------------------------

    def forward_transform_values(self, values: np.ndarray) -> np.ndarray:
        return sp_fft.fftn(values, axes=self.grid.axes, norm="ortho")

    def inverse_transform_values(self, values: np.ndarray) -> np.ndarray:
        return sp_fft.ifftn(values, axes=self.grid.axes, norm="ortho")

    # -- factors ----------------------------------------------------------

    def free_values(self, values: np.ndarray) -> np.ndarray:
        if self.free_phase is None:
            return values.copy()
        return self.inverse_transform_values(self.forward_transform_values(values) * self.free_phase)

    def free_inverse_values(self, values: np.ndarray) -> np.ndarray:
        if self.free_phase_conj is None:
            return values.copy()
        return self.inverse_transform_values(
            self.forward_transform_values(values) * self.free_phase_conj
        )

    def step_values(self, values: np.ndarray) -> np.ndarray:
        """One forward Floquet step."""
        if self.spec.order is CompositionOrder.KICK_THEN_FREE:
            return self.free_values(self.kick.apply(values))
        return self.kick.apply(self.free_values(values))

    def step_inverse_values(self, values: np.ndarray) -> np.ndarray:
        """One backward Floquet step: conjugate factors in reverse order."""
        if self.spec.order is CompositionOrder.KICK_THEN_FREE:
            return self.kick.apply_inverse(self.free_inverse_values(values))
        return self.free_inverse_values(self.kick.apply_inverse(values))

    # -- field API --------------------------------------------------------

    def forward_transform(self, f: WaveField) -> WaveField:
        return WaveField(self.grid, self.forward_transform_values(f.values))

    def inverse_transform(self, f: WaveField) -> WaveField:
        return WaveField(self.grid, self.inverse_transform_values(f.values))

    def apply_free(self, f: WaveField) -> WaveField:
        return WaveField(self.grid, self.free_values(f.values))

    def apply_kick(self, f: WaveField) -> WaveField:
        return WaveField(self.grid, self.kick.apply(f.values))

    def apply_kick_inverse(self, f: WaveField) -> WaveField:
        return WaveField(self.grid, self.kick.apply_inverse(f.values))

    def apply_floquet(self, f: WaveField) -> WaveField:
        return WaveField(self.grid, self.step_values(f.values))

    def apply_floquet_inverse(self, f: WaveField) -> WaveField:
        return WaveField(self.grid, self.step_inverse_values(f.values))

    def unitarity_roundtrip_error(self, f: WaveField, n: int) -> float:
        """Max-norm of (U^-n U^n - 1) f."""
        if n < 0:
            raise ValueError(f"n must be >= 0, got {n}")
        values = f.values
        for _ in range(n):
            values = self.step_values(values)
        for _ in range(n):
            values = self.step_inverse_values(values)
        return float(np.max(np.abs(values - f.values)))


@lru_cache(maxsize=16)
def operator_for(spec: FloquetSpec) -> FloquetOperator:
    """Shared operator instance for a spec (tables are built once)."""
    return FloquetOperator(spec)


def forward_transform(f: WaveField) -> WaveField:
    """Unitary DFT of a field (mode k at FFT index k mod N)."""
    return WaveField(f.grid, sp_fft.fftn(f.values, axes=f.grid.axes, norm="ortho"))


def inverse_transform(f: WaveField) -> WaveField:
    """Inverse of forward_transform."""
    return WaveField(f.grid, sp_fft.ifftn(f.values, axes=f.grid.axes, norm="ortho"))


def apply_free(spec: FloquetSpec, f: WaveField) -> WaveField:
    return operator_for(spec).apply_free(f)


def apply_kick(spec: FloquetSpec, f: WaveField) -> WaveField:
    return operator_for(spec).apply_kick(f)


def apply_kick_inverse(spec: FloquetSpec, f: WaveField) -> WaveField:
    return operator_for(spec).apply_kick_inverse(f)


def apply_floquet(spec: FloquetSpec, f: WaveField) -> WaveField:
    return operator_for(spec).apply_floquet(f)


def apply_floquet_inverse(spec: FloquetSpec, f: WaveField) -> WaveField:
    return operator_for(spec).apply_floquet_inverse(f)


def unitarity_roundtrip_error(spec: FloquetSpec, f: WaveField, n: int) -> float:
    return operator_for(spec).unitarity_roundtrip_error(f, n)

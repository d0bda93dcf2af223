"""
Kinetic (free evolution) terms diagonal in the Fourier basis.
"""
from dataclasses import dataclass
from enum import Enum
from typing import Tuple

import numpy as np

from ..grid import PeriodicGrid


class KineticVariant(str, Enum):
    ROTOR_QUADRATIC = "rotor_quadratic"  # H0 = -(1/2pi) d^2/dx^2
    ROTOR_COSINE = "rotor_cosine"        # H0 = -2pi cos((1/2pi i) d/dx)
    CAT_QUADRATIC = "cat_quadratic"      # H0 = p^2 / 2, p = 2pi k
    NO_KINETIC = "none"

    @property
    def dimension(self):
        if self in (KineticVariant.ROTOR_QUADRATIC, KineticVariant.ROTOR_COSINE):
            return 1
        if self is KineticVariant.CAT_QUADRATIC:
            return 2
        return None


@dataclass(frozen=True)
class KineticSpec:
    """
    Free evolution exp(-i time_step H0) between kicks.

    Attributes:
        variant: Which H0 to use
        time_step: tau for rotators, T for the cat (> 0)
    """

    variant: KineticVariant
    time_step: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "variant", KineticVariant(self.variant))
        if not self.time_step > 0:
            raise ValueError(f"time_step must be positive, got {self.time_step}")


def kinetic_eigenvalue(variant: KineticVariant, modes: Tuple[np.ndarray, ...]) -> np.ndarray:
    """H0 evaluated on integer Fourier modes k."""
    variant = KineticVariant(variant)
    if variant is KineticVariant.ROTOR_QUADRATIC:
        (k,) = modes
        return 2.0 * np.pi * k.astype(np.float64) ** 2
    if variant is KineticVariant.ROTOR_COSINE:
        (k,) = modes
        return -2.0 * np.pi * np.cos(k.astype(np.float64))
    if variant is KineticVariant.CAT_QUADRATIC:
        k_squared = sum(k.astype(np.float64) ** 2 for k in modes)
        return 0.5 * (2.0 * np.pi) ** 2 * k_squared
    return np.zeros(modes[0].shape)


def _phase_cycles(spec: KineticSpec, modes: Tuple[np.ndarray, ...]) -> np.ndarray:
    """time_step * H0 / 2pi, arranged so integer parts are exact where possible."""
    tau = spec.time_step
    if spec.variant is KineticVariant.ROTOR_QUADRATIC:
        (k,) = modes
        return tau * k.astype(np.float64) ** 2
    if spec.variant is KineticVariant.CAT_QUADRATIC:
        k_squared = sum(k.astype(np.float64) ** 2 for k in modes)
        return (np.pi * tau) * k_squared
    return tau * kinetic_eigenvalue(spec.variant, modes) / (2.0 * np.pi)


def kinetic_phase(spec: KineticSpec, grid: PeriodicGrid) -> np.ndarray:
    """
    Multipliers exp(-i time_step H0(k)) in FFT mode order.

    The phase is reduced modulo one full turn before exponentiation, so
    resonant steps (e.g. tau = 1 for the quadratic rotor) are exactly 1.
    """
    cycles = _phase_cycles(spec, grid.modes())
    turns = cycles - np.floor(cycles)
    return np.exp(-2j * np.pi * turns)

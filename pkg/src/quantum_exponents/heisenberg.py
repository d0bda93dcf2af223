"""
Heisenberg-evolved observable fields gamma_n(x) = (U^-n X U^n psi0)(x).

Forward states U^n psi0 are cached as they are produced. Each gamma_n is
obtained by n backward steps applied to X U^n psi0; the cached state
U^n psi0 travels along in the same batch so the roundtrip error
|U^-n U^n psi0 - psi0| comes out of the same FFTs.
"""
import logging
from dataclasses import dataclass
from typing import List, NamedTuple, Optional, Tuple

import numpy as np

from .exceptions import UnitarityGuardError
from .floquet import FloquetSpec, operator_for
from .grid import WaveField, flat_state

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ObservableSpec:
    """
    Observable X = amplitude * sin(2 pi l.x), a pointwise multiplication.

    Attributes:
        l: integer wavevector (scalar in 1D, pair in 2D), l != 0
        amplitude: positive constant factor (1 for the standard observable)
    """

    l: Tuple[int, ...]
    amplitude: float = 1.0

    def __post_init__(self):
        components = (self.l,) if np.isscalar(self.l) else tuple(self.l)
        if any(int(c) != c for c in components):
            raise ValueError(f"Observable wavevector {self.l} must have integer components")
        components = tuple(int(c) for c in components)
        if not any(components):
            raise ValueError("Observable wavevector l must be nonzero")
        if not self.amplitude > 0:
            raise ValueError(f"Observable amplitude must be positive, got {self.amplitude}")
        object.__setattr__(self, "l", components)


def observable_profile(obs: ObservableSpec, grid) -> np.ndarray:
    """amplitude * sin(2 pi l.x_j) on the grid, with the phase index reduced mod N."""
    if len(obs.l) != grid.dim:
        raise ValueError(f"Observable {obs.l} does not match grid dimension {grid.dim}")
    phase_index = sum(c * j for c, j in zip(obs.l, grid.indices())) % grid.n_per_axis
    return obs.amplitude * np.sin(2.0 * np.pi * phase_index / grid.n_per_axis)


def apply_observable(obs: ObservableSpec, f: WaveField) -> WaveField:
    """Multiply a field pointwise by the observable."""
    return WaveField(f.grid, f.values * observable_profile(obs, f.grid))


class HeisenbergStep(NamedTuple):
    n: int
    gamma: WaveField
    roundtrip_error: float


class HeisenbergRun:
    """
    Sequential producer of gamma_0 .. gamma_{n_max} for one system.

    Args:
        spec: Floquet system
        observable: X
        psi0: initial state (flat state when omitted)
        n_max: largest step index that may be requested
        unitarity_eps: when set, gamma() raises UnitarityGuardError if the
            roundtrip error at n exceeds it
    """

    def __init__(
        self,
        spec: FloquetSpec,
        observable: ObservableSpec,
        psi0: Optional[WaveField] = None,
        n_max: int = 100,
        unitarity_eps: Optional[float] = None,
    ):
        if n_max < 0:
            raise ValueError(f"n_max must be >= 0, got {n_max}")
        self.spec = spec
        self.grid = spec.grid
        self.observable = observable
        self.psi0 = psi0 if psi0 is not None else flat_state(spec.grid)
        if self.psi0.grid != spec.grid:
            raise ValueError("Initial state grid does not match the Floquet grid")
        self.n_max = n_max
        self.unitarity_eps = unitarity_eps
        self.operator = operator_for(spec)
        self._profile = observable_profile(observable, spec.grid)
        self._states: List[np.ndarray] = [self.psi0.values]

    @property
    def cached_steps(self) -> int:
        return len(self._states) - 1

    def _check(self, n: int) -> None:
        if not 0 <= n <= self.n_max:
            raise ValueError(f"Step {n} outside [0, {self.n_max}]")

    def _state_values(self, n: int) -> np.ndarray:
        while len(self._states) <= n:
            nxt = self.operator.step_values(self._states[-1])
            nxt.setflags(write=False)
            self._states.append(nxt)
        return self._states[n]

    def state(self, n: int) -> WaveField:
        """Forward state U^n psi0 (computed once, then cached)."""
        self._check(n)
        return WaveField(self.grid, self._state_values(n))

    def evolve(self, n: int) -> HeisenbergStep:
        """gamma_n together with the roundtrip error of U^-n U^n psi0."""
        self._check(n)
        forward = self._state_values(n)
        batch = np.stack([forward * self._profile, forward])
        for _ in range(n):
            batch = self.operator.step_inverse_values(batch)
        error = float(np.max(np.abs(batch[1] - self.psi0.values)))
        return HeisenbergStep(n, WaveField(self.grid, batch[0]), error)

    def gamma(self, n: int) -> WaveField:
        """
        Heisenberg field gamma_n.

        Raises:
            UnitarityGuardError: if unitarity_eps is set and violated at n
        """
        step = self.evolve(n)
        if self.unitarity_eps is not None and step.roundtrip_error > self.unitarity_eps:
            raise UnitarityGuardError(
                f"Roundtrip error {step.roundtrip_error:.3e} exceeds epsilon "
                f"{self.unitarity_eps:.3e} at n={n}",
                n=n,
                error=step.roundtrip_error,
                epsilon=self.unitarity_eps,
            )
        return step.gamma


def gamma(run: HeisenbergRun, n: int) -> WaveField:
    return run.gamma(n)

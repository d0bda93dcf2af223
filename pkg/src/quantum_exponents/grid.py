"""
Periodic grids on the circle [0,1) and the torus [0,1)^2.

Fields are sampled at x_j = j/N. Complex fields hold states and Heisenberg
fields; real fields hold derivative samples together with a validity mask
so that excluded points are counted instead of silently dropped.
"""
import logging
from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import fft as sp_fft

from .exceptions import BandLimitError, DegenerateAverageError
from .utils import normalize_direction

logger = logging.getLogger(__name__)

DEFAULT_SATURATION_RATIO = 0.5
DEFAULT_LOG_FLOOR = 1e-12


@dataclass(frozen=True)
class PeriodicGrid:
    """
    Uniform periodic grid on the unit circle (dim=1) or unit torus (dim=2).

    Attributes:
        dim: 1 or 2
        n_per_axis: number of points N along each axis
    """

    dim: int
    n_per_axis: int

    def __post_init__(self):
        if self.dim not in (1, 2):
            raise ValueError(f"Grid dimension must be 1 or 2, got {self.dim}")
        if int(self.n_per_axis) != self.n_per_axis or self.n_per_axis < 2:
            raise ValueError(f"Grid size must be an integer >= 2, got {self.n_per_axis}")

    @property
    def spacing(self) -> float:
        return 1.0 / self.n_per_axis

    @property
    def shape(self) -> Tuple[int, ...]:
        return (self.n_per_axis,) * self.dim

    @property
    def point_count(self) -> int:
        return self.n_per_axis ** self.dim

    @property
    def axes(self) -> Tuple[int, ...]:
        """Trailing array axes that carry the grid (leading axes are batch axes)."""
        return tuple(range(-self.dim, 0))

    @property
    def band(self) -> Tuple[int, int]:
        """Inclusive Fourier mode band [-floor(N/2), ceil(N/2)-1] per axis."""
        n = self.n_per_axis
        return -(n // 2), (n + 1) // 2 - 1

    def indices(self) -> Tuple[np.ndarray, ...]:
        """Integer index arrays j (one per axis, 'ij' indexing)."""
        j = np.arange(self.n_per_axis)
        return tuple(np.meshgrid(*([j] * self.dim), indexing="ij"))

    def coordinates(self) -> Tuple[np.ndarray, ...]:
        """Coordinate arrays x = j/N in [0,1)."""
        return tuple(j / self.n_per_axis for j in self.indices())

    def modes(self) -> Tuple[np.ndarray, ...]:
        """Integer Fourier mode arrays k in FFT order, one per axis."""
        k = np.rint(sp_fft.fftfreq(self.n_per_axis, d=1.0 / self.n_per_axis)).astype(np.int64)
        return tuple(np.meshgrid(*([k] * self.dim), indexing="ij"))


def _frozen(values: np.ndarray) -> np.ndarray:
    values = np.array(values, copy=True)
    values.setflags(write=False)
    return values


@dataclass(frozen=True, eq=False)
class WaveField:
    """Complex field sampled on a periodic grid."""

    grid: PeriodicGrid
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.complex128)
        if values.shape != self.grid.shape:
            raise ValueError(
                f"Field shape {values.shape} does not match grid shape {self.grid.shape}"
            )
        object.__setattr__(self, "values", _frozen(values))


@dataclass(frozen=True, eq=False)
class RealField:
    """Real field with a per-point validity mask."""

    grid: PeriodicGrid
    values: np.ndarray
    valid_mask: Optional[np.ndarray] = field(default=None)

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.float64)
        if values.shape != self.grid.shape:
            raise ValueError(
                f"Field shape {values.shape} does not match grid shape {self.grid.shape}"
            )
        mask = self.valid_mask
        mask = np.ones(values.shape, dtype=bool) if mask is None else np.asarray(mask, dtype=bool)
        if mask.shape != values.shape:
            raise ValueError("valid_mask shape does not match field shape")
        object.__setattr__(self, "values", _frozen(values))
        object.__setattr__(self, "valid_mask", _frozen(mask))

    @property
    def masked_count(self) -> int:
        return int(self.valid_mask.size - np.count_nonzero(self.valid_mask))


class DirectionalDerivative(NamedTuple):
    field: RealField
    saturation_fraction: float
    max_difference_ratio: float


class LogAverage(NamedTuple):
    mean: float
    excluded: int


def flat_state(grid: PeriodicGrid) -> WaveField:
    """Constant state psi = 1 (the p = 0 momentum eigenstate)."""
    return WaveField(grid, np.ones(grid.shape, dtype=np.complex128))


def _as_wavevector(grid: PeriodicGrid, k: Union[int, Sequence[int]]) -> Tuple[int, ...]:
    components = (k,) if np.isscalar(k) else tuple(k)
    if len(components) != grid.dim:
        raise ValueError(f"Wavevector {k} does not match grid dimension {grid.dim}")
    if any(int(c) != c for c in components):
        raise ValueError(f"Wavevector {k} must have integer components")
    return tuple(int(c) for c in components)


def plane_wave(grid: PeriodicGrid, k: Union[int, Sequence[int]]) -> WaveField:
    """Plane wave exp(2 pi i k.x) sampled on the grid."""
    components = _as_wavevector(grid, k)
    low, high = grid.band
    if any(c < low or c > high for c in components):
        raise BandLimitError(
            f"Wavevector {components} outside representable band [{low}, {high}] "
            f"for N={grid.n_per_axis}",
            wavevector=components,
            band=(low, high),
        )
    # exact modular phase index keeps large k accurate
    phase_index = sum(c * j for c, j in zip(components, grid.indices())) % grid.n_per_axis
    return WaveField(grid, np.exp(2j * np.pi * phase_index / grid.n_per_axis))


def l2_norm(f: WaveField) -> float:
    """Discrete L2 norm sqrt(sum |psi_j|^2 / point count)."""
    return float(np.sqrt(np.sum(np.abs(f.values) ** 2) / f.grid.point_count))


def region_mask(grid: PeriodicGrid, bounds: Sequence[Sequence[float]]) -> np.ndarray:
    """
    Boolean mask for the box prod_i [lo_i, hi_i) on the grid.

    Args:
        grid: The periodic grid
        bounds: One (lo, hi) pair per axis with 0 <= lo < hi <= 1
    """
    if len(bounds) != grid.dim:
        raise ValueError(f"Region needs {grid.dim} (lo, hi) pairs, got {len(bounds)}")
    mask = np.ones(grid.shape, dtype=bool)
    for x, (lo, hi) in zip(grid.coordinates(), bounds):
        if not 0.0 <= lo < hi <= 1.0:
            raise ValueError(f"Region bounds ({lo}, {hi}) must satisfy 0 <= lo < hi <= 1")
        mask &= (x >= lo) & (x < hi)
    return mask


def _direction_for(grid: PeriodicGrid, v: Union[float, Sequence[float]]) -> Tuple[float, ...]:
    components = (float(v),) if np.isscalar(v) else tuple(float(c) for c in v)
    if len(components) != grid.dim:
        raise ValueError(f"Direction {v} does not match grid dimension {grid.dim}")
    if grid.dim == 1 and components[0] not in (1.0, -1.0):
        raise ValueError(f"1D direction must be +1 or -1, got {components[0]}")
    return normalize_direction(components)


def directional_derivative(
    f: Union[WaveField, RealField],
    v: Union[float, Sequence[float]],
    saturation_ratio: float = DEFAULT_SATURATION_RATIO,
) -> DirectionalDerivative:
    """
    Central-difference derivative of Re f along the unit direction v.

    The nearest-point difference sum_i v_i (Re f(x + h e_i) - Re f(x - h e_i))
    is compared with the dynamic range max Re f - min Re f; a point is
    saturated when the difference exceeds saturation_ratio times the range.

    Returns:
        DirectionalDerivative(field, saturation_fraction, max_difference_ratio)
    """
    grid = f.grid
    direction = _direction_for(grid, v)
    real = np.real(f.values)
    mask = f.valid_mask if isinstance(f, RealField) else None

    dynamic_range = float(real.max() - real.min())
    if dynamic_range == 0.0:
        return DirectionalDerivative(RealField(grid, np.zeros(grid.shape), mask), 0.0, 0.0)

    difference = np.zeros(grid.shape)
    for component, axis in zip(direction, grid.axes):
        if component != 0.0:
            difference += component * (np.roll(real, -1, axis=axis) - np.roll(real, 1, axis=axis))

    magnitude = np.abs(difference)
    saturation_fraction = float(np.count_nonzero(magnitude > saturation_ratio * dynamic_range)) / grid.point_count
    max_ratio = float(magnitude.max() / dynamic_range)
    derivative = RealField(grid, difference / (2.0 * grid.spacing), mask)
    return DirectionalDerivative(derivative, saturation_fraction, max_ratio)


def log_magnitude(f: RealField, floor: float = DEFAULT_LOG_FLOOR) -> Tuple[np.ndarray, np.ndarray]:
    """
    Pointwise log|f| with the validity mask of points above the floor.

    A point is valid when it is unmasked and |f| > floor * max|f| over the
    unmasked points. Invalid points carry 0.0 in the returned log array.
    """
    magnitude = np.abs(f.values)
    candidates = f.valid_mask
    peak = float(magnitude[candidates].max()) if np.any(candidates) else 0.0
    valid = candidates & (magnitude > floor * peak) & (magnitude > 0.0)
    logs = np.zeros(f.grid.shape)
    logs[valid] = np.log(magnitude[valid])
    return logs, valid


def masked_log_average(f: RealField, floor: float = DEFAULT_LOG_FLOOR) -> LogAverage:
    """
    Mean of log|f| over valid points.

    Raises:
        DegenerateAverageError: if every point is masked or below the floor
    """
    logs, valid = log_magnitude(f, floor)
    count = int(np.count_nonzero(valid))
    excluded = f.grid.point_count - count
    if count == 0:
        raise DegenerateAverageError(
            f"All {excluded} grid points excluded from log-average (floor={floor})",
            excluded=excluded,
        )
    return LogAverage(float(np.mean(logs[valid])), excluded)

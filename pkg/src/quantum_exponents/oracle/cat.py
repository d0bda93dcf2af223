"""
Exact reference results for the configurational quantum cat on the torus.

Everything that grows with n (orbits, their squared norms, projections
onto directions) is kept in Python integers or in Q(sqrt(trace^2 - 4));
floats appear only after phases are reduced modulo one turn.
"""
import logging
import math
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from ..exceptions import InvalidMatrixError
from ..floquet.kicks import IntMatrix, as_int_matrix, integer_inverse
from ..grid import PeriodicGrid, RealField
from ..utils import normalize_direction
from .quadratic import QuadraticNumber

logger = logging.getLogger(__name__)

# 100 significant digits
PI_DIGITS = (
    "3.14159265358979323846264338327950288419716939937510"
    "58209749445923078164062862089986280348253421170679"
)

IntVector = Tuple[int, int]
ExactDirection = Tuple[QuadraticNumber, QuadraticNumber]
DirectionLike = Union[Sequence[float], Sequence[int], ExactDirection]

STENCIL_EXACT = "exact"
STENCIL_CENTRAL = "central"


@dataclass(frozen=True)
class CatMatrix:
    """
    Hyperbolic integer matrix [[a, b], [c, d]] with det 1 and |a + d| > 2.

    The unstable eigenvalue mu1 (|mu1| > 1) and its eigenvector
    (b, mu1 - a) are exact elements of Q(sqrt(discriminant)).
    """

    entries: IntMatrix

    def __post_init__(self):
        entries = as_int_matrix(self.entries)
        (a, b), (c, d) = entries
        if a * d - b * c != 1:
            raise InvalidMatrixError(f"Cat matrix {entries} must have determinant 1")
        if abs(a + d) <= 2:
            raise InvalidMatrixError(f"Cat matrix {entries} is not hyperbolic (|trace| <= 2)")
        object.__setattr__(self, "entries", entries)

    @property
    def trace(self) -> int:
        (a, _), (_, d) = self.entries
        return a + d

    @property
    def discriminant(self) -> int:
        return self.trace ** 2 - 4

    @property
    def unstable_eigenvalue(self) -> QuadraticNumber:
        sign = 1 if self.trace > 0 else -1
        return QuadraticNumber(Fraction(self.trace, 2), Fraction(sign, 2), self.discriminant)

    @property
    def stable_eigenvalue(self) -> QuadraticNumber:
        return self.unstable_eigenvalue.conjugate()

    @property
    def eigenvalues(self) -> Tuple[float, float]:
        """(mu1, mu2) with |mu1| > 1 > |mu2| and mu1 mu2 = 1."""
        return float(self.unstable_eigenvalue), float(self.stable_eigenvalue)

    @property
    def log_mu1(self) -> float:
        return self.unstable_eigenvalue.log_abs()

    @property
    def log_mu2(self) -> float:
        return self.stable_eigenvalue.log_abs()

    def _eigenvector(self, mu: QuadraticNumber) -> ExactDirection:
        (a, b), _ = self.entries
        # b != 0 for every hyperbolic det-1 matrix
        return QuadraticNumber.embed(b, self.discriminant), mu - a

    @property
    def unstable_eigenvector(self) -> ExactDirection:
        return self._eigenvector(self.unstable_eigenvalue)

    @property
    def stable_eigenvector(self) -> ExactDirection:
        return self._eigenvector(self.stable_eigenvalue)

    @property
    def inverse(self) -> "CatMatrix":
        return CatMatrix(integer_inverse(self.entries))

    @property
    def transpose(self) -> "CatMatrix":
        (a, b), (c, d) = self.entries
        return CatMatrix(((a, c), (b, d)))

    def apply(self, k: IntVector) -> IntVector:
        (a, b), (c, d) = self.entries
        return a * k[0] + b * k[1], c * k[0] + d * k[1]


def as_cat_matrix(matrix: Union[CatMatrix, Sequence[Sequence[int]]]) -> CatMatrix:
    return matrix if isinstance(matrix, CatMatrix) else CatMatrix(matrix)


def _as_wavevector(l: Sequence[int]) -> IntVector:
    if len(l) != 2 or any(int(c) != c for c in l):
        raise ValueError(f"Wavevector {l} must be an integer pair")
    k = (int(l[0]), int(l[1]))
    if k == (0, 0):
        raise ValueError("Wavevector l must be nonzero")
    return k


def exact_direction(v: DirectionLike, d: int) -> ExactDirection:
    """Embed a direction (ints, Fractions, floats or Q(sqrt d) entries) exactly."""
    if len(v) != 2:
        raise ValueError(f"Direction {v} must have two components")
    direction = (QuadraticNumber.embed(v[0], d), QuadraticNumber.embed(v[1], d))
    if all(c.is_zero() for c in direction):
        raise ValueError("Direction v must be nonzero")
    return direction


def orthogonal_to_unstable(M) -> ExactDirection:
    """The direction (mu1 - a, -b), exactly orthogonal to the unstable eigenvector."""
    M = as_cat_matrix(M)
    (a, b), _ = M.entries
    return M.unstable_eigenvalue - a, QuadraticNumber.embed(-b, M.discriminant)


def orbit(M, l: Sequence[int], n: int) -> List[IntVector]:
    """Exact orbit [l, M l, ..., M^n l] in Python integers."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    M = as_cat_matrix(M)
    points = [_as_wavevector(l)]
    for _ in range(n):
        points.append(M.apply(points[-1]))
    return points


def transpose_orbit(M, l: Sequence[int], n: int) -> List[IntVector]:
    """Orbit under M^T: the wavevectors carried by the backward substitution."""
    return orbit(as_cat_matrix(M).transpose, l, n)


def _dot(v: ExactDirection, k: IntVector) -> QuadraticNumber:
    return v[0] * k[0] + v[1] * k[1]


def _is_exact(v: DirectionLike) -> bool:
    return all(isinstance(c, (int, Fraction, QuadraticNumber)) and not isinstance(c, bool)
               for c in v)


def exact_exponent(M, v: DirectionLike, l: Sequence[int], angle_tolerance: float = 1e-12) -> float:
    """
    Limit of (1/n) log|v . M^n l|.

    log|mu1| for every direction except those orthogonal to the unstable
    eigenvector, which give log|mu2|. Integer, Fraction and Q(sqrt d)
    directions are tested exactly; float directions within angle_tolerance.

    Raises:
        ValueError: for v = 0 or l = 0
    """
    M = as_cat_matrix(M)
    _as_wavevector(l)
    e1 = M.unstable_eigenvector
    if _is_exact(v):
        direction = exact_direction(v, M.discriminant)
        orthogonal = (direction[0] * e1[0] + direction[1] * e1[1]).is_zero()
    else:
        unit = np.array(normalize_direction(v))
        e1_float = np.array([float(e1[0]), float(e1[1])])
        cosine = abs(float(unit @ e1_float)) / float(np.linalg.norm(e1_float))
        orthogonal = cosine < angle_tolerance
    return M.log_mu2 if orthogonal else M.log_mu1


def finite_exponent_sequence(M, v: DirectionLike, l: Sequence[int], n_max: int) -> List[Tuple[int, float]]:
    """
    (n, (1/n) log|v . M^n l|) for n = 1..n_max in exact arithmetic.

    Float directions are embedded by their exact binary value. A step
    where v . M^n l vanishes carries -inf.
    """
    M = as_cat_matrix(M)
    direction = exact_direction(v, M.discriminant)
    sequence = []
    for n, k in enumerate(orbit(M, l, n_max)):
        if n == 0:
            continue
        projection = _dot(direction, k)
        value = -math.inf if projection.is_zero() else projection.log_abs() / n
        sequence.append((n, value))
    return sequence


def band_representative(k: int, n_per_axis: int) -> int:
    """The alias of mode k in [-floor(N/2), ceil(N/2) - 1]."""
    half = n_per_axis // 2
    return (k + half) % n_per_axis - half


def reduce_phase_turns(time_step: float, square_sum: int) -> float:
    """
    Phi / 2pi reduced into [0, 1) for Phi = 2 pi^2 T S.

    T enters by its exact binary value and pi with 100 digits; the working
    precision grows with the digits of S.
    """
    if not time_step > 0 or square_sum < 0:
        raise ValueError(f"Need T > 0 and S >= 0, got T={time_step}, S={square_sum}")
    with localcontext() as ctx:
        ctx.prec = 40 + len(str(square_sum))
        turns = Decimal(time_step) * Decimal(PI_DIGITS) * square_sum
        return float(turns % 1)


@dataclass(frozen=True)
class PhaseSum:
    """
    Phases of the analytic Heisenberg field at step n (flat initial state).

    Attributes:
        n: step
        orbit: transpose orbit k_0 .. k_n (band representatives when aliased)
        square_sum: sum_{k < n} |k_k|^2, exact
        time_step: T
    """

    n: int
    orbit: Tuple[IntVector, ...]
    square_sum: int
    time_step: float

    @property
    def wavevector(self) -> IntVector:
        return self.orbit[-1]

    @property
    def global_phase(self) -> float:
        """Phi_n = (T/2) sum |2 pi k_k|^2 reduced into [0, 2 pi)."""
        return 2.0 * np.pi * reduce_phase_turns(self.time_step, self.square_sum)

    def position_phase(self, grid: PeriodicGrid) -> np.ndarray:
        """2 pi k_n . x on the grid, reduced with the exact index (k_n . j) mod N."""
        n_per_axis = grid.n_per_axis
        k1, k2 = (c % n_per_axis for c in self.wavevector)
        j1, j2 = grid.indices()
        return 2.0 * np.pi * ((k1 * j1 + k2 * j2) % n_per_axis) / n_per_axis


def phase_sum(M, l: Sequence[int], n: int, time_step: float,
              alias_to: Optional[PeriodicGrid] = None) -> PhaseSum:
    """
    Exact phase data for step n.

    With alias_to, every orbit point is replaced by its band representative
    on that grid, which is what a discrete propagator sees.
    """
    points = transpose_orbit(M, l, n)
    if alias_to is not None:
        size = alias_to.n_per_axis
        points = [(band_representative(a, size), band_representative(b, size)) for a, b in points]
    square_sum = sum(a * a + b * b for a, b in points[:-1])
    return PhaseSum(n, tuple(points), square_sum, time_step)


def analytic_derivative_field(
    M,
    l: Sequence[int],
    v: Sequence[float],
    time_step: float,
    n: int,
    grid: PeriodicGrid,
    stencil: str = STENCIL_EXACT,
    amplitude: float = 1.0,
) -> RealField:
    """
    Re v.grad gamma_n for the cat with a flat initial state.

    gamma_n = amplitude * exp(i Phi_n) sin(2 pi k_n . x) with k_n = (M^T)^n l,
    so

        Re v.grad gamma_n = amplitude * D(v, k_n) cos(Phi_n) cos(2 pi k_n . x)

    where D = 2 pi v.k_n for the exact stencil. The central stencil uses
    the symbol of the grid's central difference, sum_i v_i sin(2 pi k_i h)/h,
    and aliased phases, so it matches the numerical pipeline to roundoff.

    Args:
        M: cat matrix
        l: observable wavevector
        v: direction (normalized internally)
        time_step: T
        n: step, >= 0
        grid: 2D grid
        stencil: "exact" or "central"
    """
    if grid.dim != 2:
        raise ValueError(f"Cat fields live on a 2D grid, got {grid.dim}D")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if stencil not in (STENCIL_EXACT, STENCIL_CENTRAL):
        raise ValueError(f"Unknown stencil {stencil!r}; use 'exact' or 'central'")
    unit = normalize_direction(v)
    if len(unit) != 2:
        raise ValueError(f"Direction {v} must have two components")

    aliased = stencil == STENCIL_CENTRAL
    phases = phase_sum(M, l, n, time_step, alias_to=grid if aliased else None)
    k = phases.wavevector
    if aliased:
        h = grid.spacing
        symbol = sum(
            u * math.sin(2.0 * math.pi * (c % grid.n_per_axis) / grid.n_per_axis) / h
            for u, c in zip(unit, k)
        )
    else:
        symbol = 2.0 * math.pi * (unit[0] * float(k[0]) + unit[1] * float(k[1]))

    values = amplitude * symbol * math.cos(phases.global_phase) * np.cos(phases.position_phase(grid))
    return RealField(grid, values)


def oracle_summary(M, l: Sequence[int], v: DirectionLike, n_max: int = 30) -> dict:
    """Exact cat results for one (M, l, v), as printed by the oracle command."""
    M = as_cat_matrix(M)
    mu1, mu2 = M.eigenvalues
    sequence = finite_exponent_sequence(M, v, l, n_max) if n_max >= 1 else []
    e1 = M.unstable_eigenvector
    stable = orthogonal_to_unstable(M)
    return {
        "matrix": [list(row) for row in M.entries],
        "trace": M.trace,
        "discriminant": M.discriminant,
        "mu1": mu1,
        "mu2": mu2,
        "log_mu1": M.log_mu1,
        "log_mu2": M.log_mu2,
        "unstable_eigenvector": [float(c) for c in e1],
        "stable_direction": [float(c) for c in stable],
        "exponent": exact_exponent(M, v, l),
        "orbit": [list(k) for k in orbit(M, l, min(n_max, 5))],
        "finite_sequence_last": sequence[-1][1] if sequence else None,
        "n_max": n_max,
    }

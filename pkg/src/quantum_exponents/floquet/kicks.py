"""
Kick specifications: multiplicative potential kicks and substitution kicks.
"""
from dataclasses import dataclass
from typing import Sequence, Tuple

import numpy as np

from ..exceptions import InvalidMatrixError
from ..grid import PeriodicGrid
from .base import BoundKick

IntMatrix = Tuple[Tuple[int, int], Tuple[int, int]]


def as_int_matrix(entries: Sequence[Sequence[int]]) -> IntMatrix:
    """Validate and freeze a 2x2 integer matrix."""
    rows = [list(r) for r in entries]
    if len(rows) != 2 or any(len(r) != 2 for r in rows):
        raise InvalidMatrixError(f"Kick matrix must be 2x2, got {entries}")
    for value in (c for r in rows for c in r):
        if isinstance(value, bool) or int(value) != value:
            raise InvalidMatrixError(f"Kick matrix entries must be integers, got {entries}")
    (a, b), (c, d) = rows
    return (int(a), int(b)), (int(c), int(d))


def integer_inverse(matrix: IntMatrix) -> IntMatrix:
    """Adjugate of a det-1 integer matrix, which is its inverse."""
    (a, b), (c, d) = matrix
    return (d, -b), (-c, a)


@dataclass(frozen=True)
class MultiplicativeKick:
    """Potential kick exp(-i V(x)) with V(x) = q cos(2 pi x) on the circle."""

    strength: float

    @property
    def dimension(self) -> int:
        return 1

    def bind(self, grid: PeriodicGrid) -> "PhaseKick":
        (x,) = grid.coordinates()
        if self.strength == 0.0:
            return PhaseKick(grid, None)
        return PhaseKick(grid, np.exp(-1j * self.strength * np.cos(2.0 * np.pi * x)))


@dataclass(frozen=True)
class SubstitutionKick:
    """
    Configurational kick psi(x) -> psi(M^-1 x) on the torus.

    Attributes:
        matrix: 2x2 integer matrix with det 1
        require_hyperbolic: reject |trace| <= 2 (set False for test kicks
            such as the identity)
    """

    matrix: IntMatrix
    require_hyperbolic: bool = True

    def __post_init__(self):
        matrix = as_int_matrix(self.matrix)
        object.__setattr__(self, "matrix", matrix)
        (a, b), (c, d) = matrix
        if a * d - b * c != 1:
            raise InvalidMatrixError(f"Kick matrix {matrix} must have determinant 1")
        if self.require_hyperbolic and abs(a + d) <= 2:
            raise InvalidMatrixError(f"Kick matrix {matrix} is not hyperbolic (|trace| <= 2)")

    @property
    def dimension(self) -> int:
        return 2

    @property
    def inverse(self) -> IntMatrix:
        return integer_inverse(self.matrix)

    def bind(self, grid: PeriodicGrid) -> "PermutationKick":
        return PermutationKick(grid, self.matrix)


class PhaseKick(BoundKick):
    """Pointwise multiplication by a unit-modulus phase table."""

    def __init__(self, grid: PeriodicGrid, phase):
        super().__init__(grid)
        self.phase = phase
        self.phase_conj = None if phase is None else np.conj(phase)
        for table in (self.phase, self.phase_conj):
            if table is not None:
                table.setflags(write=False)

    @property
    def is_identity(self) -> bool:
        return self.phase is None

    def apply(self, values: np.ndarray) -> np.ndarray:
        return values.copy() if self.phase is None else values * self.phase

    def apply_inverse(self, values: np.ndarray) -> np.ndarray:
        return values.copy() if self.phase is None else values * self.phase_conj


class PermutationKick(BoundKick):
    """
    Exact index permutation new[j] = old[(M^-1 j) mod N].

    det M = 1 makes M invertible modulo any N, so the gather is a bijection.
    """

    def __init__(self, grid: PeriodicGrid, matrix: IntMatrix):
        super().__init__(grid)
        self.matrix = matrix
        self.source = self._gather_indices(integer_inverse(matrix))
        self.source_inverse = self._gather_indices(matrix)

    def _gather_indices(self, matrix: IntMatrix) -> Tuple[np.ndarray, np.ndarray]:
        (a, b), (c, d) = matrix
        j1, j2 = self.grid.indices()
        n = self.grid.n_per_axis
        rows = (a * j1 + b * j2) % n
        cols = (c * j1 + d * j2) % n
        rows.setflags(write=False)
        cols.setflags(write=False)
        return rows, cols

    @property
    def is_identity(self) -> bool:
        return self.matrix == ((1, 0), (0, 1))

    def apply(self, values: np.ndarray) -> np.ndarray:
        rows, cols = self.source
        return values[..., rows, cols]

    def apply_inverse(self, values: np.ndarray) -> np.ndarray:
        rows, cols = self.source_inverse
        return values[..., rows, cols]

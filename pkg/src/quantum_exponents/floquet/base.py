"""
Base class for kicks bound to a concrete grid.
"""
from abc import ABC, abstractmethod

import numpy as np

from ..grid import PeriodicGrid


class BoundKick(ABC):
    """
    A kick with its tables precomputed for one grid.

    Implementations act on arrays whose trailing axes are the grid axes;
    any leading axes are treated as a batch of independent fields.
    """

    def __init__(self, grid: PeriodicGrid):
        self.grid = grid

    @property
    def is_identity(self) -> bool:
        """True when the kick leaves every field unchanged."""
        return False

    @abstractmethod
    def apply(self, values: np.ndarray) -> np.ndarray:
        """Apply the kick."""
        pass

    @abstractmethod
    def apply_inverse(self, values: np.ndarray) -> np.ndarray:
        """Apply the inverse kick."""
        pass

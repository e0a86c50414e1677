"""
Attention matrices and BCCB generators.
"""

from dataclasses import dataclass
from typing import Tuple

import numpy as np

from reverseconv.core.errors import DimensionError, ValidationError


def _frozen(data, ndim: int, name: str) -> np.ndarray:
    array = np.array(data, dtype=np.float64, copy=True)
    if array.ndim != ndim:
        raise DimensionError(f"{name} must be {ndim}-D, got shape {array.shape}")
    if not np.all(np.isfinite(array)):
        raise ValidationError(f"{name} contains NaN or Inf entries")
    array.flags.writeable = False
    return array


@dataclass(frozen=True)
class AttentionMatrix:
    """
    Patch-to-patch attention over an h x w token grid.

    Attributes:
        grid: (h, w) token grid; rows and columns follow row-major token order
        data: (h*w, h*w) matrix, row = query token
    """
    grid: Tuple[int, int]
    data: np.ndarray

    def __post_init__(self):
        data = _frozen(self.data, 2, "AttentionMatrix")
        side = self.grid[0] * self.grid[1]
        if data.shape != (side, side):
            raise ValidationError(f"Attention matrix {data.shape} is not square with side {side} for grid {self.grid}")
        object.__setattr__(self, 'grid', (int(self.grid[0]), int(self.grid[1])))
        object.__setattr__(self, 'data', data)


@dataclass(frozen=True)
class BccbGenerator:
    """
    First row of a BCCB matrix indexed by the 2-D circular offset.

    Attributes:
        grid: (h, w) token grid
        gen: (h, w) map; entry (dy, dx) is the value at offset (dy, dx)
    """
    grid: Tuple[int, int]
    gen: np.ndarray

    def __post_init__(self):
        gen = _frozen(self.gen, 2, "BccbGenerator")
        if gen.shape != tuple(self.grid):
            raise DimensionError(f"Generator shape {gen.shape} does not match grid {self.grid}")
        object.__setattr__(self, 'grid', (int(self.grid[0]), int(self.grid[1])))
        object.__setattr__(self, 'gen', gen)

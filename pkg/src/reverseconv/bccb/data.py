"""
Import of attention tensors for BCCB analysis.
"""

import math
from typing import List, Optional, Tuple

from reverseconv.bccb.models import AttentionMatrix
from reverseconv.core.data import read_tensor
from reverseconv.core.errors import DimensionError, ValidationError
from reverseconv.core.models import FeatureMap


def infer_grid(side: int) -> Tuple[int, int]:
    """Square token grid whose size matches a matrix side."""
    root = math.isqrt(side)
    if root * root != side:
        raise DimensionError(f"Cannot infer a square grid for side {side}; pass the grid explicitly")
    return root, root


def split_slices(t: FeatureMap, grid: Optional[Tuple[int, int]] = None) -> List[AttentionMatrix]:
    """
    Split a (C, N, N) tensor into one attention matrix per slice.

    Args:
        t: Tensor whose channels are heads or layers
        grid: Token grid; inferred as a square grid when omitted

    Returns:
        List of AttentionMatrix
    """
    if t.height != t.width:
        raise ValidationError(f"Attention slices must be square, got {t.height}x{t.width}")
    if grid is None:
        grid = infer_grid(t.height)
    if grid[0] * grid[1] != t.height:
        raise DimensionError(f"Grid {grid[0]}x{grid[1]} does not match slice side {t.height}")
    return [AttentionMatrix(grid, t.data[i]) for i in range(t.channels)]


def load_attention(path: str, grid: Optional[Tuple[int, int]] = None) -> List[AttentionMatrix]:
    return split_slices(read_tensor(path), grid)

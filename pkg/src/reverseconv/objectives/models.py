"""
Data containers for the loss formulas.
"""

from dataclasses import dataclass


@dataclass(frozen=True)
class CropRegion:
    """
    Window of the high-resolution feature grid aligned with a crop.

    Attributes:
        top: Row offset
        left: Column offset
        height: Number of rows
        width: Number of columns
    """
    top: int
    left: int
    height: int
    width: int


@dataclass(frozen=True)
class LossTerms:
    """
    Breakdown of one cosine + l2 loss evaluation.

    Attributes:
        cosine: 1 - mean per-location cosine similarity, in [0, 2]
        l2: Euclidean norm of the difference over the whole tensor
        degenerate: Locations where both channel vectors are zero
    """
    cosine: float
    l2: float
    degenerate: int

    @property
    def total(self) -> float:
        return self.cosine + self.l2

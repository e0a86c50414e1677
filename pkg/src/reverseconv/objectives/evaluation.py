"""
Loss functions for the global, local and self-consistency terms.

Every term has the form 1 - cos(a, b) + ||a - b||_2, where the cosine is
taken between the channel vectors at each location and averaged over
locations, and the norm is the Euclidean norm of the full tensor.
"""

import numpy as np
from rich.console import Console

from reverseconv.core.errors import DimensionError
from reverseconv.core.models import FeatureMap
from reverseconv.objectives.models import CropRegion, LossTerms

console = Console(stderr=True)


def cosine_l2_terms(a: FeatureMap, b: FeatureMap) -> LossTerms:
    """
    Evaluate the cosine and l2 terms separately.

    Args:
        a: Target features (C, H, W)
        b: Predicted features, same shape

    Returns:
        LossTerms; a location whose two channel vectors are both zero counts as cosine 0
    """
    if a.shape != b.shape:
        raise DimensionError(f"Loss operands differ in shape: {a.shape} vs {b.shape}")
    dot = np.sum(a.data * b.data, axis=0)
    norm_a = np.linalg.norm(a.data, axis=0)
    norm_b = np.linalg.norm(b.data, axis=0)
    norms = norm_a * norm_b
    cosine = np.divide(dot, norms, out=np.zeros_like(dot), where=norms > 0)

    both_zero = (norm_a == 0) & (norm_b == 0)
    degenerate = int(np.count_nonzero(both_zero))
    if degenerate:
        console.log(f"[WARNING] {degenerate} locations have zero vectors on both sides; cosine set to 0")

    return LossTerms(
        cosine=float(1.0 - np.mean(np.clip(cosine, -1.0, 1.0))),
        l2=float(np.linalg.norm(a.data - b.data)),
        degenerate=degenerate,
    )


def cosine_l2_loss(a: FeatureMap, b: FeatureMap) -> float:
    """1 - mean cos(a, b) + ||a - b||_2."""
    return cosine_l2_terms(a, b).total


def global_loss(z_hi: FeatureMap, z_hat: FeatureMap) -> float:
    """Alignment of the upsampled prediction with the high-resolution target features."""
    return cosine_l2_loss(z_hi, z_hat)


def self_loss(a: FeatureMap, b: FeatureMap) -> float:
    """Self-consistency term; the caller chooses which pair of tensors to compare."""
    return cosine_l2_loss(a, b)


def crop(z: FeatureMap, region: CropRegion) -> FeatureMap:
    """Extract a spatial window from every channel."""
    if region.height <= 0 or region.width <= 0 or region.top < 0 or region.left < 0:
        raise DimensionError(f"Invalid crop region {region}")
    if region.top + region.height > z.height or region.left + region.width > z.width:
        raise DimensionError(f"Crop region {region} exceeds a {z.height}x{z.width} grid")
    rows = slice(region.top, region.top + region.height)
    cols = slice(region.left, region.left + region.width)
    return FeatureMap(z.data[:, rows, cols])


def local_loss(z_c: FeatureMap, z_pp: FeatureMap, region: CropRegion) -> float:
    """
    Compare crop features with the matching window of the full-image prediction.

    Args:
        z_c: Features of the crop
        z_pp: Upsampled features of the full image
        region: Window of z_pp covered by the crop

    Returns:
        Loss value
    """
    if (region.height, region.width) != (z_c.height, z_c.width):
        raise DimensionError(
            f"Region {region.height}x{region.width} does not match crop features {z_c.height}x{z_c.width}"
        )
    return cosine_l2_loss(z_c, crop(z_pp, region))


def total_loss(l_global: float, l_local: float, l_self: float) -> float:
    """
    Unweighted sum of the three alignment terms.

    Args:
        l_global: Global alignment loss
        l_local: Local crop alignment loss
        l_self: Self-consistency loss

    Returns:
        l_global + l_local + l_self
    """
    return l_global + l_local + l_self

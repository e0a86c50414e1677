"""
Frequency-domain primitives shared by every solver.

Transforms are unnormalized forward / 1/(HW) inverse over the last two axes.
The block operators act on the s*s cosets of the frequency grid: entry
(u, v) of the low-resolution grid gathers {(u + i*H/s, v + j*W/s)}.
"""

from typing import Tuple

import numpy as np
import scipy.fft

from reverseconv.core.config import REAL_RESIDUE_TOLERANCE
from reverseconv.core.errors import DimensionError, NumericalConsistencyError
from reverseconv.core.models import FeatureMap, Kernel, Spectrum


_AXES = (-2, -1)


def check_divisible(shape: Tuple[int, ...], s: int):
    if s < 1:
        raise DimensionError(f"Scale factor must be >= 1, got {s}")
    height, width = shape[-2], shape[-1]
    if height % s or width % s:
        raise DimensionError(f"Spatial size {height}x{width} is not divisible by scale {s}")


def real_part(data: np.ndarray, tolerance: float = REAL_RESIDUE_TOLERANCE) -> np.ndarray:
    """
    Drop the imaginary part of an array declared real.

    The residue is compared with `tolerance` times max(1, peak real magnitude).
    """
    residue = float(np.max(np.abs(data.imag))) if data.size else 0.0
    scale = max(1.0, float(np.max(np.abs(data.real)))) if data.size else 1.0
    if residue > tolerance * scale:
        raise NumericalConsistencyError(
            f"Imaginary residue {residue:.3e} exceeds {tolerance:.1e} (scale {scale:.3e})"
        )
    return np.ascontiguousarray(data.real)


def embed_kernel(taps: np.ndarray, origin: Tuple[int, int], target: Tuple[int, int]) -> np.ndarray:
    """Place taps on a zero canvas and roll so the origin tap sits at (0, 0)."""
    height, width = target
    channels, kh, kw = taps.shape
    if kh > height or kw > width:
        raise DimensionError(f"Kernel {kh}x{kw} does not fit a {height}x{width} grid")
    canvas = np.zeros((channels, height, width), dtype=np.float64)
    canvas[:, :kh, :kw] = taps
    return np.roll(canvas, (-origin[0], -origin[1]), axis=_AXES)


def block_mean(a: np.ndarray, s: int) -> np.ndarray:
    """Coset mean of the last two axes: (..., H, W) -> (..., H/s, W/s)."""
    check_divisible(a.shape, s)
    *lead, height, width = a.shape
    blocks = a.reshape(*lead, s, height // s, s, width // s)
    return blocks.mean(axis=(-4, -2))


def block_tile(a: np.ndarray, s: int) -> np.ndarray:
    """Repeat the last two axes s times each (the inverse layout of block_mean)."""
    reps = (1,) * (a.ndim - 2) + (s, s)
    return np.tile(a, reps)


def fft2(x: FeatureMap) -> Spectrum:
    """Unnormalized 2-D DFT of every channel."""
    return Spectrum(scipy.fft.fft2(x.data, axes=_AXES))


def ifft2(spectrum: Spectrum, tolerance: float = REAL_RESIDUE_TOLERANCE) -> FeatureMap:
    """
    Inverse 2-D DFT of a spectrum whose spatial image is real.

    Args:
        spectrum: Frequency-domain tensor
        tolerance: Allowed imaginary residue before the result is rejected

    Returns:
        Real FeatureMap
    """
    return FeatureMap(real_part(scipy.fft.ifft2(spectrum.data, axes=_AXES), tolerance))


def psf_to_otf(k: Kernel, target: Tuple[int, int]) -> Spectrum:
    """
    Convert a kernel (point-spread function) to its optical transfer function.

    Args:
        k: Kernel with explicit origin
        target: (H, W) grid size

    Returns:
        Spectrum F_K of shape (C, H, W)
    """
    return Spectrum(scipy.fft.fft2(embed_kernel(k.taps, k.origin, target), axes=_AXES))


def upsample_zero_insert(y: FeatureMap, s: int) -> FeatureMap:
    """s-fold upsampling that keeps each sample at the top-left of its s x s block."""
    if s < 1:
        raise DimensionError(f"Scale factor must be >= 1, got {s}")
    channels, height, width = y.shape
    out = np.zeros((channels, height * s, width * s), dtype=np.float64)
    out[:, ::s, ::s] = y.data
    return FeatureMap(out)


def block_mean_downsample(x: Spectrum, s: int) -> Spectrum:
    """Average the s*s frequency cosets (the splits-then-mean operator)."""
    return Spectrum(block_mean(x.data, s))


def block_broadcast_multiply(a: Spectrum, b: Spectrum, s: int) -> Spectrum:
    """
    Multiply a high-resolution spectrum by a low-resolution one tiled s x s times.

    Args:
        a: Low-resolution spectrum (C, H/s, W/s)
        b: High-resolution spectrum (C, H, W)
        s: Scale factor

    Returns:
        Spectrum of shape (C, H, W)
    """
    channels, height, width = a.shape
    if b.shape != (channels, height * s, width * s):
        raise DimensionError(f"Block multiply needs {s}x the shape of {a.shape}, got {b.shape}")
    return Spectrum(block_tile(a.data, s) * b.data)

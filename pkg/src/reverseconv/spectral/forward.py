"""
Forward degradation operator Y = (X conv K) decimated by s, circular boundary.

Two paths compute it: a spatial sum of rolled copies and the convolution
theorem. Decimation keeps block position (0, 0), so `adjoint` (zero-insert,
then convolve with the conjugate OTF) is its exact transpose.
"""

from dataclasses import dataclass

import numpy as np
import scipy.fft

from reverseconv.core.errors import DimensionError
from reverseconv.core.models import FeatureMap, Kernel
from reverseconv.spectral.fft import check_divisible, psf_to_otf, real_part, upsample_zero_insert


@dataclass(frozen=True)
class ForwardSpec:
    """
    Depthwise strided circular convolution.

    Attributes:
        kernel: Per-channel kernel with origin
        s: Integer stride / scale factor
    """
    kernel: Kernel
    s: int = 1

    def __post_init__(self):
        if int(self.s) != self.s or self.s < 1:
            raise DimensionError(f"Scale factor must be a positive integer, got {self.s}")

    def check(self, x: FeatureMap):
        if x.channels != self.kernel.channels:
            raise DimensionError(f"Input has {x.channels} channels, kernel has {self.kernel.channels}")
        kh, kw = self.kernel.size
        if kh > x.height or kw > x.width:
            raise DimensionError(f"Kernel {kh}x{kw} larger than {x.height}x{x.width} input")
        check_divisible(x.shape, self.s)


def circular_convolve(x: np.ndarray, kernel: Kernel) -> np.ndarray:
    """Spatial circular convolution of (C, H, W) by the depthwise kernel."""
    out = np.zeros_like(x)
    oy, ox = kernel.origin
    _, kh, kw = kernel.taps.shape
    for ky in range(kh):
        for kx in range(kw):
            tap = kernel.taps[:, ky, kx, None, None]
            out += tap * np.roll(x, (ky - oy, kx - ox), axis=(-2, -1))
    return out


def forward_spatial(x: FeatureMap, spec: ForwardSpec) -> FeatureMap:
    """
    Strided convolution computed in the spatial domain.

    Args:
        x: High-resolution input (C, H, W)
        spec: Kernel and scale

    Returns:
        Low-resolution output (C, H/s, W/s)
    """
    spec.check(x)
    s = spec.s
    return FeatureMap(circular_convolve(x.data, spec.kernel)[:, ::s, ::s])


def forward_spectral(x: FeatureMap, spec: ForwardSpec) -> FeatureMap:
    """Strided convolution through the convolution theorem."""
    spec.check(x)
    otf = psf_to_otf(spec.kernel, (x.height, x.width)).data
    full = real_part(scipy.fft.ifft2(otf * scipy.fft.fft2(x.data, axes=(-2, -1)), axes=(-2, -1)))
    s = spec.s
    return FeatureMap(full[:, ::s, ::s])


def adjoint(y: FeatureMap, spec: ForwardSpec) -> FeatureMap:
    """
    Transpose of the forward operator: zero-insertion followed by K^H.

    Args:
        y: Low-resolution tensor (C, h, w)
        spec: Kernel and scale

    Returns:
        High-resolution tensor (C, h*s, w*s)
    """
    up = upsample_zero_insert(y, spec.s)
    spec.check(up)
    otf = psf_to_otf(spec.kernel, (up.height, up.width)).data
    spectrum = np.conj(otf) * scipy.fft.fft2(up.data, axes=(-2, -1))
    return FeatureMap(real_part(scipy.fft.ifft2(spectrum, axes=(-2, -1))))

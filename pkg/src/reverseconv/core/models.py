"""
Core tensor types.

All types hold a read-only numpy array in (channel, row, column) order and
validate their invariants on construction; none of them is mutated after
that, so they can be shared freely between threads.
"""

from dataclasses import dataclass, field
from typing import Tuple

import numpy as np

from reverseconv.core.config import COMPLEX_DTYPE, DTYPE, WeightRole
from reverseconv.core.errors import DimensionError, ValidationError


def _frozen_array(data, dtype, name: str) -> np.ndarray:
    array = np.array(data, dtype=dtype, copy=True)
    if array.ndim != 3:
        raise DimensionError(f"{name} must be 3-D (C, H, W), got shape {array.shape}")
    if any(n == 0 for n in array.shape):
        raise DimensionError(f"{name} has an empty axis: {array.shape}")
    array.flags.writeable = False
    return array


def _require_finite(array: np.ndarray, name: str):
    if not np.all(np.isfinite(array)):
        raise ValidationError(f"{name} contains NaN or Inf entries")


@dataclass(frozen=True)
class FeatureMap:
    """
    Real C x H x W feature tensor in 64-bit floating point.

    Attributes:
        data: Array of shape (channels, height, width)
    """
    data: np.ndarray

    def __post_init__(self):
        array = _frozen_array(self.data, DTYPE, "FeatureMap")
        _require_finite(array, "FeatureMap")
        object.__setattr__(self, 'data', array)

    @classmethod
    def zeros(cls, channels: int, height: int, width: int) -> 'FeatureMap':
        return cls(np.zeros((channels, height, width), dtype=DTYPE))

    @property
    def shape(self) -> Tuple[int, int, int]:
        return self.data.shape

    @property
    def channels(self) -> int:
        return self.data.shape[0]

    @property
    def height(self) -> int:
        return self.data.shape[1]

    @property
    def width(self) -> int:
        return self.data.shape[2]


@dataclass(frozen=True)
class Kernel:
    """
    Depthwise convolution kernel with an explicit origin tap.

    Attributes:
        taps: Array of shape (channels, kh, kw)
        origin: (oy, ox) tap that lands on spatial index (0, 0) after circular embedding
    """
    taps: np.ndarray
    origin: Tuple[int, int] = (0, 0)

    def __post_init__(self):
        taps = _frozen_array(self.taps, DTYPE, "Kernel")
        _require_finite(taps, "Kernel")
        oy, ox = (int(v) for v in self.origin)
        _, kh, kw = taps.shape
        if not (0 <= oy < kh and 0 <= ox < kw):
            raise ValidationError(f"Kernel origin ({oy}, {ox}) outside a {kh}x{kw} kernel")
        object.__setattr__(self, 'taps', taps)
        object.__setattr__(self, 'origin', (oy, ox))

    @classmethod
    def centered(cls, taps) -> 'Kernel':
        """Kernel anchored at its central tap."""
        taps = np.asarray(taps, dtype=DTYPE)
        return cls(taps, (taps.shape[1] // 2, taps.shape[2] // 2))

    @classmethod
    def delta(cls, channels: int, size: int = 1) -> 'Kernel':
        """Identity kernel: a single unit tap at the center of a size x size grid."""
        taps = np.zeros((channels, size, size), dtype=DTYPE)
        taps[:, size // 2, size // 2] = 1.0
        return cls(taps, (size // 2, size // 2))

    @property
    def channels(self) -> int:
        return self.taps.shape[0]

    @property
    def size(self) -> Tuple[int, int]:
        return self.taps.shape[1], self.taps.shape[2]


@dataclass(frozen=True)
class WeightField:
    """
    Nonnegative per-location weights playing the role of |W|^2 or |W_lam|^2.

    The field stores the already squared magnitude; solvers never square it again.

    Attributes:
        data: Array of shape (channels, height, width), every entry >= 0
        role: Objective term the field scales
    """
    data: np.ndarray
    role: WeightRole = WeightRole.DATA_FIDELITY

    def __post_init__(self):
        array = _frozen_array(self.data, DTYPE, "WeightField")
        _require_finite(array, "WeightField")
        if np.any(array < 0):
            raise ValidationError(f"WeightField ({self.role.value}) has negative entries, min={array.min():.6g}")
        object.__setattr__(self, 'data', array)

    @classmethod
    def constant(cls, value: float, shape: Tuple[int, int, int], role: WeightRole) -> 'WeightField':
        return cls(np.full(shape, value, dtype=DTYPE), role)

    @property
    def shape(self) -> Tuple[int, int, int]:
        return self.data.shape

    def is_uniform(self) -> bool:
        """True when every channel is spatially constant."""
        flat = self.data.reshape(self.data.shape[0], -1)
        return bool(np.all(flat == flat[:, :1]))


@dataclass(frozen=True)
class Spectrum:
    """
    Complex C x H x W frequency-domain tensor (unnormalized DFT per channel).

    Attributes:
        data: complex128 array of shape (channels, height, width)
    """
    data: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, 'data', _frozen_array(self.data, COMPLEX_DTYPE, "Spectrum"))

    @property
    def shape(self) -> Tuple[int, int, int]:
        return self.data.shape

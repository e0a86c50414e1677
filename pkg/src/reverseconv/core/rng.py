"""
SplitMix64 generator used for every seeded fixture.

The sequence is fully specified so other implementations reproduce fixtures:
    state += 0x9E3779B97F4A7C15
    z = (state ^ (state >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    z = z ^ (z >> 31)
all arithmetic modulo 2**64. Uniform doubles are (z >> 11) * 2**-53.
"""

from typing import Tuple, Union

import numpy as np

GAMMA = 0x9E3779B97F4A7C15
_MASK = (1 << 64) - 1
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)

Shape = Union[int, Tuple[int, ...]]


class SplitMix64:
    """
    Counter-based SplitMix64; draws are vectorized over numpy uint64 arrays.

    Args:
        seed: Any integer, reduced modulo 2**64
    """

    def __init__(self, seed: int = 0):
        self._state = int(seed) & _MASK

    @property
    def state(self) -> int:
        return self._state

    def next_u64(self, count: int) -> np.ndarray:
        """Return the next `count` raw 64-bit outputs."""
        steps = np.arange(1, count + 1, dtype=np.uint64)
        z = np.uint64(self._state) + steps * np.uint64(GAMMA)
        self._state = (self._state + count * GAMMA) & _MASK
        z = (z ^ (z >> np.uint64(30))) * _MIX1
        z = (z ^ (z >> np.uint64(27))) * _MIX2
        return z ^ (z >> np.uint64(31))

    def uniform(self, low: float = 0.0, high: float = 1.0, shape: Shape = ()) -> np.ndarray:
        """Uniform doubles in [low, high) with 53-bit resolution."""
        shape = (shape,) if isinstance(shape, int) else tuple(shape)
        count = int(np.prod(shape, dtype=np.int64))
        unit = (self.next_u64(count) >> np.uint64(11)).astype(np.float64) * 2.0 ** -53
        return (low + (high - low) * unit).reshape(shape)

    def integers(self, low: int, high: int, count: int) -> np.ndarray:
        """Integers in [low, high)."""
        return low + (self.next_u64(count) % np.uint64(high - low)).astype(np.int64)

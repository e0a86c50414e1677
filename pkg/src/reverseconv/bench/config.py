"""
Configuration settings for benchmarks.
"""

from dataclasses import dataclass

from reverseconv.core.errors import CapacityError, DimensionError, ValidationError
from reverseconv.oracle.dense import MAX_DENSE_SIZE

# Untimed iterations before sampling starts
WARMUP = 2
MIN_REPEATS = 3
DEFAULT_SIZES = (16, 32, 64)

FFT_PATH = 'fft'
DENSE_PATH = 'dense'
PARALLEL_PATH = 'fft-parallel'


@dataclass(frozen=True)
class BenchCase:
    """
    One benchmark configuration.

    Attributes:
        name: Label printed in the bench line
        channels: Number of channels C
        height: High-resolution height H
        width: High-resolution width W
        s: Scale factor
        k: Square kernel size
        repeats: Timed repetitions after warmup
        seed: SplitMix64 seed for problem generation
        include_dense: Also time the dense oracle
        threads: Worker count for the channel-parallel run; 1 disables it
    """
    name: str
    channels: int = 1
    height: int = 16
    width: int = 16
    s: int = 2
    k: int = 3
    repeats: int = 5
    seed: int = 0
    include_dense: bool = True
    threads: int = 1

    def __post_init__(self):
        if self.repeats < MIN_REPEATS:
            raise ValidationError(f"repeats must be >= {MIN_REPEATS}, got {self.repeats}")
        if min(self.channels, self.height, self.width, self.s, self.k, self.threads) < 1:
            raise ValidationError(f"Bench case {self.name} has a non-positive size parameter")
        if self.height % self.s or self.width % self.s:
            raise DimensionError(f"{self.height}x{self.width} is not divisible by s={self.s}")
        if self.k > min(self.height, self.width):
            raise DimensionError(f"Kernel size {self.k} exceeds the {self.height}x{self.width} grid")
        if self.include_dense and self.height * self.width > MAX_DENSE_SIZE:
            raise CapacityError(
                f"Dense path limited to {MAX_DENSE_SIZE} unknowns, case {self.name} has {self.height * self.width}"
            )

    @property
    def n(self) -> int:
        return self.height * self.width

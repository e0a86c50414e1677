"""
Configuration settings for the command-line interface.
"""

import os
from enum import Enum, IntEnum
from typing import List, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

from reverseconv.bench.config import DEFAULT_SIZES, MIN_REPEATS
from reverseconv.solver.config import DEFAULT_EPS, PredictorKind, WeightMode

# Environment variables providing flag defaults (a .env file is honoured)
ENV_EPS = 'WRC_EPS'
ENV_THREADS = 'WRC_THREADS'
ENV_SEED = 'WRC_SEED'
ENV_OUTPUT_DIR = 'WRC_OUTPUT_DIR'

MAX_SCALE = 64
MAX_THREADS = 256
MAX_SEED = 2 ** 64 - 1


class ExitCode(IntEnum):
    OK = 0
    FAILURE = 1
    INVALID = 2
    NUMERICAL = 3
    ORACLE_FAIL = 4


class Command(Enum):
    FORWARD = 'forward'
    SOLVE = 'solve'
    ORACLE_CHECK = 'oracle-check'
    BCCB = 'bccb'
    BENCH = 'bench'
    GENERATE = 'generate'


class X0Policy(Enum):
    ZERO = 'zero'
    BILINEAR = 'bilinear'
    FILE = 'file'


class GenerateKind(Enum):
    TENSOR = 'tensor'
    KERNEL = 'kernel'
    WEIGHT = 'weight'


def env_float(name: str, fallback: float) -> float:
    value = os.getenv(name)
    return float(value) if value else fallback


def env_int(name: str, fallback: int) -> int:
    value = os.getenv(name)
    return int(value) if value else fallback


def env_str(name: str, fallback: str) -> str:
    return os.getenv(name) or fallback


class CliConfig(BaseModel):
    """
    Validated command line.

    Numeric fields carry explicit ranges; the after-validator checks that the
    paths each command needs are present.
    """
    command: Command
    input: Optional[str] = None
    kernel: Optional[str] = None
    output: Optional[str] = None
    scale: int = Field(1, ge=1, le=MAX_SCALE)

    w_const: Optional[float] = Field(None, ge=0.0)
    w_file: Optional[str] = None
    wlam_const: Optional[float] = Field(None, ge=0.0)
    wlam_file: Optional[str] = None
    predictor: Optional[PredictorKind] = None
    w_taps: Optional[str] = None
    wlam_taps: Optional[str] = None
    weight_mode: WeightMode = WeightMode.LOG1P
    bias: float = 0.0

    x0: X0Policy = X0Policy.BILINEAR
    x0_file: Optional[str] = None
    eps: float = Field(DEFAULT_EPS, ge=0.0, allow_inf_nan=False)
    check_stationarity: bool = False
    allow_residue: bool = False

    threads: int = Field(1, ge=1, le=MAX_THREADS)
    seed: int = Field(0, ge=0, le=MAX_SEED)

    sizes: List[int] = Field(default_factory=lambda: list(DEFAULT_SIZES))
    channels: int = Field(1, ge=1)
    kernel_size: int = Field(3, ge=1)
    repeats: int = Field(5, ge=MIN_REPEATS)
    no_dense: bool = False

    grid: Optional[Tuple[int, int]] = None
    per_matrix: bool = False

    kind: GenerateKind = GenerateKind.TENSOR
    shape: Optional[Tuple[int, int, int]] = None
    low: float = -1.0
    high: float = 1.0

    output_dir: str = 'outputs'

    @model_validator(mode='after')
    def check_command_inputs(self) -> 'CliConfig':
        required = {
            Command.FORWARD: ['input', 'kernel', 'output'],
            Command.SOLVE: ['input', 'kernel', 'output'],
            Command.ORACLE_CHECK: ['input', 'kernel'],
            Command.BCCB: ['input'],
            Command.BENCH: [],
            Command.GENERATE: ['output', 'shape'],
        }[self.command]
        missing = [name for name in required if getattr(self, name) is None]
        if missing:
            flags = ', '.join('--' + name.replace('_', '-') for name in missing)
            raise ValueError(f"Command {self.command.value} requires {flags}")

        if self.command in (Command.SOLVE, Command.ORACLE_CHECK):
            if self.predictor is None:
                if self.w_const is None and self.w_file is None:
                    raise ValueError("Provide --w-const, --w-file or --predictor")
                if self.wlam_const is None and self.wlam_file is None:
                    raise ValueError("Provide --wlam-const, --wlam-file or --predictor")
            elif self.w_taps is None or self.wlam_taps is None:
                raise ValueError("--predictor needs --w-taps and --wlam-taps")
        if self.x0 is X0Policy.FILE and self.x0_file is None:
            raise ValueError("--x0 file requires --x0-file")
        if any(size < 1 for size in self.sizes):
            raise ValueError(f"--sizes must be positive, got {self.sizes}")
        if self.grid is not None and min(self.grid) < 1:
            raise ValueError(f"--grid must be positive, got {self.grid}")
        if self.shape is not None and min(self.shape) < 1:
            raise ValueError(f"--shape must be positive, got {self.shape}")
        if not self.low < self.high:
            raise ValueError(f"--low must be below --high, got {self.low} >= {self.high}")
        return self

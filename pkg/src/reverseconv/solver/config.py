"""
Configuration settings for the WRC solvers.
"""

from dataclasses import dataclass
from enum import Enum

import numpy as np

# Fixed guard used when no learnable bias drives the solve
DEFAULT_EPS = 1e-5
# Floor added to softplus(bias) in the learnable-bias guard
EPS_FLOOR = 1e-5
# Imaginary residue tolerated on the solver output
SOLVE_RESIDUE_TOLERANCE = 1e-6


class WeightMode(Enum):
    """Positivity parameterization applied to predicted weights."""
    NONE = 'none'
    SOFTPLUS = 'softplus'
    LOG1P = 'log1p'


class PredictorKind(Enum):
    """How weight fields are produced."""
    MATRIX = 'matrix'
    CONVOLUTION = 'conv'


@dataclass(frozen=True)
class WeightParam:
    """
    Weight parameterization.

    Attributes:
        mode: Positivity scheme
        bias: Learnable bias feeding the epsilon guard
    """
    mode: WeightMode = WeightMode.LOG1P
    bias: float = 0.0

    def guard(self) -> float:
        """softplus(bias) + 1e-5, the guard used when predicted weights drive the solve."""
        return float(np.logaddexp(0.0, self.bias)) + EPS_FLOOR

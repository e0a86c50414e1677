"""
Problem and predictor types for the WRC solvers.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from reverseconv.core.config import WeightRole
from reverseconv.core.errors import ContractError, DimensionError, ValidationError
from reverseconv.core.models import FeatureMap, Kernel, WeightField
from reverseconv.solver.config import DEFAULT_EPS, PredictorKind, WeightParam
from reverseconv.spectral.forward import ForwardSpec


@dataclass(frozen=True)
class WrcProblem:
    """
    One weighted reverse convolution instance.

    Attributes:
        y: Low-resolution observation (C, h, w)
        spec: Kernel and scale of the forward model
        w_data: |W|^2, shape of y
        w_reg: |W_lam|^2, shape of x0
        x0: High-resolution prior (C, h*s, w*s)
        eps: Guard added to the regularizer; 0 is allowed when w_reg is strictly positive
        allow_residue: Keep the real part of a non-Hermitian solution instead of raising
    """
    y: FeatureMap
    spec: ForwardSpec
    w_data: WeightField
    w_reg: WeightField
    x0: FeatureMap
    eps: float = DEFAULT_EPS
    allow_residue: bool = False

    def __post_init__(self):
        s = self.spec.s
        channels, height, width = self.y.shape
        high = (channels, height * s, width * s)
        if self.w_data.shape != self.y.shape:
            raise DimensionError(f"w_data shape {self.w_data.shape} != y shape {self.y.shape}")
        if self.x0.shape != high:
            raise DimensionError(f"x0 shape {self.x0.shape} != expected {high}")
        if self.w_reg.shape != high:
            raise DimensionError(f"w_reg shape {self.w_reg.shape} != expected {high}")
        if self.w_data.role is not WeightRole.DATA_FIDELITY or self.w_reg.role is not WeightRole.REGULARIZER:
            raise ValidationError("Weight fields passed with swapped roles")
        if not np.isfinite(self.eps) or self.eps < 0:
            raise ContractError(f"eps must be finite and >= 0, got {self.eps}")
        if self.eps == 0 and np.any(self.w_reg.data == 0):
            raise ValidationError("w_reg has zero entries and eps=0; the outer division is undefined")
        self.spec.check(self.x0)

    @property
    def high_shape(self):
        return self.x0.shape

    @property
    def has_uniform_weights(self) -> bool:
        """True when both fields are spatially constant per channel, where the closed form is exact."""
        return self.w_data.is_uniform() and self.w_reg.is_uniform()


@dataclass(frozen=True)
class WeightPredictor:
    """
    Source of the two weight fields.

    Attributes:
        kind: MATRIX uses stored raw maps, CONVOLUTION filters the conditioning tensors
        param: Positivity parameterization applied to the raw maps
        data_taps: Depthwise kernel conditioned on the low-resolution input (CONVOLUTION)
        reg_taps: Depthwise kernel conditioned on the prior (CONVOLUTION)
        data_matrix: Raw low-resolution map (MATRIX)
        reg_matrix: Raw high-resolution map (MATRIX)
    """
    kind: PredictorKind
    param: WeightParam = WeightParam()
    data_taps: Optional[Kernel] = None
    reg_taps: Optional[Kernel] = None
    data_matrix: Optional[FeatureMap] = None
    reg_matrix: Optional[FeatureMap] = None

    def __post_init__(self):
        if self.kind is PredictorKind.CONVOLUTION and (self.data_taps is None or self.reg_taps is None):
            raise ContractError("Convolution predictor needs both data_taps and reg_taps")
        if self.kind is PredictorKind.MATRIX and (self.data_matrix is None or self.reg_matrix is None):
            raise ContractError("Matrix predictor needs both data_matrix and reg_matrix")

"""
Weight parameterization, weight prediction and prior initialization.
"""

from typing import Tuple

import numpy as np
import scipy.ndimage

from reverseconv.core.config import WeightRole
from reverseconv.core.errors import DimensionError
from reverseconv.core.models import FeatureMap, Kernel, WeightField
from reverseconv.solver.config import PredictorKind, WeightMode, WeightParam
from reverseconv.solver.models import WeightPredictor
from reverseconv.spectral.forward import circular_convolve


def apply_weight_param(raw: FeatureMap, p: WeightParam, role: WeightRole = WeightRole.DATA_FIDELITY) -> WeightField:
    """
    Map raw predictor output to a nonnegative weight field.

    Args:
        raw: Raw map
        p: Parameterization; NONE passes values through, SOFTPLUS is ln(1 + e^v),
           LOG1P is ln(1 + v^2)
        role: Role tag of the returned field

    Returns:
        WeightField (NONE with negative input raises ValidationError)
    """
    if p.mode is WeightMode.SOFTPLUS:
        values = np.logaddexp(0.0, raw.data)
    elif p.mode is WeightMode.LOG1P:
        values = np.log1p(np.square(raw.data))
    else:
        values = raw.data
    return WeightField(values, role)


def _convolve_condition(x: FeatureMap, taps: Kernel, name: str) -> FeatureMap:
    if taps.channels != x.channels:
        raise DimensionError(f"{name} predictor has {taps.channels} channels, input has {x.channels}")
    kh, kw = taps.size
    if kh > x.height or kw > x.width:
        raise DimensionError(f"{name} predictor kernel {kh}x{kw} larger than {x.height}x{x.width} input")
    return FeatureMap(circular_convolve(x.data, taps))


def predict_weights(predictor: WeightPredictor, x_lo: FeatureMap, x0: FeatureMap) -> Tuple[WeightField, WeightField]:
    """
    Produce the data-fidelity and regularizer fields.

    Args:
        predictor: Matrix or convolution predictor
        x_lo: Low-resolution conditioning tensor (the observation)
        x0: High-resolution prior

    Returns:
        Tuple of (w_data, w_reg)
    """
    if predictor.kind is PredictorKind.MATRIX:
        raw_data, raw_reg = predictor.data_matrix, predictor.reg_matrix
        if raw_data.shape != x_lo.shape or raw_reg.shape != x0.shape:
            raise DimensionError(
                f"Stored maps {raw_data.shape}/{raw_reg.shape} do not match inputs {x_lo.shape}/{x0.shape}"
            )
    else:
        raw_data = _convolve_condition(x_lo, predictor.data_taps, "Data")
        raw_reg = _convolve_condition(x0, predictor.reg_taps, "Regularizer")

    w_data = apply_weight_param(raw_data, predictor.param, WeightRole.DATA_FIDELITY)
    w_reg = apply_weight_param(raw_reg, predictor.param, WeightRole.REGULARIZER)
    return w_data, w_reg


def default_x0(y: FeatureMap, s: int) -> FeatureMap:
    """
    Corner-aligned bilinear interpolation of y to s times its resolution.

    Args:
        y: Low-resolution tensor
        s: Scale factor

    Returns:
        Prior estimate X0 of shape (C, h*s, w*s)
    """
    if s < 1:
        raise DimensionError(f"Scale factor must be >= 1, got {s}")
    if s == 1:
        return y
    channels, height, width = y.shape
    # grid_mode=False maps output corners onto input corners
    out = scipy.ndimage.zoom(
        y.data, (1.0, s, s), order=1, mode='nearest', grid_mode=False, prefilter=False
    )
    if out.shape != (channels, height * s, width * s):
        raise DimensionError(f"Interpolation produced {out.shape}")
    return FeatureMap(out)

"""
FFT closed-form solvers for weighted reverse convolution.

The general solver evaluates

    L' = conj(F_K) F[(|W|^2 Y) up s] + F[(|W_lam|^2 + eps) X0]
    Q  = |W|^2 (F_K L') down s / (|W|^2 (|F_K|^2 down s) + (|W_lam|^2 down s) + eps)
    X  = F^-1[(L' - conj(F_K) (.)s Q) / (|W_lam|^2 + eps)]

where `down s` is the coset mean and `(.)s` the tiled product. When both
weight fields are spatially constant per channel this is the exact
minimizer of the weighted objective. For spatially varying fields the
spectrum is not Hermitian and the solve raises NumericalConsistencyError,
unless the problem sets allow_residue, in which case the real part is kept
and the residue logged.
"""

from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional

import numpy as np
import scipy.fft
from rich.console import Console

from reverseconv.core.errors import ContractError
from reverseconv.core.models import FeatureMap
from reverseconv.solver.config import SOLVE_RESIDUE_TOLERANCE
from reverseconv.solver.models import WrcProblem
from reverseconv.spectral.fft import block_mean, block_tile, psf_to_otf, real_part
from reverseconv.spectral.forward import ForwardSpec, adjoint, forward_spectral

console = Console(stderr=True)

_AXES = (-2, -1)


def _fft(a: np.ndarray) -> np.ndarray:
    return scipy.fft.fft2(a, axes=_AXES)


def _to_feature_map(spectrum: np.ndarray, allow_residue: bool) -> FeatureMap:
    out = scipy.fft.ifft2(spectrum, axes=_AXES)
    if not allow_residue:
        return FeatureMap(real_part(out, SOLVE_RESIDUE_TOLERANCE))
    residue = float(np.max(np.abs(out.imag)))
    if residue > SOLVE_RESIDUE_TOLERANCE:
        console.log(
            f"[WARNING] Spatially varying weights: discarding imaginary residue {residue:.3e}; "
            "the output is not the exact minimizer"
        )
    return FeatureMap(np.ascontiguousarray(out.real))


def wrc_solve(p: WrcProblem) -> FeatureMap:
    """
    General closed-form weighted reverse convolution.

    Args:
        p: Problem instance

    Returns:
        High-resolution estimate X* of shape (C, h*s, w*s)

    Raises:
        NumericalConsistencyError: Imaginary residue above SOLVE_RESIDUE_TOLERANCE and
            p.allow_residue is False
    """
    s = p.spec.s
    w_data = p.w_data.data
    reg = p.w_reg.data + p.eps

    otf = psf_to_otf(p.spec.kernel, p.high_shape[1:]).data
    otf_conj = np.conj(otf)
    weighted_up = np.zeros(p.high_shape, dtype=np.float64)
    weighted_up[:, ::s, ::s] = w_data * p.y.data

    big_l = otf_conj * _fft(weighted_up) + _fft(reg * p.x0.data)
    numerator = w_data * block_mean(otf * big_l, s)
    denominator = w_data * block_mean(np.abs(otf) ** 2, s) + block_mean(p.w_reg.data, s) + p.eps
    q = numerator / denominator
    spectrum = (big_l - otf_conj * block_tile(q, s)) / reg
    return _to_feature_map(spectrum, p.allow_residue)


def wrc_solve_s1(p: WrcProblem) -> FeatureMap:
    """
    Direct elementwise solution for s = 1.

    X = F^-1[(conj(F_K) F(|W|^2 Y) + F((|W_lam|^2 + eps) X0)) / (|W|^2 |F_K|^2 + |W_lam|^2 + eps)]
    """
    if p.spec.s != 1:
        raise ContractError(f"wrc_solve_s1 requires s = 1, got s = {p.spec.s}")
    reg = p.w_reg.data + p.eps
    otf = psf_to_otf(p.spec.kernel, p.high_shape[1:]).data
    numerator = np.conj(otf) * _fft(p.w_data.data * p.y.data) + _fft(reg * p.x0.data)
    denominator = p.w_data.data * np.abs(otf) ** 2 + reg
    return _to_feature_map(numerator / denominator, p.allow_residue)


def converse2d_solve(y: FeatureMap, spec: ForwardSpec, lam: float, x0: Optional[FeatureMap] = None) -> FeatureMap:
    """
    Reverse convolution with unit data weights and an isotropic l2 prior.

    Args:
        y: Low-resolution observation
        spec: Kernel and scale
        lam: Regularization strength, > 0
        x0: Prior estimate; zero map when omitted

    Returns:
        High-resolution estimate
    """
    if not lam > 0:
        raise ContractError(f"lambda must be > 0, got {lam}")
    s = spec.s
    channels, height, width = y.shape
    if x0 is None:
        x0 = FeatureMap.zeros(channels, height * s, width * s)
    spec.check(x0)

    otf = psf_to_otf(spec.kernel, (height * s, width * s)).data
    otf_conj = np.conj(otf)
    up = np.zeros(x0.shape, dtype=np.float64)
    up[:, ::s, ::s] = y.data
    big_l = otf_conj * _fft(up) + lam * _fft(x0.data)
    q = block_mean(otf * big_l, s) / (block_mean(np.abs(otf) ** 2, s) + lam)
    spectrum = (big_l - otf_conj * block_tile(q, s)) / lam
    return _to_feature_map(spectrum, allow_residue=False)


def objective_value(p: WrcProblem, x: FeatureMap) -> float:
    """
    Weighted objective sum |W|^2 (Y - forward(X))^2 + sum |W_lam|^2 (X - X0)^2 over all channels.

    The eps guard is not part of the objective.
    """
    data_residual = p.y.data - forward_spectral(x, p.spec).data
    prior_residual = x.data - p.x0.data
    return float(np.sum(p.w_data.data * data_residual ** 2) + np.sum(p.w_reg.data * prior_residual ** 2))


def objective_gradient(p: WrcProblem, x: FeatureMap, guarded: bool = False) -> FeatureMap:
    """
    Analytic gradient 2 K^H S^H |W|^2 (S K X - Y) + 2 |W_lam|^2 (X - X0).

    Args:
        p: Problem instance
        x: Point of evaluation
        guarded: Use |W_lam|^2 + eps, the regularizer the solvers actually invert

    Returns:
        Gradient with the shape of x
    """
    reg = p.w_reg.data + p.eps if guarded else p.w_reg.data
    residual = FeatureMap(p.w_data.data * (forward_spectral(x, p.spec).data - p.y.data))
    back = adjoint(residual, p.spec).data
    return FeatureMap(2.0 * back + 2.0 * reg * (x.data - p.x0.data))


def stationarity_norm(p: WrcProblem, x: FeatureMap, guarded: bool = False) -> float:
    """Gradient max-norm relative to 1 + max|X|."""
    gradient = objective_gradient(p, x, guarded).data
    return float(np.max(np.abs(gradient)) / (1.0 + np.max(np.abs(x.data))))


def wrc_solve_batch(problems: List[WrcProblem], threads: int = 1) -> List[FeatureMap]:
    """Solve independent problems, optionally on a thread pool."""
    if threads <= 1:
        return [wrc_solve(p) for p in problems]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(wrc_solve, problems))

"""
Brute-force solves of the weighted normal equations.

`dense_solve` factorizes A^T D_w A + D_reg with a Cholesky decomposition in
the spatial domain. `woodbury_solve` reaches the same answer through the
matrix-inversion lemma in the frequency domain, with dense unitary DFT
matrices; it reads |W_lam|^2 as diagonal on the frequency grid, which agrees
with the spatial reading only when the regularizer is constant.
"""

from typing import Tuple

import numpy as np
import scipy.fft
import scipy.linalg

from reverseconv.core.errors import (
    CapacityError, ContractError, NumericalConsistencyError, SingularityError
)
from reverseconv.core.models import FeatureMap
from reverseconv.oracle.models import DenseProblem
from reverseconv.solver.models import WrcProblem
from reverseconv.spectral.fft import embed_kernel, real_part


MAX_DENSE_SIZE = 4096
RESIDUAL_TOLERANCE = 1e-10


def _conv_matrix(taps: np.ndarray, origin: Tuple[int, int], grid: Tuple[int, int]) -> np.ndarray:
    height, width = grid
    n = height * width
    rows_y, rows_x = np.divmod(np.arange(n), width)
    matrix = np.zeros((n, n), dtype=np.float64)
    oy, ox = origin
    kh, kw = taps.shape
    for ky in range(kh):
        for kx in range(kw):
            dy, dx = ky - oy, kx - ox
            cols = ((rows_y - dy) % height) * width + (rows_x - dx) % width
            matrix[np.arange(n), cols] += taps[ky, kx]
    return matrix


def _down_matrix(low: Tuple[int, int], high: Tuple[int, int], s: int) -> np.ndarray:
    n_low = low[0] * low[1]
    ly, lx = np.divmod(np.arange(n_low), low[1])
    matrix = np.zeros((n_low, high[0] * high[1]), dtype=np.float64)
    matrix[np.arange(n_low), (ly * s) * high[1] + lx * s] = 1.0
    return matrix


def assemble(p: WrcProblem, channel: int) -> DenseProblem:
    """
    Build the dense operators for one channel.

    Args:
        p: Problem instance
        channel: Channel index

    Returns:
        DenseProblem; d_reg includes the problem's eps
    """
    _, height, width = p.high_shape
    if height * width > MAX_DENSE_SIZE:
        raise CapacityError(f"Dense oracle limited to {MAX_DENSE_SIZE} unknowns, got {height * width}")
    if not 0 <= channel < p.y.channels:
        raise ContractError(f"Channel {channel} out of range for {p.y.channels} channels")

    kernel = p.spec.kernel
    taps = kernel.taps[channel]
    low = (p.y.height, p.y.width)
    embedded = embed_kernel(taps[None], kernel.origin, (height, width))[0]
    return DenseProblem(
        a_conv=_conv_matrix(taps, kernel.origin, (height, width)),
        a_down=_down_matrix(low, (height, width), p.spec.s),
        d_w=p.w_data.data[channel].ravel().copy(),
        d_reg=p.w_reg.data[channel].ravel() + p.eps,
        y_vec=p.y.data[channel].ravel().copy(),
        x0_vec=p.x0.data[channel].ravel().copy(),
        otf=scipy.fft.fft2(embedded).ravel(),
        low_grid=low,
        high_grid=(height, width),
    )


def _normal_equations(d: DenseProblem) -> Tuple[np.ndarray, np.ndarray]:
    a = d.operator
    matrix = a.T @ (d.d_w[:, None] * a) + np.diag(d.d_reg)
    rhs = a.T @ (d.d_w * d.y_vec) + d.d_reg * d.x0_vec
    return matrix, rhs


def _check_residual(matrix: np.ndarray, x: np.ndarray, rhs: np.ndarray):
    norm = np.linalg.norm(rhs)
    if norm == 0:
        return
    residual = np.linalg.norm(matrix @ x - rhs) / norm
    if residual > RESIDUAL_TOLERANCE:
        raise NumericalConsistencyError(f"Dense solve residual {residual:.3e} exceeds {RESIDUAL_TOLERANCE:.0e}")


def dense_solve(d: DenseProblem) -> FeatureMap:
    """
    Solve the weighted normal equations by Cholesky factorization.

    Args:
        d: Dense problem for one channel

    Returns:
        Single-channel FeatureMap of shape (1, H, W)
    """
    matrix, rhs = _normal_equations(d)
    try:
        factor = scipy.linalg.cho_factor(matrix)
    except np.linalg.LinAlgError:
        condition = float(np.linalg.cond(matrix))
        raise SingularityError(
            f"Normal-equations matrix is not positive definite (condition ~ {condition:.3e})",
            condition=condition,
        ) from None
    x = scipy.linalg.cho_solve(factor, rhs)
    _check_residual(matrix, x, rhs)
    return FeatureMap(x.reshape(1, *d.high_grid))


def dense_solve_problem(p: WrcProblem) -> FeatureMap:
    """Dense solve of every channel, stacked into one FeatureMap."""
    channels = [dense_solve(assemble(p, c)).data[0] for c in range(p.y.channels)]
    return FeatureMap(np.stack(channels))


def dense_objective(d: DenseProblem, x_vec: np.ndarray) -> float:
    """Weighted quadratic objective with the regularizer diagonal in the spatial domain."""
    data_residual = d.y_vec - d.operator @ x_vec
    prior_residual = x_vec - d.x0_vec
    return float(np.sum(d.d_w * data_residual ** 2) + np.sum(d.d_reg * prior_residual ** 2))


def _unitary_dft(grid: Tuple[int, int]) -> np.ndarray:
    return np.kron(scipy.linalg.dft(grid[0], scale='sqrtn'), scipy.linalg.dft(grid[1], scale='sqrtn'))


def woodbury_solve(d: DenseProblem) -> FeatureMap:
    """
    Solve through the matrix-inversion lemma in the frequency domain.

    x = F^H [D^-1 - D^-1 Lb^H (C^-1 + Lb D^-1 Lb^H)^-1 Lb D^-1] G with
    Lb = F_l S F^H diag(otf), C = F_l D_w F_l^H, D = diag(d_reg) on the
    frequency grid and G = Lb^H C F_l y + D F x0.

    Args:
        d: Dense problem for one channel; d_w must be strictly positive

    Returns:
        Single-channel FeatureMap of shape (1, H, W)
    """
    if np.any(d.d_w <= 0):
        raise ContractError("Woodbury solve needs strictly positive data weights")
    f_high = _unitary_dft(d.high_grid)
    f_low = _unitary_dft(d.low_grid)

    lam_bar = f_low @ d.a_down @ f_high.conj().T * d.otf[None, :]
    c = f_low @ (d.d_w[:, None] * f_low.conj().T)
    d_inv = 1.0 / d.d_reg
    g = lam_bar.conj().T @ (c @ (f_low @ d.y_vec)) + d.d_reg * (f_high @ d.x0_vec)

    inner = scipy.linalg.inv(c) + (lam_bar * d_inv[None, :]) @ lam_bar.conj().T
    correction = lam_bar.conj().T @ scipy.linalg.solve(inner, lam_bar @ (d_inv * g))
    x_freq = d_inv * g - d_inv * correction
    x = real_part(f_high.conj().T @ x_freq, 1e-8)
    return FeatureMap(x.reshape(1, *d.high_grid))


def adjoint_gap(d: DenseProblem, x_vec: np.ndarray, u_vec: np.ndarray) -> float:
    """
    Relative mismatch of <A x, u> and <x, A^T u> for the dense operator.

    Args:
        d: Dense problem
        x_vec: High-resolution vector
        u_vec: Low-resolution vector

    Returns:
        |<A x, u> - <x, A^T u>| / max(1, ||A x|| ||u||)
    """
    a = d.operator
    forward = a @ x_vec
    gap = abs(float(forward @ u_vec) - float(x_vec @ (a.T @ u_vec)))
    return gap / max(1.0, float(np.linalg.norm(forward) * np.linalg.norm(u_vec)))

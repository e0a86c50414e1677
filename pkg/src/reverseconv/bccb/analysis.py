"""
Frobenius projection onto BCCB matrices.

Entry (q, p) of a BCCB matrix depends only on the circular offset
((p_y - q_y) mod h, (p_x - q_x) mod w). Each offset class holds h*w entries,
so averaging within classes is the orthogonal projection onto the subspace.
"""

from functools import lru_cache
from typing import Tuple

import numpy as np
import scipy.fft

from reverseconv.bccb.models import AttentionMatrix, BccbGenerator
from reverseconv.core.errors import ContractError
from reverseconv.core.models import Spectrum


@lru_cache(maxsize=4)
def offset_classes(grid: Tuple[int, int]) -> np.ndarray:
    """(N, N) table of the row-major offset index of every (query, key) pair."""
    h, w = grid
    qy, qx = np.divmod(np.arange(h * w), w)
    dy = (qy[None, :] - qy[:, None]) % h
    dx = (qx[None, :] - qx[:, None]) % w
    table = dy * w + dx
    table.flags.writeable = False
    return table


def project_bccb(m: AttentionMatrix) -> BccbGenerator:
    """
    Nearest BCCB matrix in Frobenius norm, returned as its generator.

    Args:
        m: Attention matrix

    Returns:
        Generator whose (dy, dx) entry is the mean of m over that offset class
    """
    h, w = m.grid
    classes = offset_classes(m.grid).ravel()
    sums = np.bincount(classes, weights=m.data.ravel(), minlength=h * w)
    return BccbGenerator(m.grid, (sums / (h * w)).reshape(h, w))


def expand_bccb(g: BccbGenerator) -> AttentionMatrix:
    """Materialize the (h*w) x (h*w) matrix of a generator."""
    return AttentionMatrix(g.grid, g.gen.ravel()[offset_classes(g.grid)])


def bccb_residual(m: AttentionMatrix) -> Tuple[float, BccbGenerator]:
    """
    Relative distance to the BCCB subspace.

    Args:
        m: Attention matrix with nonzero Frobenius norm

    Returns:
        Tuple of (||m - P(m)||_F / ||m||_F, generator of P(m))
    """
    norm = np.linalg.norm(m.data)
    if norm == 0:
        raise ContractError("BCCB residual is undefined for the zero matrix")
    gen = project_bccb(m)
    residual = np.linalg.norm(m.data - expand_bccb(gen).data) / norm
    return float(residual), gen


def bccb_spectrum(g: BccbGenerator) -> Spectrum:
    """Eigenvalues of the expanded matrix: the 2-D DFT of the generator."""
    return Spectrum(scipy.fft.fft2(g.gen)[None])

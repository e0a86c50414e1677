"""
Dense vectorized form of one channel of a WRC problem.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class DenseProblem:
    """
    Explicit matrices and vectors of the vectorized objective
    ||diag(d_w)^(1/2) (y - A_down A_conv x)||^2 + ||diag(d_reg)^(1/2) (x - x0)||^2.

    Attributes:
        a_conv: (N_h, N_h) circular convolution matrix
        a_down: (N_l, N_h) decimation selector
        d_w: (N_l,) data weights |W|^2
        d_reg: (N_h,) regularizer weights |W_lam|^2 (eps included)
        y_vec: (N_l,) observation
        x0_vec: (N_h,) prior
        otf: (N_h,) unnormalized OTF of the kernel, row-major
        low_grid: (h, w)
        high_grid: (H, W)
    """
    a_conv: np.ndarray
    a_down: np.ndarray
    d_w: np.ndarray
    d_reg: np.ndarray
    y_vec: np.ndarray
    x0_vec: np.ndarray
    otf: np.ndarray
    low_grid: tuple
    high_grid: tuple

    @property
    def operator(self) -> np.ndarray:
        """A = A_down A_conv."""
        return self.a_down @ self.a_conv

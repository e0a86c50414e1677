"""
Per-layer BCCB reports.
"""

from dataclasses import dataclass
from typing import List

import numpy as np
import pandas as pd
from rich.console import Console

from reverseconv.bccb.analysis import bccb_residual, bccb_spectrum
from reverseconv.bccb.models import AttentionMatrix, BccbGenerator
from reverseconv.core.errors import DimensionError
from reverseconv.core.models import FeatureMap

console = Console(stderr=True)


@dataclass
class BccbReport:
    """
    Residuals and generators of a set of attention matrices.

    Attributes:
        residuals: Relative residual per entry
        gens: Generator per entry
        head_averaged: Whether the entries were averaged before projection
    """
    residuals: List[float]
    gens: List[BccbGenerator]
    head_averaged: bool

    def generator_tensor(self) -> FeatureMap:
        """Generators stacked as a (L, h, w) tensor."""
        return FeatureMap(np.stack([g.gen for g in self.gens]))

    def residual_tensor(self) -> FeatureMap:
        """Residuals as a (L, 1, 1) tensor."""
        return FeatureMap(np.asarray(self.residuals, dtype=np.float64).reshape(-1, 1, 1))


def layer_report(mats: List[AttentionMatrix], per_matrix: bool = False) -> BccbReport:
    """
    Project attention matrices onto the BCCB subspace.

    Args:
        mats: Matrices sharing one grid
        per_matrix: Report every matrix separately instead of their entrywise mean

    Returns:
        BccbReport with one entry (head-averaged) or one per matrix
    """
    if not mats:
        raise DimensionError("layer_report needs at least one matrix")
    grid = mats[0].grid
    for m in mats[1:]:
        if m.grid != grid:
            raise DimensionError(f"Grid mismatch: {m.grid} vs {grid}")

    if per_matrix:
        targets = mats
    else:
        targets = [AttentionMatrix(grid, np.mean([m.data for m in mats], axis=0))]

    residuals, gens = [], []
    for m in targets:
        residual, gen = bccb_residual(m)
        residuals.append(residual)
        gens.append(gen)
    return BccbReport(residuals=residuals, gens=gens, head_averaged=not per_matrix)


def report_frame(report: BccbReport) -> pd.DataFrame:
    """Tabulate a report: residual, generator peak and spectral range per entry."""
    rows = []
    for index, (residual, gen) in enumerate(zip(report.residuals, report.gens)):
        eigen = np.abs(bccb_spectrum(gen).data)
        rows.append({
            'slice': index,
            'rel_residual': residual,
            'gen_peak': float(np.max(np.abs(gen.gen))),
            'eig_max': float(eigen.max()),
            'eig_min': float(eigen.min()),
        })
    return pd.DataFrame(rows)


def display_report(report: BccbReport):
    frame = report_frame(report)
    mode = "head-averaged" if report.head_averaged else "per-matrix"
    console.log(f"BCCB report ({mode}, {len(frame)} entries)")
    console.log(f"Mean relative residual: {frame['rel_residual'].mean():.6f}")
    console.log(f"Max relative residual: {frame['rel_residual'].max():.6f}")

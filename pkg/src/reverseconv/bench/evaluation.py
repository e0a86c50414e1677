"""
Evaluation of benchmark results: tables, log-log scaling slopes and output.
"""

import os
from typing import Dict, List

import numpy as np
import pandas as pd
from rich.console import Console
from sklearn.linear_model import LinearRegression

from reverseconv.bench.harness import BenchResult

console = Console(stderr=True)
output = Console(soft_wrap=True, highlight=False)


def results_frame(results: List[BenchResult]) -> pd.DataFrame:
    """One row per (case, path)."""
    return pd.DataFrame([{
        'case': r.case.name,
        'path': r.path,
        'n': r.case.n,
        'channels': r.case.channels,
        's': r.case.s,
        'k': r.case.k,
        'median_ns': r.median_ns,
        'min_ns': r.min_ns,
    } for r in results])


def fit_slopes(results: List[BenchResult]) -> Dict[str, float]:
    """
    Least-squares slope of log(median_ns) against log(n) per path.

    Args:
        results: Results covering at least two sizes per path

    Returns:
        Mapping path -> slope; paths measured at fewer than two sizes are skipped
    """
    frame = results_frame(results)
    slopes = {}
    for path, group in frame.groupby('path', sort=False):
        if group['n'].nunique() < 2:
            console.log(f"[WARNING] Path {path} measured at a single size; no slope fitted")
            continue
        x = np.log(group['n'].to_numpy(dtype=np.float64)).reshape(-1, 1)
        y = np.log(group['median_ns'].to_numpy(dtype=np.float64))
        slopes[path] = float(LinearRegression().fit(x, y).coef_[0])
    return slopes


def bench_lines(results: List[BenchResult], slopes: Dict[str, float] = None) -> List[str]:
    lines = [r.line() for r in results]
    for path, slope in (slopes or {}).items():
        lines.append(f"bench fit path={path} slope={slope:.4f}")
    return lines


def display_results(results: List[BenchResult], slopes: Dict[str, float] = None):
    """Print machine-readable bench lines on stdout."""
    for line in bench_lines(results, slopes):
        output.print(line, markup=False)


def save_results(results: List[BenchResult], save_dir: str) -> str:
    """
    Write the results table as TSV.

    Args:
        results: Benchmark results
        save_dir: Existing output directory

    Returns:
        Path of the written file
    """
    save_file = os.path.join(save_dir, 'bench.tsv')
    results_frame(results).to_csv(save_file, sep='\t', index=False)
    console.log(f"Results saved to: {save_file}")
    return save_file

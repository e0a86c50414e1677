"""
Comparison of a closed-form solver against the dense oracle.
"""

from dataclasses import dataclass
from typing import Callable

import numpy as np
from rich.console import Console

from reverseconv.core.errors import DimensionError
from reverseconv.core.models import FeatureMap
from reverseconv.oracle.dense import dense_solve_problem
from reverseconv.solver.models import WrcProblem
from reverseconv.solver.wrc import stationarity_norm, wrc_solve

console = Console(stderr=True)

ORACLE_TOLERANCE = 1e-6

Solver = Callable[[WrcProblem], FeatureMap]


@dataclass
class OracleReport:
    """
    Outcome of one oracle comparison.

    Attributes:
        discrepancy: max |x - x_dense| / (1 + |x_dense|) over all entries
        stationarity: Gradient max-norm at x relative to 1 + max|x|
        tolerance: Threshold both numbers are held to
        solution: The solver's output
    """
    discrepancy: float
    stationarity: float
    tolerance: float
    solution: FeatureMap

    @property
    def passed(self) -> bool:
        return self.discrepancy < self.tolerance and self.stationarity < self.tolerance

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"


def max_relative_error(a: FeatureMap, b: FeatureMap) -> float:
    """Largest elementwise |a - b| / (1 + |b|)."""
    if a.shape != b.shape:
        raise DimensionError(f"Cannot compare shapes {a.shape} and {b.shape}")
    return float(np.max(np.abs(a.data - b.data) / (1.0 + np.abs(b.data))))


def check_against_dense(p: WrcProblem, solver: Solver = wrc_solve,
                        tolerance: float = ORACLE_TOLERANCE) -> OracleReport:
    """
    Solve a problem with `solver` and with the dense oracle, then compare.

    Args:
        p: Problem small enough for the dense path
        solver: Closed-form solver under test
        tolerance: Pass threshold for discrepancy and stationarity

    Returns:
        OracleReport; stationarity uses the eps-guarded regularizer that both paths solve with
    """
    solution = solver(p)
    reference = dense_solve_problem(p)
    report = OracleReport(
        discrepancy=max_relative_error(solution, reference),
        stationarity=stationarity_norm(p, solution, guarded=True),
        tolerance=tolerance,
        solution=solution,
    )
    if not report.passed:
        console.log(
            f"[WARNING] Oracle check failed: discrepancy={report.discrepancy:.3e}, "
            f"stationarity={report.stationarity:.3e}"
        )
    return report

"""
Benchmark harness: seeded problem generation, correctness gate and timing.
"""

import statistics
import time
from dataclasses import dataclass, replace
from typing import Callable, List, Sequence

import numpy as np
from rich.console import Console

from reverseconv.bench.config import DENSE_PATH, FFT_PATH, PARALLEL_PATH, WARMUP, BenchCase
from reverseconv.core.config import WeightRole
from reverseconv.core.errors import NumericalConsistencyError
from reverseconv.core.models import FeatureMap, Kernel, WeightField
from reverseconv.core.rng import SplitMix64
from reverseconv.oracle.dense import dense_solve_problem
from reverseconv.oracle.evaluation import ORACLE_TOLERANCE, check_against_dense, max_relative_error
from reverseconv.solver.models import WrcProblem
from reverseconv.solver.wrc import converse2d_solve, stationarity_norm, wrc_solve, wrc_solve_batch
from reverseconv.spectral.forward import ForwardSpec

console = Console(stderr=True)

REDUCTION_TOLERANCE = 1e-10


@dataclass
class BenchResult:
    """
    Timings of one path on one case.

    Attributes:
        case: Benchmarked configuration
        path: fft, dense or fft-parallel
        samples_ns: Timed samples after warmup
    """
    case: BenchCase
    path: str
    samples_ns: List[int]

    @property
    def median_ns(self) -> int:
        return int(statistics.median(self.samples_ns))

    @property
    def min_ns(self) -> int:
        return int(min(self.samples_ns))

    def line(self) -> str:
        return (
            f"bench case={self.case.name} path={self.path} n={self.case.n} "
            f"median_ns={self.median_ns} min_ns={self.min_ns}"
        )


def make_problem(case: BenchCase) -> WrcProblem:
    """
    Deterministic problem for a case.

    Weights are strictly positive and constant per channel, and eps = 0, so the
    FFT and dense paths solve the same system exactly.
    """
    rng = SplitMix64(case.seed)
    c, s = case.channels, case.s
    low = (c, case.height // s, case.width // s)
    high = (c, case.height, case.width)

    y = FeatureMap(rng.uniform(-1.0, 1.0, low))
    kernel = Kernel.centered(rng.uniform(0.0, 1.0, (c, case.k, case.k)))
    data_level = rng.uniform(0.5, 2.0, c)[:, None, None]
    reg_level = rng.uniform(0.05, 1.0, c)[:, None, None]
    x0 = FeatureMap(rng.uniform(-1.0, 1.0, high))
    return WrcProblem(
        y=y,
        spec=ForwardSpec(kernel, s),
        w_data=WeightField(np.broadcast_to(data_level, low), WeightRole.DATA_FIDELITY),
        w_reg=WeightField(np.broadcast_to(reg_level, high), WeightRole.REGULARIZER),
        x0=x0,
        eps=0.0,
    )


def split_channels(p: WrcProblem) -> List[WrcProblem]:
    """One single-channel problem per channel of p."""
    problems = []
    for c in range(p.y.channels):
        pick = slice(c, c + 1)
        problems.append(WrcProblem(
            y=FeatureMap(p.y.data[pick]),
            spec=ForwardSpec(Kernel(p.spec.kernel.taps[pick], p.spec.kernel.origin), p.spec.s),
            w_data=WeightField(p.w_data.data[pick], WeightRole.DATA_FIDELITY),
            w_reg=WeightField(p.w_reg.data[pick], WeightRole.REGULARIZER),
            x0=FeatureMap(p.x0.data[pick]),
            eps=p.eps,
            allow_residue=p.allow_residue,
        ))
    return problems


def correctness_gate(case: BenchCase, p: WrcProblem):
    """
    Verify the FFT solver on the generated problem before any timing.

    With the dense path enabled the solution is checked against the oracle;
    otherwise against the unit-weight reduction and the stationarity condition.
    """
    if case.include_dense:
        report = check_against_dense(p)
        if not report.passed:
            raise NumericalConsistencyError(
                f"Correctness gate failed for {case.name}: discrepancy={report.discrepancy:.3e}"
            )
        return

    unit = replace(
        p,
        w_data=WeightField.constant(1.0, p.y.shape, WeightRole.DATA_FIDELITY),
        w_reg=WeightField.constant(1.0, p.x0.shape, WeightRole.REGULARIZER),
    )
    gap = max_relative_error(wrc_solve(unit), converse2d_solve(p.y, p.spec, 1.0, p.x0))
    if gap > REDUCTION_TOLERANCE:
        raise NumericalConsistencyError(f"Correctness gate failed for {case.name}: reduction gap {gap:.3e}")
    stationarity = stationarity_norm(p, wrc_solve(p), guarded=True)
    if stationarity > ORACLE_TOLERANCE:
        raise NumericalConsistencyError(
            f"Correctness gate failed for {case.name}: stationarity {stationarity:.3e}"
        )


def time_call(fn: Callable[[], object], repeats: int, warmup: int = WARMUP) -> List[int]:
    """Nanosecond wall-clock samples of fn after discarding `warmup` calls."""
    for _ in range(warmup):
        fn()
    samples = []
    for _ in range(repeats):
        start = time.perf_counter_ns()
        fn()
        samples.append(time.perf_counter_ns() - start)
    return samples


def run_bench(case: BenchCase) -> List[BenchResult]:
    """
    Gate and time one case.

    Args:
        case: Benchmark configuration

    Returns:
        One BenchResult per timed path, fft first
    """
    p = make_problem(case)
    correctness_gate(case, p)
    console.log(f"Case {case.name}: gate passed, timing {case.repeats} repeats after {WARMUP} warmup runs")

    results = [BenchResult(case, FFT_PATH, time_call(lambda: wrc_solve(p), case.repeats))]
    if case.include_dense:
        results.append(BenchResult(case, DENSE_PATH, time_call(lambda: dense_solve_problem(p), case.repeats)))
    if case.threads > 1:
        parts = split_channels(p)
        results.append(BenchResult(
            case, PARALLEL_PATH, time_call(lambda: wrc_solve_batch(parts, case.threads), case.repeats)
        ))
    return results


def run_sweep(template: BenchCase, sizes: Sequence[int]) -> List[BenchResult]:
    """Run square cases of side H = W = size for every size, reusing the template's other settings."""
    results = []
    for size in sizes:
        case = replace(template, name=f"{template.name}-{size}", height=size, width=size)
        results.extend(run_bench(case))
    return results

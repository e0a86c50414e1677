import re
import time

import numpy as np
import pandas as pd
import pytest

from reverseconv.bench import harness
from reverseconv.bench.config import BenchCase
from reverseconv.bench.evaluation import bench_lines, fit_slopes, results_frame, save_results
from reverseconv.bench.harness import (
    BenchResult, correctness_gate, make_problem, run_bench, run_sweep, split_channels, time_call
)
from reverseconv.core.errors import CapacityError, DimensionError, NumericalConsistencyError, ValidationError
from reverseconv.core.models import FeatureMap
from reverseconv.solver.wrc import wrc_solve

LINE = re.compile(r'^bench case=\S+ path=(fft|dense|fft-parallel) n=\d+ median_ns=\d+ min_ns=\d+$')


def test_generation_is_deterministic():
    case = BenchCase(name='a', channels=2, height=8, width=8, s=2, k=3, seed=4)
    first, second = make_problem(case), make_problem(case)
    for attr in ('y', 'x0', 'w_data', 'w_reg'):
        assert np.array_equal(getattr(first, attr).data, getattr(second, attr).data)
    assert np.array_equal(first.spec.kernel.taps, second.spec.kernel.taps)
    other = make_problem(BenchCase(name='a', channels=2, height=8, width=8, s=2, k=3, seed=5))
    assert not np.array_equal(first.y.data, other.y.data)


def test_generated_weights_are_uniform_and_positive():
    p = make_problem(BenchCase(name='a', channels=3, height=12, width=6, s=3, k=5))
    assert p.has_uniform_weights
    assert p.w_data.data.min() > 0 and p.w_reg.data.min() > 0
    assert p.eps == 0.0


def test_case_validation():
    with pytest.raises(ValidationError):
        BenchCase(name='a', repeats=2)
    with pytest.raises(CapacityError):
        BenchCase(name='a', height=128, width=128)
    with pytest.raises(DimensionError):
        BenchCase(name='a', height=9, width=9, s=2, include_dense=False)
    assert BenchCase(name='a', height=128, width=128, include_dense=False).n == 16384


def test_time_call_discards_warmup():
    calls = []
    samples = time_call(lambda: calls.append(1), repeats=4, warmup=2)
    assert len(calls) == 6
    assert len(samples) == 4
    assert all(sample >= 0 for sample in samples)


def test_run_bench_lines():
    results = run_bench(BenchCase(name='tiny', channels=1, height=8, width=8, s=2, k=3, repeats=3))
    assert [r.path for r in results] == ['fft', 'dense']
    for result in results:
        assert LINE.match(result.line())
        assert len(result.samples_ns) == 3
        assert 0 <= result.min_ns <= result.median_ns
    assert results[0].line().startswith('bench case=tiny path=fft n=64 ')


def test_run_bench_without_dense_and_with_threads():
    results = run_bench(BenchCase(name='par', channels=3, height=8, width=8, s=2, repeats=3,
                                  include_dense=False, threads=2))
    assert [r.path for r in results] == ['fft', 'fft-parallel']


def test_split_channels_solves_like_the_whole():
    p = make_problem(BenchCase(name='a', channels=3, height=6, width=6, s=3))
    parts = [wrc_solve(q).data[0] for q in split_channels(p)]
    assert np.allclose(np.stack(parts), wrc_solve(p).data, atol=1e-12)


def test_gate_rejects_a_corrupted_solver(monkeypatch):
    case = BenchCase(name='bad', height=8, width=8, include_dense=False)
    p = make_problem(case)
    correctness_gate(case, p)
    monkeypatch.setattr(harness, 'wrc_solve', lambda q: FeatureMap(wrc_solve(q).data + 1e-3))
    with pytest.raises(NumericalConsistencyError):
        correctness_gate(case, p)


def _synthetic(path, exponent):
    results = []
    for n_side in (16, 32, 64):
        case = BenchCase(name=f'syn-{n_side}', height=n_side, width=n_side, include_dense=False)
        median = int(10 * case.n ** exponent)
        results.append(BenchResult(case, path, [median, median, median]))
    return results


def test_fit_slopes_on_synthetic_timings():
    slopes = fit_slopes(_synthetic('fft', 1.0) + _synthetic('dense', 2.0))
    assert slopes['fft'] == pytest.approx(1.0, abs=1e-6)
    assert slopes['dense'] == pytest.approx(2.0, abs=1e-6)
    lines = bench_lines([], slopes)
    assert lines == ['bench fit path=fft slope=1.0000', 'bench fit path=dense slope=2.0000']


def test_single_size_has_no_slope():
    assert fit_slopes(_synthetic('fft', 1.0)[:1]) == {}


def test_results_saved_as_tsv(tmp_path):
    results = _synthetic('fft', 1.0)
    path = save_results(results, str(tmp_path))
    table = pd.read_csv(path, sep='\t')
    assert list(table['median_ns']) == list(results_frame(results)['median_ns'])


@pytest.mark.slow
def test_scaling_slopes():
    template = BenchCase(name='scale', channels=1, height=16, width=16, s=2, k=3, repeats=3)
    slopes = fit_slopes(run_sweep(template, (16, 32, 64)))
    assert slopes['fft'] < 1.6
    assert slopes['dense'] > 1.9


@pytest.mark.slow
def test_large_solve_budget():
    p = make_problem(BenchCase(name='big', channels=2, height=128, width=128, s=2, k=3, include_dense=False))
    wrc_solve(p)
    start = time.perf_counter()
    wrc_solve(p)
    assert time.perf_counter() - start < 0.05

from dataclasses import replace

import numpy as np
import pytest

from reverseconv.core.config import WeightRole
from reverseconv.core.errors import ContractError, DimensionError, NumericalConsistencyError, ValidationError
from reverseconv.core.models import FeatureMap, Kernel, WeightField
from reverseconv.core.rng import SplitMix64
from reverseconv.oracle.dense import assemble, dense_objective, dense_solve_problem
from reverseconv.solver.models import WrcProblem
from reverseconv.solver.wrc import (
    converse2d_solve, objective_gradient, objective_value, stationarity_norm, wrc_solve,
    wrc_solve_batch, wrc_solve_s1
)
from reverseconv.spectral.fft import psf_to_otf
from reverseconv.spectral.forward import ForwardSpec, forward_spatial

from helpers import max_rel, random_map, uniform_problem, unit_problem, varying_problem

SIZES = (4, 6, 8, 12)


def _oracle_cases():
    cases = []
    for s in (1, 2, 3):
        for height in SIZES:
            for width in SIZES:
                if height % s or width % s:
                    continue
                for k in (1, 3, 5):
                    if k <= min(height, width):
                        cases.append((height, width, s, k))
    return cases


ORACLE_CASES = _oracle_cases()


def wiener(y, spec, lam, x0):
    otf = psf_to_otf(spec.kernel, (y.height, y.width)).data
    numerator = np.conj(otf) * np.fft.fft2(y.data) + lam * np.fft.fft2(x0.data)
    return np.fft.ifft2(numerator / (np.abs(otf) ** 2 + lam)).real


def reduction_case(seed, s):
    rng = SplitMix64(seed)
    size = [6, 8, 12][seed % 3] if s != 3 else [6, 12][seed % 2]
    spec = ForwardSpec(Kernel.centered(rng.uniform(0, 1, (2, 3, 3))), s)
    y = random_map(rng, (2, size // s, size // s))
    x0 = random_map(rng, (2, size, size))
    lam = float(rng.uniform(0.01, 2.0, 1)[0])
    return y, spec, lam, x0


def test_suite_is_large_enough():
    assert len(ORACLE_CASES) >= 60


@pytest.mark.parametrize('index, case', list(enumerate(ORACLE_CASES)))
def test_matches_dense_oracle_and_is_stationary(index, case):
    height, width, s, k = case
    p = uniform_problem(seed=index, height=height, width=width, s=s, k=k)
    x = wrc_solve(p)
    assert x.shape == (2, height, width)
    assert max_rel(x.data, dense_solve_problem(p).data) < 1e-6
    assert stationarity_norm(p, x) < 1e-6


@pytest.mark.parametrize('seed', range(20))
def test_reduction_chain(seed):
    s = [1, 2, 3][seed % 3]
    y, spec, lam, x0 = reduction_case(seed, s)
    general = wrc_solve(unit_problem(y, spec, lam, x0))
    reduced = converse2d_solve(y, spec, lam, x0)
    assert max_rel(general.data, reduced.data) < 1e-10
    if s == 1:
        assert max_rel(reduced.data, wiener(y, spec, lam, x0)) < 1e-10


def test_delta_kernel_inverts_identity(rng):
    y = random_map(rng, (2, 6, 6))
    p = unit_problem(y, ForwardSpec(Kernel.delta(2), 1), 1e-8, FeatureMap.zeros(2, 6, 6))
    assert max_rel(wrc_solve(p).data, y.data) < 1e-6


@pytest.mark.parametrize('seed', range(5))
def test_unit_scale_solver_matches_general_path(seed):
    uniform = uniform_problem(seed=seed, s=1, height=6, width=6)
    assert max_rel(wrc_solve_s1(uniform).data, wrc_solve(uniform).data) < 1e-10
    varying = replace(varying_problem(seed=seed, s=1, height=6, width=6), allow_residue=True)
    assert max_rel(wrc_solve_s1(varying).data, wrc_solve(varying).data) < 1e-10


def test_unit_scale_solver_rejects_strides():
    with pytest.raises(ContractError):
        wrc_solve_s1(uniform_problem(s=2))


def test_prior_dominated_limit(rng):
    x0 = random_map(rng, (1, 6, 6))
    p = unit_problem(random_map(rng, (1, 6, 6)), ForwardSpec(Kernel.delta(1), 1), 1e12, x0)
    assert max_rel(wrc_solve_s1(p).data, x0.data) < 1e-4


def test_converse2d_rejects_nonpositive_lambda(rng):
    y = random_map(rng, (1, 2, 2))
    with pytest.raises(ContractError):
        converse2d_solve(y, ForwardSpec(Kernel.delta(1), 2), 0.0)


def test_converse2d_is_data_consistent_for_delta_kernel(rng):
    y = random_map(rng, (1, 4, 4))
    spec = ForwardSpec(Kernel.delta(1), 2)
    x = converse2d_solve(y, spec, 1e-8)
    assert np.max(np.abs(forward_spatial(x, spec).data - y.data)) < 1e-4


def test_converse2d_matches_dense_oracle():
    y, spec, lam, x0 = reduction_case(4, 2)
    reference = dense_solve_problem(unit_problem(y, spec, lam, x0))
    assert max_rel(converse2d_solve(y, spec, lam, x0).data, reference.data) < 1e-6


def test_prior_pull_is_monotone():
    p = uniform_problem(seed=3)
    distances = []
    for value in (1e-2, 1.0, 1e2, 1e4):
        q = replace(p, w_reg=WeightField.constant(value, p.x0.shape, WeightRole.REGULARIZER))
        distances.append(np.linalg.norm(wrc_solve(q).data - p.x0.data))
    assert all(b <= a for a, b in zip(distances, distances[1:]))


def test_solution_is_linear_in_observation_and_prior(rng):
    p = uniform_problem(seed=5, s=2)
    y2, x02 = random_map(rng, p.y.shape), random_map(rng, p.x0.shape)
    q = replace(p, y=y2, x0=x02)
    mixed = replace(p, y=FeatureMap(1.5 * p.y.data - 2.0 * y2.data), x0=FeatureMap(1.5 * p.x0.data - 2.0 * x02.data))
    expected = 1.5 * wrc_solve(p).data - 2.0 * wrc_solve(q).data
    assert max_rel(wrc_solve(mixed).data, expected) < 1e-10


def test_spatially_varying_weights_raise_by_default():
    p = varying_problem(seed=3, channels=2)
    assert not p.has_uniform_weights
    with pytest.raises(NumericalConsistencyError):
        wrc_solve(p)


def splits(a, s):
    """Stack the s*s cosets of the last two axes along a new trailing axis."""
    rows = np.stack(np.split(a, s, axis=-2), axis=-1)
    return np.concatenate(np.split(rows, s, axis=-2), axis=-1)


def listing_solve(p):
    s = p.spec.s
    fk = psf_to_otf(p.spec.kernel, p.x0.shape[1:]).data
    fkc = np.conj(fk)
    sty = np.zeros(p.x0.shape)
    sty[:, ::s, ::s] = p.w_data.data * p.y.data
    w, w_lam, eps = p.w_data.data, p.w_reg.data, p.eps

    fr = fkc * np.fft.fft2(sty) + np.fft.fft2((w_lam + eps) * p.x0.data)
    fbr = np.mean(splits(fk * fr, s), axis=-1)
    invw = np.mean(splits(np.abs(fk) ** 2, s), axis=-1)
    q = w * fbr / (w * invw + np.mean(splits(w_lam, s), axis=-1) + eps)
    fx = (fr - fkc * np.tile(q, (1, s, s))) / (w_lam + eps)
    return np.real(np.fft.ifft2(fx))


@pytest.mark.parametrize('seed', range(3))
def test_allow_residue_keeps_real_part_of_listing(seed, capsys):
    p = replace(varying_problem(seed=seed, channels=2), allow_residue=True)
    assert max_rel(wrc_solve(p).data, listing_solve(p)) < 1e-10
    assert 'residue' in capsys.readouterr().err


def test_listing_agrees_with_uniform_solution():
    p = uniform_problem(seed=7, channels=2, height=12, width=12, s=3)
    assert max_rel(wrc_solve(p).data, listing_solve(p)) < 1e-10


def test_objective_is_zero_at_consistent_prior(rng):
    spec = ForwardSpec(Kernel.centered(rng.uniform(0, 1, (1, 3, 3))), 2)
    x0 = random_map(rng, (1, 8, 8))
    p = unit_problem(forward_spatial(x0, spec), spec, 0.5, x0)
    assert objective_value(p, x0) < 1e-24


def test_objective_with_zero_weights(rng):
    p = uniform_problem(seed=1)
    zero = replace(
        p,
        w_data=WeightField.constant(0.0, p.y.shape, WeightRole.DATA_FIDELITY),
        w_reg=WeightField.constant(0.0, p.x0.shape, WeightRole.REGULARIZER),
        eps=1e-5,
    )
    assert objective_value(zero, random_map(rng, p.x0.shape)) == 0.0


def test_objective_matches_dense_quadratic_form(rng):
    p = uniform_problem(seed=9, height=6, width=6, s=3)
    x = random_map(rng, p.x0.shape)
    dense = sum(dense_objective(assemble(p, c), x.data[c].ravel()) for c in range(p.y.channels))
    assert objective_value(p, x) == pytest.approx(dense, rel=1e-8)


def test_gradient_matches_central_differences(rng):
    p = varying_problem(seed=4, channels=2)
    x = random_map(rng, p.x0.shape)
    gradient = objective_gradient(p, x).data
    step = 1e-6
    for index in [(0, 0, 0), (1, 3, 5), (0, 7, 2), (1, 6, 6)]:
        plus, minus = x.data.copy(), x.data.copy()
        plus[index] += step
        minus[index] -= step
        numeric = (objective_value(p, FeatureMap(plus)) - objective_value(p, FeatureMap(minus))) / (2 * step)
        assert numeric == pytest.approx(gradient[index], rel=1e-5, abs=1e-7)


def test_guarded_gradient_vanishes_with_eps():
    p = replace(uniform_problem(seed=6), eps=1e-3)
    x = wrc_solve(p)
    assert stationarity_norm(p, x, guarded=True) < 1e-6
    assert stationarity_norm(p, x) > 1e-6


def test_batch_matches_sequential():
    problems = [uniform_problem(seed=seed) for seed in range(4)]
    sequential = [wrc_solve(p) for p in problems]
    for threads in (1, 3):
        batched = wrc_solve_batch(problems, threads)
        assert all(np.array_equal(a.data, b.data) for a, b in zip(batched, sequential))


def test_problem_validation(rng):
    p = uniform_problem()
    with pytest.raises(ValidationError):
        replace(p, w_reg=WeightField.constant(0.0, p.x0.shape, WeightRole.REGULARIZER), eps=0.0)
    with pytest.raises(ValidationError):
        replace(p, w_data=WeightField.constant(1.0, p.y.shape, WeightRole.REGULARIZER))
    with pytest.raises(DimensionError):
        replace(p, x0=random_map(rng, (2, 6, 6)))
    with pytest.raises(ContractError):
        replace(p, eps=-1.0)

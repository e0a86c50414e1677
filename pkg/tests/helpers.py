"""
Shared builders and assertions for the test suite.
"""

from pathlib import Path

import numpy as np

from reverseconv.bench.config import BenchCase
from reverseconv.bench.harness import make_problem
from reverseconv.core.config import WeightRole
from reverseconv.core.models import FeatureMap, Kernel, WeightField
from reverseconv.core.rng import SplitMix64
from reverseconv.solver.models import WrcProblem
from reverseconv.spectral.forward import ForwardSpec

DATA_DIR = Path(__file__).parent / 'data'
GOLDEN_TENSOR = DATA_DIR / 'tensor_4x16x16_seed7.wrct'
GOLDEN_FORWARD = DATA_DIR / 'forward_shift_s2_seed7.wrct'


def uniform_problem(seed=0, channels=2, height=8, width=8, s=2, k=3) -> WrcProblem:
    """Seeded problem with per-channel constant positive weights and eps = 0."""
    case = BenchCase(name='fixture', channels=channels, height=height, width=width, s=s, k=k, seed=seed)
    return make_problem(case)


def varying_problem(seed=0, channels=1, height=8, width=8, s=2, k=3, eps=1e-5) -> WrcProblem:
    """Seeded problem with spatially varying weight fields."""
    rng = SplitMix64(seed)
    low = (channels, height // s, width // s)
    high = (channels, height, width)
    return WrcProblem(
        y=FeatureMap(rng.uniform(-1.0, 1.0, low)),
        spec=ForwardSpec(Kernel.centered(rng.uniform(0.0, 1.0, (channels, k, k))), s),
        w_data=WeightField(rng.uniform(0.5, 2.0, low), WeightRole.DATA_FIDELITY),
        w_reg=WeightField(rng.uniform(0.1, 1.0, high), WeightRole.REGULARIZER),
        x0=FeatureMap(rng.uniform(-1.0, 1.0, high)),
        eps=eps,
    )


def unit_problem(y: FeatureMap, spec: ForwardSpec, lam: float, x0: FeatureMap, eps: float = 0.0) -> WrcProblem:
    """Unit data weights and a constant regularizer lam."""
    return WrcProblem(
        y=y,
        spec=spec,
        w_data=WeightField.constant(1.0, y.shape, WeightRole.DATA_FIDELITY),
        w_reg=WeightField.constant(lam, x0.shape, WeightRole.REGULARIZER),
        x0=x0,
        eps=eps,
    )


def random_map(rng: SplitMix64, shape) -> FeatureMap:
    return FeatureMap(rng.uniform(-1.0, 1.0, shape))


def max_rel(actual, expected) -> float:
    """max |a - b| / (1 + |b|)."""
    actual, expected = np.asarray(actual), np.asarray(expected)
    assert actual.shape == expected.shape
    return float(np.max(np.abs(actual - expected) / (1.0 + np.abs(expected))))

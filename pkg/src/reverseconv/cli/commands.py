"""
Command implementations. Each takes a validated CliConfig and returns an exit code.
"""

from typing import Callable

from rich.console import Console

from reverseconv.bccb.data import load_attention
from reverseconv.bccb.evaluation import display_report, layer_report
from reverseconv.bench.config import BenchCase
from reverseconv.bench.evaluation import display_results, fit_slopes, save_results
from reverseconv.bench.harness import run_sweep
from reverseconv.cli.config import CliConfig, ExitCode, GenerateKind, X0Policy
from reverseconv.cli.utils import setup_output_directory
from reverseconv.core.config import WeightRole
from reverseconv.core.data import (
    read_kernel, read_tensor, read_weight_field, write_kernel, write_tensor, write_weight_field
)
from reverseconv.core.models import FeatureMap, Kernel, WeightField
from reverseconv.core.rng import SplitMix64
from reverseconv.oracle.evaluation import check_against_dense
from reverseconv.solver.config import PredictorKind, WeightParam
from reverseconv.solver.models import WeightPredictor, WrcProblem
from reverseconv.solver.weights import default_x0, predict_weights
from reverseconv.solver.wrc import stationarity_norm, wrc_solve
from reverseconv.spectral.forward import ForwardSpec, forward_spatial

console = Console(stderr=True)
output = Console(soft_wrap=True, highlight=False)


def emit(line: str):
    output.print(line, markup=False)


def _shape(shape) -> str:
    return 'x'.join(str(n) for n in shape)


def load_x0(config: CliConfig, y: FeatureMap) -> FeatureMap:
    s = config.scale
    if config.x0 is X0Policy.ZERO:
        return FeatureMap.zeros(y.channels, y.height * s, y.width * s)
    if config.x0 is X0Policy.FILE:
        return read_tensor(config.x0_file)
    return default_x0(y, s)


def _weight(value, path, shape, role: WeightRole) -> WeightField:
    if path is not None:
        return read_weight_field(path, role)
    return WeightField.constant(value, shape, role)


def load_problem(config: CliConfig) -> WrcProblem:
    """
    Assemble a WrcProblem from the files and flags of a solve or oracle-check run.

    With --predictor the eps guard is softplus(bias) + 1e-5; otherwise --eps.
    Predicted fields vary spatially, so solving them needs --allow-residue.
    """
    y = read_tensor(config.input)
    spec = ForwardSpec(read_kernel(config.kernel), config.scale)
    x0 = load_x0(config, y)

    if config.predictor is None:
        w_data = _weight(config.w_const, config.w_file, y.shape, WeightRole.DATA_FIDELITY)
        w_reg = _weight(config.wlam_const, config.wlam_file, x0.shape, WeightRole.REGULARIZER)
        eps = config.eps
    else:
        param = WeightParam(config.weight_mode, config.bias)
        if config.predictor is PredictorKind.MATRIX:
            predictor = WeightPredictor(
                PredictorKind.MATRIX, param,
                data_matrix=read_tensor(config.w_taps), reg_matrix=read_tensor(config.wlam_taps),
            )
        else:
            predictor = WeightPredictor(
                PredictorKind.CONVOLUTION, param,
                data_taps=read_kernel(config.w_taps), reg_taps=read_kernel(config.wlam_taps),
            )
        w_data, w_reg = predict_weights(predictor, y, x0)
        eps = param.guard()
        console.log(f"Predicted weights ({config.predictor.value}, {config.weight_mode.value}), eps={eps:.6g}")

    return WrcProblem(
        y=y, spec=spec, w_data=w_data, w_reg=w_reg, x0=x0, eps=eps, allow_residue=config.allow_residue
    )


def cmd_forward(config: CliConfig) -> ExitCode:
    x = read_tensor(config.input)
    y = forward_spatial(x, ForwardSpec(read_kernel(config.kernel), config.scale))
    write_tensor(y, config.output)
    emit(f"forward input={_shape(x.shape)} output={_shape(y.shape)} s={config.scale}")
    return ExitCode.OK


def cmd_solve(config: CliConfig) -> ExitCode:
    p = load_problem(config)
    x = wrc_solve(p)
    write_tensor(x, config.output)
    emit(f"solve input={_shape(p.y.shape)} output={_shape(x.shape)} s={config.scale}")
    if config.check_stationarity:
        emit(f"stationarity norm={stationarity_norm(p, x, guarded=True):.6e}")
    return ExitCode.OK


def cmd_oracle_check(config: CliConfig, solver: Callable[[WrcProblem], FeatureMap] = wrc_solve) -> ExitCode:
    """
    Compare a closed-form solver with the dense oracle.

    Args:
        config: Validated configuration
        solver: Solver under test; replaceable so a corrupted solver can be checked to FAIL

    Returns:
        OK on PASS, ORACLE_FAIL otherwise
    """
    p = load_problem(config)
    report = check_against_dense(p, solver)
    emit(
        f"oracle discrepancy={report.discrepancy:.6e} stationarity={report.stationarity:.6e} "
        f"tolerance={report.tolerance:.0e} verdict={report.verdict}"
    )
    return ExitCode.OK if report.passed else ExitCode.ORACLE_FAIL


def cmd_bccb(config: CliConfig) -> ExitCode:
    mats = load_attention(config.input, config.grid)
    report = layer_report(mats, per_matrix=config.per_matrix)
    for index, residual in enumerate(report.residuals):
        emit(f"bccb slice={index} rel_residual={residual:.10g}")
    display_report(report)
    if config.output:
        write_tensor(report.generator_tensor(), config.output)
        console.log(f"Generators saved to: {config.output}")
    return ExitCode.OK


def cmd_bench(config: CliConfig) -> ExitCode:
    side = min(config.sizes)
    template = BenchCase(
        name='sweep',
        channels=config.channels,
        height=side,
        width=side,
        s=config.scale,
        k=config.kernel_size,
        repeats=config.repeats,
        seed=config.seed,
        include_dense=not config.no_dense,
        threads=config.threads,
    )
    results = run_sweep(template, config.sizes)
    slopes = fit_slopes(results) if len(set(config.sizes)) > 1 else {}
    display_results(results, slopes)
    save_results(results, setup_output_directory(config.output_dir))
    return ExitCode.OK


def cmd_generate(config: CliConfig) -> ExitCode:
    rng = SplitMix64(config.seed)
    values = rng.uniform(config.low, config.high, config.shape)
    if config.kind is GenerateKind.KERNEL:
        write_kernel(Kernel.centered(values), config.output)
    elif config.kind is GenerateKind.WEIGHT:
        write_weight_field(WeightField(values, WeightRole.DATA_FIDELITY), config.output)
    else:
        write_tensor(FeatureMap(values), config.output)
    emit(f"generate kind={config.kind.value} shape={_shape(values.shape)} seed={config.seed}")
    return ExitCode.OK

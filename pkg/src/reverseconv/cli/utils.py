"""
Utility functions for the command-line interface.
"""

import argparse
import os
from typing import List, Optional, Sequence, Tuple

from reverseconv.cli.config import (
    ENV_EPS, ENV_OUTPUT_DIR, ENV_SEED, ENV_THREADS, CliConfig, Command, GenerateKind, X0Policy,
    env_float, env_int, env_str
)
from reverseconv.solver.config import DEFAULT_EPS, PredictorKind, WeightMode


def int_list(text: str) -> List[int]:
    """Parse a comma-separated list of integers."""
    try:
        return [int(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"Expected comma-separated integers, got {text!r}") from None


def int_pair(text: str) -> Tuple[int, int]:
    values = int_list(text)
    if len(values) != 2:
        raise argparse.ArgumentTypeError(f"Expected two integers 'h,w', got {text!r}")
    return values[0], values[1]


def int_triple(text: str) -> Tuple[int, int, int]:
    values = int_list(text)
    if len(values) != 3:
        raise argparse.ArgumentTypeError(f"Expected three integers 'C,H,W', got {text!r}")
    return values[0], values[1], values[2]


def _add_problem_arguments(parser: argparse.ArgumentParser):
    parser.add_argument('--input', type=str, help='Low-resolution observation (WRCT tensor)')
    parser.add_argument('--kernel', type=str, help='Depthwise kernel (WRCT kernel)')
    parser.add_argument('--scale', type=int, default=1, help='Scale factor s')
    parser.add_argument('--w-const', type=float, default=None, help='Constant data-fidelity weight |W|^2')
    parser.add_argument('--w-file', type=str, default=None, help='Data-fidelity weight field file')
    parser.add_argument('--wlam-const', type=float, default=None, help='Constant regularizer weight |W_lam|^2')
    parser.add_argument('--wlam-file', type=str, default=None, help='Regularizer weight field file')
    parser.add_argument('--predictor', type=str, default=None, choices=[k.value for k in PredictorKind],
                        help='Predict both weight fields instead of reading them')
    parser.add_argument('--w-taps', type=str, default=None,
                        help='Data-weight predictor: kernel (conv) or raw map (matrix)')
    parser.add_argument('--wlam-taps', type=str, default=None,
                        help='Regularizer predictor: kernel (conv) or raw map (matrix)')
    parser.add_argument('--weight-mode', type=str, default=WeightMode.LOG1P.value,
                        choices=[m.value for m in WeightMode], help='Positivity parameterization of predictions')
    parser.add_argument('--bias', type=float, default=0.0, help='Learnable bias of the eps guard')
    parser.add_argument('--x0', type=str, default=X0Policy.BILINEAR.value, choices=[p.value for p in X0Policy],
                        help='Prior estimate policy')
    parser.add_argument('--x0-file', type=str, default=None, help='Prior estimate file for --x0 file')
    parser.add_argument('--eps', type=float, default=env_float(ENV_EPS, DEFAULT_EPS), help='Regularizer guard')
    parser.add_argument('--allow-residue', action='store_true',
                        help='Keep the real part when spatially varying weights leave an imaginary residue')


def parse_arguments(argv: Optional[Sequence[str]] = None) -> argparse.Namespace:
    """
    Parse command-line arguments.

    Args:
        argv: Argument list; sys.argv[1:] when None

    Returns:
        Parsed arguments
    """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--threads', type=int, default=env_int(ENV_THREADS, 1), help='Worker threads')
    common.add_argument('--seed', type=int, default=env_int(ENV_SEED, 0), help='SplitMix64 seed')

    parser = argparse.ArgumentParser(description='Weighted reverse convolution toolkit')
    subparsers = parser.add_subparsers(dest='command', required=True)

    forward = subparsers.add_parser(Command.FORWARD.value, parents=[common], help='Simulate Y = (X * K) down s')
    forward.add_argument('--input', type=str, help='High-resolution tensor X')
    forward.add_argument('--kernel', type=str, help='Depthwise kernel')
    forward.add_argument('--scale', type=int, default=1, help='Scale factor s')
    forward.add_argument('--output', type=str, help='Output tensor path')

    solve = subparsers.add_parser(Command.SOLVE.value, parents=[common], help='Closed-form WRC solve')
    _add_problem_arguments(solve)
    solve.add_argument('--output', type=str, help='Output tensor path')
    solve.add_argument('--check-stationarity', action='store_true', help='Print the gradient max-norm at X*')

    oracle = subparsers.add_parser(Command.ORACLE_CHECK.value, parents=[common],
                                   help='Compare the FFT solve with the dense oracle')
    _add_problem_arguments(oracle)

    bccb = subparsers.add_parser(Command.BCCB.value, parents=[common], help='BCCB analysis of attention maps')
    bccb.add_argument('--input', type=str, help='Attention tensor (C, N, N)')
    bccb.add_argument('--grid', type=int_pair, default=None, help="Token grid 'h,w'; square when omitted")
    bccb.add_argument('--per-matrix', action='store_true', help='Project every slice instead of their mean')
    bccb.add_argument('--output', type=str, default=None, help='Generator tensor path')

    bench = subparsers.add_parser(Command.BENCH.value, parents=[common], help='Timing and scaling sweep')
    bench.add_argument('--sizes', type=int_list, default=None, help="Square sides, e.g. '16,32,64'")
    bench.add_argument('--channels', type=int, default=1, help='Channels per problem')
    bench.add_argument('--scale', type=int, default=2, help='Scale factor s')
    bench.add_argument('--kernel-size', type=int, default=3, help='Square kernel size')
    bench.add_argument('--repeats', type=int, default=5, help='Timed repeats after warmup')
    bench.add_argument('--no-dense', action='store_true', help='Skip the dense path')
    bench.add_argument('--output-dir', type=str, default=env_str(ENV_OUTPUT_DIR, 'outputs/bench'),
                       help='Directory for the TSV table')

    generate = subparsers.add_parser(Command.GENERATE.value, parents=[common], help='Seeded random fixture')
    generate.add_argument('--kind', type=str, default=GenerateKind.TENSOR.value,
                          choices=[k.value for k in GenerateKind], help='What to write')
    generate.add_argument('--shape', type=int_triple, default=None, help="Shape 'C,H,W'")
    generate.add_argument('--low', type=float, default=-1.0, help='Lower bound of the uniform draw')
    generate.add_argument('--high', type=float, default=1.0, help='Upper bound of the uniform draw')
    generate.add_argument('--output', type=str, help='Output path')

    return parser.parse_args(argv)


def build_config(args: argparse.Namespace) -> CliConfig:
    """Validate parsed arguments into a CliConfig."""
    values = {key: value for key, value in vars(args).items() if value is not None}
    return CliConfig(**values)


def setup_output_directory(dir_name: str) -> str:
    """
    Create output directory if it doesn't exist.

    Args:
        dir_name: Name of the output directory

    Returns:
        Path to the output directory
    """
    os.makedirs(dir_name, exist_ok=True)
    return dir_name

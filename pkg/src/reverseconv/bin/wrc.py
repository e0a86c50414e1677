#!/usr/bin/env python3
"""
Weighted reverse convolution toolkit.

Usage: python -m reverseconv.bin.wrc <forward|solve|oracle-check|bccb|bench|generate> [flags]
"""

import sys
from typing import Optional, Sequence

import scipy.fft
from dotenv import load_dotenv
from rich.console import Console

from reverseconv.cli.commands import (
    cmd_bccb, cmd_bench, cmd_forward, cmd_generate, cmd_oracle_check, cmd_solve
)
from reverseconv.cli.config import Command, ExitCode
from reverseconv.cli.utils import build_config, parse_arguments

console = Console(stderr=True)

COMMANDS = {
    Command.FORWARD: cmd_forward,
    Command.SOLVE: cmd_solve,
    Command.ORACLE_CHECK: cmd_oracle_check,
    Command.BCCB: cmd_bccb,
    Command.BENCH: cmd_bench,
    Command.GENERATE: cmd_generate,
}


def _one_line(error: Exception) -> str:
    return ' | '.join(line.strip() for line in str(error).splitlines() if line.strip())


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main execution function; returns the process exit code."""
    load_dotenv()
    try:
        config = build_config(parse_arguments(argv))
        with scipy.fft.set_workers(config.threads):
            code = COMMANDS[config.command](config)
    except ValueError as e:
        console.log(f"[ERROR] {type(e).__name__}: {_one_line(e)}")
        return ExitCode.INVALID
    except ArithmeticError as e:
        console.log(f"[ERROR] {type(e).__name__}: {_one_line(e)}")
        return ExitCode.NUMERICAL
    except Exception as e:
        console.log(f"[ERROR] {type(e).__name__}: {_one_line(e)}")
        return ExitCode.FAILURE
    return code


if __name__ == '__main__':
    sys.exit(main())

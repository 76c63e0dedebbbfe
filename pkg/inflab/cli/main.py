# -*- coding: utf-8 -*-
###############################################################################
# Copyright (c), The inflab developers. All rights reserved.                  #
# This file is part of the inflab package.                                    #
# (infinitesimal model laboratory)                                            #
#                                                                             #
# For further information on the license, see the LICENSE.txt file.           #
#                                                                             #
###############################################################################
"""inflab: cli: argument parsing, exit codes and the terminal summary.

Exit codes: 0 pass, 2 input or solver error, 3 a verified claim failed.
"""

import argparse as _argparse
import sys as _sys
import time as _time
import typing as _typing

import humanfriendly as _humanfriendly
from humanfriendly import tables as _hf_tables

import inflab as _inflab
from .commands import COMMANDS as _COMMANDS, CommandResult as _CommandResult
from .config import ExperimentConfig as _ExperimentConfig, load_config as _load_config

EXIT_OK = 0
EXIT_ERROR = 2
EXIT_VIOLATION = 3


def build_parser() -> _argparse.ArgumentParser:
    common = _argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="experiment config file (section.key = value lines)")
    common.add_argument("--out", help="output directory, overrides output.dir")
    common.add_argument("--seed", type=int, help="seed of randomized runs, overrides duality.seed")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("-v", "--verbose", action="count", default=0, help="more log output, repeatable")
    verbosity.add_argument("-q", "--quiet", action="store_true", help="errors only")

    parser = _argparse.ArgumentParser(prog="inflab",
                                      description="Numerical laboratory for the infinitesimal model with selection.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {_inflab.__version__}")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True
    for name, func in _COMMANDS.items():
        sub.add_parser(name, parents=[common], help=(func.__doc__ or name).strip().splitlines()[0])
    return parser


def _configure(args: _argparse.Namespace) -> _ExperimentConfig:
    config = _load_config(args.config) if args.config else _ExperimentConfig()
    if args.out:
        config.output.dir = args.out
    if args.seed is not None:
        if args.seed < 0:
            raise _inflab.logging.log(e=ValueError, f=_configure, m=f"--seed must be nonnegative, got {args.seed}.")
        config.duality.seed = args.seed
    return config


def _print_summary(result: _CommandResult, elapsed: float, stream: _typing.TextIO) -> None:
    rows = [[key, f"{value:.12g}" if isinstance(value, float) else str(value)] for key, value in
            result.summary.items()]
    print(_hf_tables.format_pretty_table(rows, column_names=["quantity", "value"]), file=stream)
    for note in result.notes:
        print(_inflab._dev.terminal_colors.colorize(f"NOTE: {note}", 'NOTE', stream), file=stream)
    for path in result.files:
        print(f"wrote {path}", file=stream)
    print(_inflab._dev.terminal_colors.colorize(f"PASS {result.command}", 'PASS', stream)
          + f" in {_humanfriendly.format_timespan(elapsed)}", file=stream)


def main(argv: _typing.Sequence[str] = None) -> int:
    """Entry point of the ``inflab`` console script.

    :param argv: arguments without the program name. Default: sys.argv[1:].
    :return: exit code.
    """
    args = build_parser().parse_args(argv)
    _inflab.logging.configure(verbosity=-1 if args.quiet else args.verbose)
    stream = _sys.stdout
    start = _time.monotonic()
    try:
        config = _configure(args)
        result = _COMMANDS[args.command](config)
    except _inflab.exceptions.ClaimViolation as err:
        print(_inflab._dev.terminal_colors.colorize(f"FAIL {args.command}: {err}", 'FAIL', stream), file=stream)
        if not err.rows.empty:
            print(err.rows.to_string(index=False), file=stream)
        return EXIT_VIOLATION
    except _inflab.exceptions.ConvergenceError as err:
        print(f"error: {err}\n{err.trace_tail()}", file=_sys.stderr)
        return EXIT_ERROR
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=_sys.stderr)
        return EXIT_ERROR
    _print_summary(result, _time.monotonic() - start, stream)
    return EXIT_OK

#!/usr/bin/env python
# -*- coding: utf-8 -*-
###############################################################################
# Copyright (c), The inflab developers. All rights reserved.                  #
# This file is part of the inflab package.                                    #
# (infinitesimal model laboratory)                                            #
#                                                                             #
# For further information on the license, see the LICENSE.txt file.           #
#                                                                             #
###############################################################################
"""
Runs every subcommand on the example configs and prints one pass/fail table.

Usage: run_acceptance.py [output_root]. Outputs go to output_root/<config>/<command>, default 'out/acceptance'.
"""

import pathlib
import sys
import time

import humanfriendly
from humanfriendly import tables

import inflab

CONFIG_DIR = pathlib.Path(__file__).resolve().parent.parent / 'configs'

RUNS = [
    ('quadratic', 'eigen'),
    ('quadratic', 'contract'),
    ('quadratic', 'transport'),
    ('quadratic', 'duality'),
    ('quadratic', 'linear'),
    ('quadratic', 'lowerbound'),
    ('quartic', 'eigen'),
    ('quartic', 'contract'),
    ('quartic', 'transport'),
    ('quartic', 'lowerbound'),
    ('truncated', 'eigen'),
    ('truncated', 'contract'),
    ('truncated', 'lowerbound'),
    (None, 'figures'),
]

EXIT_NAMES = {inflab.cli.EXIT_OK: 'pass', inflab.cli.EXIT_ERROR: 'error', inflab.cli.EXIT_VIOLATION: 'FAIL'}

if __name__ == '__main__':
    root = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else 'out/acceptance')
    rows = []
    worst = inflab.cli.EXIT_OK
    for config_name, command in RUNS:
        argv = [command, '-q', '--out', str(root / (config_name or 'default') / command)]
        if config_name:
            argv += ['--config', str(CONFIG_DIR / f"{config_name}.cfg")]
        start = time.monotonic()
        code = inflab.cli.main(argv)
        worst = max(worst, code)
        rows.append([config_name or '-', command, EXIT_NAMES.get(code, code),
                     humanfriendly.format_timespan(time.monotonic() - start)])
    print(tables.format_pretty_table(rows, column_names=['config', 'command', 'result', 'time']))
    sys.exit(worst)

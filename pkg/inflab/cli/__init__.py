# -*- coding: utf-8 -*-
# pylint: disable=unused-import
###############################################################################
# Copyright (c), The inflab developers. All rights reserved.                  #
# This file is part of the inflab package.                                    #
# (infinitesimal model laboratory)                                            #
#                                                                             #
# For further information on the license, see the LICENSE.txt file.           #
#                                                                             #
###############################################################################
"""inflab: command-line front end."""

from .config import \
    DualitySettings, \
    ExperimentConfig, \
    FigureSettings, \
    GridSettings, \
    InitialSettings, \
    LowerBoundSettings, \
    OutputSettings, \
    RunSettings, \
    SelectionSettings, \
    TransportSettings, \
    TruncationSettings, \
    load_config, \
    parse_config

from .commands import \
    COMMANDS, \
    CommandResult, \
    cmd_contract, \
    cmd_duality, \
    cmd_eigen, \
    cmd_figures, \
    cmd_linear, \
    cmd_lowerbound, \
    cmd_transport, \
    figure_tables

from .main import \
    EXIT_ERROR, \
    EXIT_OK, \
    EXIT_VIOLATION, \
    build_parser, \
    main

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
"""inflab: experiment harnesses: contraction runs, growth-rate fits and lower-bound checks."""

from .runs import \
    CAUCHY_COLUMNS, \
    InitialMode, \
    RUN_COLUMNS, \
    RunTrace, \
    cauchy_run, \
    contraction_run, \
    growth_rate_fit, \
    linear_operator_run, \
    make_admissible_initial

from .bounds import \
    LOWER_BOUND_COLUMNS, \
    gaussian_pdf, \
    log_explicit_integral, \
    lower_bound_check, \
    lower_bound_lattice, \
    lower_bound_threshold

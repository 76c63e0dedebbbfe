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
"""inflab: scalar fixed points and the nonlinear eigenproblem."""

from .scalars import \
    ScalarFixedPoints, \
    alpha_closed_form, \
    alpha_residual, \
    contraction_factor, \
    quadratic_lambda_oracle, \
    quadratic_sigma2, \
    solve_alpha

from .solver import \
    EigenResult, \
    TRACE_COLUMNS, \
    log_sup_difference, \
    solve_eigen, \
    solve_linear_eigen, \
    truncation_ladder

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
"""inflab: discrete optimal transport, transition kernels and duality checks."""

from .measures import \
    DiscreteMeasure, \
    INTEGER_SCALE, \
    TransportReport, \
    integerize, \
    kind_label

from .solvers import \
    MAX_BOTTLENECK_SUPPORT, \
    MAX_LP_SUPPORT, \
    bottleneck_winf, \
    ground_costs, \
    quantile_wp_1d, \
    w22_plan_displacement, \
    wpq_lp

from .kernel import \
    Kernel2D, \
    QuantizedKernel, \
    build_transition_kernel, \
    default_kernel_grid, \
    displacement_check, \
    l2_rate_comparison, \
    linear_kernel, \
    linear_kernel_contraction, \
    quantize_kernel, \
    rates_from_alpha, \
    verify_kernel_contraction

from .duality import \
    DualityReport, \
    FunctionKind, \
    TestFunction, \
    dual_exponent, \
    duality_check, \
    duality_suite, \
    hoelder_aligned_step, \
    log_estimate_check, \
    random_measure

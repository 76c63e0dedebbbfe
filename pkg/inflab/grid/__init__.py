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
"""inflab: uniform grids and log-space densities."""

from .util import \
    Grid1D, \
    Grid2D, \
    LogDensity, \
    finite_region, \
    linear_combination, \
    log_derivative, \
    log_index_sum, \
    log_trapezoid_mass, \
    logsumexp_convolve, \
    resample, \
    second_log_derivative, \
    trapezoid_mass

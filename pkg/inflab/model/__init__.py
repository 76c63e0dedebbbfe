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
"""inflab: selection, recombination and the generation operators."""

from .selection import \
    SelectionKind, \
    SelectionSpec, \
    TruncationSpec

from .util import \
    alpha_sequence, \
    apply_A, \
    apply_B, \
    apply_T, \
    convolution_log_concavity, \
    convolve_gaussian, \
    gaussian_kernel, \
    growth_factor, \
    log_concavity_update, \
    midpoint_density, \
    selection_smoothing

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
"""inflab: divergences, moments and log-concavity estimates."""

from .util import \
    DivergenceReport, \
    LsiChainReport, \
    SUPPORT_CUTOFF, \
    divergence_report, \
    estimate_log_concavity, \
    fisher_infinity, \
    fisher_infinity_is_grid_dependent, \
    fisher_two, \
    hilbert_metric, \
    holder_pinsker_check, \
    kl_divergence, \
    l1_distance, \
    log_ratio_derivative, \
    lsi_chain_check, \
    mass_region, \
    moments, \
    product_kl, \
    support_region

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
"""inflab: concurrent execution of independent cases."""

from .sweep import \
    SweepController, \
    SweepControllerSettings, \
    THREADS_ENV_VAR, \
    default_max_workers

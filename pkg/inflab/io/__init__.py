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
"""inflab: tabulation, CSV, JSON and SVG output."""

from .tabulator import \
    FLOAT_FORMAT, \
    Tabulator, \
    write_csv, \
    write_json, \
    write_text

from .svg import \
    LinePlotSettings, \
    Series, \
    line_plot

# -*- coding: utf-8 -*-
###############################################################################
# Copyright (c), The inflab developers. All rights reserved.                  #
# This file is part of the inflab package.                                    #
# (infinitesimal model laboratory)                                            #
#                                                                             #
# For further information on the license, see the LICENSE.txt file.           #
#                                                                             #
###############################################################################
"""inflab: exceptions.

Input contract violations are plain :py:class:`ValueError`. The two classes here carry data the caller needs
for a post mortem.
"""

import pandas as _pd


class ConvergenceError(RuntimeError):
    """An iteration did not converge (or collapsed to zero mass). Carries the iteration trace."""

    def __init__(self, message: str, trace: _pd.DataFrame = None):
        super().__init__(message)
        self.trace = trace if trace is not None else _pd.DataFrame()

    def trace_tail(self, rows: int = 5) -> str:
        """Last rows of the trace as text, for error messages."""
        if self.trace.empty:
            return "(empty trace)"
        return self.trace.tail(rows).to_string(index=False)


class ClaimViolation(AssertionError):
    """A verification report has at least one failing row."""

    def __init__(self, message: str, rows: _pd.DataFrame = None):
        super().__init__(message)
        self.rows = rows if rows is not None else _pd.DataFrame()

# -*- coding: utf-8 -*-
###############################################################################
# Copyright (c), The inflab developers. All rights reserved.                  #
# This file is part of the inflab package.                                    #
# (infinitesimal model laboratory)                                            #
#                                                                             #
# For further information on the license, see the LICENSE.txt file.           #
#                                                                             #
###############################################################################
"""
Terminal colors for command summaries.
"""

import sys as _sys

CEND = '\33[0m'
CBOLD = '\33[1m'
CRED = '\33[31m'
CGREEN = '\33[32m'
CYELLOW = '\33[33m'

STATUS_COLORS = {
    'PASS': CGREEN,
    'FAIL': CRED,
    'NOTE': CYELLOW,
}


def colorize(text: str, status: str, stream=None) -> str:
    """Wrap text in the status color if the target stream is a terminal.

    :param text: text to wrap.
    :param status: one of 'PASS', 'FAIL', 'NOTE'.
    :param stream: stream the text goes to. Default stdout.
    """
    stream = stream if stream is not None else _sys.stdout
    if not getattr(stream, "isatty", lambda: False)():
        return text
    return f"{CBOLD}{STATUS_COLORS.get(status, '')}{text}{CEND}"

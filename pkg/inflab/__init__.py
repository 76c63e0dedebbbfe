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
"""inflab: numerical laboratory for the infinitesimal model with selection.

We recommend to use this library with the import statement ``import inflab``. In your code, you can then call
all available tools like so: ``inflab.package.tool()``.
"""
__version__ = "0.1.0"

# Import order matters: later packages use the earlier ones at import time.
from . import logging
from . import exceptions
from . import io
from . import submit
from . import grid
from . import model
from . import metrics
from . import eigen
from . import transport
from . import analysis
from . import cli
# import all of the library's developer packages.
from . import _dev

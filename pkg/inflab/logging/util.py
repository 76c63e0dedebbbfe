# -*- coding: utf-8 -*-
###############################################################################
# Copyright (c), The inflab developers. All rights reserved.                  #
# This file is part of the inflab package.                                    #
# (infinitesimal model laboratory)                                            #
#                                                                             #
# For further information on the license, see the LICENSE.txt file.           #
#                                                                             #
###############################################################################
"""inflab: logging: utils."""

import enum as _enum
import logging as _logging
import sys as _sys
import typing as _typing

LOGGER_NAME = "inflab"


class LogLevel(_enum.Enum):
    DEBUG = 0
    INFO = 1
    WARNING = 2
    ERROR = 3

    @property
    def stdlib_level(self) -> int:
        """The matching level of the standard library :py:mod:`logging` module."""
        return {
            LogLevel.DEBUG: _logging.DEBUG,
            LogLevel.INFO: _logging.INFO,
            LogLevel.WARNING: _logging.WARNING,
            LogLevel.ERROR: _logging.ERROR,
        }[self]


def get_logger() -> _logging.Logger:
    """The package logger. Library code only emits, the CLI decides where it goes."""
    return _logging.getLogger(LOGGER_NAME)


def configure(verbosity: int = 0,
              stream: _typing.TextIO = None) -> _logging.Logger:
    """Attach a single stream handler to the package logger.

    :param verbosity: -1 quiet (errors only), 0 warnings, 1 info, 2 and above debug.
    :param stream: target stream, default stderr.
    :return: the configured package logger.
    """
    logger = get_logger()
    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    handler = _logging.StreamHandler(stream if stream is not None else _sys.stderr)
    handler.setFormatter(_logging.Formatter("%(message)s"))
    logger.addHandler(handler)
    if verbosity < 0:
        logger.setLevel(_logging.ERROR)
    elif verbosity == 0:
        logger.setLevel(_logging.WARNING)
    elif verbosity == 1:
        logger.setLevel(_logging.INFO)
    else:
        logger.setLevel(_logging.DEBUG)
    logger.propagate = False
    return logger


def log(l: LogLevel = None,
        e: _typing.Type[Exception] = None,
        o: _typing.Any = None,
        f=None,
        m: str = "") -> _typing.Optional[Exception]:
    """Basic logging through the ``inflab`` logger.

    Schema: [l: ][c][.][f][: ][msg]

    Legend: l=level, c=class, f=function, m=msg. []=optional.

    Example: "Warning: solve_eigen(): initial datum is less log-concave than alpha*."

    :param l: logging level. Default INFO, or ERROR if an exception class is given.
    :param e: exception class to build, usually for level 'Error'. The caller raises it.
    :param o: object or class.
    :param f: function or method.
    :param m: message body.
    :return: exception instance if ``e`` is given, else emit the message and return nothing.
    """
    if l is None:
        l = LogLevel.ERROR if e else LogLevel.INFO
    prefix = f"{l.name.title()}: "

    cls_name = ""
    if o is not None:
        cls = o if isinstance(o, type) else o.__class__
        cls_name = cls.__name__
    cf_sep = "." if (cls_name and f) else ""
    func_name = f"{f.__name__}()" if f else ""
    cf = f"{cls_name}{cf_sep}{func_name}"

    fm_sep = ": " if cf else ""
    if e:
        return e(f"{cf}{fm_sep}{m}")
    get_logger().log(l.stdlib_level, f"{prefix}{cf}{fm_sep}{m}")

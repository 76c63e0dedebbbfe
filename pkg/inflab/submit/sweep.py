# -*- coding: utf-8 -*-
###############################################################################
# Copyright (c), The inflab developers. All rights reserved.                  #
# This file is part of the inflab package.                                    #
# (infinitesimal model laboratory)                                            #
#                                                                             #
# For further information on the license, see the LICENSE.txt file.           #
#                                                                             #
###############################################################################
"""inflab: submit: concurrent sweeps over independent cases."""

import concurrent.futures as _futures
import dataclasses as _dc
import os as _os
import time as _time
import typing as _typing

import humanfriendly as _humanfriendly

import inflab as _inflab

THREADS_ENV_VAR = "INFLAB_THREADS"


def default_max_workers() -> int:
    """Worker cap from the environment variable INFLAB_THREADS, else the CPU count."""
    value = _os.environ.get(THREADS_ENV_VAR, "").strip()
    if value:
        try:
            workers = int(value)
        except ValueError as err:
            raise _inflab.logging.log(e=ValueError, f=default_max_workers,
                                      m=f"{THREADS_ENV_VAR}={value!r} is not an integer.") from err
        if workers < 1:
            raise _inflab.logging.log(e=ValueError, f=default_max_workers,
                                      m=f"{THREADS_ENV_VAR} must be >= 1, got {workers}.")
        return workers
    return _os.cpu_count() or 1


@_dc.dataclass
class SweepControllerSettings:
    """Settings for :py:class:`~.SweepController`. See its documentation for details.

    :param max_workers: worker threads. None: from INFLAB_THREADS or the CPU count.
    :param sequential: True: run in the calling thread, no pool. Useful for debugging.
    :param verbose: True: log a line per finished case.
    """
    max_workers: _typing.Optional[int] = None
    sequential: bool = False
    verbose: bool = False


class SweepController:
    """Runs one function over many independent cases (parameter values, transport pairs, random instances).

    Results come back in input order whatever order the workers finish in, so tables built from them are
    reproducible. Exceptions of a case propagate to the caller after the pool shuts down.
    """

    def __init__(self, settings: SweepControllerSettings = None):
        """
        :param settings: controller settings.
        """
        self.settings = settings if settings is not None else SweepControllerSettings()
        self._finished = 0

    @property
    def max_workers(self) -> int:
        if self.settings.max_workers is not None:
            return max(1, int(self.settings.max_workers))
        return default_max_workers()

    @property
    def finished(self) -> int:
        """Cases finished over the lifetime of this controller."""
        return self._finished

    def map(self,
            func: _typing.Callable[[_typing.Any], _typing.Any],
            cases: _typing.Sequence[_typing.Any]) -> _typing.List[_typing.Any]:
        """Evaluate func on every case.

        :param func: pure function of one case.
        :param cases: the cases.
        :return: results in the order of ``cases``.
        """
        cases = list(cases)
        start = _time.monotonic()
        if self.settings.sequential or self.max_workers == 1 or len(cases) <= 1:
            results = []
            for case in cases:
                results.append(func(case))
                self._case_done(case)
        else:
            with _futures.ThreadPoolExecutor(max_workers=min(self.max_workers, len(cases))) as pool:
                futures = [pool.submit(func, case) for case in cases]
                results = []
                for case, future in zip(cases, futures):
                    results.append(future.result())
                    self._case_done(case)
        _inflab.logging.log(l=_inflab.logging.LogLevel.DEBUG, o=self, f=self.map,
                            m=f"{len(cases)} cases in {_humanfriendly.format_timespan(_time.monotonic() - start)}.")
        return results

    def _case_done(self, case) -> None:
        self._finished += 1
        if self.settings.verbose:
            _inflab.logging.log(l=_inflab.logging.LogLevel.INFO, o=self, f=self.map, m=f"Finished case {case!r}.")

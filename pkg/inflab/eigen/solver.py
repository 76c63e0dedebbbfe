# -*- coding: utf-8 -*-
###############################################################################
# Copyright (c), The inflab developers. All rights reserved.                  #
# This file is part of the inflab package.                                    #
# (infinitesimal model laboratory)                                            #
#                                                                             #
# For further information on the license, see the LICENSE.txt file.           #
#                                                                             #
###############################################################################
"""inflab: eigen: nonlinear eigenpair by normalized iteration."""

import dataclasses as _dc
import time as _time
import typing as _typing

import humanfriendly as _humanfriendly
import numpy as _np
import pandas as _pd

import inflab as _inflab
from inflab.grid import LogDensity as _LogDensity
from inflab.model import SelectionSpec as _SelectionSpec, TruncationSpec as _TruncationSpec
from .scalars import solve_alpha as _solve_alpha

TRACE_COLUMNS = ['n', 'lambda_n', 'step_diff', 'alpha_hat_n']


@_dc.dataclass
class EigenResult:
    """Eigenpair of the generation operator.

    :param lambda_: eigenvalue, the asymptotic per-generation growth of the mass.
    :param profile: normalized eigenfunction.
    :param alpha_hat: estimated log-concavity modulus of the profile.
    :param iterations: generations iterated.
    :param trace: per-iteration table with columns n, lambda_n, step_diff, alpha_hat_n.
    :param residual: sup over the support of |log T[profile] - log(lambda profile)|.
    :param truncated: truncation half-width R, or None on the full line.
    :param operator: 'T' (two parents) or 'A' (single parent).
    """
    lambda_: float
    profile: _LogDensity
    alpha_hat: float
    iterations: int
    trace: _pd.DataFrame
    residual: float
    truncated: _typing.Optional[float] = None
    operator: str = 'T'


def log_sup_difference(f: _LogDensity, g: _LogDensity) -> float:
    """sup |log f - log g| over the nodes where both exceed exp(-60) times their maximum."""
    region = _inflab.metrics.support_region(f, g)
    return float(_np.max(_np.abs(f.v[region] - g.v[region])))


def _stepper(m: _SelectionSpec,
             trunc: _typing.Optional[_TruncationSpec],
             operator: str) -> _typing.Callable[[_LogDensity], _LogDensity]:
    if operator == 'T':
        return lambda f: _inflab.model.apply_T(f, m, trunc)
    if operator == 'A':
        if trunc is None:
            return lambda f: _inflab.model.apply_A(f, m)
        return lambda f: _inflab.model.apply_A(f, m).restrict(trunc.mask(f.grid))
    raise _inflab.logging.log(e=ValueError, f=_stepper, m=f"Unknown operator '{operator}', expected 'T' or 'A'.")


def solve_eigen(m: _SelectionSpec,
                f0: _LogDensity,
                trunc: _TruncationSpec = None,
                tol: float = 1e-10,
                max_iter: int = 400,
                operator: str = 'T') -> EigenResult:
    """Eigenpair T[F] = lambda F by normalized iteration, on the full line or truncated to [-R, R].

    Each generation applies the operator, records lambda_n = mass ratio and renormalizes. Stops when the
    sup-norm of successive log-profile differences over the support region drops below ``tol``.

    :param m: selection, certified on the grid of f0 before iterating.
    :param f0: initial datum, positive mass. Recommended: at least as log-concave as the eigenfunction.
    :param trunc: optional truncation.
    :param tol: stopping tolerance.
    :param max_iter: iteration budget.
    :param operator: 'T' for the infinitesimal model, 'A' for the single-parent linear operator.
    :raises inflab.exceptions.ConvergenceError: no convergence within max_iter, or collapse to zero mass.
    """
    start = _time.monotonic()
    grid = f0.grid
    beta = m.certify(grid)
    step = _stepper(m, trunc, operator)
    tab = _inflab.io.Tabulator(columns=TRACE_COLUMNS)

    f = f0.restrict(trunc.mask(grid)) if trunc is not None else f0
    f = f.normalize()
    if operator == 'T':
        alpha_star = _solve_alpha(beta)
        gamma0 = _inflab.metrics.estimate_log_concavity(f, flag_below=-_np.inf)
        if gamma0 < alpha_star:
            _inflab.logging.log(l=_inflab.logging.LogLevel.WARNING, f=solve_eigen,
                                m=f"initial datum is less log-concave ({gamma0:.4g}) than alpha* = {alpha_star:.4g}; "
                                  f"convergence is not covered by the contraction estimate.")

    converged = False
    for n in range(1, max_iter + 1):
        try:
            tf = step(f)
            log_lambda = tf.log_mass()
        except ValueError as err:
            raise _inflab.exceptions.ConvergenceError(f"solve_eigen(): zero-mass collapse at generation {n}: {err}",
                                                      trace=tab.table) from err
        if not _np.isfinite(log_lambda):
            raise _inflab.exceptions.ConvergenceError(f"solve_eigen(): zero-mass collapse at generation {n}.",
                                                      trace=tab.table)
        g = tf.scaled(-log_lambda)
        diff = log_sup_difference(g, f)
        tab.append({'n': n,
                    'lambda_n': float(_np.exp(log_lambda)),
                    'step_diff': diff,
                    'alpha_hat_n': _inflab.metrics.estimate_log_concavity(g, flag_below=-_np.inf)})
        f = g
        if diff < tol:
            converged = True
            break
    if not converged:
        raise _inflab.exceptions.ConvergenceError(
            f"solve_eigen(): no convergence within {max_iter} iterations (tol {tol:g}).", trace=tab.table)

    tf = step(f)
    log_lambda = tf.log_mass()
    residual = log_sup_difference(tf, f.scaled(log_lambda))
    alpha_hat = _inflab.metrics.estimate_log_concavity(f)
    if operator == 'T' and alpha_hat < _solve_alpha(beta) - 10 * grid.h ** 2:
        _inflab.logging.log(l=_inflab.logging.LogLevel.WARNING, f=solve_eigen,
                            m=f"estimated log-concavity {alpha_hat:.6g} below alpha* = {_solve_alpha(beta):.6g}.")
    _inflab.logging.log(l=_inflab.logging.LogLevel.INFO, f=solve_eigen,
                        m=f"converged after {n} iterations in "
                          f"{_humanfriendly.format_timespan(_time.monotonic() - start)}: "
                          f"lambda = {_np.exp(log_lambda):.12g}, residual = {residual:.3g}.")
    return EigenResult(lambda_=float(_np.exp(log_lambda)),
                       profile=f,
                       alpha_hat=alpha_hat,
                       iterations=n,
                       trace=tab.table,
                       residual=residual,
                       truncated=trunc.R if trunc is not None else None,
                       operator=operator)


def solve_linear_eigen(m: _SelectionSpec,
                       f0: _LogDensity,
                       tol: float = 1e-10,
                       max_iter: int = 400) -> EigenResult:
    """Principal eigenpair of the single-parent operator A by the same normalized iteration."""
    return solve_eigen(m, f0, trunc=None, tol=tol, max_iter=max_iter, operator='A')


def truncation_ladder(m: _SelectionSpec,
                      f0: _LogDensity,
                      radii: _typing.Sequence[float],
                      tol: float = 1e-10,
                      max_iter: int = 400,
                      controller: '_inflab.submit.SweepController' = None) -> _pd.DataFrame:
    """Truncated eigenvalues lambda^R for several R, solved concurrently, plus the full-line eigenvalue.

    :return: table with columns R (inf for the full line), lambda, iterations, residual.
    """
    controller = controller if controller is not None else _inflab.submit.SweepController()
    cases = [None] + [_inflab.model.TruncationSpec(R=r) for r in radii]
    results = controller.map(lambda trunc: solve_eigen(m, f0, trunc=trunc, tol=tol, max_iter=max_iter), cases)
    tab = _inflab.io.Tabulator(columns=['R', 'lambda', 'iterations', 'residual'])
    for trunc, result in zip(cases, results):
        tab.append({'R': _np.inf if trunc is None else trunc.R,
                    'lambda': result.lambda_,
                    'iterations': result.iterations,
                    'residual': result.residual})
    return tab.table

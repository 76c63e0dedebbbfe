# -*- coding: utf-8 -*-
###############################################################################
# Copyright (c), The inflab developers. All rights reserved.                  #
# This file is part of the inflab package.                                    #
# (infinitesimal model laboratory)                                            #
#                                                                             #
# For further information on the license, see the LICENSE.txt file.           #
#                                                                             #
###############################################################################
"""inflab: analysis: iterated-generation experiments against a reference eigenpair."""

import dataclasses as _dc
import enum as _enum
import typing as _typing

import numpy as _np
import pandas as _pd

import inflab as _inflab
from inflab.grid import LogDensity as _LogDensity
from inflab.model import SelectionSpec as _SelectionSpec, TruncationSpec as _TruncationSpec

RUN_COLUMNS = ['n', 'mass', 'lambda_n', 'i_inf', 'kl', 'alpha_hat', 'ratio', 'lambda_bound']
CAUCHY_COLUMNS = ['n', 'mass', 'lambda_n', 'step_i_inf', 'ratio', 'bound', 'alpha_hat']
RATIO_FLOOR = 1e-8
FIT_WINDOW = (1e-11, 1e-2)
MIN_FIT_POINTS = 3


class InitialMode(_enum.Enum):
    """Bounded-slope perturbations phi of the eigenfunction, F0 = F exp(-epsilon phi)."""
    SINE = 'sine'
    TANH_SHIFT = 'tanh-shift'


@_dc.dataclass
class RunTrace:
    """Per-generation records of an iterated run.

    :param table: rows with columns n, mass, lambda_n, i_inf, kl, alpha_hat, ratio, lambda_bound (contraction and
                  linear runs) or n, mass, lambda_n, step_i_inf, ratio, bound, alpha_hat (Cauchy runs).
    :param operator: 'T' or 'A'.
    :param kappa_hat: largest finite per-step I_inf ratio (linear runs).
    :param kappa_kernel: largest W_inf ratio of the single-parent kernel (linear runs).
    """
    table: _pd.DataFrame
    operator: str = 'T'
    kappa_hat: float = _np.nan
    kappa_kernel: float = _np.nan

    @property
    def ratios(self) -> _np.ndarray:
        r = self.table['ratio'].to_numpy(dtype=float)
        return r[_np.isfinite(r)]

    @property
    def max_ratio(self) -> float:
        r = self.ratios
        return float(r.max()) if r.size else _np.nan

    def to_csv(self, path) -> None:
        _inflab.io.write_csv(self.table, path)


def make_admissible_initial(vbar: _LogDensity,
                            epsilon: float,
                            mode: _typing.Union[str, InitialMode] = InitialMode.SINE) -> _LogDensity:
    """Initial datum F0 = F exp(-epsilon phi), normalized, with sup |(log F0/F)'| = |epsilon|.

    phi is sin(x) (sine) or log cosh(x - 1) - log cosh(1) (tanh-shift). The shift breaks the symmetry so that
    the perturbation moves the mean.

    :param vbar: the eigenfunction F.
    :param epsilon: perturbation size, |epsilon| <= 1.
    :param mode: 'sine' or 'tanh-shift'.
    """
    mode = InitialMode(mode)
    if abs(epsilon) > 1:
        raise _inflab.logging.log(e=ValueError, f=make_admissible_initial,
                                  m=f"Need |epsilon| <= 1, got {epsilon}.")
    x = vbar.x
    if mode is InitialMode.SINE:
        phi = _np.sin(x)
    else:
        phi = (_np.logaddexp(x - 1.0, 1.0 - x) - _np.logaddexp(1.0, -1.0))
    return _LogDensity(grid=vbar.grid, v=vbar.v + epsilon * phi).normalize()


def _check_reference(f0: _LogDensity, reference: '_inflab.eigen.EigenResult', func) -> None:
    if f0.grid != reference.profile.grid:
        raise _inflab.logging.log(e=ValueError, f=func,
                                  m="Initial datum and reference live on different grids. "
                                    "Recompute the reference on the run grid.")


def _ratio(current: float, previous: float) -> float:
    return current / previous if previous > RATIO_FLOOR else _np.nan


def _iterate(step: _typing.Callable[[_LogDensity], _LogDensity],
             f0: _LogDensity,
             reference: '_inflab.eigen.EigenResult',
             generations: int,
             sup_phi: float) -> _pd.DataFrame:
    fbar = reference.profile
    tab = _inflab.io.Tabulator(columns=RUN_COLUMNS)
    log_mass = f0.log_mass()
    f = f0.normalize()
    i_inf = _inflab.metrics.fisher_infinity(f, fbar)
    kl = _inflab.metrics.kl_divergence(f, fbar)
    tab.append({'n': 0, 'mass': float(_np.exp(log_mass)), 'lambda_n': _np.nan, 'i_inf': i_inf, 'kl': kl,
                'alpha_hat': _inflab.metrics.estimate_log_concavity(f, flag_below=-_np.inf),
                'ratio': _np.nan, 'lambda_bound': _np.nan})
    for n in range(1, generations + 1):
        g = step(f)
        log_growth = g.log_mass()
        log_mass += log_growth
        bound = 2.0 * sup_phi * _np.sqrt(max(kl, 0.0)) if _np.isfinite(sup_phi) else _np.nan
        f = g.scaled(-log_growth)
        previous, i_inf = i_inf, _inflab.metrics.fisher_infinity(f, fbar)
        kl = _inflab.metrics.kl_divergence(f, fbar)
        tab.append({'n': n,
                    'mass': float(_np.exp(log_mass)),
                    'lambda_n': float(_np.exp(log_growth)),
                    'i_inf': i_inf,
                    'kl': kl,
                    'alpha_hat': _inflab.metrics.estimate_log_concavity(f, flag_below=-_np.inf),
                    'ratio': _ratio(i_inf, previous),
                    'lambda_bound': bound})
    return tab.table


def contraction_run(m: _SelectionSpec,
                    f0: _LogDensity,
                    reference: '_inflab.eigen.EigenResult',
                    generations: int) -> RunTrace:
    """Iterate T from f0 and record I_inf, KL and mass growth against the reference eigenpair.

    A truncated reference (``reference.truncated``) iterates the truncated operator. The column lambda_bound is
    the growth-rate estimate 2 sup(phi) sqrt(KL(F_{n-1}|F)) with phi = G * exp(-m). The ratio is NaN once the
    previous I_inf is below 1e-8.

    :param m: selection.
    :param f0: admissible initial datum, on the grid of the reference.
    :param reference: eigenpair on the same grid.
    :param generations: generations to iterate.
    """
    _check_reference(f0, reference, contraction_run)
    trunc = _TruncationSpec(R=reference.truncated) if reference.truncated is not None else None
    phi = _inflab.model.selection_smoothing(m, f0.grid)
    sup_phi = float(_np.exp(-_np.min(phi.v)))
    table = _iterate(lambda f: _inflab.model.apply_T(f, m, trunc),
                     f0.restrict(trunc.mask(f0.grid)) if trunc is not None else f0,
                     reference, generations, sup_phi)
    return RunTrace(table=table, operator='T')


def cauchy_run(m: _SelectionSpec,
               f0: _LogDensity,
               trunc: _typing.Optional[_TruncationSpec],
               generations: int,
               alpha0: float = None) -> RunTrace:
    """Consecutive-step I_inf(F_n | F_{n-1}) without a reference, against 2/(1+2 alpha_{n-2}).

    alpha_n follows alpha_{n+1} = beta + 2 alpha_n/(1 + 2 alpha_n) from alpha0.

    :param m: selection.
    :param f0: strongly log-concave initial datum.
    :param trunc: optional truncation.
    :param generations: generations to iterate.
    :param alpha0: log-concavity modulus of f0. Default: estimated from f0.
    """
    beta = m.certify(f0.grid)
    f = f0.restrict(trunc.mask(f0.grid)) if trunc is not None else f0
    alpha0 = alpha0 if alpha0 is not None else _inflab.metrics.estimate_log_concavity(f)
    if not alpha0 > 0:
        raise _inflab.logging.log(e=ValueError, f=cauchy_run, m=f"Need alpha0 > 0, got {alpha0}.")
    alphas = _inflab.model.alpha_sequence(alpha0, beta, generations)

    tab = _inflab.io.Tabulator(columns=CAUCHY_COLUMNS)
    log_mass = f.log_mass()
    f = f.normalize()
    previous = _np.nan
    for n in range(1, generations + 1):
        g = _inflab.model.apply_T(f, m, trunc)
        log_growth = g.log_mass()
        log_mass += log_growth
        g = g.scaled(-log_growth)
        step_i_inf = _inflab.metrics.fisher_infinity(g, f)
        tab.append({'n': n,
                    'mass': float(_np.exp(log_mass)),
                    'lambda_n': float(_np.exp(log_growth)),
                    'step_i_inf': step_i_inf,
                    'ratio': _ratio(step_i_inf, previous) if n >= 2 else _np.nan,
                    'bound': 2.0 / (1.0 + 2.0 * alphas[n - 2]) if n >= 2 else _np.nan,
                    'alpha_hat': _inflab.metrics.estimate_log_concavity(g, flag_below=-_np.inf)})
        previous, f = step_i_inf, g
    return RunTrace(table=tab.table, operator='T')


def growth_rate_fit(trace: RunTrace,
                    reference: '_inflab.eigen.EigenResult',
                    window: _typing.Tuple[float, float] = FIT_WINDOW) -> _typing.Tuple[float, float]:
    """Least-squares slopes of log|lambda_n - lambda| and of log KL_n against n.

    Only values inside ``window`` enter each fit.

    :return: (slope_lambda, slope_kl).
    :raises ValueError: 'decay outside fit window' if a fit has fewer than 3 points.
    """
    table = trace.table
    lo, hi = window

    def _slope(n, values, name):
        values = _np.asarray(values, dtype=float)
        inside = _np.isfinite(values) & (values > lo) & (values < hi)
        if _np.count_nonzero(inside) < MIN_FIT_POINTS:
            raise _inflab.logging.log(e=ValueError, f=growth_rate_fit,
                                      m=f"decay outside fit window: {_np.count_nonzero(inside)} {name} values in "
                                        f"({lo:g}, {hi:g}).")
        return float(_np.polyfit(_np.asarray(n, dtype=float)[inside], _np.log(values[inside]), 1)[0])

    rows = table[table['n'] >= 1]
    slope_lambda = _slope(rows['n'], _np.abs(rows['lambda_n'] - reference.lambda_), 'lambda gap')
    slope_kl = _slope(table['n'], table['kl'], 'KL')
    return slope_lambda, slope_kl


def linear_operator_run(m: _SelectionSpec,
                        f0: _LogDensity,
                        reference: '_inflab.eigen.EigenResult',
                        generations: int,
                        kernel_pairs: _typing.Sequence[_typing.Tuple[float, float]] = ((0.0, 1.0), (-1.0, 1.0))) \
        -> RunTrace:
    """Iterate the single-parent operator A and estimate its contraction kappa.

    kappa_hat is the largest per-step I_inf ratio. kappa_kernel is the largest W_inf ratio of the single-parent
    kernels of the reference eigenfunction over ``kernel_pairs``.

    :param reference: principal eigenpair of A on the grid of f0, see :py:func:`inflab.eigen.solve_linear_eigen`.
    """
    _check_reference(f0, reference, linear_operator_run)
    table = _iterate(lambda f: _inflab.model.apply_A(f, m), f0, reference, generations, sup_phi=_np.nan)
    trace = RunTrace(table=table, operator='A')
    trace.kappa_hat = trace.max_ratio
    kernel = _inflab.transport.linear_kernel_contraction(reference.profile, kernel_pairs)
    trace.kappa_kernel = float(_np.nanmax(kernel['ratio'].to_numpy(dtype=float)))
    _inflab.logging.log(l=_inflab.logging.LogLevel.INFO, f=linear_operator_run,
                        m=f"kappa_hat = {trace.kappa_hat:.6g}, kernel kappa = {trace.kappa_kernel:.6g}.")
    return trace

# -*- coding: utf-8 -*-
###############################################################################
# Copyright (c), The inflab developers. All rights reserved.                  #
# This file is part of the inflab package.                                    #
# (infinitesimal model laboratory)                                            #
#                                                                             #
# For further information on the license, see the LICENSE.txt file.           #
#                                                                             #
###############################################################################
"""inflab: analysis: lower bounds for Gaussian convolutions of log-concave densities.

For f = exp(-V)/Z with V(0) = V'(0) = 0 and V'' >= gamma > 0, and x0 > (gamma + 2) delta / gamma,

    (G * f)(x0 + delta) >= G(2 delta) f(x0 - delta) int_0^U exp((gamma + 1) z^2 / 2) dz,

with U = (gamma x0 - (gamma + 2) delta) / (gamma + 1). The same holds for f truncated to [-R, R] when
R > 2 delta / gamma and x0 < R + delta.
"""

import itertools as _itertools
import typing as _typing

import numpy as _np
import pandas as _pd
from scipy import integrate as _integrate

import inflab as _inflab
from inflab.grid import Grid1D as _Grid1D
from inflab.model import \
    SelectionKind as _SelectionKind, \
    SelectionSpec as _SelectionSpec, \
    TruncationSpec as _TruncationSpec

LOWER_BOUND_COLUMNS = ['x0', 'delta', 'R', 'upper_limit', 'stated_limit', 'lhs', 'lhs_analytic', 'rhs',
                       'rhs_stated', 'pass']
RELATIVE_SLACK = 1e-6
DEFAULT_DELTAS = (0.25, 0.5, 0.75, 1.0)
DEFAULT_OFFSETS = (0.1, 0.5, 1.0, 2.0, 3.0)


def lower_bound_threshold(gamma: float, delta: float) -> float:
    """Smallest admissible x0, (gamma + 2) delta / gamma."""
    return (gamma + 2.0) * delta / gamma


def lower_bound_lattice(gamma: float,
                        deltas: _typing.Sequence[float] = DEFAULT_DELTAS,
                        offsets: _typing.Sequence[float] = DEFAULT_OFFSETS) -> _typing.List[_typing.Tuple[float, float]]:
    """(x0, delta) samples with x0 = threshold(delta) + offset."""
    return [(lower_bound_threshold(gamma, d) + o, d) for d, o in _itertools.product(deltas, offsets)]


def gaussian_pdf(y: _np.ndarray, variance: float = 1.0) -> _np.ndarray:
    return _np.exp(-0.5 * _np.asarray(y) ** 2 / variance) / _np.sqrt(2.0 * _np.pi * variance)


def log_explicit_integral(gamma: float, upper: float) -> float:
    """log of int_0^U exp((gamma + 1) z^2 / 2) dz, -inf for U <= 0.

    Integrated in the scaled form exp(a U^2) int_0^U exp(a (z^2 - U^2)) dz, a = (gamma + 1)/2.
    """
    if upper <= 0:
        return -_np.inf
    a = 0.5 * (gamma + 1.0)
    scaled, _ = _integrate.quad(lambda z: _np.exp(a * (z * z - upper * upper)), 0.0, upper,
                                epsabs=0.0, epsrel=1e-12, limit=200)
    return a * upper * upper + float(_np.log(scaled))


def _check_potential(potential: _SelectionSpec, gamma: float, grid: _Grid1D) -> None:
    certified = potential.certify(grid)
    if gamma <= 0 or gamma > certified + 10 * grid.h ** 2:
        raise _inflab.logging.log(e=ValueError, f=lower_bound_check,
                                  m=f"gamma certificate failed: need 0 < gamma <= {certified:.6g}, got {gamma}.")
    if potential.kind != _SelectionKind.TABULATED and abs(float(potential.derivative(0.0))) > 1e-12:
        raise _inflab.logging.log(e=ValueError, f=lower_bound_check, m="V'(0) = 0 violated.")


def _check_sample(x0: float, delta: float, gamma: float, trunc: _typing.Optional[_TruncationSpec]) -> None:
    if delta <= 0:
        raise _inflab.logging.log(e=ValueError, f=lower_bound_check, m=f"Need delta > 0, got {delta}.")
    threshold = lower_bound_threshold(gamma, delta)
    if not x0 > threshold:
        raise _inflab.logging.log(e=ValueError, f=lower_bound_check,
                                  m=f"precondition x0 > (gamma+2) delta / gamma failed: x0 = {x0}, "
                                    f"threshold = {threshold:.6g}.")
    if trunc is not None:
        if not trunc.R > 2.0 * delta / gamma:
            raise _inflab.logging.log(e=ValueError, f=lower_bound_check,
                                      m=f"precondition R > 2 delta / gamma failed: R = {trunc.R}, delta = {delta}.")
        if not x0 < trunc.R + delta:
            raise _inflab.logging.log(e=ValueError, f=lower_bound_check,
                                      m=f"precondition x0 < R + delta failed: x0 = {x0}, R = {trunc.R}.")


def lower_bound_check(potential: _SelectionSpec,
                      gamma: float,
                      samples: _typing.Sequence[_typing.Tuple[float, float]],
                      grid: _Grid1D = None,
                      trunc: _TruncationSpec = None) -> _pd.DataFrame:
    """Verify the Gaussian-convolution lower bound on (x0, delta) samples.

    The left side is the trapezoid sum of G(x0 + delta - y) f(y) over the grid, f normalized on the grid. The
    right side uses the upper limit U = (gamma x0 - (gamma + 2) delta)/(gamma + 1). The limit
    gamma x0/(gamma + 1) - delta/(gamma + 1) and its right side are reported as stated_limit and rhs_stated.
    A row passes if lhs >= rhs (1 - 1e-6).

    :param potential: convex potential V with V(0) = V'(0) = 0.
    :param gamma: convexity modulus of V, certified on the grid.
    :param samples: (x0, delta) pairs.
    :param grid: quadrature grid. Default [-10, 10] with 2001 nodes.
    :param trunc: optional truncation of f to [-R, R].
    :raises ValueError: naming the precondition that failed.
    """
    grid = grid if grid is not None else _Grid1D.symmetric(10.0, 2001)
    _check_potential(potential, gamma, grid)
    for x0, delta in samples:
        _check_sample(x0, delta, gamma, trunc)

    f = _inflab.grid.LogDensity(grid=grid, v=potential.on_grid(grid))
    if trunc is not None:
        f = f.restrict(trunc.mask(grid))
    log_z = f.log_mass()
    weights = grid.trapezoid_weights * f.values() / _np.exp(log_z)
    analytic = potential.kind == _SelectionKind.QUADRATIC and trunc is None

    tab = _inflab.io.Tabulator(columns=LOWER_BOUND_COLUMNS)
    for x0, delta in samples:
        lhs = float(_np.sum(weights * gaussian_pdf(x0 + delta - grid.nodes)))
        log_prefactor = float(_np.log(gaussian_pdf(2.0 * delta)) - potential.evaluate(x0 - delta) - log_z)
        upper = (gamma * x0 - (gamma + 2.0) * delta) / (gamma + 1.0)
        stated = gamma * x0 / (gamma + 1.0) - delta / (gamma + 1.0)
        rhs = float(_np.exp(log_prefactor + log_explicit_integral(gamma, upper)))
        tab.append({'x0': float(x0),
                    'delta': float(delta),
                    'R': trunc.R if trunc is not None else _np.inf,
                    'upper_limit': upper,
                    'stated_limit': stated,
                    'lhs': lhs,
                    'lhs_analytic': float(gaussian_pdf(x0 + delta, 1.0 + 1.0 / potential.beta)) if analytic
                    else _np.nan,
                    'rhs': rhs,
                    'rhs_stated': float(_np.exp(log_prefactor + log_explicit_integral(gamma, stated))),
                    'pass': bool(lhs >= rhs * (1.0 - RELATIVE_SLACK))})
    return tab.table

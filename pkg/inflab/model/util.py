# -*- coding: utf-8 -*-
###############################################################################
# Copyright (c), The inflab developers. All rights reserved.                  #
# This file is part of the inflab package.                                    #
# (infinitesimal model laboratory)                                            #
#                                                                             #
# For further information on the license, see the LICENSE.txt file.           #
#                                                                             #
###############################################################################
"""inflab: model: infinitesimal-model operators and log-concavity rules.

T[F] = exp(-m) B[F] with B[F] = G * (law of the parental mid-trait) / ||F||, the single-parent operator
A[F] = exp(-m) (G * F), and the truncated operator T_R which additionally zeroes everything outside [-R, R].
"""

import typing as _typing

import numpy as _np
from scipy import special as _special

import inflab as _inflab
from inflab.grid import Grid1D as _Grid1D, LogDensity as _LogDensity
from .selection import SelectionSpec as _SelectionSpec, TruncationSpec as _TruncationSpec


def gaussian_kernel(grid: _Grid1D) -> _LogDensity:
    """Segregation kernel G = N(0, 1) sampled on the grid: V(x) = x^2/2 + log(2 pi)/2."""
    return _LogDensity.gaussian(grid, mean=0.0, variance=1.0)


def _kernel_grid(grid: _Grid1D) -> _Grid1D:
    """Grid for G holding every difference x_k - x_j of two nodes of ``grid``."""
    width = grid.right - grid.left
    return _Grid1D(left=-width, right=width, n=2 * grid.n - 1)


def _require_mass(f: _LogDensity, func) -> float:
    log_mass = f.log_mass()
    if not _np.isfinite(log_mass):
        raise _inflab.logging.log(e=ValueError, f=func, m="zero mass: the density vanishes on the grid.")
    return log_mass


def convolve_gaussian(f: _LogDensity) -> _LogDensity:
    """G * F on the grid of F."""
    kernel = gaussian_kernel(_kernel_grid(f.grid))
    return _inflab.grid.logsumexp_convolve(kernel, f, f.grid)


def midpoint_density(f: _LogDensity) -> _LogDensity:
    """h(s) = 2 int F(2s - y) F(y) dy, the law of (X1 + X2)/2 times ||F||^2.

    On a symmetric grid with 0 on-grid, 2 x_k - x_j is the node with index 2k - j, so no interpolation happens.

    :param f: density on a symmetric grid with an odd node count.
    :raises ValueError: on any other grid.
    """
    if f.grid.zero_index is None:
        raise _inflab.logging.log(e=ValueError, f=midpoint_density,
                                  m=f"asymmetric grid [{f.grid.left}, {f.grid.right}] with n = {f.grid.n}: "
                                    f"need left = -right and odd n.")
    la = -f.v
    log_sum = _inflab.grid.log_index_sum(la, la, f.grid.n, k_coef=2, offset=0)
    return _LogDensity(grid=f.grid, v=-(log_sum + _np.log(2.0 * f.grid.h)))


def apply_B(f: _LogDensity) -> _LogDensity:
    """Recombination operator B[F] = G * midpoint_density(F) / ||F||. Preserves mass."""
    log_mass = _require_mass(f, apply_B)
    return convolve_gaussian(midpoint_density(f)).scaled(-log_mass)


def apply_T(f: _LogDensity,
            m: _SelectionSpec,
            trunc: _TruncationSpec = None) -> _LogDensity:
    """One generation: T[F] = exp(-m) B[F], or T_R[F] = 1_{[-R, R]} exp(-m) B[F] with ``trunc``.

    :param f: parental density, positive mass.
    :param m: selection.
    :param trunc: optional selection truncation.
    """
    _require_mass(f, apply_T)
    out = apply_B(f).add_potential(m.on_grid(f.grid))
    if trunc is not None:
        out = out.restrict(trunc.mask(f.grid))
    return out


def apply_A(f: _LogDensity, m: _SelectionSpec) -> _LogDensity:
    """Single-parent linear operator A[F] = exp(-m) (G * F)."""
    _require_mass(f, apply_A)
    return convolve_gaussian(f).add_potential(m.on_grid(f.grid))


def log_concavity_update(gamma: float, beta: float) -> float:
    """Modulus after one generation: gamma-log-concave parents and beta-convex m give
    beta + 2 gamma / (1 + 2 gamma)."""
    if not (gamma > 0 and beta > 0):
        raise _inflab.logging.log(e=ValueError, f=log_concavity_update,
                                  m=f"Need gamma > 0 and beta > 0, got {gamma}, {beta}.")
    if _np.isinf(gamma):
        return beta + 1.0
    return beta + 2.0 * gamma / (1.0 + 2.0 * gamma)


def convolution_log_concavity(gamma1: float, gamma2: float) -> float:
    """Modulus of a convolution of a gamma1- and a gamma2-log-concave density: 1/(1/gamma1 + 1/gamma2)."""
    if not (gamma1 > 0 and gamma2 > 0):
        raise _inflab.logging.log(e=ValueError, f=convolution_log_concavity,
                                  m=f"Need positive moduli, got {gamma1}, {gamma2}.")
    return 1.0 / (1.0 / gamma1 + 1.0 / gamma2)


def alpha_sequence(alpha0: float, beta: float, n: int) -> _np.ndarray:
    """alpha_0, ..., alpha_n of alpha_{k+1} = log_concavity_update(alpha_k, beta)."""
    out = _np.empty(n + 1)
    out[0] = alpha0
    for k in range(n):
        out[k + 1] = log_concavity_update(out[k], beta)
    return out


def selection_smoothing(m: _SelectionSpec, grid: _Grid1D) -> _LogDensity:
    """phi = G * exp(-m), the survival probability of offspring of a given mid-parent trait."""
    survival = _LogDensity(grid=grid, v=m.on_grid(grid))
    return convolve_gaussian(survival)


def growth_factor(f: _LogDensity,
                  m: _SelectionSpec,
                  phi: _typing.Optional[_LogDensity] = None) -> float:
    """int phi((x1 + x2)/2) F(x1) F(x2) dx1 dx2 / ||F||^2, which equals ||T[F]|| / ||F||.

    :param f: parental density.
    :param m: selection.
    :param phi: precomputed :py:func:`~.selection_smoothing` on the grid of f.
    """
    log_mass = _require_mass(f, growth_factor)
    phi = selection_smoothing(m, f.grid) if phi is None else phi
    mid = midpoint_density(f)
    finite = mid.finite & phi.finite
    log_integral = _special.logsumexp(-(mid.v[finite] + phi.v[finite]), b=f.grid.trapezoid_weights[finite])
    return float(_np.exp(log_integral - 2.0 * log_mass))

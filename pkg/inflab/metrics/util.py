# -*- coding: utf-8 -*-
###############################################################################
# Copyright (c), The inflab developers. All rights reserved.                  #
# This file is part of the inflab package.                                    #
# (infinitesimal model laboratory)                                            #
#                                                                             #
# For further information on the license, see the LICENSE.txt file.           #
#                                                                             #
###############################################################################
"""inflab: metrics: divergences and shape functionals of grid densities.

Sup-type functionals (I_inf, Hilbert metric, step differences) are taken over the support region: the longest
run of nodes where both densities exceed exp(-60) times their maximum.
"""

import dataclasses as _dc
import typing as _typing

import numpy as _np
from scipy import integrate as _integrate

import inflab as _inflab
from inflab.grid import LogDensity as _LogDensity

SUPPORT_CUTOFF = 60.0
# relative growth of |d/dx log(p/q)| towards the region edge that marks a divergent sup
GRID_DEPENDENCE_GROWTH = 1.05
# I_inf values below this are round-off and never flagged
GRID_DEPENDENCE_FLOOR = 1e-8


def _check_common_grid(p: _LogDensity, q: _LogDensity, func) -> None:
    if p.grid != q.grid:
        raise _inflab.logging.log(e=ValueError, f=func, m=f"Densities live on different grids: {p.grid}, {q.grid}.")


def _longest_run(mask: _np.ndarray) -> _typing.Optional[slice]:
    if not mask.any():
        return None
    padded = _np.concatenate([[False], mask, [False]]).astype(int)
    edges = _np.flatnonzero(_np.diff(padded))
    starts, stops = edges[0::2], edges[1::2]
    k = int(_np.argmax(stops - starts))
    return slice(int(starts[k]), int(stops[k]))


def support_region(p: _LogDensity,
                   q: _LogDensity = None,
                   cutoff: float = SUPPORT_CUTOFF,
                   min_nodes: int = 3) -> slice:
    """Longest run of nodes where p (and q) exceed exp(-cutoff) times their maximum.

    :raises ValueError: 'disjoint supports' if that run has fewer than ``min_nodes`` nodes.
    """
    mask = p.finite & (p.v <= _np.min(p.v) + cutoff)
    if q is not None:
        _check_common_grid(p, q, support_region)
        mask &= q.finite & (q.v <= _np.min(q.v) + cutoff)
    region = _longest_run(mask)
    if region is None or region.stop - region.start < min_nodes:
        raise _inflab.logging.log(e=ValueError, f=support_region,
                                  m=f"disjoint supports: fewer than {min_nodes} common support nodes.")
    return region


def log_ratio_derivative(p: _LogDensity, q: _LogDensity) -> _typing.Tuple[_np.ndarray, _np.ndarray]:
    """d/dx log(p/q) by central differences on the support region.

    :return: (nodes, derivative) over the region.
    """
    region = support_region(p, q)
    r = q.v[region] - p.v[region]
    return p.x[region], _np.gradient(r, p.grid.h, edge_order=2)


def _edge_growing(a: _np.ndarray) -> bool:
    k = int(_np.argmax(a))
    n = a.size
    inward = max(1, n // 10)
    if k <= 1:
        inner = a[min(k + inward, n - 1)]
    elif k >= n - 2:
        inner = a[max(k - inward, 0)]
    else:
        return False
    return bool(a[k] > GRID_DEPENDENCE_GROWTH * inner)


def fisher_infinity(p: _LogDensity, q: _LogDensity) -> float:
    """L-infinity relative Fisher information sup |d/dx log(p/q)|, over the support region.

    Logs a warning if the value is above round-off and grid-dependent, see :py:func:`~.fisher_infinity_is_grid_dependent`.
    """
    _, d = log_ratio_derivative(p, q)
    a = _np.abs(d)
    value = float(_np.max(a))
    if value > GRID_DEPENDENCE_FLOOR and _edge_growing(a):
        _inflab.logging.log(l=_inflab.logging.LogLevel.WARNING, f=fisher_infinity,
                            m=f"grid-dependent (sup = inf): I_inf = {value:.6g} grows up to the edge of the "
                              f"support window.")
    return value


def fisher_infinity_is_grid_dependent(p: _LogDensity, q: _LogDensity) -> bool:
    """True if |d/dx log(p/q)| peaks at the edge of the support region and is still growing there.

    Such a value measures the window, not the pair (e.g. Gaussians of different variance, whose sup is +inf).
    """
    _, d = log_ratio_derivative(p, q)
    return _edge_growing(_np.abs(d))


def _normalized_weights(f: _LogDensity) -> _np.ndarray:
    """Quadrature weights times the normalized density values."""
    with _np.errstate(over='ignore'):
        return f.grid.trapezoid_weights * _np.exp(-(f.v + f.log_mass()))


def fisher_two(p: _LogDensity, q: _LogDensity) -> float:
    """Relative Fisher information int |d/dx log(p/q)|^2 p dx with p normalized, over the support region."""
    region = support_region(p, q)
    _, d = log_ratio_derivative(p, q)
    return float(_np.sum(_normalized_weights(p)[region] * d ** 2))


def kl_divergence(p: _LogDensity, q: _LogDensity) -> float:
    """Relative entropy int p log(p/q) dx of the normalized densities.

    Summed as int (p log(p/q) - p + q) dx, whose integrand is nonnegative, so small divergences do not cancel.

    :raises ValueError: 'absolute continuity violated' if p > 0 at a node where q = 0.
    """
    _check_common_grid(p, q, kl_divergence)
    if (p.finite & ~q.finite).any():
        x_bad = p.x[p.finite & ~q.finite][0]
        raise _inflab.logging.log(e=ValueError, f=kl_divergence,
                                  m=f"absolute continuity violated: p > 0 = q at x = {x_bad:.6g}.")
    w = p.grid.trapezoid_weights
    lp = -(p.v + p.log_mass())
    lq = -(q.v + q.log_mass())
    terms = _np.zeros(p.grid.n)
    both = p.finite
    r = lp[both] - lq[both]
    q_val = _np.exp(lq[both])
    small = _np.abs(r) < 1.0
    integrand = _np.empty_like(r)
    integrand[small] = q_val[small] * (r[small] * _np.exp(r[small]) - _np.expm1(r[small]))
    p_val = _np.exp(lp[both][~small])
    integrand[~small] = p_val * r[~small] - p_val + q_val[~small]
    terms[both] = integrand
    only_q = q.finite & ~p.finite
    terms[only_q] = _np.exp(lq[only_q])
    return float(max(_np.sum(w * terms), 0.0))


def hilbert_metric(p: _LogDensity, q: _LogDensity) -> float:
    """Hilbert projective distance osc(log p/q) over the support region. Invariant under scaling p or q."""
    region = support_region(p, q)
    r = q.v[region] - p.v[region]
    return float(_np.max(r) - _np.min(r))


def mass_region(f: _LogDensity, fraction: float = 0.99) -> slice:
    """Central node range holding ``fraction`` of the mass of f, inside its finite region."""
    region = _inflab.grid.finite_region(f)
    values = _np.exp(-(f.v[region] - _np.min(f.v[region])))
    cdf = _integrate.cumulative_trapezoid(values, dx=f.grid.h, initial=0.0)
    cdf /= cdf[-1]
    tail = 0.5 * (1.0 - fraction)
    lo = int(_np.searchsorted(cdf, tail, side='right')) - 1
    hi = int(_np.searchsorted(cdf, 1.0 - tail, side='left'))
    lo, hi = max(lo, 0), min(hi, values.size - 1)
    return slice(region.start + lo, region.start + hi + 1)


def estimate_log_concavity(f: _LogDensity,
                           fraction: float = 0.99,
                           flag_below: float = 1e-2) -> float:
    """Numerical log-concavity modulus: min of V'' over the central mass region, boundary stencils excluded.

    :param f: density with at least 5 finite nodes.
    :param fraction: mass fraction of the central region.
    :param flag_below: log a warning if the estimate does not exceed this value.
    """
    region = _inflab.grid.finite_region(f)
    if region.stop - region.start < 5:
        raise _inflab.logging.log(e=ValueError, f=estimate_log_concavity,
                                  m=f"Need at least 5 finite nodes, got {region.stop - region.start}.")
    d2 = _inflab.grid.second_log_derivative(f)
    central = mass_region(f, fraction)
    lo = max(central.start - region.start, 1)
    hi = min(central.stop - region.start, d2.size - 1)
    if hi <= lo:
        lo, hi = 1, d2.size - 1
    estimate = float(_np.min(d2[lo:hi]))
    if estimate <= flag_below:
        _inflab.logging.log(l=_inflab.logging.LogLevel.WARNING, f=estimate_log_concavity,
                            m=f"not strongly log-concave at center: min V'' = {estimate:.3g}.")
    return estimate


def moments(f: _LogDensity) -> _typing.Tuple[float, float, float]:
    """(mass, mean, variance), the last two of the normalized density."""
    weights = _normalized_weights(f)
    x = f.x
    mean = float(_np.sum(weights * x))
    variance = float(_np.sum(weights * (x - mean) ** 2))
    return f.mass(), mean, variance


def l1_distance(p: _LogDensity, q: _LogDensity) -> float:
    """int |p - q| dx of the normalized densities."""
    _check_common_grid(p, q, l1_distance)
    w = p.grid.trapezoid_weights
    with _np.errstate(over='ignore'):
        diff = _np.exp(-(p.v + p.log_mass())) - _np.exp(-(q.v + q.log_mass()))
    return float(_np.sum(w * _np.abs(diff)))


def product_kl(p: _LogDensity, q: _LogDensity) -> float:
    """KL(p x p || q x q) summed on the product grid (tensorization gives 2 KL(p || q))."""
    _check_common_grid(p, q, product_kl)
    if (p.finite & ~q.finite).any():
        raise _inflab.logging.log(e=ValueError, f=product_kl, m="absolute continuity violated.")
    keep = p.finite
    w = p.grid.trapezoid_weights[keep]
    lp = -(p.v[keep] + p.log_mass())
    lq = -(q.v[keep] + q.log_mass())
    pp = _np.outer(w * _np.exp(lp), w * _np.exp(lp))
    log_ratio = (lp - lq)[:, None] + (lp - lq)[None, :]
    return float(_np.sum(pp * log_ratio))


def holder_pinsker_check(p: _LogDensity,
                         q: _LogDensity,
                         phi: _np.ndarray) -> _typing.Tuple[float, float, bool]:
    """|int phi d(p x p - q x q)| <= ||phi||_inf sqrt(2 KL(p x p || q x q)).

    :param phi: bounded test function on the product grid, shape (n, n).
    :return: (lhs, rhs, passed).
    """
    w = p.grid.trapezoid_weights
    pw = w * _np.exp(-(p.v + p.log_mass()))
    qw = w * _np.exp(-(q.v + q.log_mass()))
    lhs = abs(float(_np.sum(phi * (_np.outer(pw, pw) - _np.outer(qw, qw)))))
    rhs = float(_np.max(_np.abs(phi)) * _np.sqrt(2.0 * max(product_kl(p, q), 0.0)))
    return lhs, rhs, lhs <= rhs + 1e-12


@_dc.dataclass
class DivergenceReport:
    """All divergences of one comparison p vs q.

    :param i_inf: L-infinity relative Fisher information.
    :param i_two: relative Fisher information.
    :param kl: relative entropy.
    :param hilbert: Hilbert projective distance.
    :param support_used: (left, right) of the support region.
    :param i_inf_grid_dependent: True if i_inf measures the grid window rather than the pair.
    """
    i_inf: float
    i_two: float
    kl: float
    hilbert: float
    support_used: _typing.Tuple[float, float]
    i_inf_grid_dependent: bool = False

    def to_row(self) -> _typing.Dict[str, _typing.Any]:
        row = _dc.asdict(self)
        left, right = row.pop('support_used')
        row['support_left'], row['support_right'] = left, right
        return row


def divergence_report(p: _LogDensity, q: _LogDensity) -> DivergenceReport:
    """Compute every divergence of p against q. Flags a grid-dependent I_inf."""
    region = support_region(p, q)
    return DivergenceReport(i_inf=fisher_infinity(p, q),
                            i_two=fisher_two(p, q),
                            kl=kl_divergence(p, q),
                            hilbert=hilbert_metric(p, q),
                            support_used=(float(p.x[region.start]), float(p.x[region.stop - 1])),
                            i_inf_grid_dependent=fisher_infinity_is_grid_dependent(p, q))


@_dc.dataclass
class LsiChainReport:
    """KL <= I_2/(2 gamma) <= I_inf^2/(2 gamma) for a gamma-log-concave reference.

    :param kl: KL(p || q).
    :param i_two_bound: I_2(p || q)/(2 gamma).
    :param i_inf_bound: I_inf(p || q)^2/(2 gamma).
    :param gamma: log-concavity modulus of q used in the bounds.
    :param passed: both links hold within the slack.
    """
    kl: float
    i_two_bound: float
    i_inf_bound: float
    gamma: float
    passed: bool

    @property
    def slack(self) -> float:
        """Smallest margin of the two links; negative on failure."""
        return min(self.i_two_bound - self.kl, self.i_inf_bound - self.i_two_bound)


def lsi_chain_check(p: _LogDensity,
                    q: _LogDensity,
                    gamma: float,
                    tol: float = 1e-8,
                    certify_tol: float = None) -> LsiChainReport:
    """Check the log-Sobolev chain of p against a gamma-log-concave reference q.

    :param p: compared density.
    :param q: reference density.
    :param gamma: claimed log-concavity modulus of q.
    :param tol: absolute slack of each link.
    :param certify_tol: slack of the log-concavity certificate. Default 10 h^2.
    :raises ValueError: if the estimated modulus of q is below gamma.
    """
    certify_tol = 10 * q.grid.h ** 2 if certify_tol is None else certify_tol
    gamma_hat = estimate_log_concavity(q)
    if gamma_hat < gamma - certify_tol:
        raise _inflab.logging.log(e=ValueError, f=lsi_chain_check,
                                  m=f"gamma certificate failed: estimated {gamma_hat:.6g} < claimed {gamma:.6g}.")
    kl = kl_divergence(p, q)
    i_two_bound = fisher_two(p, q) / (2 * gamma)
    i_inf_bound = fisher_infinity(p, q) ** 2 / (2 * gamma)
    passed = kl <= i_two_bound + tol and i_two_bound <= i_inf_bound + tol
    return LsiChainReport(kl=kl, i_two_bound=i_two_bound, i_inf_bound=i_inf_bound, gamma=gamma, passed=passed)

# -*- coding: utf-8 -*-
###############################################################################
# Copyright (c), The inflab developers. All rights reserved.                  #
# This file is part of the inflab package.                                    #
# (infinitesimal model laboratory)                                            #
#                                                                             #
# For further information on the license, see the LICENSE.txt file.           #
#                                                                             #
###############################################################################
"""inflab: transport: exact discrete solvers.

W_{p,q} for finite p is an uncapacitated min-cost flow on the bipartite supply/demand graph. W_{inf,q} is a
bottleneck problem: binary search over the distinct pairwise costs, feasibility by max-flow. Masses are
integerized (scale 1e9, largest remainder) so both solvers work in exact integer arithmetic.
"""

import typing as _typing

import networkx as _nx
import numpy as _np
from scipy import sparse as _sparse
from scipy.sparse import csgraph as _csgraph
from scipy.spatial import distance as _distance

import inflab as _inflab
from .measures import \
    DiscreteMeasure as _DiscreteMeasure, \
    INTEGER_SCALE as _INTEGER_SCALE, \
    TransportReport as _TransportReport, \
    kind_label as _kind_label

MAX_LP_SUPPORT = 400
MAX_BOTTLENECK_SUPPORT = 2500
COST_SCALE = 10 ** 12

_METRICS = {1: 'cityblock', 2: 'euclidean', _np.inf: 'chebyshev'}


def _check_q(q: float, func) -> None:
    if q not in _METRICS:
        raise _inflab.logging.log(e=ValueError, f=func, m=f"Ground norm q must be 1, 2 or inf, got {q}.")


def ground_costs(mu: _DiscreteMeasure, nu: _DiscreteMeasure, q: float) -> _np.ndarray:
    """Pairwise |z - z'|_q, shape (mu.size, nu.size)."""
    _check_q(q, ground_costs)
    if mu.dim != nu.dim:
        raise _inflab.logging.log(e=ValueError, f=ground_costs,
                                  m=f"Measures live in different dimensions: {mu.dim}, {nu.dim}.")
    return _distance.cdist(mu.points, nu.points, metric=_METRICS[q])


def _displacements(mu: _DiscreteMeasure,
                   nu: _DiscreteMeasure,
                   plan: _typing.List[_typing.Tuple[int, int, float]]) -> _typing.Tuple[float, float]:
    if not plan:
        return 0.0, 0.0
    i = _np.array([e[0] for e in plan])
    j = _np.array([e[1] for e in plan])
    delta = mu.points[i] - nu.points[j]
    return float(_np.max(_np.sum(_np.abs(delta), axis=1))), float(_np.max(_np.sqrt(_np.sum(delta ** 2, axis=1))))


def _min_cost_plan(a: _np.ndarray,
                   b: _np.ndarray,
                   cost: _np.ndarray) -> _typing.List[_typing.Tuple[int, int, int]]:
    """Optimal plan of the integer transportation problem, costs rounded to integers relative to their max."""
    n = a.size
    c_max = float(_np.max(cost)) if cost.size else 0.0
    factor = COST_SCALE / c_max if c_max > 0 else 0.0
    int_cost = _np.rint(cost * factor).astype(_np.int64)

    graph = _nx.DiGraph()
    for i, supply in enumerate(a):
        graph.add_node(i, demand=-int(supply))
    for j, demand in enumerate(b):
        graph.add_node(n + j, demand=int(demand))
    for i in range(n):
        for j in range(b.size):
            graph.add_edge(i, n + j, weight=int(int_cost[i, j]))
    flow = _nx.min_cost_flow(graph)

    plan = []
    for i in range(n):
        for target, units in flow[i].items():
            if units > 0:
                plan.append((i, target - n, int(units)))
    return plan


def wpq_lp(mu: _DiscreteMeasure,
           nu: _DiscreteMeasure,
           p: float,
           q: float) -> _TransportReport:
    """Exact W_{p,q} for p in {1, 2} by min-cost flow.

    :param mu: source measure, at most 400 points.
    :param nu: target measure, at most 400 points.
    :param p: integrability exponent, 1 or 2.
    :param q: ground norm, 1, 2 or inf.
    :return: report with value, plan and the displacement statistics of the plan.
    """
    if p not in (1, 2):
        raise _inflab.logging.log(e=ValueError, f=wpq_lp, m=f"p must be 1 or 2, got {p}. Use bottleneck_winf for inf.")
    if max(mu.size, nu.size) > MAX_LP_SUPPORT:
        raise _inflab.logging.log(e=ValueError, f=wpq_lp,
                                  m=f"Support sizes {mu.size}, {nu.size} exceed {MAX_LP_SUPPORT}: "
                                    f"use bottleneck/sinkhorn path.")
    cost = ground_costs(mu, nu, q)
    a, b = mu.integer_weights(), nu.integer_weights()
    int_plan = _min_cost_plan(a, b, cost ** p)
    plan = [(i, j, units / _INTEGER_SCALE) for i, j, units in int_plan]
    total = sum(mass * cost[i, j] ** p for i, j, mass in plan)
    max_l1, max_l2 = _displacements(mu, nu, plan)
    return _TransportReport(value=float(total ** (1.0 / p)),
                            kind=_kind_label(p, q),
                            plan_support_size=len(plan),
                            max_l1_displacement=max_l1,
                            max_l2_displacement=max_l2,
                            plan=plan)


def w22_plan_displacement(mu: _DiscreteMeasure, nu: _DiscreteMeasure) -> _TransportReport:
    """Exact W_{2,2} plan and the max l1 (and l2) displacement over its support."""
    return wpq_lp(mu, nu, p=2, q=2)


def _max_flow(a: _np.ndarray, b: _np.ndarray, allowed: _np.ndarray) -> _typing.Tuple[int, int]:
    """Max flow from supplies a to demands b through the allowed bipartite edges.

    :return: (flow value, number of edges carrying flow).
    """
    na, nb = a.size, b.size
    source, sink = 0, na + nb + 1
    ii, jj = _np.nonzero(allowed)
    rows = _np.concatenate([_np.zeros(na, dtype=_np.int64), 1 + ii, 1 + na + _np.arange(nb)])
    cols = _np.concatenate([1 + _np.arange(na), 1 + na + jj, _np.full(nb, sink)])
    caps = _np.concatenate([a, _np.full(ii.size, _INTEGER_SCALE), b]).astype(_np.int32)
    graph = _sparse.csr_matrix((caps, (rows, cols)), shape=(na + nb + 2, na + nb + 2))
    result = _csgraph.maximum_flow(graph, source, sink)
    flow = result.flow.tocoo()
    inner = (flow.row >= 1) & (flow.row <= na) & (flow.col > na) & (flow.col < sink) & (flow.data > 0)
    return int(result.flow_value), int(_np.count_nonzero(inner))


def bottleneck_winf(mu: _DiscreteMeasure,
                    nu: _DiscreteMeasure,
                    q: float) -> _TransportReport:
    """Exact W_{inf,q}: the smallest threshold t such that a coupling uses only pairs with |z - z'|_q <= t.

    :param mu: source measure, at most 2500 points.
    :param nu: target measure, at most 2500 points.
    :param q: ground norm.
    :return: report with value = threshold certificate, and the flow at the next lower distinct cost.
    """
    if max(mu.size, nu.size) > MAX_BOTTLENECK_SUPPORT:
        raise _inflab.logging.log(e=ValueError, f=bottleneck_winf,
                                  m=f"Support sizes {mu.size}, {nu.size} exceed {MAX_BOTTLENECK_SUPPORT}.")
    a_all, b_all = mu.integer_weights(), nu.integer_weights()
    ka, kb = a_all > 0, b_all > 0
    a, b = a_all[ka], b_all[kb]
    cost = ground_costs(mu, nu, q)[_np.ix_(ka, kb)]
    thresholds = _np.unique(cost)

    def _feasible(k):
        value, support = _max_flow(a, b, cost <= thresholds[k])
        return value == _INTEGER_SCALE, value, support

    if not _feasible(thresholds.size - 1)[0]:
        raise _inflab.logging.log(e=RuntimeError, f=bottleneck_winf,
                                  m="infeasible at max threshold: integerized masses do not match.")
    lo, hi = 0, thresholds.size - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if _feasible(mid)[0]:
            hi = mid
        else:
            lo = mid + 1
    _, _, support = _feasible(lo)
    flow_below = _feasible(lo - 1)[1] / _INTEGER_SCALE if lo > 0 else 0.0
    value = float(thresholds[lo])
    return _TransportReport(value=value,
                            kind=_kind_label(_np.inf, q),
                            plan_support_size=support,
                            threshold_certificate=value,
                            flow_below_threshold=flow_below)


def quantile_wp_1d(mu: _DiscreteMeasure, nu: _DiscreteMeasure, p: float) -> float:
    """Exact W_p on the line by the monotone (quantile) coupling, p in [1, inf].

    Intervals of quantile levels shorter than 1e-15 are ignored for p = inf.
    """
    if mu.dim != 1 or nu.dim != 1:
        raise _inflab.logging.log(e=ValueError, f=quantile_wp_1d, m="Quantile coupling needs 1-D measures.")
    oa, ob = _np.argsort(mu.points[:, 0], kind='stable'), _np.argsort(nu.points[:, 0], kind='stable')
    xa, xb = mu.points[oa, 0], nu.points[ob, 0]
    ca, cb = _np.cumsum(mu.weights[oa]), _np.cumsum(nu.weights[ob])
    ca /= ca[-1]
    cb /= cb[-1]
    levels = _np.unique(_np.concatenate([[0.0], ca, cb]))
    levels = levels[levels <= 1.0]
    lengths = _np.diff(levels)
    mids = 0.5 * (levels[:-1] + levels[1:])
    ia = _np.minimum(_np.searchsorted(ca, mids), xa.size - 1)
    ib = _np.minimum(_np.searchsorted(cb, mids), xb.size - 1)
    gaps = _np.abs(xa[ia] - xb[ib])
    if _np.isinf(p):
        return float(_np.max(gaps[lengths > 1e-15]))
    return float(_np.sum(lengths * gaps ** p) ** (1.0 / p))

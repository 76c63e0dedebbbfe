# -*- coding: utf-8 -*-
###############################################################################
# Copyright (c), The inflab developers. All rights reserved.                  #
# This file is part of the inflab package.                                    #
# (infinitesimal model laboratory)                                            #
#                                                                             #
# For further information on the license, see the LICENSE.txt file.           #
#                                                                             #
###############################################################################
"""inflab: transport: discrete measures, integerized masses and transport reports."""

import dataclasses as _dc
import typing as _typing

import numpy as _np

import inflab as _inflab

INTEGER_SCALE = 10 ** 9
WEIGHT_TOL = 1e-12


def integerize(weights: _np.ndarray, scale: int = INTEGER_SCALE) -> _np.ndarray:
    """Integer masses summing exactly to ``scale`` by largest-remainder rounding.

    Ties in the remainders go to the lower index.
    """
    raw = _np.asarray(weights, dtype=float) * scale / _np.sum(weights)
    floors = _np.floor(raw).astype(_np.int64)
    missing = int(scale - floors.sum())
    if missing > 0:
        order = _np.argsort(-(raw - floors), kind='stable')
        floors[order[:missing]] += 1
    return floors


@_dc.dataclass(frozen=True, eq=False)
class DiscreteMeasure:
    """Finitely supported probability measure on R^d, d in {1, 2}.

    :param points: support points, shape (N, d). A 1-D array is read as N points on the line.
    :param weights: nonnegative weights summing to 1 within 1e-12.
    """
    points: _np.ndarray
    weights: _np.ndarray

    def __post_init__(self):
        points = _np.array(self.points, dtype=float)
        if points.ndim == 1:
            points = points[:, None]
        weights = _np.array(self.weights, dtype=float)
        if points.ndim != 2 or points.shape[1] not in (1, 2) or points.shape[0] < 1:
            raise _inflab.logging.log(e=ValueError, o=self, f=self.__post_init__,
                                      m=f"Need points of shape (N, d) with d in (1, 2), got {points.shape}.")
        if weights.shape != (points.shape[0],):
            raise _inflab.logging.log(e=ValueError, o=self, f=self.__post_init__,
                                      m=f"Need {points.shape[0]} weights, got shape {weights.shape}.")
        if (weights < 0).any() or not _np.isfinite(weights).all() or not _np.isfinite(points).all():
            raise _inflab.logging.log(e=ValueError, o=self, f=self.__post_init__,
                                      m="Weights must be finite and nonnegative, points finite.")
        if abs(weights.sum() - 1.0) > WEIGHT_TOL:
            raise _inflab.logging.log(e=ValueError, o=self, f=self.__post_init__,
                                      m=f"Weights sum to {weights.sum()!r}, not 1.")
        points.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "points", points)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def normalized(cls, points: _np.ndarray, weights: _np.ndarray) -> 'DiscreteMeasure':
        """From unnormalized nonnegative weights."""
        weights = _np.asarray(weights, dtype=float)
        return cls(points=points, weights=weights / weights.sum())

    @classmethod
    def dirac(cls, point: _typing.Union[float, _typing.Sequence[float]]) -> 'DiscreteMeasure':
        return cls(points=_np.atleast_1d(_np.asarray(point, dtype=float))[None, :], weights=_np.ones(1))

    @classmethod
    def from_density(cls, f: _inflab.grid.LogDensity, cutoff: float = 40.0) -> 'DiscreteMeasure':
        """Grid nodes of a 1-D density with quadrature masses above exp(-cutoff) times the largest one."""
        log_w = -f.v + _np.log(f.grid.trapezoid_weights)
        keep = f.finite & (log_w >= _np.max(log_w[f.finite]) - cutoff)
        w = _np.exp(log_w[keep] - _np.max(log_w[keep]))
        return cls.normalized(f.x[keep], w)

    @property
    def size(self) -> int:
        return self.points.shape[0]

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def translated(self, shift: _typing.Union[float, _typing.Sequence[float]]) -> 'DiscreteMeasure':
        return DiscreteMeasure(points=self.points + _np.asarray(shift, dtype=float), weights=self.weights)

    def integer_weights(self, scale: int = INTEGER_SCALE) -> _np.ndarray:
        return integerize(self.weights, scale)

    def integerized(self, scale: int = INTEGER_SCALE) -> 'DiscreteMeasure':
        """The measure with weights rounded to multiples of 1/scale, as the exact solvers see it."""
        return DiscreteMeasure(points=self.points, weights=self.integer_weights(scale) / scale)


def kind_label(p: float, q: float) -> str:
    """'W11', 'W22', 'Winf1', ... for W_{p,q}."""

    def _s(r):
        return "inf" if _np.isinf(r) else str(int(r))

    return f"W{_s(p)}{_s(q)}"


@_dc.dataclass
class TransportReport:
    """A W_{p,q} value with its certificate.

    :param value: the transport distance.
    :param kind: 'W11', 'W22', 'Winf1', 'Winf2', ...
    :param plan_support_size: number of pairs carrying mass in the optimal plan (or flow at threshold).
    :param max_l1_displacement: max of |z - z'|_1 over the plan support (exact plans).
    :param max_l2_displacement: max of |z - z'|_2 over the plan support (exact plans).
    :param threshold_certificate: smallest feasible threshold (bottleneck).
    :param flow_below_threshold: maximal flow at the next lower distinct cost, below total mass (bottleneck).
    :param plan: (i, j, mass) triples of the optimal plan, if computed.
    """
    value: float
    kind: str
    plan_support_size: int
    max_l1_displacement: float = _np.nan
    max_l2_displacement: float = _np.nan
    threshold_certificate: float = _np.nan
    flow_below_threshold: float = _np.nan
    plan: _typing.List[_typing.Tuple[int, int, float]] = _dc.field(default_factory=list, repr=False)

    def to_row(self) -> _typing.Dict[str, _typing.Any]:
        row = _dc.asdict(self)
        row.pop('plan')
        return row

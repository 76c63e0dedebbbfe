# -*- coding: utf-8 -*-
###############################################################################
# Copyright (c), The inflab developers. All rights reserved.                  #
# This file is part of the inflab package.                                    #
# (infinitesimal model laboratory)                                            #
#                                                                             #
# For further information on the license, see the LICENSE.txt file.           #
#                                                                             #
###############################################################################
"""inflab: transport: nonlinear Kantorovich-type dualities on discrete measures.

For a smooth positive u and p in [1, inf),

    |<u, mu>^(1/p) - <u, nu>^(1/p)| <= sup |grad u^(1/p)|_{q'} * W_{p,q}(mu, nu),

and for p = inf the same with u^(1/p) replaced by log u. Here 1/q + 1/q' = 1.
"""

import dataclasses as _dc
import enum as _enum
import itertools as _itertools
import typing as _typing

import numpy as _np
import pandas as _pd
from scipy import optimize as _optimize
from scipy import special as _special

import inflab as _inflab
from inflab.grid import \
    Grid2D as _Grid2D, \
    LogDensity as _LogDensity
from .kernel import \
    Pair as _Pair, \
    build_transition_kernel as _build_transition_kernel, \
    default_kernel_grid as _default_kernel_grid, \
    quantize_kernel as _quantize_kernel, \
    rates_from_alpha as _rates_from_alpha
from .measures import DiscreteMeasure as _DiscreteMeasure
from .solvers import \
    bottleneck_winf as _bottleneck_winf, \
    wpq_lp as _wpq_lp

DUALITY_TOL = 1e-9
LOG_ESTIMATE_TOL = 1e-6
SOFTPLUS_SAMPLES = 4001
SOFTPLUS_SAFETY = 1e-9

LOG_ESTIMATE_COLUMNS = ['x', 'x_tilde', 'lhs', 'lipschitz', 'winf1', 'winf2', 'tolerance', 'rhs', 'rhs_l2',
                        'theory_bound', 'pass', 'norm_pass']


def dual_exponent(q: float) -> float:
    """q' with 1/q + 1/q' = 1, q' = inf for q = 1."""
    if q == 1:
        return _np.inf
    if _np.isinf(q):
        return 1.0
    return q / (q - 1.0)


def _norm(y: _np.ndarray, r: float) -> _np.ndarray:
    return _np.linalg.norm(_np.atleast_2d(y), ord=r, axis=1)


class FunctionKind(_enum.Enum):
    GAUSSIAN = 'gaussian'
    EXP_LINEAR = 'exp_linear'
    SOFTPLUS = 'softplus'


@_dc.dataclass(frozen=True)
class TestFunction:
    """Positive test function with a known bound on the gradient of u^(1/p) (or of log u).

    - gaussian: u(z) = exp(-|z - a|_2^2 / (2 scale^2))
    - exp_linear: u(z) = exp(a.z + b)
    - softplus: u(z) = log(1 + exp(a.z + b))

    :param kind: the family.
    :param a: center (gaussian) or direction (exp_linear, softplus).
    :param b: offset.
    :param scale: width of the gaussian.
    """
    __test__ = False

    kind: FunctionKind
    a: _typing.Tuple[float, ...]
    b: float = 0.0
    scale: float = 1.0

    @classmethod
    def gaussian(cls, center: _typing.Sequence[float], scale: float = 1.0) -> 'TestFunction':
        return cls(kind=FunctionKind.GAUSSIAN, a=tuple(float(c) for c in center), scale=float(scale))

    @classmethod
    def exp_linear(cls, a: _typing.Sequence[float], b: float = 0.0) -> 'TestFunction':
        return cls(kind=FunctionKind.EXP_LINEAR, a=tuple(float(c) for c in a), b=float(b))

    @classmethod
    def softplus(cls, a: _typing.Sequence[float], b: float = 0.0) -> 'TestFunction':
        return cls(kind=FunctionKind.SOFTPLUS, a=tuple(float(c) for c in a), b=float(b))

    @classmethod
    def random(cls, rng: _np.random.Generator, dim: int) -> 'TestFunction':
        kind = list(FunctionKind)[rng.integers(len(FunctionKind))]
        a = rng.uniform(-1.0, 1.0, size=dim)
        if kind is FunctionKind.GAUSSIAN:
            return cls.gaussian(a, scale=rng.uniform(0.5, 2.0))
        if kind is FunctionKind.EXP_LINEAR:
            return cls.exp_linear(a, b=rng.uniform(-1.0, 1.0))
        return cls.softplus(a, b=rng.uniform(-1.0, 1.0))

    def log_value(self, z: _np.ndarray) -> _np.ndarray:
        """log u at the rows of z."""
        z = _np.atleast_2d(z)
        a = _np.asarray(self.a)
        if self.kind is FunctionKind.GAUSSIAN:
            return -_np.sum((z - a) ** 2, axis=1) / (2.0 * self.scale ** 2)
        t = z @ a + self.b
        if self.kind is FunctionKind.EXP_LINEAR:
            return t
        return _np.log(_np.logaddexp(0.0, t))

    def _t_range(self, lo: _np.ndarray, hi: _np.ndarray) -> _typing.Tuple[float, float]:
        a = _np.asarray(self.a)
        return (self.b + float(_np.sum(_np.minimum(a * lo, a * hi))),
                self.b + float(_np.sum(_np.maximum(a * lo, a * hi))))

    def gradient_bound(self, p: float, q: float, lo: _np.ndarray, hi: _np.ndarray) -> float:
        """Upper bound of |grad u^(1/p)|_{q'} (p finite) or |grad log u|_{q'} (p = inf) on the box [lo, hi].

        Exact for exp_linear, exact or dimension-factor sharp for gaussian, sampled plus a bounded refinement
        and a relative safety of 1e-9 for softplus.
        """
        lo, hi = _np.asarray(lo, dtype=float), _np.asarray(hi, dtype=float)
        a = _np.asarray(self.a)
        r = dual_exponent(q)
        a_norm = float(_norm(a, r)[0])

        if self.kind is FunctionKind.EXP_LINEAR:
            if _np.isinf(p):
                return a_norm
            return a_norm / p * _np.exp(self._t_range(lo, hi)[1] / p)

        if self.kind is FunctionKind.GAUSSIAN:
            if _np.isinf(p):
                corners = _np.array(list(_itertools.product(*zip(lo, hi))))
                return float(_np.max(_norm(corners - a, r))) / self.scale ** 2
            dim_factor = a.size ** max(0.0, 1.0 / r - 0.5)
            return dim_factor * _np.exp(-0.5) / (_np.sqrt(p) * self.scale)

        def _factor(t):
            u = _np.logaddexp(0.0, t)
            s = _special.expit(t)
            if _np.isinf(p):
                return s / u
            return _np.exp((1.0 / p - 1.0) * _np.log(u)) * s / p

        t_lo, t_hi = self._t_range(lo, hi)
        ts = _np.linspace(t_lo, t_hi, SOFTPLUS_SAMPLES)
        values = _factor(ts)
        k = int(_np.argmax(values))
        best = float(values[k])
        left, right = ts[max(k - 1, 0)], ts[min(k + 1, ts.size - 1)]
        if right > left:
            result = _optimize.minimize_scalar(lambda t: -_factor(t), bounds=(left, right), method='bounded')
            best = max(best, float(_factor(result.x)))
        return best * (1.0 + SOFTPLUS_SAFETY) * a_norm


@_dc.dataclass
class DualityReport:
    """Both sides of the duality inequality for one pair of measures."""
    p: float
    q: float
    lhs: float
    w: float
    lipschitz: float
    rhs: float
    passed: bool

    @property
    def ratio(self) -> float:
        """lhs / W, the realized Lipschitz quotient."""
        return self.lhs / self.w if self.w > 0 else _np.nan

    def to_row(self) -> _typing.Dict[str, _typing.Any]:
        return _dc.asdict(self)


def _transformed_pairing(u: TestFunction, mu: _DiscreteMeasure, p: float) -> float:
    """<u, mu>^(1/p), or log <u, mu> for p = inf, with the integerized weights."""
    weights = mu.integerized().weights
    with _np.errstate(divide='ignore'):
        log_pairing = float(_special.logsumexp(u.log_value(mu.points) + _np.log(weights)))
    return log_pairing if _np.isinf(p) else float(_np.exp(log_pairing / p))


def duality_check(u: TestFunction,
                  mu: _DiscreteMeasure,
                  nu: _DiscreteMeasure,
                  p: float,
                  q: float) -> DualityReport:
    """
    :param u: test function.
    :param mu: first measure.
    :param nu: second measure.
    :param p: 1, 2 or inf.
    :param q: ground norm, 1, 2 or inf.
    :return: report, passed if lhs <= rhs + 1e-9.
    """
    if _np.isinf(p):
        w = _bottleneck_winf(mu, nu, q).value
    else:
        w = _wpq_lp(mu, nu, p, q).value
    both = _np.vstack([mu.points, nu.points])
    lipschitz = u.gradient_bound(p, q, both.min(axis=0), both.max(axis=0))
    lhs = abs(_transformed_pairing(u, mu, p) - _transformed_pairing(u, nu, p))
    rhs = lipschitz * w
    return DualityReport(p=p, q=q, lhs=lhs, w=w, lipschitz=lipschitz, rhs=rhs, passed=bool(lhs <= rhs + DUALITY_TOL))


def hoelder_aligned_step(a: _typing.Sequence[float], q: float) -> _np.ndarray:
    """Unit step e with |e|_q = 1 and a.e = |a|_{q'}: the direction where a Dirac pair attains equality."""
    a = _np.asarray(a, dtype=float)
    if q == 1:
        e = _np.zeros_like(a)
        k = int(_np.argmax(_np.abs(a)))
        e[k] = _np.sign(a[k]) or 1.0
        return e
    if _np.isinf(q):
        return _np.where(a >= 0, 1.0, -1.0)
    r = dual_exponent(q)
    e = _np.sign(a) * _np.abs(a) ** (r - 1.0)
    return e / _norm(e, q)[0]


def random_measure(rng: _np.random.Generator, size: int, dim: int, half_width: float = 2.0) -> _DiscreteMeasure:
    """Uniform points in [-half_width, half_width]^dim with Dirichlet weights."""
    return _DiscreteMeasure(points=rng.uniform(-half_width, half_width, size=(size, dim)),
                            weights=rng.dirichlet(_np.ones(size)))


def duality_suite(seed: int,
                  n_pairs: int = 200,
                  max_size: int = 6,
                  dims: _typing.Sequence[int] = (1, 2),
                  combos: _typing.Sequence[_typing.Tuple[float, float]] = None,
                  controller: '_inflab.submit.SweepController' = None) -> _pd.DataFrame:
    """duality_check on seeded random pairs of measures and test functions, for every (p, q) combination.

    :return: one row per pair and combination with columns case, dim, kind, p, q, lhs, w, lipschitz, rhs, passed.
    """
    controller = controller if controller is not None else _inflab.submit.SweepController()
    combos = list(combos) if combos is not None else list(_itertools.product([1, 2, _np.inf], [1, 2, _np.inf]))
    rng = _np.random.default_rng(seed)
    cases = []
    for case in range(n_pairs):
        dim = int(dims[case % len(dims)])
        mu = random_measure(rng, int(rng.integers(1, max_size + 1)), dim)
        nu = random_measure(rng, int(rng.integers(1, max_size + 1)), dim)
        cases.append((case, dim, TestFunction.random(rng, dim), mu, nu))

    def _rows(case):
        index, dim, u, mu, nu = case
        return [{'case': index, 'dim': dim, 'kind': u.kind.value, **duality_check(u, mu, nu, p, q).to_row()}
                for p, q in combos]

    tab = _inflab.io.Tabulator()
    for rows in controller.map(_rows, cases):
        tab.extend(rows)
    return tab.table


def log_estimate_check(u0: _LogDensity,
                       vbar: _LogDensity,
                       x_pairs: _typing.Sequence[_Pair],
                       alpha: float = None,
                       quantization: int = 16,
                       grid2: _Grid2D = None,
                       controller: '_inflab.submit.SweepController' = None) -> _pd.DataFrame:
    """One step u1(x) = integral of P(x; x1, x2) u0(x1) u0(x2) and the log-Lipschitz estimate

        |log u1(x) - log u1(x~)| <= |(log u0)'|_inf W_{inf,1}(P(x; .), P(x~; .)).

    W_{inf,1} comes from the quantized kernels; rhs adds 2 cell l1 diameters to it. rhs_l2 is the same with
    sqrt(2) W_{inf,2}, which is never sharper. theory_bound uses 2/(1+2 alpha) |x - x~| if alpha is given.

    :param u0: positive function exp(-v), the log-derivative must be bounded on the kernel axes.
    :param vbar: eigenfunction exp(-V).
    :param x_pairs: offspring trait pairs.
    :param alpha: log-concavity modulus of vbar, optional.
    :param quantization: cells per axis for the transport side.
    :param grid2: kernel grid. Default [-8, 8]^2.
    :param controller: runs the traits concurrently.
    :return: table with columns x, x_tilde, lhs, lipschitz, winf1, winf2, tolerance, rhs, rhs_l2, theory_bound,
             pass, norm_pass.
    """
    controller = controller if controller is not None else _inflab.submit.SweepController()
    grid2 = grid2 if grid2 is not None else _default_kernel_grid()
    log_u1_axis = -(u0.v if u0.grid == grid2.gx else _inflab.grid.resample(u0, grid2.gx).v)
    log_u2_axis = -(u0.v if u0.grid == grid2.gy else _inflab.grid.resample(u0, grid2.gy).v)
    lipschitz = float(_np.max(_np.abs(_inflab.grid.log_derivative(u0))))
    rho = _rates_from_alpha(alpha)[0] if alpha is not None else _np.nan

    def _one(x):
        kernel = _build_transition_kernel(x, vbar, grid2)
        log_u1 = float(_special.logsumexp(kernel.log_cell_masses() + log_u1_axis[:, None] + log_u2_axis[None, :]))
        return log_u1, _quantize_kernel(kernel, quantization)

    xs = sorted(set(float(x) for pair in x_pairs for x in pair))
    by_x = dict(zip(xs, controller.map(_one, xs)))

    tab = _inflab.io.Tabulator(columns=LOG_ESTIMATE_COLUMNS)
    for x, x_tilde in x_pairs:
        (la, qa), (lb, qb) = by_x[float(x)], by_x[float(x_tilde)]
        winf1 = _bottleneck_winf(qa.measure, qb.measure, q=1).value
        winf2 = _bottleneck_winf(qa.measure, qb.measure, q=2).value
        tolerance = 2.0 * max(qa.cell_l1_diameter, qb.cell_l1_diameter)
        lhs = abs(la - lb)
        rhs = lipschitz * (winf1 + tolerance)
        tab.append({'x': float(x),
                    'x_tilde': float(x_tilde),
                    'lhs': lhs,
                    'lipschitz': lipschitz,
                    'winf1': winf1,
                    'winf2': winf2,
                    'tolerance': tolerance,
                    'rhs': rhs,
                    'rhs_l2': lipschitz * _np.sqrt(2.0) * (winf2 + tolerance),
                    'theory_bound': lipschitz * rho * abs(x - x_tilde),
                    'pass': bool(lhs <= rhs + LOG_ESTIMATE_TOL),
                    'norm_pass': bool(winf1 <= _np.sqrt(2.0) * winf2 + 1e-12)})
    return tab.table

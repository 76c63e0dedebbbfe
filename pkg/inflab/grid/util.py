# -*- coding: utf-8 -*-
###############################################################################
# Copyright (c), The inflab developers. All rights reserved.                  #
# This file is part of the inflab package.                                    #
# (infinitesimal model laboratory)                                            #
#                                                                             #
# For further information on the license, see the LICENSE.txt file.           #
#                                                                             #
###############################################################################
"""inflab: grid: uniform grids, densities in negative-log form, quadrature and finite differences.

A density F is always carried as V = -log F sampled on a uniform grid. Linear-space values only appear inside
log-sum-exp reductions. ``+inf`` in V encodes F = 0 and is absorbing under every operation here.
"""

import dataclasses as _dc
import typing as _typing

import numpy as _np
from scipy import interpolate as _interpolate
from scipy import special as _special

import inflab as _inflab

MIN_NODES = 8
# rows per block in the O(n^2) log-sum-exp reductions
BLOCK_ROWS = 256


@_dc.dataclass(frozen=True)
class Grid1D:
    """Uniform 1-D grid with nodes left + i*h, i = 0..n-1.

    :param left: left end, trait units.
    :param right: right end.
    :param n: node count, at least 8.
    """
    left: float
    right: float
    n: int

    def __post_init__(self):
        if not (_np.isfinite(self.left) and _np.isfinite(self.right)) or not self.left < self.right:
            raise _inflab.logging.log(e=ValueError, o=self, f=self.__post_init__,
                                      m=f"Need finite left < right, got [{self.left}, {self.right}].")
        if int(self.n) != self.n or self.n < MIN_NODES:
            raise _inflab.logging.log(e=ValueError, o=self, f=self.__post_init__,
                                      m=f"Need an integer node count n >= {MIN_NODES}, got {self.n}.")
        object.__setattr__(self, "n", int(self.n))

    @classmethod
    def symmetric(cls, half_width: float, n: int) -> 'Grid1D':
        """Grid on [-half_width, half_width]. Contains 0 as a node iff n is odd."""
        return cls(left=-float(half_width), right=float(half_width), n=n)

    @classmethod
    def default_for_alpha(cls, alpha: float, n: int = 2049) -> 'Grid1D':
        """Default experiment grid [-L, L] with L = max(10, 8/sqrt(alpha))."""
        return cls.symmetric(max(10.0, 8.0 / _np.sqrt(alpha)), n)

    @property
    def h(self) -> float:
        return (self.right - self.left) / (self.n - 1)

    @property
    def is_symmetric(self) -> bool:
        return self.left == -self.right

    @property
    def zero_index(self) -> _typing.Optional[int]:
        """Index of the node x = 0 on symmetric grids with odd n, else None."""
        if self.is_symmetric and self.n % 2 == 1:
            return (self.n - 1) // 2
        return None

    @property
    def nodes(self) -> _np.ndarray:
        i = _np.arange(self.n, dtype=float)
        if self.zero_index is not None:
            # exact zero and exact mirror symmetry x_i = -x_{n-1-i}
            return (i - self.zero_index) * self.h
        return self.left + i * self.h

    @property
    def trapezoid_weights(self) -> _np.ndarray:
        w = _np.full(self.n, self.h)
        w[0] = w[-1] = 0.5 * self.h
        return w

    def index_of(self, x: float, rtol: float = 1e-9) -> _typing.Optional[int]:
        """Index of the node equal to x up to rtol*h, or None if x is not a node."""
        pos = (x - self.left) / self.h
        i = int(round(pos))
        if 0 <= i < self.n and abs(pos - i) <= rtol:
            return i
        return None

    def shares_step(self, other: 'Grid1D', rtol: float = 1e-12) -> bool:
        return abs(self.h - other.h) <= rtol * max(self.h, other.h)


@_dc.dataclass(frozen=True)
class Grid2D:
    """Product grid for the parental traits (x1, x2).

    :param gx: axis of x1.
    :param gy: axis of x2.
    """
    gx: Grid1D
    gy: Grid1D

    @classmethod
    def square(cls, grid: Grid1D) -> 'Grid2D':
        return cls(gx=grid, gy=grid)

    @property
    def shape(self) -> _typing.Tuple[int, int]:
        return self.gx.n, self.gy.n

    def mesh(self) -> _typing.Tuple[_np.ndarray, _np.ndarray]:
        """Node coordinates, 'ij' indexing: first axis x1, second axis x2."""
        return _np.meshgrid(self.gx.nodes, self.gy.nodes, indexing='ij')

    @property
    def trapezoid_weights(self) -> _np.ndarray:
        return _np.outer(self.gx.trapezoid_weights, self.gy.trapezoid_weights)


@_dc.dataclass(frozen=True, eq=False)
class LogDensity:
    """A nonnegative function F = exp(-v) on a uniform grid.

    :param grid: the grid.
    :param v: negative log values, one per node. ``+inf`` encodes F = 0.
    """
    grid: Grid1D
    v: _np.ndarray

    def __post_init__(self):
        v = _np.array(self.v, dtype=float)
        if v.shape != (self.grid.n,):
            raise _inflab.logging.log(e=ValueError, o=self, f=self.__post_init__,
                                      m=f"Expected {self.grid.n} values, got shape {v.shape}.")
        if _np.isnan(v).any() or _np.isneginf(v).any():
            raise _inflab.logging.log(e=ValueError, o=self, f=self.__post_init__,
                                      m="Values must be real or +inf (NaN or -inf found).")
        if not _np.isfinite(v).any():
            raise _inflab.logging.log(e=ValueError, o=self, f=self.__post_init__,
                                      m="empty density: no finite entry.")
        v.setflags(write=False)
        object.__setattr__(self, "v", v)

    @classmethod
    def from_potential(cls, grid: Grid1D, potential: _typing.Callable[[_np.ndarray], _np.ndarray]) -> 'LogDensity':
        """Sample V on the grid nodes."""
        return cls(grid=grid, v=potential(grid.nodes))

    @classmethod
    def from_values(cls, grid: Grid1D, values: _np.ndarray) -> 'LogDensity':
        """From linear-space values F >= 0."""
        values = _np.asarray(values, dtype=float)
        if (values < 0).any():
            raise _inflab.logging.log(e=ValueError, o=cls, f=cls.from_values, m="Negative density values.")
        with _np.errstate(divide='ignore'):
            return cls(grid=grid, v=-_np.log(values))

    @classmethod
    def gaussian(cls, grid: Grid1D, mean: float = 0.0, variance: float = 1.0) -> 'LogDensity':
        """Normalized N(mean, variance) sampled on the grid."""
        x = grid.nodes
        return cls(grid=grid, v=(x - mean) ** 2 / (2 * variance) + 0.5 * _np.log(2 * _np.pi * variance))

    @property
    def x(self) -> _np.ndarray:
        return self.grid.nodes

    @property
    def finite(self) -> _np.ndarray:
        return _np.isfinite(self.v)

    def values(self) -> _np.ndarray:
        """Linear-space values exp(-v). Underflows to 0 in the tails."""
        return _np.exp(-self.v)

    def log_mass(self) -> float:
        return log_trapezoid_mass(self)

    def mass(self) -> float:
        return trapezoid_mass(self)

    def normalize(self) -> 'LogDensity':
        return LogDensity(grid=self.grid, v=self.v + self.log_mass())

    def scaled(self, log_factor: float) -> 'LogDensity':
        """The density multiplied by exp(log_factor)."""
        return LogDensity(grid=self.grid, v=self.v - log_factor)

    def add_potential(self, potential: _np.ndarray) -> 'LogDensity':
        """Multiply by exp(-potential), i.e. v <- v + potential."""
        return LogDensity(grid=self.grid, v=self.v + potential)

    def restrict(self, mask: _np.ndarray) -> 'LogDensity':
        """Set F = 0 outside the boolean mask."""
        return LogDensity(grid=self.grid, v=_np.where(mask, self.v, _np.inf))


def log_trapezoid_mass(f: LogDensity) -> float:
    """Logarithm of the trapezoidal integral of F, by log-sum-exp."""
    finite = f.finite
    if not finite.any():
        raise _inflab.logging.log(e=ValueError, f=log_trapezoid_mass, m="empty density: all values are +inf.")
    return float(_special.logsumexp(-f.v[finite], b=f.grid.trapezoid_weights[finite]))


def trapezoid_mass(f: LogDensity) -> float:
    """Trapezoidal integral of F over the grid.

    :param f: the density.
    :return: mass, computed in log space and exponentiated once.
    """
    return float(_np.exp(log_trapezoid_mass(f)))


def finite_region(f: LogDensity) -> slice:
    """The contiguous run of finite nodes.

    :raises ValueError: if the finite nodes are not contiguous.
    """
    idx = _np.flatnonzero(f.finite)
    start, stop = int(idx[0]), int(idx[-1]) + 1
    if stop - start != idx.size:
        raise _inflab.logging.log(e=ValueError, f=finite_region,
                                  m="The finite region of the density is not contiguous.")
    return slice(start, stop)


def log_derivative(f: LogDensity) -> _np.ndarray:
    """d/dx log F = -V' on the finite region.

    Central differences inside, second-order one-sided differences at both ends of the finite region.

    :param f: density finite on a contiguous sub-grid of at least 3 nodes.
    :return: array with one entry per node of the finite region.
    """
    region = finite_region(f)
    v = f.v[region]
    if v.size < 3:
        raise _inflab.logging.log(e=ValueError, f=log_derivative,
                                  m=f"Need at least 3 finite nodes, got {v.size}.")
    return -_np.gradient(v, f.grid.h, edge_order=2)


def second_log_derivative(f: LogDensity) -> _np.ndarray:
    """V'' on the finite region, the local log-concavity of F = exp(-V).

    3-point stencil inside, 4-point one-sided stencils at the ends (3-node regions reuse the interior value).
    """
    region = finite_region(f)
    v = f.v[region]
    if v.size < 3:
        raise _inflab.logging.log(e=ValueError, f=second_log_derivative,
                                  m=f"Need at least 3 finite nodes, got {v.size}.")
    h2 = f.grid.h ** 2
    out = _np.empty_like(v)
    out[1:-1] = (v[:-2] - 2 * v[1:-1] + v[2:]) / h2
    if v.size >= 4:
        out[0] = (2 * v[0] - 5 * v[1] + 4 * v[2] - v[3]) / h2
        out[-1] = (2 * v[-1] - 5 * v[-2] + 4 * v[-3] - v[-4]) / h2
    else:
        out[0] = out[-1] = out[1]
    return out


def log_index_sum(la: _np.ndarray,
                  lb: _np.ndarray,
                  n_out: int,
                  k_coef: int = 1,
                  offset: int = 0) -> _np.ndarray:
    """log of sum_j exp(la[offset + k_coef*k - j] + lb[j]) for k = 0..n_out-1.

    Indices of ``la`` outside its range contribute nothing. Rows are reduced in fixed-size blocks with
    :py:func:`scipy.special.logsumexp`, so the summation order does not depend on the caller.
    """
    n_a, n_b = la.size, lb.size
    j = _np.arange(n_b)
    out = _np.empty(n_out)
    with _np.errstate(divide='ignore', invalid='ignore'):
        for start in range(0, n_out, BLOCK_ROWS):
            k = _np.arange(start, min(start + BLOCK_ROWS, n_out))
            idx = offset + k_coef * k[:, None] - j[None, :]
            valid = (idx >= 0) & (idx < n_a)
            terms = _np.where(valid, la[_np.clip(idx, 0, n_a - 1)] + lb[None, :], -_np.inf)
            out[start:start + k.size] = _special.logsumexp(terms, axis=1)
    return out


def logsumexp_convolve(f: LogDensity, g: LogDensity, out: Grid1D) -> LogDensity:
    """(f*g)(x_k) = h * sum_j f(x_k - x_j) g(x_j) on the nodes of ``out``, in log space.

    :param f: first factor, sampled wherever x_k - x_j lands.
    :param g: second factor, summed over its nodes.
    :param out: output grid.
    :raises ValueError: if the steps differ or x_k - x_j does not fall on nodes of f's grid.
    """
    if not (f.grid.shares_step(g.grid) and f.grid.shares_step(out)):
        raise _inflab.logging.log(e=ValueError, f=logsumexp_convolve,
                                  m=f"mismatched steps: {f.grid.h}, {g.grid.h}, {out.h}. Resample first.")
    h = out.h
    shift = (out.left - g.grid.left - f.grid.left) / h
    offset = int(round(shift))
    if abs(shift - offset) > 1e-9:
        raise _inflab.logging.log(e=ValueError, f=logsumexp_convolve,
                                  m="Grids are not aligned: x_k - x_j is not a node of the first factor.")
    log_sum = log_index_sum(-f.v, -g.v, out.n, k_coef=1, offset=offset)
    return LogDensity(grid=out, v=-(log_sum + _np.log(h)))


def resample(f: LogDensity, grid: Grid1D) -> LogDensity:
    """Monotone cubic (PCHIP) interpolation of V onto another grid. F = 0 outside the finite region of f."""
    region = finite_region(f)
    x, v = f.x[region], f.v[region]
    if x.size < 2:
        raise _inflab.logging.log(e=ValueError, f=resample, m="Need at least 2 finite nodes to resample.")
    interpolant = _interpolate.PchipInterpolator(x, v, extrapolate=False)
    target = interpolant(grid.nodes)
    return LogDensity(grid=grid, v=_np.where(_np.isnan(target), _np.inf, target))


def linear_combination(a: float, f: LogDensity, b: float, g: LogDensity) -> LogDensity:
    """a*F + b*G for a, b >= 0 on a common grid, computed with logaddexp."""
    if f.grid != g.grid:
        raise _inflab.logging.log(e=ValueError, f=linear_combination, m="Densities live on different grids.")
    if a < 0 or b < 0 or a + b == 0:
        raise _inflab.logging.log(e=ValueError, f=linear_combination,
                                  m=f"Need nonnegative coefficients, not both zero, got {a}, {b}.")
    with _np.errstate(divide='ignore'):
        log_sum = _np.logaddexp(_np.log(a) - f.v, _np.log(b) - g.v)
    return LogDensity(grid=f.grid, v=-log_sum)

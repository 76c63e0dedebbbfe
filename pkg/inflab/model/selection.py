# -*- coding: utf-8 -*-
###############################################################################
# Copyright (c), The inflab developers. All rights reserved.                  #
# This file is part of the inflab package.                                    #
# (infinitesimal model laboratory)                                            #
#                                                                             #
# For further information on the license, see the LICENSE.txt file.           #
#                                                                             #
###############################################################################
"""inflab: model: selection function m and selection truncation."""

import dataclasses as _dc
import enum as _enum
import typing as _typing

import numpy as _np
from numpy import polynomial as _polynomial
from scipy import interpolate as _interpolate

import inflab as _inflab


class SelectionKind(_enum.Enum):
    QUADRATIC = 'quadratic'
    EVEN_POLYNOMIAL = 'even_polynomial'
    TABULATED = 'tabulated'
    # m = 0, not admissible. Only for operator tests (T = B).
    ZERO = 'zero'


@_dc.dataclass(frozen=True, eq=False)
class SelectionSpec:
    """Declarative description of the mortality function m, with its convexity modulus beta.

    Use the constructors :py:meth:`~.quadratic`, :py:meth:`~.even_polynomial`, :py:meth:`~.tabulated`.

    The shift normalization m >= 0, m(0) = 0 is applied on evaluation: polynomials drop their constant term,
    tables are translated by the grid node nearest to their minimizer and shifted to vanish there.

    :param kind: kind of m.
    :param beta: declared convexity modulus. None: use the certified value.
    :param coeffs: ascending power coefficients of an even polynomial.
    :param table: tabulated m values carried as the ``v`` array of a :py:class:`~inflab.grid.LogDensity`.
    """
    kind: SelectionKind
    beta: _typing.Optional[float] = None
    coeffs: _typing.Tuple[float, ...] = ()
    table: _typing.Optional[_inflab.grid.LogDensity] = None

    def __post_init__(self):
        kind = SelectionKind(self.kind)
        object.__setattr__(self, "kind", kind)
        if self.beta is not None and not self.beta > 0:
            raise _inflab.logging.log(e=ValueError, o=self, f=self.__post_init__,
                                      m=f"H1 violated: declared beta must be > 0, got {self.beta}.")
        if kind == SelectionKind.QUADRATIC and self.beta is None:
            raise _inflab.logging.log(e=ValueError, o=self, f=self.__post_init__,
                                      m="Quadratic selection needs beta.")
        if kind == SelectionKind.EVEN_POLYNOMIAL:
            coeffs = tuple(float(c) for c in self.coeffs)
            if len(coeffs) < 3:
                raise _inflab.logging.log(e=ValueError, o=self, f=self.__post_init__,
                                          m=f"Even polynomial needs degree >= 2, got coefficients {coeffs}.")
            if any(c != 0 for c in coeffs[1::2]):
                raise _inflab.logging.log(e=ValueError, o=self, f=self.__post_init__,
                                          m=f"Polynomial is not even: odd coefficients {coeffs[1::2]}.")
            object.__setattr__(self, "coeffs", coeffs)
        if kind == SelectionKind.TABULATED:
            if self.table is None or _np.count_nonzero(self.table.finite) < 5:
                raise _inflab.logging.log(e=ValueError, o=self, f=self.__post_init__,
                                          m="Tabulated selection needs a table with at least 5 finite nodes.")
            if not self.table.finite.all():
                raise _inflab.logging.log(e=ValueError, o=self, f=self.__post_init__,
                                          m="Tabulated selection must be finite on its whole table.")

    @classmethod
    def quadratic(cls, beta: float) -> 'SelectionSpec':
        """m(x) = beta x^2 / 2."""
        return cls(kind=SelectionKind.QUADRATIC, beta=beta)

    @classmethod
    def even_polynomial(cls, coeffs: _typing.Sequence[float], beta: float = None) -> 'SelectionSpec':
        """m(x) = sum_k coeffs[k] x^k, ascending powers, odd coefficients zero."""
        return cls(kind=SelectionKind.EVEN_POLYNOMIAL, beta=beta, coeffs=tuple(coeffs))

    @classmethod
    def tabulated(cls, table: _inflab.grid.LogDensity, beta: float = None) -> 'SelectionSpec':
        """m given by its values on a uniform grid (stored in ``table.v``)."""
        return cls(kind=SelectionKind.TABULATED, beta=beta, table=table)

    @classmethod
    def zero(cls) -> 'SelectionSpec':
        return cls(kind=SelectionKind.ZERO)

    # evaluation ---------------------------------------------------------------------------------------------

    @property
    def _poly(self) -> _polynomial.Polynomial:
        if self.kind == SelectionKind.QUADRATIC:
            return _polynomial.Polynomial([0.0, 0.0, 0.5 * self.beta])
        if self.kind == SelectionKind.EVEN_POLYNOMIAL:
            return _polynomial.Polynomial((0.0,) + self.coeffs[1:])
        return _polynomial.Polynomial([0.0])

    def table_shift(self, grid: _inflab.grid.Grid1D) -> _typing.Tuple[float, float]:
        """Translation applied to a tabulated m on ``grid``.

        :return: (shift s, residual r): s is the grid node nearest to the table minimizer x_min,
                 r = x_min - s. Both zero for analytic kinds.
        """
        if self.kind != SelectionKind.TABULATED:
            return 0.0, 0.0
        x, m = self.table.x, self.table.v
        i = int(_np.argmin(m))
        x_min = x[i]
        if 0 < i < m.size - 1:
            curvature = m[i - 1] - 2 * m[i] + m[i + 1]
            if curvature > 0:
                x_min = x[i] - 0.5 * self.table.grid.h * (m[i + 1] - m[i - 1]) / curvature
        nodes = grid.nodes
        s = float(nodes[_np.argmin(_np.abs(nodes - x_min))])
        return s, float(x_min - s)

    def _table_values(self, x: _np.ndarray, shift: float) -> _np.ndarray:
        tx, tm = self.table.x, self.table.v
        h = self.table.grid.h
        interpolant = _interpolate.CubicSpline(tx, tm, extrapolate=False)
        y = _np.asarray(x, dtype=float) + shift
        out = interpolant(y)
        # quadratic continuation outside the table with the table's own convexity
        curv = max(self._table_min_second_difference(), 0.0)
        left_slope = (tm[1] - tm[0]) / h
        right_slope = (tm[-1] - tm[-2]) / h
        below, above = y < tx[0], y > tx[-1]
        dl, dr = y[below] - tx[0], y[above] - tx[-1]
        out[below] = tm[0] + left_slope * dl + 0.5 * curv * dl ** 2
        out[above] = tm[-1] + right_slope * dr + 0.5 * curv * dr ** 2
        return out - interpolant(shift)

    def _table_min_second_difference(self) -> float:
        m = self.table.v
        return float(_np.min(m[:-2] - 2 * m[1:-1] + m[2:]) / self.table.grid.h ** 2)

    def on_grid(self, grid: _inflab.grid.Grid1D) -> _np.ndarray:
        """m sampled on the grid nodes, shift normalization applied."""
        if self.kind == SelectionKind.TABULATED:
            shift, _ = self.table_shift(grid)
            return self._table_values(grid.nodes, shift)
        return self._poly(grid.nodes)

    def evaluate(self, x: _np.ndarray) -> _np.ndarray:
        """m at arbitrary points. Tabulated kinds use the table's own minimizer node as origin."""
        x = _np.asarray(x, dtype=float)
        if self.kind == SelectionKind.TABULATED:
            shift, _ = self.table_shift(self.table.grid)
            return self._table_values(x, shift)
        return self._poly(x)

    def derivative(self, x: _np.ndarray) -> _np.ndarray:
        """m' for analytic kinds."""
        if self.kind == SelectionKind.TABULATED:
            raise _inflab.logging.log(e=NotImplementedError, o=self, f=self.derivative,
                                      m="No analytic derivative for tabulated selection.")
        return self._poly.deriv(1)(_np.asarray(x, dtype=float))

    def second_derivative_on_grid(self, grid: _inflab.grid.Grid1D) -> _np.ndarray:
        """m'' on the grid nodes, analytic where available, second differences for tables."""
        if self.kind == SelectionKind.TABULATED:
            m = self.on_grid(grid)
            d2 = _np.empty_like(m)
            d2[1:-1] = (m[:-2] - 2 * m[1:-1] + m[2:]) / grid.h ** 2
            d2[0], d2[-1] = d2[1], d2[-2]
            return d2
        return self._poly.deriv(2)(grid.nodes)

    # certification ------------------------------------------------------------------------------------------

    def certify(self, grid: _inflab.grid.Grid1D, tol: float = None) -> float:
        """Check hypotheses (H1) m'' >= beta > 0 and (H2) m >= 0, m(0) = 0 on the grid.

        For tables the certified modulus is the smallest interior second difference minus 2h^2.

        :param grid: active grid.
        :param tol: grid tolerance for both checks. Default 10 h^2.
        :return: the certified beta (the declared value if one was given and it holds).
        :raises ValueError: 'H1 violated' or 'H2 violated' with the offending node.
        """
        if self.kind == SelectionKind.ZERO:
            raise _inflab.logging.log(e=ValueError, o=self, f=self.certify,
                                      m="H1 violated: m = 0 is not strongly convex.")
        tol = 10 * grid.h ** 2 if tol is None else tol
        d2 = self.second_derivative_on_grid(grid)
        if self.kind == SelectionKind.TABULATED:
            certified = float(_np.min(d2[1:-1])) - 2 * grid.h ** 2
        else:
            certified = float(_np.min(d2))
        if certified <= 0:
            i = int(_np.argmin(d2))
            raise _inflab.logging.log(e=ValueError, o=self, f=self.certify,
                                      m=f"H1 violated: m'' = {d2[i]:.6g} at x = {grid.nodes[i]:.6g}, "
                                        f"certified beta {certified:.6g} <= 0.")
        if self.beta is not None and certified < self.beta - tol:
            i = int(_np.argmin(d2))
            raise _inflab.logging.log(e=ValueError, o=self, f=self.certify,
                                      m=f"H1 violated: declared beta = {self.beta} but m'' = {d2[i]:.6g} "
                                        f"at x = {grid.nodes[i]:.6g}.")

        m = self.on_grid(grid)
        i = int(_np.argmin(m))
        if m[i] < -tol or abs(grid.nodes[i]) > grid.h * (1 + 1e-9):
            raise _inflab.logging.log(e=ValueError, o=self, f=self.certify,
                                      m=f"H2 violated: min m = {m[i]:.6g} at x = {grid.nodes[i]:.6g}, "
                                        f"expected 0 at x = 0.")
        if self.kind == SelectionKind.TABULATED:
            shift, residual = self.table_shift(grid)
            _inflab.logging.log(l=_inflab.logging.LogLevel.INFO, o=self, f=self.certify,
                                m=f"Table translated by {shift:.6g}, minimizer residual {residual:.3g}.")
        return float(self.beta) if self.beta is not None else certified


@_dc.dataclass(frozen=True)
class TruncationSpec:
    """Selection truncation to the closed interval [-R, R].

    :param R: half-width, must be a node of the active grid.
    """
    R: float

    def __post_init__(self):
        if not self.R > 0:
            raise _inflab.logging.log(e=ValueError, o=self, f=self.__post_init__,
                                      m=f"Need R > 0, got {self.R}.")

    def mask(self, grid: _inflab.grid.Grid1D) -> _np.ndarray:
        """Boolean indicator of [-R, R] on the grid nodes.

        :raises ValueError: if R or -R is not a grid node.
        """
        if grid.index_of(self.R) is None or grid.index_of(-self.R) is None:
            nodes = grid.nodes
            near = nodes[_np.argsort(_np.abs(nodes - self.R))[:2]]
            raise _inflab.logging.log(e=ValueError, o=self, f=self.mask,
                                      m=f"R = {self.R} is not a node of the grid (h = {grid.h}); "
                                        f"nearest nodes {sorted(near.tolist())}.")
        return _np.abs(grid.nodes) <= self.R + 1e-9 * grid.h

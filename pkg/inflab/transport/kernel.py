# -*- coding: utf-8 -*-
###############################################################################
# Copyright (c), The inflab developers. All rights reserved.                  #
# This file is part of the inflab package.                                    #
# (infinitesimal model laboratory)                                            #
#                                                                             #
# For further information on the license, see the LICENSE.txt file.           #
#                                                                             #
###############################################################################
"""inflab: transport: transition kernels of the renormalized problem and their contraction.

The two-parent kernel P(x; x1, x2) is proportional to exp(-(x - (x1 + x2)/2)^2 / 2 - V(x1) - V(x2)) where
exp(-V) is the eigenfunction. The single-parent kernel P(x; y) is proportional to exp(-(x - y)^2 / 2 - V(y)).
"""

import dataclasses as _dc
import typing as _typing

import numpy as _np
import pandas as _pd
from scipy import special as _special

import inflab as _inflab
from inflab.grid import \
    Grid1D as _Grid1D, \
    Grid2D as _Grid2D, \
    LogDensity as _LogDensity
from .measures import DiscreteMeasure as _DiscreteMeasure
from .solvers import \
    bottleneck_winf as _bottleneck_winf, \
    quantile_wp_1d as _quantile_wp_1d, \
    w22_plan_displacement as _w22_plan_displacement

KERNEL_HALF_WIDTH = 8.0
KERNEL_NODES = 201
MASS_CUTOFF = 40.0
LINEAR_MASS_CUTOFF = 30.0
MAX_DISCARDED_MASS = 1e-9

Pair = _typing.Tuple[float, float]

CONTRACTION_COLUMNS = ['x', 'x_tilde', 'winf1', 'ratio', 'bound', 'quantization', 'discarded_mass', 'tolerance',
                       'pass']
DISPLACEMENT_COLUMNS = ['x', 'x_tilde', 'winf1', 'winf2', 'max_l1_displacement', 'max_l2_displacement', 'l1_bound',
                        'l2_bound', 'tolerance', 'coupling_pass', 'l1_pass', 'l2_pass', 'pass']
LINEAR_COLUMNS = ['x', 'x_tilde', 'winf', 'ratio', 'tolerance']


def default_kernel_grid() -> _Grid2D:
    return _Grid2D.square(_Grid1D.symmetric(KERNEL_HALF_WIDTH, KERNEL_NODES))


def rates_from_alpha(alpha: float) -> _typing.Tuple[float, float]:
    """(2/(1+2 alpha), 1/alpha): the l1 contraction rate and the l2 maximum-principle rate."""
    if alpha <= 0:
        raise _inflab.logging.log(e=ValueError, f=rates_from_alpha, m=f"alpha must be > 0, got {alpha}.")
    return 2.0 / (1.0 + 2.0 * alpha), 1.0 / alpha


def l2_rate_comparison(beta: float) -> _typing.Tuple[float, float]:
    """Both contraction rates at the fixed point alpha(beta). The l1 rate is always the smaller."""
    return rates_from_alpha(_inflab.eigen.solve_alpha(beta))


@_dc.dataclass(frozen=True, eq=False)
class Kernel2D:
    """Two-parent transition density P(x; x1, x2) on a product grid.

    :param x: offspring trait.
    :param grid: the (x1, x2) grid.
    :param w: -log P, normalized so that the trapezoid quadrature of exp(-w) is 1.
    :param z_log: log of the normalizing constant that was added to w.
    """
    x: float
    grid: _Grid2D
    w: _np.ndarray
    z_log: float

    def log_cell_masses(self) -> _np.ndarray:
        return -self.w + _np.log(self.grid.trapezoid_weights)

    def marginal(self, axis: int = 0) -> _LogDensity:
        """Marginal density of x1 (axis 0) or x2 (axis 1)."""
        other = self.grid.gy if axis == 0 else self.grid.gx
        log_w = _np.log(other.trapezoid_weights)
        if axis == 0:
            values = _special.logsumexp(-self.w + log_w[None, :], axis=1)
        else:
            values = _special.logsumexp(-self.w + log_w[:, None], axis=0)
        return _LogDensity(grid=self.grid.gx if axis == 0 else self.grid.gy, v=-values)

    def moments(self) -> _typing.Tuple[_np.ndarray, _np.ndarray]:
        """Mean vector and covariance matrix by quadrature."""
        masses = _np.exp(self.log_cell_masses())
        x1, x2 = self.grid.mesh()
        mean = _np.array([_np.sum(masses * x1), _np.sum(masses * x2)])
        d1, d2 = x1 - mean[0], x2 - mean[1]
        cov = _np.array([[_np.sum(masses * d1 * d1), _np.sum(masses * d1 * d2)],
                         [_np.sum(masses * d2 * d1), _np.sum(masses * d2 * d2)]])
        return mean, cov


def _on_axis(vbar: _LogDensity, axis: _Grid1D) -> _np.ndarray:
    if vbar.grid == axis:
        return vbar.v
    return _inflab.grid.resample(vbar, axis).v


def build_transition_kernel(x: float, vbar: _LogDensity, grid2: _Grid2D = None) -> Kernel2D:
    """
    :param x: offspring trait.
    :param vbar: the eigenfunction exp(-V), any normalization.
    :param grid2: product grid of the parental traits. Default [-8, 8]^2 with 201 nodes per axis.
    :return: the normalized kernel.
    """
    grid2 = grid2 if grid2 is not None else default_kernel_grid()
    v1, v2 = _on_axis(vbar, grid2.gx), _on_axis(vbar, grid2.gy)
    if not (_np.isfinite(v1).all() and _np.isfinite(v2).all()):
        raise _inflab.logging.log(e=ValueError, f=build_transition_kernel,
                                  m="Profile is not finite on the kernel grid. Shrink the kernel grid.")
    x1, x2 = grid2.mesh()
    raw = 0.5 * (x - (x1 + x2) / 2.0) ** 2 + v1[:, None] + v2[None, :]
    z_log = float(_special.logsumexp(-raw, b=grid2.trapezoid_weights))
    if not _np.isfinite(z_log):
        raise _inflab.logging.log(e=ValueError, f=build_transition_kernel,
                                  m=f"normalization underflow at x={x}.")
    return Kernel2D(x=float(x), grid=grid2, w=raw + z_log, z_log=z_log)


@_dc.dataclass
class QuantizedKernel:
    """A kernel snapped to the centers of a quantization x quantization box of cells.

    :param measure: the cell-center measure.
    :param discarded_mass: kernel mass dropped below the cutoff.
    :param cell_l1_diameter: l1 diameter of one cell.
    """
    measure: _DiscreteMeasure
    discarded_mass: float
    cell_l1_diameter: float


def quantize_kernel(kernel: Kernel2D, quantization: int, cutoff: float = MASS_CUTOFF) -> QuantizedKernel:
    """Quantize onto the bounding box of the nodes carrying mass above exp(-cutoff) times the largest.

    Cells with mass below exp(-cutoff) times the largest cell mass are dropped as well. The rest is renormalized.
    """
    if quantization < 1:
        raise _inflab.logging.log(e=ValueError, f=quantize_kernel, m=f"quantization must be >= 1, got {quantization}.")
    log_m = kernel.log_cell_masses()
    mass = _np.exp(log_m - _special.logsumexp(log_m))
    keep = log_m >= _np.max(log_m) - cutoff
    discarded = float(mass[~keep].sum())

    x1, x2 = kernel.grid.mesh()
    k1, k2, km = x1[keep], x2[keep], mass[keep]
    d1 = max(k1.max() - k1.min(), kernel.grid.gx.h) / quantization
    d2 = max(k2.max() - k2.min(), kernel.grid.gy.h) / quantization
    i1 = _np.clip(_np.floor((k1 - k1.min()) / d1).astype(int), 0, quantization - 1)
    i2 = _np.clip(_np.floor((k2 - k2.min()) / d2).astype(int), 0, quantization - 1)
    cells = _np.bincount(i1 * quantization + i2, weights=km, minlength=quantization ** 2)

    cell_keep = cells >= _np.max(cells) * _np.exp(-cutoff)
    discarded += float(cells[~cell_keep].sum())
    index = _np.nonzero(cell_keep)[0]
    points = _np.column_stack([k1.min() + (index // quantization + 0.5) * d1,
                               k2.min() + (index % quantization + 0.5) * d2])
    return QuantizedKernel(measure=_DiscreteMeasure.normalized(points, cells[cell_keep]),
                           discarded_mass=discarded,
                           cell_l1_diameter=float(d1 + d2))


def _quantized_kernels(vbar: _LogDensity,
                       xs: _typing.Iterable[float],
                       quantization: int,
                       grid2: _Grid2D,
                       controller: '_inflab.submit.SweepController') -> _typing.Dict[float, QuantizedKernel]:
    xs = sorted(set(float(x) for x in xs))
    results = controller.map(lambda x: quantize_kernel(build_transition_kernel(x, vbar, grid2), quantization), xs)
    return dict(zip(xs, results))


def verify_kernel_contraction(vbar: _LogDensity,
                              alpha: float,
                              x_pairs: _typing.Sequence[Pair],
                              quantization: int = 32,
                              grid2: _Grid2D = None,
                              controller: '_inflab.submit.SweepController' = None) -> _pd.DataFrame:
    """Bottleneck W_{inf,1} between quantized kernels P(x; .) and P(x~; .), against 2/(1+2 alpha) |x - x~|.

    A row passes if winf1 <= bound |x - x~| + tolerance, tolerance = 2 cell l1 diameters, and the discarded
    mass is below 1e-9.

    :param vbar: eigenfunction exp(-V).
    :param alpha: log-concavity modulus of vbar.
    :param x_pairs: offspring trait pairs.
    :param quantization: cells per axis.
    :param grid2: kernel grid. Default [-8, 8]^2.
    :param controller: runs the pairs concurrently.
    :return: table with columns x, x_tilde, winf1, ratio, bound, quantization, discarded_mass, tolerance, pass.
    """
    controller = controller if controller is not None else _inflab.submit.SweepController()
    rho = rates_from_alpha(alpha)[0]
    kernels = _quantized_kernels(vbar, [x for pair in x_pairs for x in pair], quantization, grid2, controller)

    def _row(pair):
        x, x_tilde = float(pair[0]), float(pair[1])
        qa, qb = kernels[x], kernels[x_tilde]
        winf1 = _bottleneck_winf(qa.measure, qb.measure, q=1).value
        gap = abs(x - x_tilde)
        tolerance = 2.0 * max(qa.cell_l1_diameter, qb.cell_l1_diameter)
        discarded = max(qa.discarded_mass, qb.discarded_mass)
        return {'x': x,
                'x_tilde': x_tilde,
                'winf1': winf1,
                'ratio': winf1 / gap if gap > 0 else _np.nan,
                'bound': rho,
                'quantization': quantization,
                'discarded_mass': discarded,
                'tolerance': tolerance,
                'pass': bool(winf1 <= rho * gap + tolerance and discarded <= MAX_DISCARDED_MASS)}

    tab = _inflab.io.Tabulator(columns=CONTRACTION_COLUMNS)
    tab.extend(controller.map(_row, list(x_pairs)))
    return tab.table


def displacement_check(vbar: _LogDensity,
                       alpha: float,
                       x_pairs: _typing.Sequence[Pair],
                       quantization: int = 16,
                       grid2: _Grid2D = None,
                       controller: '_inflab.submit.SweepController' = None) -> _pd.DataFrame:
    """Displacement statistics of the W_{2,2}-optimal plan between quantized kernels.

    Checks, per pair, the coupling bound W_{inf,1} <= max l1 displacement, the l1 displacement bound
    max l1 displacement <= 2/(1+2 alpha) |x - x~| and the l2 chain W_{inf,1} <= sqrt(2) max l2 displacement
    <= |x - x~| / alpha. The last two allow 2 cell l1 diameters of quantization error.

    :param quantization: cells per axis, at most 20.
    """
    controller = controller if controller is not None else _inflab.submit.SweepController()
    rate_l1, rate_l2 = rates_from_alpha(alpha)
    kernels = _quantized_kernels(vbar, [x for pair in x_pairs for x in pair], quantization, grid2, controller)

    def _row(pair):
        x, x_tilde = float(pair[0]), float(pair[1])
        qa, qb = kernels[x], kernels[x_tilde]
        plan = _w22_plan_displacement(qa.measure, qb.measure)
        winf1 = _bottleneck_winf(qa.measure, qb.measure, q=1).value
        winf2 = _bottleneck_winf(qa.measure, qb.measure, q=2).value
        gap = abs(x - x_tilde)
        tolerance = 2.0 * max(qa.cell_l1_diameter, qb.cell_l1_diameter)
        coupling_pass = winf1 <= plan.max_l1_displacement + 1e-12
        l1_pass = plan.max_l1_displacement <= rate_l1 * gap + tolerance
        l2_pass = winf1 <= _np.sqrt(2.0) * plan.max_l2_displacement + 1e-12 \
            and _np.sqrt(2.0) * plan.max_l2_displacement <= rate_l2 * gap + tolerance
        return {'x': x,
                'x_tilde': x_tilde,
                'winf1': winf1,
                'winf2': winf2,
                'max_l1_displacement': plan.max_l1_displacement,
                'max_l2_displacement': plan.max_l2_displacement,
                'l1_bound': rate_l1 * gap,
                'l2_bound': rate_l2 * gap,
                'tolerance': tolerance,
                'coupling_pass': bool(coupling_pass),
                'l1_pass': bool(l1_pass),
                'l2_pass': bool(l2_pass),
                'pass': bool(coupling_pass and l1_pass and l2_pass)}

    tab = _inflab.io.Tabulator(columns=DISPLACEMENT_COLUMNS)
    tab.extend(controller.map(_row, list(x_pairs)))
    return tab.table


def linear_kernel(x: float, vbar: _LogDensity) -> _LogDensity:
    """Single-parent kernel P(x; .) on the grid of vbar, normalized."""
    return _LogDensity(grid=vbar.grid, v=0.5 * (x - vbar.x) ** 2 + vbar.v).normalize()


def linear_kernel_contraction(vbar: _LogDensity, x_pairs: _typing.Sequence[Pair]) -> _pd.DataFrame:
    """W_inf between single-parent kernels by the 1-D quantile coupling.

    :param vbar: principal eigenfunction of the single-parent operator.
    :return: table with columns x, x_tilde, winf, ratio, tolerance. The ratio estimates the contraction kappa,
             tolerance = 2 h is the discretization error of W_inf on the grid.
    """
    tab = _inflab.io.Tabulator(columns=LINEAR_COLUMNS)
    for x, x_tilde in x_pairs:
        mu = _DiscreteMeasure.from_density(linear_kernel(x, vbar), cutoff=LINEAR_MASS_CUTOFF)
        nu = _DiscreteMeasure.from_density(linear_kernel(x_tilde, vbar), cutoff=LINEAR_MASS_CUTOFF)
        winf = _quantile_wp_1d(mu, nu, p=_np.inf)
        gap = abs(x - x_tilde)
        tab.append({'x': float(x),
                    'x_tilde': float(x_tilde),
                    'winf': winf,
                    'ratio': winf / gap if gap > 0 else _np.nan,
                    'tolerance': 2.0 * vbar.grid.h})
    return tab.table

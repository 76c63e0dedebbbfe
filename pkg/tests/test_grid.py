# -*- coding: utf-8 -*-
import numpy as np
import pytest

import inflab
from inflab.grid import Grid1D, LogDensity


def test_grid_validation():
    with pytest.raises(ValueError):
        Grid1D(left=1.0, right=0.0, n=10)
    with pytest.raises(ValueError):
        Grid1D(left=0.0, right=1.0, n=7)
    g = Grid1D.symmetric(10.0, 2001)
    assert g.zero_index == 1000
    assert g.nodes[g.zero_index] == 0.0
    assert np.array_equal(g.nodes, -g.nodes[::-1])
    assert np.isclose(g.h, 0.01)
    assert g.index_of(3.0) == 1300
    assert g.index_of(3.005) is None


def test_default_grid_for_alpha():
    assert Grid1D.default_for_alpha(1.78).right == 10.0
    assert np.isclose(Grid1D.default_for_alpha(0.25).right, 16.0)


def test_trapezoid_mass_gaussian():
    f = LogDensity.gaussian(Grid1D.symmetric(10.0, 2001), 0.0, 1.0)
    assert abs(inflab.grid.trapezoid_mass(f) - 1.0) < 1e-10


def test_trapezoid_mass_constant():
    f = LogDensity(grid=Grid1D(left=0.0, right=1.0, n=101), v=np.zeros(101))
    assert np.isclose(inflab.grid.trapezoid_mass(f), 1.0, rtol=1e-13, atol=0.0)


def test_trapezoid_mass_no_overflow():
    g = Grid1D.symmetric(1.0, 11)
    f = LogDensity(grid=g, v=np.full(11, -700.0))
    assert np.isclose(f.log_mass(), 700.0 + np.log(2.0))


def test_empty_density():
    with pytest.raises(ValueError, match="empty density"):
        LogDensity(grid=Grid1D.symmetric(1.0, 11), v=np.full(11, np.inf))


def test_trapezoid_order_two():
    exact = 1.0 - np.exp(-1.0)
    errors = []
    for n in (11, 21, 41):
        g = Grid1D(left=0.0, right=1.0, n=n)
        errors.append(abs(LogDensity(grid=g, v=g.nodes).mass() - exact))
    assert errors[0] / errors[1] >= 3.5
    assert errors[1] / errors[2] >= 3.5


def test_log_derivative_gaussian():
    sigma2 = 0.7
    f = LogDensity.gaussian(Grid1D.symmetric(5.0, 501), 0.3, sigma2)
    assert np.allclose(inflab.grid.log_derivative(f), -(f.x - 0.3) / sigma2, atol=1e-8)


def test_log_derivative_constant_and_kink():
    g = Grid1D.symmetric(2.0, 201)
    assert np.allclose(inflab.grid.log_derivative(LogDensity(grid=g, v=np.zeros(g.n))), 0.0)
    d = inflab.grid.log_derivative(LogDensity(grid=g, v=np.abs(g.nodes)))
    away = np.abs(g.nodes) > 2.5 * g.h
    assert np.allclose(d[away], -np.sign(g.nodes[away]))
    assert np.isfinite(d[g.zero_index])


def test_log_derivative_on_truncated_region():
    g = Grid1D.symmetric(5.0, 101)
    f = LogDensity.gaussian(g).restrict(np.abs(g.nodes) <= 2.0)
    d = inflab.grid.log_derivative(f)
    assert d.size == np.count_nonzero(f.finite)
    assert np.allclose(d, -f.x[f.finite], atol=1e-10)


def test_second_log_derivative():
    g = Grid1D.symmetric(1.0, 201)
    sigma2 = 0.4
    d2 = inflab.grid.second_log_derivative(LogDensity.gaussian(g, 0.0, sigma2))
    assert np.allclose(d2, 1.0 / sigma2, atol=1e-8)
    d2 = inflab.grid.second_log_derivative(LogDensity(grid=g, v=g.nodes ** 4))
    assert np.allclose(d2[1:-1], 12.0 * g.nodes[1:-1] ** 2, atol=3 * g.h ** 2)
    d2 = inflab.grid.second_log_derivative(LogDensity(grid=g, v=2.0 * g.nodes + 1.0))
    assert np.allclose(d2, 0.0, atol=1e-9)


def test_second_log_derivative_order_two():
    errors = []
    for n in (101, 201):
        g = Grid1D.symmetric(1.0, n)
        d2 = inflab.grid.second_log_derivative(LogDensity(grid=g, v=np.cosh(g.nodes)))
        errors.append(np.max(np.abs(d2[1:-1] - np.cosh(g.nodes[1:-1]))))
    assert errors[0] / errors[1] >= 3.5


def _convolution_grids(half_width, n):
    g = Grid1D.symmetric(half_width, n)
    return g, Grid1D.symmetric(2 * half_width, 2 * n - 1)


def test_logsumexp_convolve_gaussians():
    g, wide = _convolution_grids(10.0, 2001)
    out = inflab.grid.logsumexp_convolve(LogDensity.gaussian(wide), LogDensity.gaussian(g), g)
    inner = np.abs(g.nodes) <= 6.0
    assert np.max(np.abs(out.v - LogDensity.gaussian(g, 0.0, 2.0).v)[inner]) < 1e-6


def test_logsumexp_convolve_mass():
    g, wide = _convolution_grids(10.0, 2001)
    f = LogDensity.gaussian(wide).scaled(np.log(2.0))
    h = LogDensity.gaussian(g, 0.5, 0.5).scaled(np.log(3.0))
    assert np.isclose(inflab.grid.logsumexp_convolve(f, h, g).mass(), 6.0, rtol=1e-8)


def test_logsumexp_convolve_matches_direct_sum():
    g, wide = _convolution_grids(3.15, 64)
    f = LogDensity.gaussian(wide, 0.0, 0.5)
    h = LogDensity.gaussian(g, 0.2, 1.0)
    out = inflab.grid.logsumexp_convolve(f, h, g)
    fv, hv = f.values(), h.values()
    direct = np.array([g.h * sum(fv[k - j + 63] * hv[j] for j in range(64)) for k in range(64)])
    assert np.allclose(out.values(), direct, rtol=1e-12, atol=0.0)


def test_logsumexp_convolve_narrow_spike_shifts():
    g, wide = _convolution_grids(4.0, 81)
    spike = np.full(wide.n, np.inf)
    spike[wide.index_of(1.0)] = -np.log(wide.h)
    f = LogDensity.gaussian(g, 0.0, 0.5)
    out = inflab.grid.logsumexp_convolve(LogDensity(grid=wide, v=spike), f, g)
    s = g.index_of(1.0) - g.zero_index
    assert np.allclose(out.v[s:], f.v[:-s])
    assert np.all(np.isinf(out.v[:s]))


def test_logsumexp_convolve_mismatched_steps():
    with pytest.raises(ValueError, match="mismatched steps"):
        inflab.grid.logsumexp_convolve(LogDensity.gaussian(Grid1D.symmetric(10.0, 101)),
                                       LogDensity.gaussian(Grid1D.symmetric(10.0, 201)),
                                       Grid1D.symmetric(10.0, 201))


def test_resample_keeps_gaussian_and_zero_outside():
    f = LogDensity.gaussian(Grid1D.symmetric(5.0, 1001), 0.0, 1.0)
    target = Grid1D.symmetric(6.0, 241)
    r = inflab.grid.resample(f, target)
    inside, outside = np.abs(target.nodes) <= 4.9, np.abs(target.nodes) > 5.01
    assert np.allclose(r.v[inside], LogDensity.gaussian(target).v[inside], atol=1e-6)
    assert np.all(np.isinf(r.v[outside]))


def test_finite_region_not_contiguous():
    g = Grid1D.symmetric(1.0, 11)
    v = np.zeros(11)
    v[5] = np.inf
    with pytest.raises(ValueError, match="not contiguous"):
        inflab.grid.finite_region(LogDensity(grid=g, v=v))


def test_linear_combination():
    g = Grid1D.symmetric(5.0, 101)
    f, h = LogDensity.gaussian(g, -1.0, 1.0), LogDensity.gaussian(g, 1.0, 0.5)
    out = inflab.grid.linear_combination(0.25, f, 2.0, h)
    assert np.allclose(out.values(), 0.25 * f.values() + 2.0 * h.values(), rtol=1e-13)
    with pytest.raises(ValueError):
        inflab.grid.linear_combination(-1.0, f, 1.0, h)

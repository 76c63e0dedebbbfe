# -*- coding: utf-8 -*-
import numpy as np
import pytest

import inflab
from inflab.grid import Grid1D, LogDensity
from inflab.model import SelectionSpec, TruncationSpec


@pytest.fixture(scope="module")
def small_grid():
    return Grid1D.symmetric(10.0, 1001)


def test_selection_quadratic_and_polynomial(small_grid):
    m = SelectionSpec.quadratic(2.0)
    assert np.allclose(m.on_grid(small_grid), small_grid.nodes ** 2)
    assert m.certify(small_grid) == 2.0
    quartic = SelectionSpec.even_polynomial([3.0, 0.0, 0.5, 0.0, 0.25])
    assert quartic.evaluate(0.0) == 0.0
    assert np.isclose(quartic.evaluate(2.0), 2.0 + 4.0)
    assert np.isclose(quartic.certify(small_grid), 1.0)
    assert np.isclose(quartic.derivative(1.0), 2.0)


def test_selection_rejects_bad_input(small_grid):
    with pytest.raises(ValueError, match="H1 violated"):
        SelectionSpec.quadratic(0.0)
    with pytest.raises(ValueError, match="not even"):
        SelectionSpec.even_polynomial([0.0, 1.0, 1.0])
    with pytest.raises(ValueError, match="H1 violated"):
        SelectionSpec.even_polynomial([0.0, 0.0, 0.5], beta=2.0).certify(small_grid)
    with pytest.raises(ValueError, match="H1 violated"):
        SelectionSpec.zero().certify(small_grid)


def test_selection_tabulated_shift(small_grid):
    table_grid = Grid1D.symmetric(12.0, 241)
    table = LogDensity(grid=table_grid, v=0.5 * (table_grid.nodes - 0.3) ** 2 + 1.0)
    m = SelectionSpec.tabulated(table)
    shift, residual = m.table_shift(small_grid)
    assert np.isclose(shift, 0.3)
    assert abs(residual) < 1e-9
    values = m.on_grid(small_grid)
    assert np.isclose(values[small_grid.zero_index], 0.0, atol=1e-12)
    assert np.allclose(values, 0.5 * small_grid.nodes ** 2, atol=1e-8)
    assert m.certify(small_grid) > 0.99


def test_selection_tabulated_not_convex(small_grid):
    table_grid = Grid1D.symmetric(12.0, 241)
    table = LogDensity(grid=table_grid, v=np.cos(table_grid.nodes))
    with pytest.raises(ValueError, match="H1 violated"):
        SelectionSpec.tabulated(table).certify(small_grid)


def test_truncation_mask():
    g = Grid1D.symmetric(10.0, 2001)
    mask = TruncationSpec(R=3.0).mask(g)
    assert np.count_nonzero(mask) == 601
    with pytest.raises(ValueError, match="not a node"):
        TruncationSpec(R=3.0).mask(Grid1D.symmetric(10.0, 2049))
    with pytest.raises(ValueError):
        TruncationSpec(R=0.0)


def test_gaussian_kernel(small_grid):
    k = inflab.model.gaussian_kernel(small_grid)
    assert abs(k.mass() - 1.0) < 1e-10
    assert np.array_equal(k.v, k.v[::-1])
    assert np.allclose(inflab.grid.second_log_derivative(k), 1.0, atol=1e-8)


def test_midpoint_density_gaussian(small_grid):
    sigma2 = 0.8
    h = inflab.model.midpoint_density(LogDensity.gaussian(small_grid, 0.0, sigma2))
    inner = np.abs(small_grid.nodes) <= 6.0
    assert np.max(np.abs(h.v - LogDensity.gaussian(small_grid, 0.0, sigma2 / 2).v)[inner]) < 1e-6
    assert np.isclose(h.mass(), 1.0, rtol=1e-8)


def test_midpoint_density_mass_and_mean(small_grid):
    f = LogDensity.gaussian(small_grid, 1.2, 0.5).scaled(np.log(3.0))
    h = inflab.model.midpoint_density(f)
    mass, mean, _ = inflab.metrics.moments(h)
    assert np.isclose(mass, 9.0, rtol=1e-8)
    assert abs(mean - 1.2) < 1e-8


def test_midpoint_density_brute_force():
    g = Grid1D.symmetric(2.0, 9)
    rng = np.random.default_rng(3)
    f = LogDensity(grid=g, v=rng.uniform(0.0, 2.0, size=9))
    fv = f.values()
    expected = np.array([2 * g.h * sum(fv[2 * k - j] * fv[j] for j in range(9) if 0 <= 2 * k - j < 9)
                         for k in range(9)])
    assert np.allclose(inflab.model.midpoint_density(f).values(), expected, rtol=1e-12)


def test_midpoint_density_asymmetric_grid():
    f = LogDensity.gaussian(Grid1D(left=-5.0, right=6.0, n=111))
    with pytest.raises(ValueError, match="asymmetric grid"):
        inflab.model.midpoint_density(f)


def test_apply_B_gaussian(small_grid):
    sigma2 = 0.6
    b = inflab.model.apply_B(LogDensity.gaussian(small_grid, 0.0, sigma2).scaled(np.log(2.0)))
    assert np.isclose(b.mass(), 2.0, rtol=1e-8)
    inner = np.abs(small_grid.nodes) <= 5.0
    target = LogDensity.gaussian(small_grid, 0.0, 1.0 + sigma2 / 2).scaled(np.log(2.0))
    assert np.max(np.abs(b.v - target.v)[inner]) < 1e-6


def test_apply_B_brute_force():
    g = Grid1D.symmetric(6.0, 61)
    f = LogDensity.gaussian(g, 0.3, 0.7)
    x = g.nodes
    fv, w = f.values(), g.trapezoid_weights
    x1, x2 = np.meshgrid(x, x, indexing='ij')
    pair = np.outer(fv * w, fv * w)
    expected = np.array([np.sum(pair * np.exp(-0.5 * (xk - (x1 + x2) / 2) ** 2)) / np.sqrt(2 * np.pi) for xk in x])
    expected /= np.sum(fv * w)
    inner = np.abs(x) <= 2.0
    assert np.allclose(inflab.model.apply_B(f).values()[inner], expected[inner], rtol=1e-6)


def test_apply_B_translation_equivariant(small_grid):
    c = 25
    f = LogDensity.gaussian(small_grid, 0.0, 0.5)
    shifted = LogDensity.gaussian(small_grid, c * small_grid.h, 0.5)
    b, bs = inflab.model.apply_B(f), inflab.model.apply_B(shifted)
    inner = slice(300, 700)
    assert np.allclose(bs.v[300 + c:700 + c], b.v[inner], atol=1e-9)


def test_apply_T_zero_selection_is_B(small_grid):
    f = LogDensity.gaussian(small_grid, 0.2, 0.5)
    assert np.allclose(inflab.model.apply_T(f, SelectionSpec.zero()).v, inflab.model.apply_B(f).v)


def test_apply_T_gaussian_fixed_point(small_grid, beta):
    sigma2 = inflab.eigen.quadratic_sigma2(beta)
    f = LogDensity.gaussian(small_grid, 0.0, sigma2)
    tf = inflab.model.apply_T(f, SelectionSpec.quadratic(beta)).normalize()
    inner = np.abs(small_grid.nodes) <= 5.0
    assert np.max(np.abs(tf.v - f.v)[inner]) < 1e-5
    mass_ratio = inflab.model.apply_T(f, SelectionSpec.quadratic(beta)).mass() / f.mass()
    assert np.isclose(mass_ratio, inflab.eigen.quadratic_lambda_oracle(beta), rtol=1e-8)


def test_apply_T_mass_and_truncation(small_grid, quadratic):
    f = LogDensity.gaussian(small_grid, 0.5, 1.0)
    tf = inflab.model.apply_T(f, quadratic)
    assert tf.mass() <= inflab.model.apply_B(f).mass()
    assert np.isclose(tf.mass() / f.mass(), inflab.model.growth_factor(f, quadratic), rtol=1e-8)
    trunc = TruncationSpec(R=3.0)
    tr = inflab.model.apply_T(f, quadratic, trunc)
    outside = np.abs(small_grid.nodes) > 3.0 + 1e-9
    assert np.all(np.isinf(tr.v[outside]))
    assert np.all(np.isfinite(tr.v[~outside]))
    assert tr.mass() < tf.mass()


def test_apply_T_tiny_mass(small_grid, quadratic):
    f = LogDensity.gaussian(small_grid, 0.0, 0.5).scaled(-900.0)
    assert f.mass() == 0.0
    tf = inflab.model.apply_T(f, quadratic)
    assert np.isfinite(tf.log_mass())
    assert np.isclose(tf.log_mass() - f.log_mass(), np.log(inflab.model.growth_factor(f, quadratic)), atol=1e-10)


def test_apply_A_linear(small_grid, quadratic):
    rng = np.random.default_rng(7)
    for _ in range(5):
        f = LogDensity.gaussian(small_grid, rng.uniform(-1, 1), rng.uniform(0.3, 2.0))
        g = LogDensity.gaussian(small_grid, rng.uniform(-1, 1), rng.uniform(0.3, 2.0))
        a, b = rng.uniform(0.1, 3.0, size=2)
        lhs = inflab.model.apply_A(inflab.grid.linear_combination(a, f, b, g), quadratic)
        rhs = inflab.grid.linear_combination(a, inflab.model.apply_A(f, quadratic),
                                             b, inflab.model.apply_A(g, quadratic))
        assert np.allclose(lhs.values(), rhs.values(), rtol=1e-10, atol=0.0)


def test_apply_A_zero_selection(small_grid):
    sigma2 = 0.5
    out = inflab.model.apply_A(LogDensity.gaussian(small_grid, 0.0, sigma2), SelectionSpec.zero())
    inner = np.abs(small_grid.nodes) <= 5.0
    assert np.max(np.abs(out.v - LogDensity.gaussian(small_grid, 0.0, sigma2 + 1.0).v)[inner]) < 1e-6


def test_log_concavity_update(alpha, beta):
    assert abs(inflab.model.log_concavity_update(alpha, beta) - alpha) < 1e-14
    assert inflab.model.log_concavity_update(np.inf, 2.0) == 3.0
    assert np.isclose(inflab.model.log_concavity_update(1.0, 1.0), 5.0 / 3.0)
    assert np.isclose(inflab.model.convolution_log_concavity(2.0, 2.0), 1.0)
    with pytest.raises(ValueError):
        inflab.model.log_concavity_update(0.0, 1.0)


def test_alpha_sequence_converges_monotonically(alpha, beta):
    up = inflab.model.alpha_sequence(0.1, beta, 60)
    down = inflab.model.alpha_sequence(50.0, beta, 60)
    assert np.all(np.diff(up[:8]) > 0)
    assert np.all(np.diff(down[:8]) < 0)
    assert np.all(np.diff(up) >= -1e-15)
    assert abs(up[-1] - alpha) < 1e-12
    assert abs(down[-1] - alpha) < 1e-12


def test_log_concavity_propagates(small_grid, quadratic, beta):
    for f in (LogDensity.gaussian(small_grid, 0.0, 0.7),
              LogDensity.from_potential(small_grid, lambda x: x ** 4 + x ** 2)):
        gamma = inflab.metrics.estimate_log_concavity(f)
        after = inflab.metrics.estimate_log_concavity(inflab.model.apply_T(f, quadratic))
        assert after >= inflab.model.log_concavity_update(gamma, beta) - 10 * small_grid.h ** 2


def test_selection_smoothing(small_grid, beta):
    phi = inflab.model.selection_smoothing(SelectionSpec.quadratic(beta), small_grid)
    x = small_grid.nodes
    expected = np.exp(-beta * x ** 2 / (2 * (1 + beta))) / np.sqrt(1 + beta)
    inner = np.abs(x) <= 5.0
    assert np.allclose(phi.values()[inner], expected[inner], rtol=1e-8)

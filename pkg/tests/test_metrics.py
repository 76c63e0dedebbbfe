# -*- coding: utf-8 -*-
import io

import numpy as np
import pytest

import inflab
from inflab.grid import Grid1D, LogDensity


@pytest.fixture(scope="module")
def wide_grid():
    return Grid1D.symmetric(12.0, 1201)


def test_gaussian_shift_closed_forms(wide_grid):
    s, dm = 0.7, 0.4
    p = LogDensity.gaussian(wide_grid, dm, s)
    q = LogDensity.gaussian(wide_grid, 0.0, s)
    assert np.isclose(inflab.metrics.fisher_infinity(p, q), dm / s, rtol=1e-8)
    assert np.isclose(inflab.metrics.fisher_two(p, q), dm ** 2 / s ** 2, rtol=1e-8)
    assert np.isclose(inflab.metrics.kl_divergence(p, q), dm ** 2 / (2 * s), rtol=1e-8)
    assert not inflab.metrics.fisher_infinity_is_grid_dependent(p, q)


def test_gaussian_variance_closed_forms(wide_grid):
    s1, s2 = 0.6, 1.0
    p = LogDensity.gaussian(wide_grid, 0.0, s1)
    q = LogDensity.gaussian(wide_grid, 0.0, s2)
    r = s1 / s2
    assert np.isclose(inflab.metrics.kl_divergence(p, q), 0.5 * (r - 1 - np.log(r)), rtol=1e-8)
    # |d/dx log p/q| = |x| (1/s1 - 1/s2), so E_p of its square is s1 (1/s1 - 1/s2)^2
    assert np.isclose(inflab.metrics.fisher_two(p, q), s1 * (1 / s1 - 1 / s2) ** 2, rtol=1e-6)
    assert inflab.metrics.fisher_infinity_is_grid_dependent(p, q)


def test_fisher_infinity_warns_when_grid_dependent(wide_grid):
    stream = io.StringIO()
    inflab.logging.configure(verbosity=0, stream=stream)
    q = LogDensity.gaussian(wide_grid, 0.0, 1.0)
    inflab.metrics.fisher_infinity(LogDensity.gaussian(wide_grid, 0.4, 1.0), q)
    assert stream.getvalue() == ""
    inflab.metrics.fisher_infinity(LogDensity.gaussian(wide_grid, 0.0, 0.5), q)
    assert stream.getvalue().startswith("Warning: fisher_infinity(): grid-dependent (sup = inf)")
    inflab.logging.configure(verbosity=0)


def test_divergence_report_flags_grid_dependence(wide_grid):
    p = LogDensity.gaussian(wide_grid, 0.0, 0.5)
    q = LogDensity.gaussian(wide_grid, 0.0, 1.0)
    report = inflab.metrics.divergence_report(p, q)
    assert report.i_inf_grid_dependent
    row = report.to_row()
    assert {'i_inf', 'i_two', 'kl', 'hilbert', 'support_left', 'support_right'} <= set(row)
    assert row['support_left'] < 0 < row['support_right']


def test_hilbert_metric(wide_grid):
    q = LogDensity.gaussian(wide_grid)
    assert inflab.metrics.hilbert_metric(q, q.scaled(3.0)) < 1e-12
    p = q.add_potential(0.2 * np.sin(wide_grid.nodes))
    assert abs(inflab.metrics.hilbert_metric(p, q) - 0.4) < 1e-4
    assert abs(inflab.metrics.hilbert_metric(p.scaled(-2.0), q) - 0.4) < 1e-4


def test_kl_scale_invariant_and_zero(wide_grid):
    q = LogDensity.gaussian(wide_grid, 0.3, 0.8)
    assert inflab.metrics.kl_divergence(q, q.scaled(1.7)) < 1e-14
    p = LogDensity.gaussian(wide_grid, 0.0, 0.8)
    assert np.isclose(inflab.metrics.kl_divergence(p.scaled(-4.0), q), inflab.metrics.kl_divergence(p, q))


def test_kl_absolute_continuity(wide_grid):
    p = LogDensity.gaussian(wide_grid)
    q = p.restrict(np.abs(wide_grid.nodes) <= 2.0)
    with pytest.raises(ValueError, match="absolute continuity violated"):
        inflab.metrics.kl_divergence(p, q)
    assert inflab.metrics.kl_divergence(q, p) > 0.0


def test_disjoint_supports(wide_grid):
    f = LogDensity.gaussian(wide_grid)
    p = f.restrict(wide_grid.nodes < -1.0)
    q = f.restrict(wide_grid.nodes > 1.0)
    with pytest.raises(ValueError, match="disjoint supports"):
        inflab.metrics.fisher_infinity(p, q)


def test_different_grids():
    p = LogDensity.gaussian(Grid1D.symmetric(5.0, 101))
    q = LogDensity.gaussian(Grid1D.symmetric(5.0, 201))
    with pytest.raises(ValueError, match="different grids"):
        inflab.metrics.kl_divergence(p, q)


def test_moments(wide_grid):
    f = LogDensity.gaussian(wide_grid, -0.7, 1.3).scaled(np.log(5.0))
    mass, mean, variance = inflab.metrics.moments(f)
    assert np.isclose(mass, 5.0, rtol=1e-10)
    assert np.isclose(mean, -0.7, atol=1e-10)
    assert np.isclose(variance, 1.3, rtol=1e-8)


def test_estimate_log_concavity(wide_grid):
    assert np.isclose(inflab.metrics.estimate_log_concavity(LogDensity.gaussian(wide_grid, 0.0, 0.25)), 4.0,
                      rtol=1e-8)
    f = LogDensity.from_potential(wide_grid, lambda x: np.abs(x) + 0.5 * x ** 2)
    assert inflab.metrics.estimate_log_concavity(f) >= 1.0 - 1e-8
    flat = LogDensity.from_potential(wide_grid, lambda x: np.log(np.cosh(x)))
    assert inflab.metrics.estimate_log_concavity(flat, flag_below=-np.inf) < 0.1


def test_pinsker_and_tensorization():
    g = Grid1D.symmetric(8.0, 401)
    p = LogDensity.gaussian(g, 0.5, 1.0)
    q = LogDensity.gaussian(g, 0.0, 1.2)
    kl = inflab.metrics.kl_divergence(p, q)
    assert inflab.metrics.l1_distance(p, q) <= np.sqrt(2 * kl)
    assert np.isclose(inflab.metrics.product_kl(p, q), 2 * kl, rtol=1e-8)
    x1, x2 = np.meshgrid(g.nodes, g.nodes, indexing='ij')
    for phi in (np.cos(x1) * np.sin(x2), np.tanh(x1 + x2), np.where(x1 > x2, 1.0, -1.0)):
        lhs, rhs, passed = inflab.metrics.holder_pinsker_check(p, q, phi)
        assert passed
        assert 0.0 <= lhs <= rhs


def test_lsi_chain_gaussian_shift(wide_grid, alpha):
    q = LogDensity.gaussian(wide_grid, 0.0, 1.0 / alpha)
    p = LogDensity.gaussian(wide_grid, 0.3, 1.0 / alpha)
    report = inflab.metrics.lsi_chain_check(p, q, alpha)
    assert report.passed
    # equality in both links for a Gaussian translate
    assert abs(report.slack) < 1e-7
    assert np.isclose(report.kl, alpha * 0.09 / 2, rtol=1e-8)


def test_lsi_chain_rejects_overclaimed_gamma(wide_grid):
    q = LogDensity.gaussian(wide_grid, 0.0, 1.0)
    with pytest.raises(ValueError, match="gamma certificate failed"):
        inflab.metrics.lsi_chain_check(LogDensity.gaussian(wide_grid, 0.1, 1.0), q, 2.0)


@pytest.mark.slow
def test_lsi_chain_perturbed_eigenfunction(quadratic_eigen, alpha):
    q = quadratic_eigen.profile
    rng = np.random.default_rng(2024)
    for _ in range(100):
        k, eps, c = rng.uniform(0.5, 2.0), rng.uniform(-0.3, 0.3), rng.uniform(0.0, 2 * np.pi)
        p = q.add_potential(eps * np.sin(k * q.x + c)).normalize()
        report = inflab.metrics.lsi_chain_check(p, q, alpha)
        assert report.passed, (k, eps, c, report)
        assert report.kl <= report.i_two_bound + 1e-8 <= report.i_inf_bound + 2e-8

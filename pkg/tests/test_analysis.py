# -*- coding: utf-8 -*-
import numpy as np
import pandas as pd
import pytest
from scipy import special

import inflab
from inflab.grid import Grid1D, LogDensity
from inflab.model import TruncationSpec

FIT_WINDOW = (1e-9, 1e-3)


@pytest.fixture(scope="module")
def linear_reference(quadratic):
    grid = Grid1D.symmetric(10.0, 801)
    return inflab.eigen.solve_linear_eigen(quadratic, LogDensity.gaussian(grid), tol=1e-11)


@pytest.mark.parametrize("mode", ["sine", "tanh-shift"])
@pytest.mark.parametrize("epsilon", [-0.8, 0.3, 1.0])
def test_make_admissible_initial(mode, epsilon):
    vbar = LogDensity.gaussian(Grid1D.symmetric(10.0, 2001), 0.0, 0.5)
    f0 = inflab.analysis.make_admissible_initial(vbar, epsilon, mode)
    assert np.isclose(f0.mass(), 1.0, rtol=1e-12)
    i_inf = inflab.metrics.fisher_infinity(f0, vbar)
    assert i_inf <= abs(epsilon) + 1e-6
    if mode == "sine":
        assert i_inf >= abs(epsilon) * (1 - 1e-4)


def test_tanh_shift_moves_mean():
    vbar = LogDensity.gaussian(Grid1D.symmetric(10.0, 2001), 0.0, 0.5)
    _, mean, _ = inflab.metrics.moments(inflab.analysis.make_admissible_initial(vbar, 0.5, "tanh-shift"))
    assert abs(mean) > 1e-3


def test_make_admissible_initial_errors():
    vbar = LogDensity.gaussian(Grid1D.symmetric(10.0, 201))
    with pytest.raises(ValueError, match="epsilon"):
        inflab.analysis.make_admissible_initial(vbar, 1.5)
    with pytest.raises(ValueError):
        inflab.analysis.make_admissible_initial(vbar, 0.5, "cosine")


def test_lower_bound_lattice():
    samples = inflab.analysis.lower_bound_lattice(1.0)
    assert len(samples) == 20
    assert all(x0 > inflab.analysis.lower_bound_threshold(1.0, d) for x0, d in samples)
    assert inflab.analysis.lower_bound_threshold(1.0, 0.5) == 1.5


def test_log_explicit_integral():
    assert inflab.analysis.log_explicit_integral(1.0, 0.0) == -np.inf
    # int_0^U exp(z^2) dz = sqrt(pi)/2 erfi(U)
    expected = np.log(np.sqrt(np.pi) / 2 * special.erfi(1.5))
    assert np.isclose(inflab.analysis.log_explicit_integral(1.0, 1.5), expected, rtol=1e-10)
    assert np.isfinite(inflab.analysis.log_explicit_integral(1.0, 30.0))


def test_lower_bound_quadratic(quadratic):
    table = inflab.analysis.lower_bound_check(quadratic, 1.0, inflab.analysis.lower_bound_lattice(1.0))
    assert list(table.columns) == inflab.analysis.LOWER_BOUND_COLUMNS
    assert len(table) == 20
    assert table['pass'].all()
    assert np.allclose(table['lhs'], table['lhs_analytic'], rtol=1e-8)
    row = table[(table['delta'] == 0.5) & np.isclose(table['x0'], 2.0)].iloc[0]
    assert abs(row['lhs'] - 0.0591) < 1e-4
    assert np.all(table['upper_limit'] < table['stated_limit'])


def test_lower_bound_quartic(quartic):
    table = inflab.analysis.lower_bound_check(quartic, 1.0, inflab.analysis.lower_bound_lattice(1.0))
    assert table['pass'].all()
    assert table['lhs_analytic'].isna().all()


def test_lower_bound_truncated(quadratic):
    table = inflab.analysis.lower_bound_check(quadratic, 1.0, inflab.analysis.lower_bound_lattice(1.0),
                                              trunc=TruncationSpec(R=6.0))
    assert table['pass'].all()
    assert (table['R'] == 6.0).all()


def test_lower_bound_preconditions(quadratic):
    with pytest.raises(ValueError, match="precondition x0 > "):
        inflab.analysis.lower_bound_check(quadratic, 1.0, [(1.5, 0.5)])
    with pytest.raises(ValueError, match="gamma certificate failed"):
        inflab.analysis.lower_bound_check(quadratic, 2.0, [(5.0, 0.5)])
    with pytest.raises(ValueError, match="precondition R > 2 delta"):
        inflab.analysis.lower_bound_check(quadratic, 1.0, [(2.0, 0.5)], trunc=TruncationSpec(R=0.5))
    with pytest.raises(ValueError, match="precondition x0 < R"):
        inflab.analysis.lower_bound_check(quadratic, 1.0, [(6.0, 0.5)], trunc=TruncationSpec(R=3.0))
    with pytest.raises(ValueError, match="delta > 0"):
        inflab.analysis.lower_bound_check(quadratic, 1.0, [(2.0, 0.0)])


def test_cauchy_run_truncated(quadratic):
    grid = Grid1D.symmetric(10.0, 801)
    f0 = LogDensity.gaussian(grid, 0.5, 0.3)
    trace = inflab.analysis.cauchy_run(quadratic, f0, TruncationSpec(R=3.0), generations=10)
    table = trace.table
    assert list(table.columns) == inflab.analysis.CAUCHY_COLUMNS
    assert len(table) == 10
    rows = table[np.isfinite(table['ratio'])]
    assert len(rows) >= 3
    assert np.all(rows['ratio'] <= rows['bound'] + 1e-3)
    assert np.all(table['alpha_hat'] >= 1.0)
    with pytest.raises(ValueError, match="alpha0"):
        inflab.analysis.cauchy_run(quadratic, f0, None, generations=2, alpha0=0.0)


def test_run_needs_matching_grid(quadratic):
    reference = inflab.eigen.EigenResult(lambda_=0.5, profile=LogDensity.gaussian(Grid1D.symmetric(10.0, 201)),
                                         alpha_hat=1.0, iterations=0, trace=pd.DataFrame(), residual=0.0)
    f0 = LogDensity.gaussian(Grid1D.symmetric(10.0, 401))
    with pytest.raises(ValueError, match="different grids"):
        inflab.analysis.contraction_run(quadratic, f0, reference, 1)


@pytest.mark.slow
@pytest.mark.parametrize("epsilon", [0.2, 0.5])
def test_contraction_run_quadratic(quadratic_eigen, quadratic, epsilon):
    rho = inflab.eigen.contraction_factor(1.0)
    f0 = inflab.analysis.make_admissible_initial(quadratic_eigen.profile, epsilon, "sine")
    trace = inflab.analysis.contraction_run(quadratic, f0, quadratic_eigen, generations=16)
    table = trace.table
    assert list(table.columns) == inflab.analysis.RUN_COLUMNS
    assert len(table) == 17
    assert trace.ratios.size >= 10
    assert trace.max_ratio <= rho + 1e-3
    i_inf = table['i_inf'].to_numpy()
    assert i_inf[14] <= rho ** 14 * i_inf[0] * (1 + 1e-3)
    rows = table[table['n'] >= 1]
    gap = np.abs(rows['lambda_n'] - quadratic_eigen.lambda_)
    assert np.all(gap <= rows['lambda_bound'] + 1e-10)

    slope_lambda, slope_kl = inflab.analysis.growth_rate_fit(trace, quadratic_eigen, window=FIT_WINDOW)
    assert slope_lambda <= np.log(rho) + 0.05 * abs(np.log(rho))
    assert abs(slope_kl - 2 * np.log(rho)) <= 0.05 * abs(2 * np.log(rho))


@pytest.mark.slow
@pytest.mark.parametrize("epsilon", [0.2, 0.5])
def test_contraction_run_quartic(quartic_eigen, quartic, epsilon):
    rho = inflab.eigen.contraction_factor(1.0)
    f0 = inflab.analysis.make_admissible_initial(quartic_eigen.profile, epsilon, "tanh-shift")
    trace = inflab.analysis.contraction_run(quartic, f0, quartic_eigen, generations=12)
    assert trace.max_ratio <= rho + 1e-3
    assert np.all(trace.table['alpha_hat'].iloc[1:] >= inflab.eigen.solve_alpha(1.0) - 1e-3)


@pytest.mark.slow
def test_growth_rate_fit_window_error(quadratic_eigen, quadratic):
    f0 = inflab.analysis.make_admissible_initial(quadratic_eigen.profile, 0.2)
    trace = inflab.analysis.contraction_run(quadratic, f0, quadratic_eigen, generations=2)
    with pytest.raises(ValueError, match="decay outside fit window"):
        inflab.analysis.growth_rate_fit(trace, quadratic_eigen, window=(1e-30, 1e-29))


@pytest.mark.slow
def test_contraction_run_at_fixed_point(quadratic_eigen, quadratic):
    f0 = inflab.analysis.make_admissible_initial(quadratic_eigen.profile, 0.0)
    trace = inflab.analysis.contraction_run(quadratic, f0, quadratic_eigen, generations=10)
    assert np.all(trace.table['i_inf'] < 1e-9)
    assert trace.ratios.size == 0
    assert np.isnan(trace.max_ratio)
    with pytest.raises(ValueError, match="decay outside fit window"):
        inflab.analysis.growth_rate_fit(trace, quadratic_eigen)


def _sine_run_slack(quadratic, reference, generations=8):
    f0 = inflab.analysis.make_admissible_initial(reference.profile, 0.2, "sine")
    trace = inflab.analysis.contraction_run(quadratic, f0, reference, generations)
    return trace.table['ratio'].to_numpy()[1:] - inflab.eigen.contraction_factor(1.0)


@pytest.mark.slow
def test_contraction_slack_under_refinement(quadratic_eigen, quadratic, alpha):
    fine = Grid1D.symmetric(10.0, 4097)
    fine_eigen = inflab.eigen.solve_eigen(quadratic, LogDensity.gaussian(fine, 0.0, 1.0 / alpha), tol=1e-11)
    coarse_slack = _sine_run_slack(quadratic, quadratic_eigen)
    fine_slack = _sine_run_slack(quadratic, fine_eigen)
    assert np.all(coarse_slack <= 1e-3) and np.all(fine_slack <= 1e-3)
    # the positive part is the grid excess over rho; below 1e-6 the ratios are at solver noise
    assert max(fine_slack.max(), 0.0) <= max(max(coarse_slack.max(), 0.0) / 3.0, 1e-6)
    assert np.allclose(coarse_slack, fine_slack, atol=1e-4)


@pytest.mark.slow
def test_linear_operator_run(linear_reference, quadratic):
    f0 = inflab.analysis.make_admissible_initial(linear_reference.profile, 0.5)
    trace = inflab.analysis.linear_operator_run(quadratic, f0, linear_reference, generations=12)
    assert trace.operator == 'A'
    assert 0.0 < trace.kappa_hat < 1.0
    assert trace.kappa_hat <= trace.kappa_kernel + 0.05
    golden = (np.sqrt(5.0) - 1.0) / 2.0
    assert abs(trace.kappa_kernel - golden ** 2) <= 0.05
    assert trace.table['lambda_bound'].isna().all()

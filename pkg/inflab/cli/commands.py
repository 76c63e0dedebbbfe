# -*- coding: utf-8 -*-
###############################################################################
# Copyright (c), The inflab developers. All rights reserved.                  #
# This file is part of the inflab package.                                    #
# (infinitesimal model laboratory)                                            #
#                                                                             #
# For further information on the license, see the LICENSE.txt file.           #
#                                                                             #
###############################################################################
"""inflab: cli: one function per subcommand.

Every command writes its files into ``config.output.dir`` and returns a :py:class:`~.CommandResult`. Failing
verification rows raise :py:class:`inflab.exceptions.ClaimViolation` after the files are written.
"""

import dataclasses as _dc
import pathlib as _pathlib
import typing as _typing

import numpy as _np
import pandas as _pd

import inflab as _inflab
from .config import ExperimentConfig as _ExperimentConfig


@_dc.dataclass
class CommandResult:
    """Outcome of one subcommand.

    :param command: subcommand name.
    :param files: files written.
    :param summary: key figures for the terminal summary.
    :param notes: remarks, e.g. 'fixed point'.
    """
    command: str
    files: _typing.List[_pathlib.Path] = _dc.field(default_factory=list)
    summary: _typing.Dict[str, _typing.Any] = _dc.field(default_factory=dict)
    notes: _typing.List[str] = _dc.field(default_factory=list)


def _fail_on(rows: _pd.DataFrame, what: str) -> None:
    if not rows.empty:
        raise _inflab.exceptions.ClaimViolation(f"{what}: {len(rows)} failing row(s).", rows=rows)


def _setup(config: _ExperimentConfig) \
        -> _typing.Tuple['_inflab.model.SelectionSpec', float, float, '_inflab.grid.Grid1D']:
    """Selection, certified beta, alpha* and the run grid."""
    m = config.selection_spec()
    if m.beta is not None:
        beta = float(m.beta)
    else:
        trial_grid = config.grid_for(1.0) if config.grid.half_width is not None \
            else _inflab.grid.Grid1D.symmetric(10.0, config.grid.n)
        beta = m.certify(trial_grid)
    alpha = _inflab.eigen.solve_alpha(beta)
    grid = config.grid_for(alpha)
    m.certify(grid)
    return m, beta, alpha, grid


def _reference(config: _ExperimentConfig,
               m: '_inflab.model.SelectionSpec',
               alpha: float,
               grid: '_inflab.grid.Grid1D',
               truncated: bool = True) -> '_inflab.eigen.EigenResult':
    f0 = _inflab.grid.LogDensity.gaussian(grid, 0.0, 1.0 / alpha)
    return _inflab.eigen.solve_eigen(m, f0,
                                     trunc=config.truncation_spec() if truncated else None,
                                     tol=config.run.tol,
                                     max_iter=config.run.max_iter)


def cmd_eigen(config: _ExperimentConfig) -> CommandResult:
    """Eigenpair: eigen.csv (iteration trace), profile.csv (x, V, F), ladder.csv if radii are configured."""
    out = config.out_dir
    m, beta, alpha, grid = _setup(config)
    result = _reference(config, m, alpha, grid)
    profile = _pd.DataFrame({'x': grid.nodes, 'V': result.profile.v, 'F': result.profile.values()})
    files = [_inflab.io.write_csv(result.trace, out / 'eigen.csv'),
             _inflab.io.write_csv(profile, out / 'profile.csv')]
    summary = {'lambda': result.lambda_,
               'alpha_hat': result.alpha_hat,
               'alpha_star': alpha,
               'residual': result.residual,
               'iterations': result.iterations}
    if m.kind == _inflab.model.SelectionKind.QUADRATIC and result.truncated is None:
        summary['lambda_oracle'] = _inflab.eigen.quadratic_lambda_oracle(beta)
    if config.truncation.ladder:
        ladder = _inflab.eigen.truncation_ladder(m, _inflab.grid.LogDensity.gaussian(grid, 0.0, 1.0 / alpha),
                                                 config.truncation.ladder, tol=config.run.tol,
                                                 max_iter=config.run.max_iter, controller=config.controller())
        files.append(_inflab.io.write_csv(ladder, out / 'ladder.csv'))
    return CommandResult(command='eigen', files=files, summary=summary)


def cmd_contract(config: _ExperimentConfig) -> CommandResult:
    """Contraction run: trace.csv, cauchy.csv and rates.txt. Fails if a per-step ratio exceeds rho + slack."""
    out = config.out_dir
    m, beta, alpha, grid = _setup(config)
    reference = _reference(config, m, alpha, grid)
    rho = _inflab.eigen.contraction_factor(beta)
    f0 = _inflab.analysis.make_admissible_initial(reference.profile, config.initial.epsilon, config.initial.mode)
    trace = _inflab.analysis.contraction_run(m, f0, reference, config.run.generations)
    files = [_inflab.io.write_csv(trace.table, out / 'trace.csv')]

    start = _inflab.grid.LogDensity.gaussian(grid, 0.0, 1.0 / (0.1 * alpha))
    cauchy = _inflab.analysis.cauchy_run(m, start, config.truncation_spec(), config.run.generations)
    files.append(_inflab.io.write_csv(cauchy.table, out / 'cauchy.csv'))

    notes = []
    lines = [f"log_rho = {_np.log(rho):.17g}"]
    try:
        slope_lambda, slope_kl = _inflab.analysis.growth_rate_fit(trace, reference)
        lines += [f"slope_lambda = {slope_lambda:.17g}",
                  f"slope_kl = {slope_kl:.17g}",
                  f"slope_lambda / log_rho = {slope_lambda / _np.log(rho):.17g}",
                  f"slope_kl / (2 log_rho) = {slope_kl / (2.0 * _np.log(rho)):.17g}"]
    except ValueError as err:
        lines.append(f"fit: {err}")
        notes.append("fixed point" if config.initial.epsilon == 0 else str(err))
    files.append(_inflab.io.write_text("\n".join(lines) + "\n", out / 'rates.txt'))

    table = trace.table
    bad = table[table['ratio'] > rho + config.run.ratio_slack]
    summary = {'rho': rho, 'max_ratio': trace.max_ratio, 'generations': config.run.generations,
               'final_i_inf': float(table['i_inf'].iloc[-1])}
    _fail_on(bad, f"per-step I_inf ratio above rho + {config.run.ratio_slack:g}, worst at n = "
                  f"{int(bad.loc[bad['ratio'].idxmax(), 'n']) if not bad.empty else -1}")
    return CommandResult(command='contract', files=files, summary=summary, notes=notes)


def cmd_transport(config: _ExperimentConfig) -> CommandResult:
    """Kernel contraction: kernel_contraction.csv, displacement.csv, rates_l1_l2.csv."""
    out = config.out_dir
    m, beta, alpha, grid = _setup(config)
    reference = _reference(config, m, alpha, grid, truncated=False)
    controller = config.controller()
    pairs = config.x_pairs()
    grid2 = config.kernel_grid()

    contraction = _inflab.transport.verify_kernel_contraction(reference.profile, alpha, pairs,
                                                              config.transport.quantization, grid2, controller)
    displacement = _inflab.transport.displacement_check(reference.profile, alpha, pairs,
                                                        config.transport.displacement_quantization, grid2,
                                                        controller)
    betas = _np.linspace(0.0, config.figures.beta_max, config.figures.beta_points)[1:]
    tab = _inflab.io.Tabulator(columns=['beta', 'alpha', 'rate_l1', 'rate_l2'])
    for b in betas:
        rate_l1, rate_l2 = _inflab.transport.l2_rate_comparison(b)
        tab.append({'beta': b, 'alpha': _inflab.eigen.solve_alpha(b), 'rate_l1': rate_l1, 'rate_l2': rate_l2})
    files = [_inflab.io.write_csv(contraction, out / 'kernel_contraction.csv'),
             _inflab.io.write_csv(displacement, out / 'displacement.csv'),
             _inflab.io.write_csv(tab.table, out / 'rates_l1_l2.csv')]
    summary = {'rho': _inflab.transport.rates_from_alpha(alpha)[0],
               'max_ratio': float(_np.nanmax(contraction['ratio'])) if contraction['ratio'].notna().any()
               else _np.nan,
               'pairs': len(pairs)}
    _fail_on(contraction[~contraction['pass']], "kernel contraction")
    _fail_on(displacement[~displacement['pass']], "displacement bounds")
    return CommandResult(command='transport', files=files, summary=summary)


def _dirac_equality(seed: int) -> _pd.DataFrame:
    """Dirac pairs along the Hoelder-aligned direction, where lhs = lipschitz * W."""
    rng = _np.random.default_rng(seed)
    tab = _inflab.io.Tabulator(columns=['q', 'ratio', 'lipschitz', 'equal'])
    for q in (1, 2, _np.inf):
        u = _inflab.transport.TestFunction.exp_linear(rng.uniform(-1.0, 1.0, size=2), b=rng.uniform(-1.0, 1.0))
        x = rng.uniform(-1.0, 1.0, size=2)
        x_tilde = x + rng.uniform(0.1, 1.0) * _inflab.transport.hoelder_aligned_step(u.a, q)
        report = _inflab.transport.duality_check(u, _inflab.transport.DiscreteMeasure.dirac(x),
                                                 _inflab.transport.DiscreteMeasure.dirac(x_tilde), _np.inf, q)
        tab.append({'q': q,
                    'ratio': report.ratio,
                    'lipschitz': report.lipschitz,
                    'equal': bool(abs(report.lhs - report.rhs) <= 1e-9 * max(1.0, report.rhs))})
    return tab.table


def cmd_duality(config: _ExperimentConfig) -> CommandResult:
    """Duality property run: duality.csv, dirac.csv, log_estimate.csv, and violation.json on failure."""
    out = config.out_dir
    d = config.duality
    controller = config.controller()
    suite = _inflab.transport.duality_suite(d.seed, n_pairs=d.n_pairs, max_size=d.max_size, controller=controller)
    dirac = _dirac_equality(d.seed)

    m, beta, alpha, grid = _setup(config)
    reference = _reference(config, m, alpha, grid, truncated=False)
    grid2 = config.kernel_grid()
    u0 = _inflab.grid.LogDensity(grid=grid2.gx, v=-d.epsilon * _np.sin(grid2.gx.nodes))
    estimate = _inflab.transport.log_estimate_check(u0, reference.profile, config.x_pairs(), alpha=alpha,
                                                    quantization=d.quantization, grid2=grid2,
                                                    controller=controller)
    files = [_inflab.io.write_csv(suite, out / 'duality.csv'),
             _inflab.io.write_csv(dirac, out / 'dirac.csv'),
             _inflab.io.write_csv(estimate, out / 'log_estimate.csv')]

    failing = suite[~suite['passed']]
    violations = {}
    if not failing.empty:
        violations['duality'] = {'seed': d.seed, 'max_size': d.max_size,
                                 'replay': "duality_suite(seed, n_pairs=case + 1, max_size=max_size)",
                                 'rows': failing.to_dict(orient='records')}
    if not dirac['equal'].all():
        violations['dirac'] = dirac[~dirac['equal']].to_dict(orient='records')
    bad_estimate = estimate[~(estimate['pass'] & estimate['norm_pass'])]
    if not bad_estimate.empty:
        violations['log_estimate'] = bad_estimate.to_dict(orient='records')
    if violations:
        files.append(_inflab.io.write_json(violations, out / 'violation.json'))

    summary = {'pairs': d.n_pairs, 'checks': len(suite), 'failing': len(failing), 'seed': d.seed,
               'max_log_ratio': float(_np.nanmax(estimate['lhs'] / estimate['rhs'].replace(0.0, _np.nan)))
               if estimate['rhs'].gt(0).any() else _np.nan}
    _fail_on(failing, "duality inequality")
    _fail_on(dirac[~dirac['equal']], "Dirac equality")
    _fail_on(bad_estimate, "log-Lipschitz estimate")
    return CommandResult(command='duality', files=files, summary=summary)


def figure_tables(config: _ExperimentConfig) -> _typing.Dict[str, _pd.DataFrame]:
    """The curves alpha(beta), rho(beta) on [0, beta_max] and 2/(1+2 alpha), 1/alpha on [1/2, 5]."""
    f = config.figures
    betas = _np.linspace(0.0, f.beta_max, f.beta_points)
    alphas = _np.array([_inflab.eigen.alpha_closed_form(b) for b in betas])
    rhos = 2.0 / (1.0 + 2.0 * alphas)
    alpha_axis = _np.arange(f.alpha_steps // 2, 5 * f.alpha_steps + 1) / f.alpha_steps
    return {'fig1_alpha': _pd.DataFrame({'beta': betas, 'alpha': alphas}),
            'fig1_rho': _pd.DataFrame({'beta': betas, 'rho': rhos}),
            'fig2_rates': _pd.DataFrame({'alpha': alpha_axis,
                                         'rate_l1': 2.0 / (1.0 + 2.0 * alpha_axis),
                                         'rate_l2': 1.0 / alpha_axis})}


def cmd_figures(config: _ExperimentConfig) -> CommandResult:
    """Figure curves as CSV plus SVG renderings."""
    out = config.out_dir
    tables = figure_tables(config)
    files = [_inflab.io.write_csv(table, out / f"{name}.csv") for name, table in tables.items()]
    a, r, rates = tables['fig1_alpha'], tables['fig1_rho'], tables['fig2_rates']
    files.append(_inflab.io.line_plot([_inflab.io.Series("alpha", a['beta'], a['alpha']),
                                       _inflab.io.Series("rho", r['beta'], r['rho'])],
                                      out / 'fig1.svg', title="log-concavity and contraction vs beta",
                                      xlabel="beta", ylabel="value", marked_points=[(0.0, 0.5), (0.0, 1.0)]))
    files.append(_inflab.io.line_plot([_inflab.io.Series("2/(1+2 alpha)", rates['alpha'], rates['rate_l1']),
                                       _inflab.io.Series("1/alpha", rates['alpha'], rates['rate_l2'])],
                                      out / 'fig2.svg', title="contraction factors vs alpha",
                                      xlabel="alpha", ylabel="rate",
                                      marked_points=[(0.5, 1.0), (0.5, 2.0), (1.0, 1.0)]))
    summary = {'alpha(0)': float(a['alpha'].iloc[0]), 'rho(0)': float(r['rho'].iloc[0]),
               'curves_cross': bool((rates['rate_l1'] >= rates['rate_l2']).any())}
    return CommandResult(command='figures', files=files, summary=summary)


def cmd_lowerbound(config: _ExperimentConfig) -> CommandResult:
    """Gaussian-convolution lower bound on the (x0, delta) lattice: lower_bound.csv."""
    lb = config.lowerbound
    potential = config.selection_spec()
    grid = _inflab.grid.Grid1D.symmetric(lb.half_width, lb.n)
    gamma = lb.gamma if lb.gamma is not None else potential.certify(grid)
    samples = _inflab.analysis.lower_bound_lattice(gamma, lb.deltas, lb.offsets)
    tables = [_inflab.analysis.lower_bound_check(potential, gamma, samples, grid=grid)]
    trunc = config.truncation_spec()
    if trunc is not None:
        tables.append(_inflab.analysis.lower_bound_check(potential, gamma, samples, grid=grid, trunc=trunc))
    table = _pd.concat(tables, ignore_index=True)
    files = [_inflab.io.write_csv(table, config.out_dir / 'lower_bound.csv')]
    summary = {'gamma': gamma, 'samples': len(table), 'min_lhs_over_rhs': float((table['lhs'] / table['rhs']).min())}
    _fail_on(table[~table['pass']], "lower bound")
    return CommandResult(command='lowerbound', files=files, summary=summary)


def cmd_linear(config: _ExperimentConfig) -> CommandResult:
    """Single-parent operator run: linear_trace.csv. Fails if the empirical kappa is not below 1."""
    m, beta, alpha, grid = _setup(config)
    f0 = _inflab.grid.LogDensity.gaussian(grid, 0.0, 1.0 / alpha)
    reference = _inflab.eigen.solve_linear_eigen(m, f0, tol=config.run.tol, max_iter=config.run.max_iter)
    start = _inflab.analysis.make_admissible_initial(reference.profile, config.initial.epsilon, config.initial.mode)
    trace = _inflab.analysis.linear_operator_run(m, start, reference, config.run.generations)
    files = [_inflab.io.write_csv(trace.table, config.out_dir / 'linear_trace.csv')]
    summary = {'lambda': reference.lambda_, 'kappa_hat': trace.kappa_hat, 'kappa_kernel': trace.kappa_kernel}
    notes = ["fixed point"] if not _np.isfinite(trace.kappa_hat) else []
    if _np.isfinite(trace.kappa_hat):
        table = trace.table
        _fail_on(table[table['ratio'] >= 1.0], "linear contraction")
    return CommandResult(command='linear', files=files, summary=summary, notes=notes)


COMMANDS = {
    'eigen': cmd_eigen,
    'contract': cmd_contract,
    'transport': cmd_transport,
    'duality': cmd_duality,
    'figures': cmd_figures,
    'lowerbound': cmd_lowerbound,
    'linear': cmd_linear,
}

# -*- coding: utf-8 -*-
import numpy as np
import pandas as pd
import pytest

import inflab
from inflab.cli import EXIT_ERROR, EXIT_OK, EXIT_VIOLATION, ExperimentConfig, main, parse_config

SMALL_GRID = "grid.half_width = 10\ngrid.n = 401\n"


def test_parse_config():
    config = parse_config("""
# quartic selection
selection.kind = "even_polynomial"   # trailing comment
selection.coeffs = [0, 0, 0.5, 0, 0.25]
selection.beta = null

grid.n = 1025
run.tol = 1
transport.x_pairs = [[0, 1]]
truncation.R = 6
""")
    assert config.selection.kind == 'even_polynomial'
    assert config.selection.beta is None
    assert config.grid.n == 1025
    assert isinstance(config.run.tol, float) and config.run.tol == 1.0
    assert config.x_pairs() == [(0.0, 1.0)]
    assert config.truncation_spec().R == 6
    assert config.selection_spec().kind == inflab.model.SelectionKind.EVEN_POLYNOMIAL
    assert ExperimentConfig().truncation_spec() is None


@pytest.mark.parametrize("text, message", [
    ("grid.nodes = 3", "unknown config key 'grid.nodes'"),
    ("mesh.n = 3", "no such section"),
    ("grid.n 3", "line 1: expected 'section.key = value'"),
    ("n = 3", "not of the form 'section.key'"),
    ("grid.n = [3", "not valid JSON"),
    ("grid.n = 3.5", "expected an integer"),
    ("run.tol = \"small\"", "expected a number"),
    ("transport.x_pairs = 1", "expected a list"),
    ("sweep.sequential = 1", "expected true or false"),
])
def test_parse_config_errors(text, message):
    with pytest.raises(ValueError, match=message):
        parse_config(text)


def test_unknown_selection_kind():
    with pytest.raises(ValueError, match="Unknown selection.kind"):
        parse_config('selection.kind = "cubic"').selection_spec()
    with pytest.raises(ValueError, match="selection.table is required"):
        parse_config('selection.kind = "tabulated"').selection_spec()


def test_tabulated_selection_from_csv(tmp_path):
    x = np.linspace(-12.0, 12.0, 241)
    pd.DataFrame({'x': x, 'm': 0.5 * x ** 2}).to_csv(tmp_path / 'm.csv', index=False)
    config = parse_config(f'selection.kind = "tabulated"\nselection.table = "{(tmp_path / "m.csv").as_posix()}"\n')
    m = config.selection_spec()
    grid = inflab.grid.Grid1D.symmetric(10.0, 1001)
    assert np.allclose(m.on_grid(grid), 0.5 * grid.nodes ** 2, atol=1e-8)


def test_figure_tables():
    tables = inflab.cli.figure_tables(ExperimentConfig())
    assert tables['fig1_alpha']['alpha'].iloc[0] == 0.5
    assert tables['fig1_rho']['rho'].iloc[0] == 1.0
    assert np.all(np.diff(tables['fig1_rho']['rho']) < 0)
    rates = tables['fig2_rates']
    assert rates['alpha'].iloc[0] == 0.5 and rates['alpha'].iloc[-1] == 5.0
    assert np.all(rates['rate_l1'] < rates['rate_l2'])


def test_main_figures(tmp_path, capsys):
    assert main(['figures', '--out', str(tmp_path)]) == EXIT_OK
    names = {p.name for p in tmp_path.iterdir()}
    assert {'fig1_alpha.csv', 'fig1_rho.csv', 'fig2_rates.csv', 'fig1.svg', 'fig2.svg'} <= names
    assert "PASS figures" in capsys.readouterr().out


def test_main_lowerbound(tmp_path):
    assert main(['lowerbound', '--out', str(tmp_path), '-q']) == EXIT_OK
    table = pd.read_csv(tmp_path / 'lower_bound.csv')
    assert len(table) == 20
    assert table['pass'].all()


def test_main_eigen_small_grid(tmp_path, capsys):
    config = tmp_path / 'small.cfg'
    config.write_text(SMALL_GRID + "run.tol = 1e-9\n")
    assert main(['eigen', '--config', str(config), '--out', str(tmp_path / 'out')]) == EXIT_OK
    trace = pd.read_csv(tmp_path / 'out' / 'eigen.csv')
    assert list(trace.columns) == inflab.eigen.TRACE_COLUMNS
    assert abs(trace['lambda_n'].iloc[-1] - inflab.eigen.quadratic_lambda_oracle(1.0)) < 1e-4
    profile = pd.read_csv(tmp_path / 'out' / 'profile.csv')
    assert list(profile.columns) == ['x', 'V', 'F'] and len(profile) == 401
    assert "lambda_oracle" in capsys.readouterr().out


def test_main_input_errors(tmp_path, capsys):
    bad = tmp_path / 'bad.cfg'
    bad.write_text("grid.nodes = 3\n")
    assert main(['figures', '--config', str(bad), '--out', str(tmp_path)]) == EXIT_ERROR
    assert "unknown config key" in capsys.readouterr().err
    assert main(['duality', '--seed=-1', '--out', str(tmp_path)]) == EXIT_ERROR
    assert main(['figures', '--config', str(tmp_path / 'missing.cfg')]) == EXIT_ERROR
    assert not any(p.suffix == '.csv' for p in tmp_path.iterdir())


def test_main_no_convergence(tmp_path, capsys):
    config = tmp_path / 'short.cfg'
    config.write_text(SMALL_GRID + "run.max_iter = 1\n")
    assert main(['eigen', '--config', str(config), '--out', str(tmp_path)]) == EXIT_ERROR
    assert "no convergence" in capsys.readouterr().err


def test_main_claim_violation(tmp_path, capsys, monkeypatch):
    def failing(config):
        """Always fails."""
        rows = pd.DataFrame({'n': [3], 'ratio': [0.9]})
        raise inflab.exceptions.ClaimViolation("per-step ratio: 1 failing row(s).", rows=rows)

    monkeypatch.setitem(inflab.cli.COMMANDS, 'contract', failing)
    assert main(['contract', '--out', str(tmp_path)]) == EXIT_VIOLATION
    out = capsys.readouterr().out
    assert "FAIL contract" in out
    assert "0.9" in out


def test_selection_alias_keys(tmp_path, capsys):
    config = parse_config('m.kind = "quadratic"\nm.beta = 1.0\nm.coeffs = [0, 0, 0.5, 0, 0.25]\ninitial.eps = 0\n')
    assert config.selection.kind == 'quadratic'
    assert config.selection.beta == 1.0
    assert config.selection.coeffs == [0, 0, 0.5, 0, 0.25]
    assert config.initial.epsilon == 0.0
    with pytest.raises(ValueError, match="unknown config key 'm.scale'"):
        parse_config("m.scale = 2")

    path = tmp_path / 'm.cfg'
    path.write_text('m.kind = "quadratic"\nm.beta = 1.0\nm.coeffs = [0, 0, 0.5, 0, 0.25]\n'
                    + SMALL_GRID + "run.tol = 1e-9\n")
    assert main(['eigen', '--config', str(path), '--out', str(tmp_path / 'out')]) == EXIT_OK
    trace = pd.read_csv(tmp_path / 'out' / 'eigen.csv')
    assert abs(trace['lambda_n'].iloc[-1] - inflab.eigen.quadratic_lambda_oracle(1.0)) < 1e-4
    assert "lambda_oracle" in capsys.readouterr().out


SMALL_RUN = SMALL_GRID + """run.tol = 1e-11
run.generations = 8
transport.x_pairs = [[0, 1]]
transport.quantization = 12
transport.displacement_quantization = 8
transport.kernel_nodes = 81
figures.beta_points = 11
duality.n_pairs = 10
duality.max_size = 4
duality.quantization = 8
"""

SMALL_RUN_FILES = {
    'contract': ['trace.csv', 'cauchy.csv', 'rates.txt'],
    'transport': ['kernel_contraction.csv', 'displacement.csv', 'rates_l1_l2.csv'],
    'duality': ['duality.csv', 'dirac.csv', 'log_estimate.csv'],
    'linear': ['linear_trace.csv'],
}


@pytest.mark.parametrize("command", [
    'contract',
    pytest.param('transport', marks=pytest.mark.slow),
    pytest.param('duality', marks=pytest.mark.slow),
    'linear',
])
def test_main_small_run(command, tmp_path, capsys):
    config = tmp_path / 'small.cfg'
    config.write_text(SMALL_RUN)
    out = tmp_path / 'out'
    assert main([command, '--config', str(config), '--out', str(out), '-q']) == EXIT_OK
    for name in SMALL_RUN_FILES[command]:
        assert (out / name).is_file(), name
    assert not (out / 'violation.json').exists()
    assert f"PASS {command}" in capsys.readouterr().out


def test_main_contract_at_fixed_point(tmp_path, capsys):
    config = tmp_path / 'fixed.cfg'
    config.write_text(SMALL_RUN + "initial.eps = 0\n")
    assert main(['contract', '--config', str(config), '--out', str(tmp_path), '-q']) == EXIT_OK
    assert "NOTE: fixed point" in capsys.readouterr().out
    assert "decay outside fit window" in (tmp_path / 'rates.txt').read_text()
    trace = pd.read_csv(tmp_path / 'trace.csv')
    assert trace['ratio'].isna().all()


def test_main_misdeclared_beta(tmp_path, capsys):
    config = tmp_path / 'quartic.cfg'
    config.write_text('selection.kind = "even_polynomial"\nselection.coeffs = [0, 0, 0.5, 0, 0.25]\n'
                      'selection.beta = 2.0\n' + SMALL_RUN)
    assert main(['contract', '--config', str(config), '--out', str(tmp_path)]) == EXIT_ERROR
    assert "H1 violated: declared beta = 2.0" in capsys.readouterr().err
    assert not any(tmp_path.glob('*.csv'))


@pytest.mark.slow
def test_main_same_seed_same_files(tmp_path):
    config = tmp_path / 'small.cfg'
    config.write_text(SMALL_RUN)
    for run in ('a', 'b'):
        assert main(['duality', '--config', str(config), '--seed', '7', '--out', str(tmp_path / run), '-q']) \
            == EXIT_OK
    names = sorted(p.name for p in (tmp_path / 'a').glob('*.csv'))
    assert names == ['dirac.csv', 'duality.csv', 'log_estimate.csv']
    for name in names:
        assert (tmp_path / 'a' / name).read_bytes() == (tmp_path / 'b' / name).read_bytes(), name


def test_main_contract_deterministic(tmp_path):
    config = tmp_path / 'small.cfg'
    config.write_text(SMALL_RUN)
    for run in ('a', 'b'):
        assert main(['contract', '--config', str(config), '--seed', '7', '--out', str(tmp_path / run), '-q']) \
            == EXIT_OK
    for name in ('trace.csv', 'cauchy.csv'):
        assert (tmp_path / 'a' / name).read_bytes() == (tmp_path / 'b' / name).read_bytes(), name

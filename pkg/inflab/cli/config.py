# -*- coding: utf-8 -*-
###############################################################################
# Copyright (c), The inflab developers. All rights reserved.                  #
# This file is part of the inflab package.                                    #
# (infinitesimal model laboratory)                                            #
#                                                                             #
# For further information on the license, see the LICENSE.txt file.           #
#                                                                             #
###############################################################################
"""inflab: cli: experiment configuration.

Config files hold one ``section.key = value`` per line. ``#`` starts a comment, blank lines are ignored, the
value is JSON. Example::

    selection.kind = "even_polynomial"
    selection.coeffs = [0, 0, 0.5, 0, 0.25]
    transport.x_pairs = [[0, 1], [-2, 2]]

The selection section may also be written as ``m`` (``m.kind``, ``m.beta``, ``m.coeffs``) and
``initial.eps`` stands for ``initial.epsilon``. See :py:data:`~.SECTION_ALIASES` and :py:data:`~.KEY_ALIASES`.
"""

import dataclasses as _dc
import json as _json
import pathlib as _pathlib
import typing as _typing

import numpy as _np
import pandas as _pd
from masci_tools.util import python_util as _masci_python_util

import inflab as _inflab

SECTION_ALIASES = {
    'm': 'selection',
}
"""Alternative section names, alias to section."""

KEY_ALIASES = {
    ('initial', 'eps'): 'epsilon',
}
"""Alternative field names, (section, alias) to field."""


@_dc.dataclass
class GridSettings:
    """
    :param half_width: grid [-L, L]. None: max(10, 8/sqrt(alpha*)).
    :param n: number of nodes, odd.
    """
    half_width: _typing.Optional[float] = None
    n: int = 2049


@_dc.dataclass
class SelectionSettings:
    """
    :param kind: 'quadratic', 'even_polynomial' or 'tabulated'.
    :param beta: convexity modulus. Required for quadratic, optional otherwise (then certified on the grid).
    :param coeffs: power-basis coefficients for even_polynomial.
    :param table: CSV file with columns x, m on a uniform grid, for tabulated.
    """
    kind: str = 'quadratic'
    beta: _typing.Optional[float] = 1.0
    coeffs: _typing.List[float] = _masci_python_util.dataclass_default_field([])
    table: _typing.Optional[str] = None


@_dc.dataclass
class InitialSettings:
    """
    :param mode: 'sine' or 'tanh-shift'.
    :param epsilon: perturbation size.
    """
    mode: str = 'sine'
    epsilon: float = 0.2


@_dc.dataclass
class RunSettings:
    """
    :param generations: generations of contraction and linear runs.
    :param tol: eigen solver tolerance.
    :param max_iter: eigen solver iteration budget.
    :param ratio_slack: grid slack on per-step contraction ratios.
    """
    generations: int = 60
    tol: float = 1e-10
    max_iter: int = 400
    ratio_slack: float = 1e-3


@_dc.dataclass
class TransportSettings:
    """
    :param quantization: cells per axis for the bottleneck contraction check.
    :param displacement_quantization: cells per axis for W_{2,2} plans, at most 20.
    :param x_pairs: offspring trait pairs.
    :param kernel_half_width: kernel grid [-L, L]^2.
    :param kernel_nodes: kernel nodes per axis.
    """
    quantization: int = 32
    displacement_quantization: int = 16
    x_pairs: _typing.List[_typing.List[float]] = _masci_python_util.dataclass_default_field([[0.0, 1.0],
                                                                                             [-2.0, 2.0]])
    kernel_half_width: float = 8.0
    kernel_nodes: int = 201


@_dc.dataclass
class TruncationSettings:
    """
    :param R: truncation half-width, a grid node. None: full line.
    :param ladder: radii for the truncation ladder of the eigen command.
    """
    R: _typing.Optional[float] = None
    ladder: _typing.List[float] = _masci_python_util.dataclass_default_field([])


@_dc.dataclass
class DualitySettings:
    """
    :param seed: seed of the randomized property run.
    :param n_pairs: random measure pairs.
    :param max_size: largest random support.
    :param epsilon: u0 = exp(epsilon sin x) for the log-Lipschitz estimate.
    :param quantization: cells per axis for the log-Lipschitz estimate.
    """
    seed: int = 0
    n_pairs: int = 200
    max_size: int = 6
    epsilon: float = 0.1
    quantization: int = 16


@_dc.dataclass
class LowerBoundSettings:
    """
    :param gamma: convexity modulus of V. None: certified on the grid.
    :param deltas: delta values of the lattice.
    :param offsets: x0 minus its threshold, per delta.
    :param half_width: quadrature grid [-L, L].
    :param n: quadrature nodes.
    """
    gamma: _typing.Optional[float] = None
    deltas: _typing.List[float] = _masci_python_util.dataclass_default_field([0.25, 0.5, 0.75, 1.0])
    offsets: _typing.List[float] = _masci_python_util.dataclass_default_field([0.1, 0.5, 1.0, 2.0, 3.0])
    half_width: float = 10.0
    n: int = 2001


@_dc.dataclass
class FigureSettings:
    """
    :param beta_max: right end of the beta axis.
    :param beta_points: samples on [0, beta_max].
    :param alpha_steps: alpha axis is k / alpha_steps for alpha in [1/2, 5].
    """
    beta_max: float = 3.0
    beta_points: int = 301
    alpha_steps: int = 80


@_dc.dataclass
class OutputSettings:
    """
    :param dir: output directory.
    """
    dir: str = 'out'


@_dc.dataclass
class ExperimentConfig:
    """All settings of one experiment. Sections are the config-file prefixes."""
    grid: GridSettings = _masci_python_util.dataclass_default_field(GridSettings())
    selection: SelectionSettings = _masci_python_util.dataclass_default_field(SelectionSettings())
    initial: InitialSettings = _masci_python_util.dataclass_default_field(InitialSettings())
    run: RunSettings = _masci_python_util.dataclass_default_field(RunSettings())
    transport: TransportSettings = _masci_python_util.dataclass_default_field(TransportSettings())
    truncation: TruncationSettings = _masci_python_util.dataclass_default_field(TruncationSettings())
    duality: DualitySettings = _masci_python_util.dataclass_default_field(DualitySettings())
    lowerbound: LowerBoundSettings = _masci_python_util.dataclass_default_field(LowerBoundSettings())
    figures: FigureSettings = _masci_python_util.dataclass_default_field(FigureSettings())
    output: OutputSettings = _masci_python_util.dataclass_default_field(OutputSettings())
    sweep: '_inflab.submit.SweepControllerSettings' = _masci_python_util.dataclass_default_field(
        _inflab.submit.SweepControllerSettings())

    @property
    def out_dir(self) -> _pathlib.Path:
        return _pathlib.Path(self.output.dir)

    def selection_spec(self) -> '_inflab.model.SelectionSpec':
        s = self.selection
        if s.kind == 'quadratic':
            return _inflab.model.SelectionSpec.quadratic(s.beta)
        if s.kind == 'even_polynomial':
            return _inflab.model.SelectionSpec.even_polynomial(s.coeffs, beta=s.beta)
        if s.kind == 'tabulated':
            if not s.table:
                raise _inflab.logging.log(e=ValueError, o=self, f=self.selection_spec,
                                          m="selection.table is required for kind 'tabulated'.")
            return _inflab.model.SelectionSpec.tabulated(_read_table(s.table), beta=s.beta)
        raise _inflab.logging.log(e=ValueError, o=self, f=self.selection_spec,
                                  m=f"Unknown selection.kind '{s.kind}'.")

    def truncation_spec(self) -> _typing.Optional['_inflab.model.TruncationSpec']:
        R = self.truncation.R
        return _inflab.model.TruncationSpec(R=R) if R is not None else None

    def grid_for(self, alpha: float) -> '_inflab.grid.Grid1D':
        if self.grid.half_width is None:
            return _inflab.grid.Grid1D.default_for_alpha(alpha, n=self.grid.n)
        return _inflab.grid.Grid1D.symmetric(self.grid.half_width, self.grid.n)

    def kernel_grid(self) -> '_inflab.grid.Grid2D':
        return _inflab.grid.Grid2D.square(
            _inflab.grid.Grid1D.symmetric(self.transport.kernel_half_width, self.transport.kernel_nodes))

    def x_pairs(self) -> _typing.List[_typing.Tuple[float, float]]:
        return [(float(a), float(b)) for a, b in self.transport.x_pairs]

    def controller(self) -> '_inflab.submit.SweepController':
        return _inflab.submit.SweepController(self.sweep)


def _read_table(path: str) -> '_inflab.grid.LogDensity':
    """Tabulated selection from a CSV with columns x and m on a uniform grid."""
    frame = _pd.read_csv(path)
    if not {'x', 'm'} <= set(frame.columns):
        raise _inflab.logging.log(e=ValueError, f=_read_table, m=f"{path}: need columns 'x' and 'm'.")
    x = frame['x'].to_numpy(dtype=float)
    steps = _np.diff(x)
    if x.size < 2 or not _np.allclose(steps, steps[0], rtol=1e-9, atol=0.0):
        raise _inflab.logging.log(e=ValueError, f=_read_table, m=f"{path}: x is not a uniform grid.")
    grid = _inflab.grid.Grid1D(left=float(x[0]), right=float(x[-1]), n=int(x.size))
    return _inflab.grid.LogDensity(grid=grid, v=frame['m'].to_numpy(dtype=float))


def _section_fields(section: _typing.Any) -> _typing.Dict[str, _dc.Field]:
    return {f.name: f for f in _dc.fields(section)}


def _coerce(key: str, current: _typing.Any, value: _typing.Any) -> _typing.Any:
    if isinstance(current, bool) or isinstance(value, bool):
        if not isinstance(value, bool):
            raise _inflab.logging.log(e=ValueError, f=parse_config, m=f"{key}: expected true or false, got {value!r}.")
        return value
    if isinstance(current, list) and not isinstance(value, list):
        raise _inflab.logging.log(e=ValueError, f=parse_config, m=f"{key}: expected a list, got {value!r}.")
    if isinstance(current, int) and not isinstance(value, int):
        raise _inflab.logging.log(e=ValueError, f=parse_config, m=f"{key}: expected an integer, got {value!r}.")
    if isinstance(current, float) and not isinstance(value, (int, float)):
        raise _inflab.logging.log(e=ValueError, f=parse_config, m=f"{key}: expected a number, got {value!r}.")
    if isinstance(current, float):
        return float(value)
    return value


def parse_config(text: str, config: ExperimentConfig = None) -> ExperimentConfig:
    """Apply ``section.key = value`` lines to a config. Aliased sections and keys are resolved first.

    :param text: config file contents.
    :param config: config to update. Default: a fresh :py:class:`~.ExperimentConfig`.
    :raises ValueError: naming the line or key on syntax errors, unknown keys and wrongly typed values.
    """
    config = config if config is not None else ExperimentConfig()
    sections = _section_fields(config)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise _inflab.logging.log(e=ValueError, f=parse_config, m=f"line {lineno}: expected 'section.key = value'.")
        key, value_text = (part.strip() for part in line.split('=', 1))
        if key.count('.') != 1:
            raise _inflab.logging.log(e=ValueError, f=parse_config,
                                      m=f"line {lineno}: key '{key}' is not of the form 'section.key'.")
        section_name, field_name = key.split('.')
        section_name = SECTION_ALIASES.get(section_name, section_name)
        field_name = KEY_ALIASES.get((section_name, field_name), field_name)
        if section_name not in sections:
            raise _inflab.logging.log(e=ValueError, f=parse_config, m=f"unknown config key '{key}': no such section.")
        section = getattr(config, section_name)
        if field_name not in _section_fields(section):
            raise _inflab.logging.log(e=ValueError, f=parse_config, m=f"unknown config key '{key}'.")
        try:
            value = _json.loads(value_text)
        except _json.JSONDecodeError as err:
            raise _inflab.logging.log(e=ValueError, f=parse_config,
                                      m=f"{key}: value {value_text!r} is not valid JSON.") from err
        current = getattr(section, field_name)
        setattr(section, field_name, value if (current is None or value is None) else _coerce(key, current, value))
    return config


def load_config(path: _typing.Union[str, _pathlib.Path]) -> ExperimentConfig:
    return parse_config(_pathlib.Path(path).read_text())

# -*- coding: utf-8 -*-
"""Shared grids and reference eigenpairs, computed once per session."""

import pytest

import inflab


@pytest.fixture(scope="session")
def beta():
    return 1.0


@pytest.fixture(scope="session")
def alpha(beta):
    return inflab.eigen.solve_alpha(beta)


@pytest.fixture(scope="session")
def grid():
    """The acceptance grid [-10, 10] with 2049 nodes."""
    return inflab.grid.Grid1D.symmetric(10.0, 2049)


@pytest.fixture(scope="session")
def node_grid():
    """[-10, 10] with h = 0.01, so every truncation radius with two decimals is a node."""
    return inflab.grid.Grid1D.symmetric(10.0, 2001)


@pytest.fixture(scope="session")
def quadratic(beta):
    return inflab.model.SelectionSpec.quadratic(beta)


@pytest.fixture(scope="session")
def quartic():
    return inflab.model.SelectionSpec.even_polynomial([0.0, 0.0, 0.5, 0.0, 0.25])


@pytest.fixture(scope="session")
def quadratic_eigen(quadratic, alpha, grid):
    f0 = inflab.grid.LogDensity.gaussian(grid, 0.0, 1.0 / alpha)
    return inflab.eigen.solve_eigen(quadratic, f0, tol=1e-11, max_iter=400)


@pytest.fixture(scope="session")
def quartic_eigen(quartic, alpha, grid):
    f0 = inflab.grid.LogDensity.gaussian(grid, 0.0, 1.0 / alpha)
    return inflab.eigen.solve_eigen(quartic, f0, tol=1e-11, max_iter=400)

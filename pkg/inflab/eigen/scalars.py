# -*- coding: utf-8 -*-
###############################################################################
# Copyright (c), The inflab developers. All rights reserved.                  #
# This file is part of the inflab package.                                    #
# (infinitesimal model laboratory)                                            #
#                                                                             #
# For further information on the license, see the LICENSE.txt file.           #
#                                                                             #
###############################################################################
"""inflab: eigen: scalar fixed points of the log-concavity recurrence.

alpha solves alpha = beta + 2 alpha/(1 + 2 alpha), i.e. 2 alpha^2 - (1 + 2 beta) alpha - beta = 0.
"""

import dataclasses as _dc

import numpy as _np

import inflab as _inflab

AGREEMENT_TOL = 1e-13
RESIDUAL_TOL = 1e-12


def _require_positive_beta(beta: float, func) -> None:
    if not beta > 0:
        raise _inflab.logging.log(e=ValueError, f=func, m=f"H1 violated: need beta > 0, got {beta}.")


def alpha_closed_form(beta: float) -> float:
    """(1 + 2 beta + sqrt((1 + 2 beta)^2 + 8 beta))/4. Accepts beta = 0 (value 1/2) for plotting."""
    if beta < 0:
        raise _inflab.logging.log(e=ValueError, f=alpha_closed_form, m=f"Need beta >= 0, got {beta}.")
    b = 1.0 + 2.0 * beta
    return (b + _np.sqrt(b * b + 8.0 * beta)) / 4.0


def _alpha_by_iteration(beta: float, damping: float = 0.5, max_iter: int = 10000) -> float:
    alpha = beta + 1.0
    for _ in range(max_iter):
        target = beta + 2.0 * alpha / (1.0 + 2.0 * alpha)
        new = (1.0 - damping) * alpha + damping * target
        if new == alpha:
            break
        alpha = new
    return alpha


def alpha_residual(alpha: float, beta: float) -> float:
    return abs(alpha - beta - 2.0 * alpha / (1.0 + 2.0 * alpha))


def solve_alpha(beta: float) -> float:
    """Unique root alpha > 1/2 of alpha = beta + 2 alpha/(1 + 2 alpha).

    The closed form is returned after cross-checking against a damped fixed-point iteration.

    :param beta: convexity modulus of the selection, > 0.
    :raises ValueError: 'H1 violated' for beta <= 0.
    """
    _require_positive_beta(beta, solve_alpha)
    alpha = alpha_closed_form(beta)
    iterated = _alpha_by_iteration(beta)
    scale = max(1.0, alpha)
    if abs(alpha - iterated) > AGREEMENT_TOL * scale:
        raise _inflab.logging.log(e=RuntimeError, f=solve_alpha,
                                  m=f"Closed form {alpha!r} and iteration {iterated!r} disagree (beta={beta}).")
    if alpha_residual(alpha, beta) > RESIDUAL_TOL * scale:
        raise _inflab.logging.log(e=RuntimeError, f=solve_alpha,
                                  m=f"Residual {alpha_residual(alpha, beta):.3g} too large (beta={beta}).")
    return alpha


def contraction_factor(beta: float) -> float:
    """rho = 2/(1 + 2 alpha), cross-checked against ((3 + 2 beta) - sqrt((3 + 2 beta)^2 - 8))/2.

    The second form is evaluated as 4/((3 + 2 beta) + sqrt((3 + 2 beta)^2 - 8)), which is the same number
    without the cancellation for large beta.
    """
    _require_positive_beta(beta, contraction_factor)
    rho = 2.0 / (1.0 + 2.0 * solve_alpha(beta))
    c = 3.0 + 2.0 * beta
    other = 4.0 / (c + _np.sqrt(c * c - 8.0))
    if abs(rho - other) > RESIDUAL_TOL:
        raise _inflab.logging.log(e=RuntimeError, f=contraction_factor,
                                  m=f"Contraction factor forms disagree: {rho!r} vs {other!r} (beta={beta}).")
    return rho


def quadratic_sigma2(beta: float) -> float:
    """Eigenfunction variance for m = beta x^2/2: positive root of 1/s = beta + 1/(1 + s/2).

    Root of beta s^2 + (1 + 2 beta) s - 2 = 0 in the form 4/((1 + 2 beta) + sqrt((1 + 2 beta)^2 + 8 beta)).
    """
    _require_positive_beta(beta, quadratic_sigma2)
    b = 1.0 + 2.0 * beta
    sigma2 = 4.0 / (b + _np.sqrt(b * b + 8.0 * beta))
    residual = abs(1.0 / sigma2 - beta - 1.0 / (1.0 + 0.5 * sigma2))
    alpha = solve_alpha(beta)
    if abs(sigma2 - 1.0 / alpha) > RESIDUAL_TOL or residual > RESIDUAL_TOL * max(1.0, alpha):
        raise _inflab.logging.log(e=RuntimeError, f=quadratic_sigma2,
                                  m=f"sigma^2 = {sigma2!r} inconsistent with 1/alpha = {1.0 / alpha!r}.")
    return sigma2


def quadratic_lambda_oracle(beta: float) -> float:
    """Eigenvalue for m = beta x^2/2 by Gaussian integrals.

    With F = N(0, s): the mid-parent law is N(0, s/2), after segregation N(0, v) with v = 1 + s/2,
    and int exp(-beta x^2/2) N(0, v)(x) dx = 1/sqrt(1 + beta v).
    """
    _require_positive_beta(beta, quadratic_lambda_oracle)
    v = 1.0 + 0.5 * quadratic_sigma2(beta)
    return 1.0 / _np.sqrt(1.0 + beta * v)


@_dc.dataclass(frozen=True)
class ScalarFixedPoints:
    """All scalar fixed points for one beta.

    :param beta: convexity modulus of the selection.
    :param alpha: log-concavity modulus of the eigenfunction.
    :param rho: contraction factor 2/(1 + 2 alpha).
    :param sigma2_quadratic: eigenfunction variance for quadratic selection.
    """
    beta: float
    alpha: float
    rho: float
    sigma2_quadratic: float

    @classmethod
    def from_beta(cls, beta: float) -> 'ScalarFixedPoints':
        return cls(beta=beta,
                   alpha=solve_alpha(beta),
                   rho=contraction_factor(beta),
                   sigma2_quadratic=quadratic_sigma2(beta))

    @property
    def residual(self) -> float:
        return alpha_residual(self.alpha, self.beta)

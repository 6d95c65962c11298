"""The power series gamma, alpha, beta in Z[[u]] governing the bivariate skein relation.

gamma is the unique solution with constant term -1 of

    u^2 g^3 - (u^2 + 1) g - 1 = 0,

found one coefficient at a time.  alpha and beta are then

    alpha = u (1 - u^2)^-1 (g - g^-1 - 1),
    beta  = (1 - u^2)^-1 (1 - u^2 g + g^-1),

and they satisfy alpha = -u + beta (alpha + beta u), beta = alpha (alpha + beta u).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .algebra import AlgebraError, Series, series_invert


def _u_series(ints, order):
    return Series.from_ints(ints, order)


def cubic_residual(gamma):
    """u^2 g^3 - (u^2 + 1) g - 1, truncated to the order of ``gamma``."""
    n = gamma.order
    u2 = Series.u_power(2, n)
    return u2 * gamma * gamma * gamma - (u2 + 1) * gamma - 1


@lru_cache(maxsize=None)
def _gamma_coeffs(order):
    coeffs = [-1]
    for k in range(1, order):
        # with g = g_<k + a_k u^k the u^k coefficient of the cubic is r_k - a_k,
        # because the derivative of the cubic at g = -1 has constant term -1
        trial = _u_series(coeffs + [0], k + 1)
        r_k = cubic_residual(trial)[k].constant_term()
        coeffs.append(r_k)
    return tuple(coeffs)


def gamma_series(order):
    if order < 1:
        raise ValueError("order must be positive")
    return _u_series(_gamma_coeffs(order), order)


def _inv_one_minus_u2(order):
    s = Series.constant(1, order) - Series.u_power(2, order)
    inv = series_invert(s)
    if inv * s != Series.constant(1, order):
        raise AlgebraError("(1 - u^2) inverse failed to multiply back to 1")
    return inv


def alpha_beta_series(order):
    if order < 2:
        raise ValueError("order must be at least 2")
    g = gamma_series(order)
    g_inv = series_invert(g)
    u = Series.u_power(1, order)
    u2 = Series.u_power(2, order)
    w = _inv_one_minus_u2(order)
    alpha = u * w * (g - g_inv - 1)
    beta = w * (1 - u2 * g + g_inv)
    return alpha, beta


def defining_residuals(alpha, beta):
    """Residuals of alpha = -u + beta(alpha + beta u) and beta = alpha(alpha + beta u)."""
    u = Series.u_power(1, alpha.order)
    common = alpha + beta * u
    r1 = alpha - (-u + beta * common)
    r2 = beta - alpha * common
    return r1, r2


@dataclass
class SeriesReport:
    order: int
    gamma: Series
    alpha: Series
    beta: Series
    cubic: Series
    residual_alpha: Series
    residual_beta: Series
    failures: list = field(default_factory=list)

    @property
    def passed(self):
        return not self.failures


def verify_defining_equations(order, alpha=None, beta=None):
    gamma = gamma_series(order)
    if alpha is None or beta is None:
        a, b = alpha_beta_series(order)
        alpha = a if alpha is None else alpha
        beta = b if beta is None else beta
    cubic = cubic_residual(gamma)
    r1, r2 = defining_residuals(alpha, beta)
    failures = []
    if not cubic.is_zero():
        failures.append(f"cubic residual {cubic}")
    if not r1.is_zero():
        failures.append(f"alpha equation residual {r1}")
    if not r2.is_zero():
        failures.append(f"beta equation residual {r2}")
    if alpha.ints()[:2] != [0, -1]:
        failures.append("alpha is not -u mod u^2")
    if beta.ints()[:2] != [0, 0]:
        failures.append("beta is not 0 mod u^2")
    return SeriesReport(order, gamma, alpha, beta, cubic, r1, r2, failures)

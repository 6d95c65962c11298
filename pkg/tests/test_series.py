import pytest

from higher_skein.algebra import Series, series_invert
from higher_skein.series import (
    alpha_beta_series,
    cubic_residual,
    defining_residuals,
    gamma_series,
    verify_defining_equations,
)


def geometric_oracle(order):
    # alpha = -u/(1-u^2), beta = u^2/(1-u^2) expanded by hand
    alpha = [-1 if k % 2 else 0 for k in range(order)]
    beta = [1 if k and k % 2 == 0 else 0 for k in range(order)]
    return alpha, beta


def test_gamma_is_minus_one():
    g = gamma_series(16)
    assert g.ints() == [-1] + [0] * 15
    assert cubic_residual(g).is_zero()
    assert all(c == 0 for c in g.ints()[1::2])


@pytest.mark.parametrize("order", [2, 5, 8, 16])
def test_alpha_beta_closed_forms(order):
    alpha, beta = alpha_beta_series(order)
    a, b = geometric_oracle(order)
    assert alpha.ints() == a and beta.ints() == b


def test_alpha_beta_at_eight():
    alpha, beta = alpha_beta_series(8)
    assert str(alpha) == "-u - u^3 - u^5 - u^7 + O(u^8)"
    assert str(beta) == "u^2 + u^4 + u^6 + O(u^8)"
    assert str(gamma_series(8)) == "-1 + O(u^8)"
    u = Series.u_power(1, 8)
    assert alpha + beta * u == -u


@pytest.mark.parametrize("order", [2, 12, 16])
def test_defining_equations(order):
    report = verify_defining_equations(order)
    assert report.passed, report.failures


def test_order_two():
    alpha, beta = alpha_beta_series(2)
    assert alpha.ints() == [0, -1] and beta.ints() == [0, 0]


def test_perturbed_beta_is_reported():
    alpha, beta = alpha_beta_series(12)
    bad = verify_defining_equations(12, beta=beta + Series.u_power(2, 12))
    assert not bad.passed
    r1, r2 = defining_residuals(alpha, beta + Series.u_power(2, 12))
    assert not (r1.is_zero() and r2.is_zero())


@pytest.mark.parametrize("k", range(12))
def test_gamma_has_no_slack(k):
    ints = gamma_series(12).ints()
    ints[k] += 1
    assert not cubic_residual(Series.from_ints(ints, 12)).is_zero()


def test_unlink_series_identity():
    alpha, beta = alpha_beta_series(16)
    u = Series.u_power(1, 16)
    assert -(alpha * series_invert(beta + 1)) == u


def test_integer_coefficients():
    alpha, beta = alpha_beta_series(16)
    for s in (alpha, beta, gamma_series(16)):
        assert all(isinstance(c, int) for c in s.ints())


def test_small_order_rejected():
    with pytest.raises(ValueError):
        alpha_beta_series(1)

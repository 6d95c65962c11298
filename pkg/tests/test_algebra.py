from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from higher_skein.algebra import (
    AlgebraError,
    H,
    LaurentPoly,
    Series,
    TwoVarLaurent,
    eval_twovar_at_series,
    exact_factorial_div,
    laurent_derivative,
    laurent_mul,
    parse_laurent,
    series_invert,
    series_sqrt_inv,
    taylor_shift,
)

N = 8


def lp(d):
    return LaurentPoly.from_dict(d)


laurents = st.builds(
    lambda cs, off: LaurentPoly(cs, off),
    st.lists(st.integers(-20, 20), max_size=5),
    st.integers(-3, 3),
)


def series_with(c0):
    return st.lists(st.integers(-5, 5), min_size=N - 1, max_size=N - 1).map(
        lambda cs: Series.from_ints([c0] + cs, N)
    )


def test_mul_examples():
    assert laurent_mul(H, H ** -1) == 1
    assert laurent_mul(lp({0: 1, 2: 1}), LaurentPoly.constant(1)) == lp({0: 1, 2: 1})
    assert (H + H ** -1) ** 2 == lp({-2: 1, 0: 2, 2: 1})


def test_mul_offsets_add():
    a, b = lp({-2: 3, 1: 1}), lp({4: -1})
    assert (a * b).offset == a.offset + b.offset


def test_derivative_examples():
    assert laurent_derivative(H ** 2) == 2 * H
    assert laurent_derivative(LaurentPoly.constant(5)).is_zero()
    assert laurent_derivative(H ** -1) == -(H ** -2)


def test_taylor_shift_examples():
    p = lp({0: 1, 2: 1})
    assert taylor_shift(p, 1) == [2, 2, 1]
    assert taylor_shift(p, -1) == [2, -2, 1]
    assert taylor_shift(H, 0) == [0, 1]


def test_exact_factorial_division():
    assert exact_factorial_div(lp({0: 6, 1: 12}), 3) == lp({0: 1, 1: 2})
    with pytest.raises(AlgebraError):
        exact_factorial_div(lp({0: 5}), 2)


def test_series_invert_examples():
    geo = series_invert(Series.from_ints([1, -1], N))
    assert geo.ints() == [1] * N
    assert series_invert(Series.constant(1, N)) == Series.constant(1, N)
    s = Series([1, H], N)
    inv = series_invert(s)
    assert inv == Series([(-H) ** k for k in range(N)], N)
    assert s * inv == Series.constant(1, N)


def test_series_invert_needs_unit():
    with pytest.raises(AlgebraError):
        series_invert(Series.from_ints([2, 1], N))


def test_sqrt_inv_examples():
    assert series_sqrt_inv(Series.constant(1, N)) == Series.constant(1, N)
    r = series_sqrt_inv(Series.from_ints([1, 1], N))
    assert [r[k].constant_term() for k in range(3)] == [1, Fraction(-1, 2), Fraction(3, 8)]
    sq = Series.from_ints([1, 2, 1], N)
    assert series_sqrt_inv(sq).ints() == [(-1) ** k for k in range(N)]
    with pytest.raises(AlgebraError):
        series_sqrt_inv(Series.from_ints([2], N))


def test_eval_twovar_examples():
    x = Series.from_ints([1, 1], N)
    one = Series.constant(1, N)
    assert eval_twovar_at_series(TwoVarLaurent.monomial(1, 0), x, one) == x
    unit = TwoVarLaurent.monomial(1, 0) * TwoVarLaurent.monomial(-1, 0)
    assert eval_twovar_at_series(unit, x, one) == one
    got = eval_twovar_at_series(TwoVarLaurent.monomial(-2, 0), x, one)
    assert got.ints()[:4] == [1, -2, 3, -4]


def test_order_mismatch():
    with pytest.raises(AlgebraError):
        Series.constant(1, 4) + Series.constant(1, 5)


def test_rendering():
    assert str(lp({0: 1, 2: 1})) == "1 + h^2"
    assert str(2 * H) == "2*h"
    assert str(-(H ** -1)) == "-h^-1"
    assert str(LaurentPoly()) == "0"
    assert str(Series.from_ints([0, -1, 0, -1], 4)) == "-u - u^3 + O(u^4)"
    assert str(Series([1, 0, lp({0: 1, 2: 1})], 3)) == "1 + (1 + h^2)*u^2 + O(u^3)"


@given(laurents)
def test_render_parse_roundtrip(p):
    assert parse_laurent(str(p)) == p


@given(laurents, laurents, laurents)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a - a == 0


@given(laurents, laurents)
def test_leibniz(a, b):
    assert (a * b).derivative() == a.derivative() * b + a * b.derivative()


@given(st.lists(st.integers(-9, 9), max_size=6), st.sampled_from([1, -1, 2]))
def test_taylor_shift_reexpands(cs, eps):
    p = LaurentPoly(cs)
    if p.is_zero():
        return
    coeffs = taylor_shift(p, eps)
    back = sum((c * (H - eps) ** m for m, c in enumerate(coeffs)), LaurentPoly())
    assert back == p


@settings(max_examples=50)
@given(series_with(1))
def test_invert_roundtrip(s):
    assert s * series_invert(s) == Series.constant(1, N)


@settings(max_examples=50)
@given(series_with(1))
def test_sqrt_inv_roundtrip(s):
    r = series_sqrt_inv(s)
    assert r * r * s == Series.constant(1, N)

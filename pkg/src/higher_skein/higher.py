"""The higher Conway invariants nabla_{l,m} and the checks built on them.

``nabla_{l,0}`` is read off the series P: the coefficient of u^l in P(L) is
``(-h)^l nabla_{l,0}(L)``.  The rest follow from

    nabla_{l,m} = h^-l / m! * (h^l nabla_{l,0})^(m).

This formula is not Z[h]-linear, so on a combination of links it is applied
link by link and the results are recombined with the coefficients.
"""

from __future__ import annotations

import itertools
from math import comb

from .algebra import (
    H,
    ONE,
    AlgebraError,
    LaurentPoly,
    Series,
    eval_twovar_at_series,
    exact_factorial_div,
    series_sqrt_inv,
    taylor_shift,
)
from .diagram import (
    differentiate_combination,
    make_G,
    negative_resolution,
    resolve,
)
from .report import CheckReport
from .skein import _HOMFLY_LOOP, default_context, homfly_scale

GUARD = 2


class WindowError(ValueError):
    """A requested index would read u-coefficients past the truncation."""


def _ctx(ctx):
    return ctx or default_context()


def _minus_h_power(k):
    return LaurentPoly.monomial(k, (-1) ** (k % 2))


def _check_l(l, ctx):
    if l < 0:
        raise WindowError("l must be nonnegative")
    if l >= ctx.order:
        raise WindowError(f"l={l} needs truncation order above {l}, have {ctx.order}")


def nabla_l0(d, l, ctx=None):
    ctx = _ctx(ctx)
    _check_l(l, ctx)
    return ctx.p_series(d)[l] * _minus_h_power(-l)


def nabla_lm(d, l, m, ctx=None):
    if m < 0:
        raise WindowError("m must be nonnegative")
    base = nabla_l0(d, l, ctx)
    if m == 0:
        return base
    a = base.shift(l)
    for _ in range(m):
        a = a.derivative()
    return exact_factorial_div(a, m).shift(-l)


def nabla_lm_combination(comb, l, m, ctx=None):
    total = LaurentPoly()
    for d, c in comb.terms.items():
        total = total + c * nabla_lm(d, l, m, ctx)
    return total


def nabla_table(d, lmax, mmax, ctx=None):
    """{(l, m): nabla_{l,m}(d)} for l <= lmax, m <= mmax."""
    ctx = _ctx(ctx)
    if lmax + mmax + GUARD > ctx.order:
        raise WindowError(f"window lmax + mmax + {GUARD} = {lmax + mmax + GUARD} exceeds order {ctx.order}")
    return {(l, m): nabla_lm(d, l, m, ctx) for l in range(lmax + 1) for m in range(mmax + 1)}


def kronecker_check(lp, mp, ctx=None, lmax=None, mmax=None):
    """nabla_{l,m}(r(G^lp_mp)) against the pattern [l == lp and l + m == mp]."""
    ctx = _ctx(ctx)
    lmax = mp + 1 if lmax is None else lmax
    mmax = mp + 1 if mmax is None else mmax
    lmax = min(lmax, ctx.order - GUARD)
    report = CheckReport(f"kronecker G^{lp}_{mp}")
    comb = resolve(make_G(lp, mp))
    for l in range(lmax + 1):
        for m in range(mmax + 1):
            got = nabla_lm_combination(comb, l, m, ctx)
            want = ONE if (l == lp and l + m == mp) else LaurentPoly()
            report.details.append(((l, m), got))
            if got != want:
                report.fail(f"nabla_{l},{m} = {got}, expected {want}")
    return report


def q_coefficients(d, ctx=None):
    """q_k = sum over k-subsets X of double points of conway(L_X)."""
    ctx = _ctx(ctx)
    sing = d.singular_indices()
    out = []
    for k in range(len(sing) + 1):
        total = LaurentPoly()
        for chosen in itertools.combinations(sing, k):
            total = total + ctx.conway(negative_resolution(d, chosen))
        out.append(total)
    return out


def epsilon_coefficients(d, l, eps, count, ctx=None):
    a = nabla_l0(d, l, ctx).shift(l)
    if not (a.is_polynomial() and a.is_integral()):
        raise AlgebraError(f"h^{l} nabla_{l},0 = {a} is not in Z[h]")
    coeffs = taylor_shift(a, eps) if a else []
    return (list(coeffs) + [0] * count)[:count]


def divisibility_check(d, ctx=None):
    """u^n divides P(r(d)), and the u^n coefficient is (-h)^n q_n."""
    ctx = _ctx(ctx)
    n = len(d.singular_indices())
    report = CheckReport(f"divisibility {d.name or 'diagram'} (n={n})")
    if n + GUARD > ctx.order:
        report.fail(f"order {ctx.order} too small for n={n}")
        return report
    p = ctx.eval_combination("p", resolve(d))
    for k in range(n):
        if p[k]:
            report.fail(f"u^{k} coefficient {p[k]} is nonzero")
    top = _minus_h_power(n) * q_coefficients(d, ctx)[n]
    if p[n] != top:
        report.fail(f"u^{n} coefficient {p[n]} differs from (-h)^n q_n = {top}")
    return report


def integrality_check(d, ctx=None, total_degree=4):
    """h^l nabla_{l,m}(d) lies in Z[h] for l + m <= total_degree."""
    ctx = _ctx(ctx)
    report = CheckReport(f"integrality {d.name or 'diagram'}")
    for l in range(total_degree + 1):
        for m in range(total_degree - l + 1):
            v = nabla_lm(d, l, m, ctx).shift(l)
            if not (v.is_polynomial() and v.is_integral()):
                report.fail(f"h^{l} nabla_{l},{m} = {v}")
    return report


def derivative_check(d, ctx=None, mmax=4):
    """nabla_{0,m} equals the m-th derivative of the Conway polynomial over m!."""
    ctx = _ctx(ctx)
    report = CheckReport(f"derivative formula {d.name or 'diagram'}")
    f = ctx.conway(d)
    for m in range(mmax + 1):
        coeffs = f.poly_coeffs() if f else []
        # falling factorials divided by m! are binomials
        want = LaurentPoly([comb(k, m) * c for k, c in enumerate(coeffs)][m:])
        got = nabla_lm(d, 0, m, ctx)
        if got != want:
            report.fail(f"nabla_0,{m} = {got}, expected {want}")
    return report


def homfly_reparam_check(d, ctx=None):
    """HOMFLY at x = (1 + h alpha)^-1/2, h = h (1 + beta)(1 + h alpha)^-1/2 equals P."""
    ctx = _ctx(ctx)
    n = ctx.order
    one = Series.constant(1, n)
    p_switch = one + ctx.alpha * H
    x = series_sqrt_inv(p_switch)
    h_new = (one + ctx.beta) * H * x
    lhs = eval_twovar_at_series(ctx.homfly(d), x, h_new)
    rhs = ctx.p_series(d)
    report = CheckReport(f"reparametrisation {d.name or 'diagram'}")
    report.details.append((lhs, rhs))
    if lhs != rhs:
        report.fail(f"substituted HOMFLY {lhs} != P {rhs}")
    return report


def _images(comb, ctx):
    return ctx.eval_combination("homfly", comb), ctx.eval_combination("p", comb)


def d_identity_check(t, ctx=None):
    """Images of d(r(G^0_t)) and -t r(G^0_{t-1}) under HOMFLY and P."""
    ctx = _ctx(ctx)
    if t < 1:
        raise ValueError("t must be at least 1")
    report = CheckReport(f"differential t={t}")
    left = differentiate_combination(resolve(make_G(0, t)))
    right = resolve(make_G(0, t - 1)) * (-t)
    for which, a, b in zip(("homfly", "p"), _images(left, ctx), _images(right, ctx)):
        if a != b:
            report.fail(f"{which}: {a} != {b}")
    return report


def curl_reduction_check(l, m, ctx=None):
    """Images of r(G^l_{l+m}) equal (-h u)^l times those of r(G^0_m).

    On HOMFLY values u acts as multiplication by the 2-unlink value.
    """
    ctx = _ctx(ctx)
    report = CheckReport(f"curl reduction l={l} m={m}")
    big = resolve(make_G(l, l + m))
    small = resolve(make_G(0, m))
    hb, pb = _images(big, ctx)
    hs, ps = _images(small, ctx)
    factor = _minus_h_power(l)
    want_p = (ps * factor).mul_u(l)
    want_h = homfly_scale(hs * _HOMFLY_LOOP ** l, factor)
    if pb != want_p:
        report.fail(f"P: {pb} != {want_p}")
    if hb != want_h:
        report.fail(f"HOMFLY: {hb} != {want_h}")
    return report

"""The verification suites behind ``verify --suite``."""

from __future__ import annotations

import random

from . import chord
from .algebra import H, Series, TwoVarLaurent, parse_laurent, series_invert
from .diagram import (
    NEGATIVE,
    POSITIVE,
    add_curl,
    eight_t_closures,
    eight_t_combination,
    make_G,
    smooth_crossing,
    switch_crossing,
)
from .fixtures import classical_fixtures, random_diagrams
from .higher import (
    curl_reduction_check,
    d_identity_check,
    derivative_check,
    divisibility_check,
    epsilon_coefficients,
    homfly_reparam_check,
    integrality_check,
    kronecker_check,
)
from .report import CheckReport
from .series import cubic_residual, gamma_series, verify_defining_equations
from .skein import SkeinContext, default_context

EXPECTED_CONWAY = {
    "unknot": "1",
    "unlink2": "0",
    "unlink3": "0",
    "hopf_pos": "h",
    "hopf_neg": "-h",
    "trefoil": "1 + h^2",
    "figure8": "1 - h^2",
}

_X = TwoVarLaurent.monomial(1, 0)
_X_INV = TwoVarLaurent.monomial(-1, 0)
_H2 = TwoVarLaurent.monomial(0, 1)


def suite_series(order=16, seed=0):
    reports = []
    rep = CheckReport(f"series equations to order {order}")
    result = verify_defining_equations(order)
    for f in result.failures:
        rep.fail(f)
    reports.append(rep)

    rep = CheckReport("closed forms gamma = -1, alpha = -u/(1-u^2), beta = u^2/(1-u^2)")
    if result.gamma.ints() != [-1] + [0] * (order - 1):
        rep.fail(f"gamma = {result.gamma}")
    alpha_want = [-(k % 2) for k in range(order)]
    beta_want = [1 if k >= 2 and k % 2 == 0 else 0 for k in range(order)]
    if result.alpha.ints() != alpha_want:
        rep.fail(f"alpha = {result.alpha}")
    if result.beta.ints() != beta_want:
        rep.fail(f"beta = {result.beta}")
    u = Series.u_power(1, order)
    if result.alpha + result.beta * u != -u:
        rep.fail("alpha + u beta != -u")
    if -(result.alpha * series_invert(result.beta + 1)) != u:
        rep.fail("-alpha / (1 + beta) != u")
    reports.append(rep)

    rep = CheckReport("gamma has no slack")
    rng = random.Random(seed)
    g = gamma_series(order)
    ints = g.ints()
    for k in range(order):
        bumped = list(ints)
        bumped[k] += rng.choice((-2, -1, 1, 2))
        if cubic_residual(Series.from_ints(bumped, order)).is_zero():
            rep.fail(f"changing coefficient {k} keeps the cubic satisfied")
    reports.append(rep)
    return reports


def _triples(count, seed):
    rng = random.Random(seed)
    out = []
    pool = random_diagrams(count * 4, seed=seed, max_crossings=7)
    for d in pool:
        if not d.crossings:
            continue
        out.append((d, rng.randrange(len(d.crossings))))
        if len(out) == count:
            break
    return out


def suite_skein(order=12, seed=0, n_random=50, n_triples=20):
    ctx = default_context(order)
    fixtures = classical_fixtures()
    reports = []

    rep = CheckReport("classical Conway values")
    for name, want in EXPECTED_CONWAY.items():
        got = ctx.conway(fixtures[name])
        if got != parse_laurent(want):
            rep.fail(f"{name}: {got}, expected {want}")
    reports.append(rep)

    rep = CheckReport(f"HOMFLY at x=1 equals Conway (fixtures and {n_random} random diagrams)")
    sample = list(fixtures.values()) + random_diagrams(n_random, seed=seed)
    for d in sample:
        if ctx.homfly(d).at_x_equal_one() != ctx.conway(d):
            rep.fail(f"{d.name or d}: mismatch")
    reports.append(rep)

    rep = CheckReport("u^0 coefficient of P equals Conway")
    for d in sample:
        if ctx.p_series(d)[0] != ctx.conway(d):
            rep.fail(f"{d.name or d}: mismatch")
    reports.append(rep)

    rep = CheckReport(f"skein relations on {n_triples} random (switch, smooth) triples")
    for d, i in _triples(n_triples, seed + 1):
        kind = d.crossings[i].kind
        other = switch_crossing(d, i)
        zero = smooth_crossing(d, i)
        plus, minus = (d, other) if kind == POSITIVE else (other, d)
        hp, hm, h0 = ctx.homfly(plus), ctx.homfly(minus), ctx.homfly(zero)
        if _X * hp - _X_INV * hm != _H2 * h0:
            rep.fail(f"HOMFLY relation fails at crossing {i} of {d}")
        pp, pm, p0 = ctx.p_series(plus), ctx.p_series(minus), ctx.p_series(zero)
        one = Series.constant(1, order)
        if pp != (one + ctx.alpha * H) * pm + (one + ctx.beta) * H * p0:
            rep.fail(f"P relation fails at crossing {i} of {d}")
        c1 = ctx.conway(plus) - ctx.conway(minus) - H * ctx.conway(zero)
        if c1:
            rep.fail(f"Conway relation fails at crossing {i} of {d}")
    reports.append(rep)

    rep = CheckReport("curl invariance")
    for name, d in fixtures.items():
        for kind in (POSITIVE, NEGATIVE):
            c = add_curl(d, kind=kind)
            if (ctx.conway(c), ctx.homfly(c), ctx.p_series(c)) != (ctx.conway(d), ctx.homfly(d), ctx.p_series(d)):
                rep.fail(f"{name}: adding a {kind} curl changed an invariant")
    reports.append(rep)

    rep = CheckReport("memo cache is transparent")
    bare = SkeinContext(order, cache=False)
    for d in list(fixtures.values()) + random_diagrams(5, seed=seed + 2, max_crossings=5):
        if (bare.conway(d), bare.homfly(d), bare.p_series(d)) != (ctx.conway(d), ctx.homfly(d), ctx.p_series(d)):
            rep.fail(f"{d.name or d}: cached and uncached values differ")
    reports.append(rep)
    return reports


def suite_higher(order=12, seed=0, n_random=30):
    ctx = default_context(order)
    fixtures = classical_fixtures()
    reports = []
    for n in range(4):
        for lp in range(n + 1):
            reports.append(kronecker_check(lp, n, ctx))
    for n in range(5):
        for l in range(n + 1):
            reports.append(divisibility_check(make_G(l, n), ctx))
    sample = list(fixtures.values()) + random_diagrams(n_random, seed=seed + 3)
    rep = CheckReport(f"h^l nabla_l,m in Z[h] for l+m <= 4 (fixtures and {n_random} random)")
    for d in sample:
        sub = integrality_check(d, ctx)
        rep.failures += sub.failures
    reports.append(rep)
    for d in fixtures.values():
        reports.append(derivative_check(d, ctx))
    rep = CheckReport("integer Taylor coefficients at h = +1 and h = -1")
    for d in sample:
        for l in range(3):
            for eps in (1, -1):
                coeffs = epsilon_coefficients(d, l, eps, 6, ctx)
                if not all(isinstance(c, int) for c in coeffs):
                    rep.fail(f"{d.name or d}: l={l}, eps={eps}: {coeffs}")
    reports.append(rep)
    for d in fixtures.values():
        reports.append(homfly_reparam_check(d, ctx))
    for t in (1, 2, 3):
        reports.append(d_identity_check(t, ctx))
    for l in range(4):
        for m in range(4 - l):
            reports.append(curl_reduction_check(l, m, ctx))
    return reports


def suite_eightt(order=12, seed=0):
    ctx = default_context(order)
    reports = []
    for closure in eight_t_closures():
        rep = CheckReport(f"8T combination vanishes, closure {closure}")
        comb = eight_t_combination(closure)
        for which in ("conway", "homfly", "p"):
            value = ctx.eval_combination(which, comb)
            if not value.is_zero():
                rep.fail(f"{which} image is {value}")
        reports.append(rep)
    return reports


def suite_chord(order=12, seed=0):
    return chord.verify_chord()


SUITES = {
    "series": suite_series,
    "skein": suite_skein,
    "higher": suite_higher,
    "eightt": suite_eightt,
    "chord": suite_chord,
}


def run_suite(name, seed=0, order=12):
    if name == "all":
        out = []
        for key in SUITES:
            out += run_suite(key, seed, order)
        return out
    if name not in SUITES:
        raise KeyError(name)
    if name == "series":
        return SUITES[name](max(order, 16), seed)
    return SUITES[name](order=order, seed=seed)

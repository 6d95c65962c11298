"""Memoised skein-tree evaluation of the Conway polynomial, HOMFLY and the series P.

At the first crossing that breaks descent (see ``first_bad_crossing``) the
crossing is switched and smoothed.  Switching turns it good and smoothing
removes it, so (crossings, bad crossings) drops lexicographically and the
recursion stops at descending diagrams, which present unlinks.
"""

from __future__ import annotations

from .algebra import DEFAULT_ORDER, H, ONE, LaurentPoly, Series, TwoVarLaurent, series_invert
from .diagram import (
    NEGATIVE,
    POSITIVE,
    SINGULAR,
    DiagramError,
    FormalCombination,
    canonical_encode,
    component_count,
    smooth_crossing,
    switch_crossing,
)
from .series import alpha_beta_series

CONWAY, HOMFLY, P_SERIES = "conway", "homfly", "p"
INVARIANTS = (CONWAY, HOMFLY, P_SERIES)


def first_bad_crossing(d):
    """Index of the first crossing met first on its understrand, or None if descending.

    Components are taken in order of their smallest arc label and each is
    walked from that arc.
    """
    succ = d.successor()
    entry = d.entry()
    starts = sorted(succ)
    seen_arcs = set()
    seen = set()
    for start in starts:
        if start in seen_arcs:
            continue
        x = start
        while x not in seen_arcs:
            seen_arcs.add(x)
            i, strand = entry[x]
            if d.crossings[i].kind == SINGULAR:
                raise DiagramError("skein evaluation needs a diagram without double points")
            if i not in seen:
                seen.add(i)
                if strand == "a":
                    return i
            x = succ[x]
    return None


_X = TwoVarLaurent.monomial(1, 0)
_X_INV = TwoVarLaurent.monomial(-1, 0)
_X2 = TwoVarLaurent.monomial(2, 0)
_X_INV2 = TwoVarLaurent.monomial(-2, 0)
_XH = TwoVarLaurent.monomial(1, 1)
_X_INV_H = TwoVarLaurent.monomial(-1, 1)
_HOMFLY_LOOP = TwoVarLaurent({(1, -1): 1, (-1, -1): -1})


class SkeinContext:
    """Truncation order, the series alpha and beta, and one memo table per invariant."""

    def __init__(self, order=DEFAULT_ORDER, cache=True):
        if order < 2:
            raise ValueError("order must be at least 2")
        self.order = order
        self.alpha, self.beta = alpha_beta_series(order)
        one = Series.constant(1, order)
        self._p_switch = one + self.alpha * H
        self._p_smooth = (one + self.beta) * H
        self._p_switch_inv = series_invert(self._p_switch)
        self.cache = cache
        self.memo = {CONWAY: {}, HOMFLY: {}, P_SERIES: {}}

    def clear(self):
        for table in self.memo.values():
            table.clear()

    # generic recursion ----------------------------------------------------

    def _evaluate(self, which, d):
        table = self.memo[which]
        # the key is canonical; recursion keeps d's own labels so descent order is stable
        key = canonical_encode(d)
        if self.cache and key in table:
            return table[key]
        i = first_bad_crossing(d)
        if i is None:
            value = self._base(which, component_count(d))
        else:
            kind = d.crossings[i].kind
            other = self._evaluate(which, switch_crossing(d, i))
            smooth = self._evaluate(which, smooth_crossing(d, i))
            value = self._step(which, kind, other, smooth)
        if self.cache:
            table[key] = value
        return value

    def _base(self, which, k):
        if which == CONWAY:
            return ONE if k == 1 else LaurentPoly()
        if which == HOMFLY:
            return _HOMFLY_LOOP ** (k - 1)
        return Series.u_power(k - 1, self.order)

    def _step(self, which, kind, other, smooth):
        # kind == '+': value is X+, ``other`` is X-;  kind == '-': value is X-, ``other`` is X+
        if which == CONWAY:
            return other + H * smooth if kind == POSITIVE else other - H * smooth
        if which == HOMFLY:
            # x F(X+) - x^-1 F(X-) = h F(X0)
            if kind == POSITIVE:
                return _X_INV2 * other + _X_INV_H * smooth
            return _X2 * other - _XH * smooth
        # P(X+) = (1 + h alpha) P(X-) + h (1 + beta) P(X0)
        if kind == POSITIVE:
            return self._p_switch * other + self._p_smooth * smooth
        if kind == NEGATIVE:
            return self._p_switch_inv * (other - self._p_smooth * smooth)
        raise DiagramError(f"unexpected crossing kind {kind!r}")

    # public evaluators ----------------------------------------------------

    def conway(self, d):
        return self._evaluate(CONWAY, d)

    def homfly(self, d):
        return self._evaluate(HOMFLY, d)

    def p_series(self, d):
        return self._evaluate(P_SERIES, d)

    def evaluate(self, which, d):
        if which not in INVARIANTS:
            raise ValueError(f"unknown invariant {which!r}")
        return self._evaluate(which, d)

    def eval_combination(self, which, comb):
        """Linear extension of an invariant to a FormalCombination."""
        if which == CONWAY:
            total = LaurentPoly()
            for d, c in comb.terms.items():
                total = total + c * self.conway(d)
            return total
        if which == HOMFLY:
            total = TwoVarLaurent()
            for d, c in comb.terms.items():
                total = total + homfly_scale(self.homfly(d), c)
            return total
        if which == P_SERIES:
            total = Series([], self.order)
            for d, c in comb.terms.items():
                total = total + self.p_series(d) * c
            return total
        raise ValueError(f"unknown invariant {which!r}")


def homfly_scale(f, c):
    """Multiply a TwoVarLaurent by a Laurent polynomial in h."""
    return f * TwoVarLaurent({(0, e): v for e, v in c.to_dict().items()})


_contexts = {}


def default_context(order=DEFAULT_ORDER):
    if order not in _contexts:
        _contexts[order] = SkeinContext(order)
    return _contexts[order]


def conway(d, ctx=None):
    return (ctx or default_context()).conway(d)


def homfly(d, ctx=None):
    return (ctx or default_context()).homfly(d)


def p_series(d, ctx=None):
    return (ctx or default_context()).p_series(d)


def eval_combination(which, comb, ctx=None):
    if not isinstance(comb, FormalCombination):
        raise TypeError("eval_combination expects a FormalCombination")
    return (ctx or default_context()).eval_combination(which, comb)

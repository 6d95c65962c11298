"""Exact Laurent polynomials in h, two-variable Laurent polynomials in (x, h),
and truncated power series in u whose coefficients are Laurent polynomials.

Coefficients are Python ints (unbounded) or ``fractions.Fraction``; nothing
here ever touches floating point.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import comb, factorial
from numbers import Rational

DEFAULT_ORDER = 12


class AlgebraError(ArithmeticError):
    """Raised on inexact division, non-unit inversion or order mismatch."""


def _normalize_number(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


class LaurentPoly:
    """An element of Z[h, 1/h] (or Q[h, 1/h] when built from Fractions).

    Stored densely: ``coeffs[k]`` is the coefficient of ``h**(offset + k)``.
    The zero polynomial has ``offset == 0`` and no coefficients.
    """

    __slots__ = ("offset", "coeffs", "_hash")

    def __init__(self, coeffs=(), offset=0):
        coeffs = [_normalize_number(c) for c in coeffs]
        lo, hi = 0, len(coeffs)
        while lo < hi and coeffs[lo] == 0:
            lo += 1
        while hi > lo and coeffs[hi - 1] == 0:
            hi -= 1
        if lo == hi:
            self.offset = 0
            self.coeffs = ()
        else:
            self.offset = offset + lo
            self.coeffs = tuple(coeffs[lo:hi])
        self._hash = None

    # construction helpers -------------------------------------------------

    @classmethod
    def from_dict(cls, terms):
        terms = {k: v for k, v in terms.items() if v != 0}
        if not terms:
            return cls()
        lo, hi = min(terms), max(terms)
        return cls([terms.get(k, 0) for k in range(lo, hi + 1)], lo)

    @classmethod
    def monomial(cls, exponent, coeff=1):
        return cls([coeff], exponent)

    @classmethod
    def constant(cls, c):
        return cls([c], 0)

    @classmethod
    def coerce(cls, other):
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, Rational):
            return cls.constant(other)
        raise TypeError(f"cannot coerce {type(other).__name__} to LaurentPoly")

    # basic queries --------------------------------------------------------

    def is_zero(self):
        return not self.coeffs

    def valuation(self):
        if not self.coeffs:
            raise ValueError("valuation of the zero polynomial")
        return self.offset

    def degree(self):
        if not self.coeffs:
            raise ValueError("degree of the zero polynomial")
        return self.offset + len(self.coeffs) - 1

    def is_polynomial(self):
        """True when there are no negative powers of h."""
        return not self.coeffs or self.offset >= 0

    def is_integral(self):
        return all(isinstance(c, int) for c in self.coeffs)

    def is_constant(self):
        return not self.coeffs or (self.offset == 0 and len(self.coeffs) == 1)

    def is_monomial(self):
        return len(self.coeffs) == 1

    def to_dict(self):
        return {self.offset + k: c for k, c in enumerate(self.coeffs) if c != 0}

    def coefficient(self, k):
        i = k - self.offset
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return 0

    def constant_term(self):
        return self.coefficient(0)

    def poly_coeffs(self):
        """Coefficients ``[c_0, c_1, ...]`` of an honest polynomial in h."""
        if not self.is_polynomial():
            raise ValueError(f"{self} has negative powers of h")
        if not self.coeffs:
            return []
        return [0] * self.offset + list(self.coeffs)

    # arithmetic -----------------------------------------------------------

    def __add__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        if not other.coeffs:
            return self
        if not self.coeffs:
            return other
        lo = min(self.offset, other.offset)
        hi = max(self.degree(), other.degree())
        out = [0] * (hi - lo + 1)
        for k, c in enumerate(self.coeffs):
            out[self.offset - lo + k] += c
        for k, c in enumerate(other.coeffs):
            out[other.offset - lo + k] += c
        return LaurentPoly(out, lo)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly([-c for c in self.coeffs], self.offset)

    def __sub__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, Rational):
            return LaurentPoly([c * other for c in self.coeffs], self.offset)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return LaurentPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return LaurentPoly(out, self.offset + other.offset)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = LaurentPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self):
        """Inverse of a unit, i.e. of a monomial ``c * h^k``."""
        if len(self.coeffs) != 1:
            raise AlgebraError(f"{self} is not a unit of the Laurent ring")
        c = self.coeffs[0]
        if isinstance(c, int):
            if c not in (1, -1):
                raise AlgebraError(f"{self} is not a unit of Z[h, 1/h]")
            inv = c
        else:
            inv = 1 / Fraction(c)
        return LaurentPoly([inv], -self.offset)

    def shift(self, k):
        """Multiply by h**k."""
        if not self.coeffs:
            return self
        return LaurentPoly(self.coeffs, self.offset + k)

    def exact_div(self, n):
        """Divide every coefficient by the integer ``n``; the division must be exact."""
        out = []
        for c in self.coeffs:
            q, r = divmod(c, n)
            if r:
                raise AlgebraError(f"{self} is not divisible by {n}")
            out.append(q)
        return LaurentPoly(out, self.offset)

    def derivative(self):
        """Formal d/dh."""
        return LaurentPoly(
            [(self.offset + k) * c for k, c in enumerate(self.coeffs)],
            self.offset - 1,
        )

    def __call__(self, value):
        if not self.coeffs:
            return 0
        value = Fraction(value) if self.offset < 0 else value
        return _normalize_number(sum(c * value ** (self.offset + k) for k, c in enumerate(self.coeffs)))

    def map_coeffs(self, f):
        return LaurentPoly([f(c) for c in self.coeffs], self.offset)

    # comparison -----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Rational):
            other = LaurentPoly.constant(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.offset == other.offset and self.coeffs == other.coeffs

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.offset, self.coeffs))
        return self._hash

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"

    def __str__(self):
        return render_terms([(c, _h_monomial(e)) for e, c in sorted(self.to_dict().items())])


IntPoly = LaurentPoly
QPoly = LaurentPoly

H = LaurentPoly.monomial(1)
ONE = LaurentPoly.constant(1)
ZERO = LaurentPoly()


def laurent_mul(a, b):
    return a * b


def laurent_derivative(a):
    return a.derivative()


def taylor_shift(p, eps):
    """Coefficients ``c_m`` with ``p(h) = sum c_m (h - eps)^m``.

    ``p`` must be a polynomial (no negative exponents). All arithmetic is
    integral, so the output is exact.
    """
    coeffs = LaurentPoly.coerce(p).poly_coeffs()
    return [
        sum(coeffs[k] * comb(k, m) * eps ** (k - m) for k in range(m, len(coeffs)))
        for m in range(len(coeffs))
    ]


def exact_factorial_div(p, m):
    return p.exact_div(factorial(m))


# ---------------------------------------------------------------------------
# rendering and parsing

def _coeff_str(c):
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"({c})"
    return str(c)


def _h_monomial(e):
    if e == 0:
        return ""
    if e == 1:
        return "h"
    return f"h^{e}"


def _join(parts):
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        if p.startswith("-"):
            out += " - " + p[1:]
        else:
            out += " + " + p
    return out


def render_terms(terms):
    """Render ``(coefficient, monomial_text)`` pairs with ``+``/``-`` separators."""
    parts = []
    for c, mono in terms:
        if c == 0:
            continue
        if not mono:
            parts.append(_coeff_str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append("-" + mono)
        else:
            parts.append(_coeff_str(c) + "*" + mono)
    return _join(parts)


_TERM = re.compile(r"^(\d*)(?:\*?h(?:\^(-?\d+))?)?$")


def parse_laurent(text):
    """Inverse of ``str(LaurentPoly)`` for integer coefficients."""
    text = text.strip()
    if not text:
        raise ValueError("empty polynomial text")
    tokens = re.split(r"\s+([+-])\s+", text)
    signs = [1]
    body = [tokens[0]]
    for i in range(1, len(tokens), 2):
        signs.append(1 if tokens[i] == "+" else -1)
        body.append(tokens[i + 1])
    terms = {}
    for sign, term in zip(signs, body):
        if term.startswith("-"):
            sign, term = -sign, term[1:]
        m = _TERM.match(term)
        if not m or not term:
            raise ValueError(f"bad polynomial term {term!r}")
        digits, exp = m.groups()
        has_h = "h" in term
        c = int(digits) if digits else 1
        e = (int(exp) if exp is not None else 1) if has_h else 0
        if (not has_h and not digits) or term.startswith("*"):
            raise ValueError(f"bad polynomial term {term!r}")
        terms[e] = terms.get(e, 0) + sign * c
    return LaurentPoly.from_dict(terms)


# ---------------------------------------------------------------------------
# two-variable Laurent polynomials

class TwoVarLaurent:
    """Sparse element of Z[x, 1/x, h, 1/h]; ``terms`` maps (i, j) -> coeff of x^i h^j."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {k: v for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def monomial(cls, i, j, c=1):
        return cls({(i, j): c})

    @classmethod
    def constant(cls, c):
        return cls({(0, 0): c})

    def __add__(self, other):
        if isinstance(other, int):
            other = TwoVarLaurent.constant(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return TwoVarLaurent(out)

    __radd__ = __add__

    def __neg__(self):
        return TwoVarLaurent({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return TwoVarLaurent({k: v * other for k, v in self.terms.items()})
        if not isinstance(other, TwoVarLaurent):
            return NotImplemented
        out = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in other.terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, 0) + a * b
        return TwoVarLaurent(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise AlgebraError("negative powers of a TwoVarLaurent are not supported")
        result = TwoVarLaurent.constant(1)
        for _ in range(n):
            result = result * self
        return result

    def at_x_equal_one(self):
        """Substitute x = 1, giving a Laurent polynomial in h."""
        out = {}
        for (_, j), c in self.terms.items():
            out[j] = out.get(j, 0) + c
        return LaurentPoly.from_dict(out)

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, int):
            other = TwoVarLaurent.constant(other)
        if not isinstance(other, TwoVarLaurent):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"TwoVarLaurent({str(self)!r})"

    def __str__(self):
        def mono(i, j):
            xs = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            return "*".join(p for p in (xs, _h_monomial(j)) if p)
        return render_terms([(self.terms[k], mono(*k)) for k in sorted(self.terms)])


X2 = TwoVarLaurent.monomial(1, 0)


# ---------------------------------------------------------------------------
# truncated power series in u

class Series:
    """A power series in u known modulo u**order.

    Coefficients are LaurentPoly values (constants for series in Z[[u]]).
    All binary operations require equal orders.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs, order=DEFAULT_ORDER):
        if order < 1:
            raise ValueError("series order must be positive")
        cs = [LaurentPoly.coerce(c) for c in list(coeffs)[:order]]
        cs.extend([ZERO] * (order - len(cs)))
        self.order = order
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, c, order=DEFAULT_ORDER):
        return cls([c], order)

    @classmethod
    def u_power(cls, k, order=DEFAULT_ORDER, coeff=1):
        if k >= order:
            return cls([], order)
        return cls([0] * k + [coeff], order)

    @classmethod
    def from_ints(cls, ints, order):
        return cls([LaurentPoly.constant(c) for c in ints], order)

    def _check(self, other):
        if self.order != other.order:
            raise AlgebraError(f"series order mismatch: {self.order} vs {other.order}")

    def __getitem__(self, k):
        return self.coeffs[k]

    def __len__(self):
        return self.order

    def ints(self):
        """Coefficients as plain numbers; every coefficient must be constant in h."""
        out = []
        for c in self.coeffs:
            if not c.is_constant():
                raise ValueError(f"coefficient {c} depends on h")
            out.append(c.constant_term())
        return out

    def __add__(self, other):
        if not isinstance(other, Series):
            other = Series.constant(other, self.order)
        self._check(other)
        return Series([a + b for a, b in zip(self.coeffs, other.coeffs)], self.order)

    __radd__ = __add__

    def __neg__(self):
        return Series([-a for a in self.coeffs], self.order)

    def __sub__(self, other):
        if not isinstance(other, Series):
            other = Series.constant(other, self.order)
        return self + (-other)

    def __rsub__(self, other):
        return Series.constant(other, self.order) - self

    def __mul__(self, other):
        if isinstance(other, (LaurentPoly, Rational)):
            return Series([a * other for a in self.coeffs], self.order)
        if not isinstance(other, Series):
            return NotImplemented
        self._check(other)
        n = self.order
        out = [ZERO] * n
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(n - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return Series(out, n)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            return series_invert(self) ** (-k)
        result = Series.constant(1, self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_u(self, k=1):
        """Multiply by u**k."""
        return Series([ZERO] * k + list(self.coeffs[: max(self.order - k, 0)]), self.order)

    def map_coeffs(self, f):
        return Series([f(c) for c in self.coeffs], self.order)

    def truncate(self, order):
        return Series(self.coeffs[:order], order)

    def is_zero(self):
        return not any(self.coeffs)

    def valuation(self):
        """Index of the first nonzero coefficient, or ``order`` if all vanish."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return self.order

    def __eq__(self, other):
        if not isinstance(other, Series):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __repr__(self):
        return f"Series({str(self)!r})"

    def __str__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            if k == 0:
                parts.append(str(c))
                continue
            umono = "u" if k == 1 else f"u^{k}"
            if c == 1:
                parts.append(umono)
            elif c == -1:
                parts.append("-" + umono)
            elif c.is_monomial():
                parts.append(f"{c}*{umono}")
            else:
                parts.append(f"({c})*{umono}")
        return f"{_join(parts)} + O(u^{self.order})"


BivariateSeries = Series
QBivariateSeries = Series
USeries = Series


def series_invert(s):
    """Multiplicative inverse of a series whose constant term is a unit ``c*h^k``."""
    c0 = s.coeffs[0]
    inv0 = c0.inverse()
    out = [inv0]
    for k in range(1, s.order):
        acc = ZERO
        for i in range(1, k + 1):
            if s.coeffs[i]:
                acc = acc + s.coeffs[i] * out[k - i]
        out.append(-(acc * inv0))
    return Series(out, s.order)


def series_sqrt(s):
    """Square root with constant term 1 of a series with constant term 1 (rational coefficients)."""
    if s.coeffs[0] != 1:
        raise AlgebraError("series_sqrt needs constant term 1")
    half = Fraction(1, 2)
    out = [ONE]
    for k in range(1, s.order):
        acc = s.coeffs[k]
        for i in range(1, k):
            acc = acc - out[i] * out[k - i]
        out.append(acc * half)
    return Series(out, s.order)


def series_sqrt_inv(s):
    """``s ** (-1/2)`` for a series with constant term 1."""
    return series_invert(series_sqrt(s))


def eval_twovar_at_series(f, x, h):
    """Substitute series for x and h in a TwoVarLaurent; both must be invertible."""
    if x.order != h.order:
        raise AlgebraError("series order mismatch")
    order = x.order
    cache = {}

    def power(base, tag, k):
        key = (tag, k)
        if key not in cache:
            if k == 0:
                cache[key] = Series.constant(1, order)
            elif k > 0:
                cache[key] = power(base, tag, k - 1) * base
            else:
                inv_key = (tag, "inv")
                if inv_key not in cache:
                    cache[inv_key] = series_invert(base)
                cache[key] = power(base, tag, k + 1) * cache[inv_key]
        return cache[key]

    total = Series([], order)
    for (i, j), c in sorted(f.terms.items()):
        total = total + power(x, "x", i) * power(h, "h", j) * c
    return total

"""Sparse Laurent polynomials in one variable ``q`` with exact coefficients.

Coefficients are Python ints or :class:`fractions.Fraction`.  A value whose
coefficients are all integers lives in Z[q, q^-1]; fractions whose
denominator is 1 are stored as ints, so ring membership is a property of the
value and not of how it was built.
"""

from __future__ import annotations

import re
from fractions import Fraction
from numbers import Rational
from typing import Dict, Iterable, Iterator, Tuple, Union

Coeff = Union[int, Fraction]

ZZ = "ZZ"
QQ = "QQ"


class NotDivisibleError(ArithmeticError):
    """Raised by :func:`exact_div` when the quotient does not exist."""


def _norm(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


class LaurentPoly:
    """Immutable element of Z[q, q^-1] or Q[q, q^-1].

    ``terms`` maps integer exponents to nonzero coefficients.
    """

    __slots__ = ("_t", "_hash")

    def __init__(self, terms: Union[Dict[int, Coeff], Iterable[Tuple[int, Coeff]], None] = None):
        t = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for e, c in items:
                if c:
                    t[int(e)] = _norm(c)
        self._t = t
        self._hash = None

    @classmethod
    def _raw(cls, t: Dict[int, Coeff]) -> "LaurentPoly":
        # caller guarantees: no zeros, normalized coefficients
        obj = cls.__new__(cls)
        obj._t = t
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, exp: int, coeff: Coeff = 1) -> "LaurentPoly":
        if not coeff:
            return ZERO
        return cls._raw({exp: _norm(coeff)})

    @classmethod
    def const(cls, c: Coeff) -> "LaurentPoly":
        return cls.monomial(0, c)

    @classmethod
    def coerce(cls, x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, Rational):
            return cls.const(_norm(Fraction(x)) if not isinstance(x, int) else x)
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    # -- inspection -----------------------------------------------------
    @property
    def terms(self) -> Dict[int, Coeff]:
        return dict(self._t)

    def items(self):
        return self._t.items()

    def __iter__(self) -> Iterator[Tuple[int, Coeff]]:
        return iter(sorted(self._t.items()))

    def __len__(self):
        return len(self._t)

    def __bool__(self):
        return bool(self._t)

    def is_zero(self) -> bool:
        return not self._t

    def coeff(self, e: int) -> Coeff:
        return self._t.get(e, 0)

    @property
    def min_exp(self) -> int:
        return min(self._t)

    @property
    def max_exp(self) -> int:
        return max(self._t)

    @property
    def ring(self) -> str:
        return ZZ if self.is_integral() else QQ

    def is_integral(self) -> bool:
        return all(type(c) is int for c in self._t.values())

    def is_constant(self) -> bool:
        return not self._t or (len(self._t) == 1 and 0 in self._t)

    def constant_value(self) -> Coeff:
        if not self.is_constant():
            raise ValueError(f"{self} is not a constant")
        return self._t.get(0, 0)

    def to_rational(self) -> "LaurentPoly":
        """Promotion to Q[q, q^-1]; values are unchanged."""
        return self

    def to_integer(self) -> "LaurentPoly":
        """Demotion to Z[q, q^-1]; every denominator must be 1."""
        if not self.is_integral():
            raise ValueError(f"{self} has non-integral coefficients")
        return self

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            try:
                other = LaurentPoly.coerce(other)
            except TypeError:
                return NotImplemented
        if not other._t:
            return self
        if not self._t:
            return other
        if len(other._t) > len(self._t):
            a, b = other._t, self._t
        else:
            a, b = self._t, other._t
        t = dict(a)
        for e, c in b.items():
            s = t.get(e, 0) + c
            if s:
                t[e] = _norm(s)
            else:
                t.pop(e, None)
        return LaurentPoly._raw(t)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -c for e, c in self._t.items()})

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            try:
                other = LaurentPoly.coerce(other)
            except TypeError:
                return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            if isinstance(other, Rational):
                if not other:
                    return ZERO
                return LaurentPoly._raw({e: _norm(c * other) for e, c in self._t.items()})
            return NotImplemented
        a, b = self._t, other._t
        if not a or not b:
            return ZERO
        if len(b) == 1:
            (f, d), = b.items()
            return LaurentPoly._raw({e + f: _norm(c * d) for e, c in a.items()})
        if len(a) == 1:
            (f, d), = a.items()
            return LaurentPoly._raw({e + f: _norm(c * d) for e, c in b.items()})
        t: Dict[int, Coeff] = {}
        get = t.get
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = e1 + e2
                t[e] = get(e, 0) + c1 * c2
        return LaurentPoly._raw({e: _norm(c) for e, c in t.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Rational):
            if not other:
                raise ZeroDivisionError("division by zero")
            inv = Fraction(1) / Fraction(other)
            return self * inv
        if isinstance(other, LaurentPoly):
            return exact_div(self, other, ring=QQ)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            if len(self._t) != 1:
                raise ValueError("only monomials have Laurent inverses")
            (e, c), = self._t.items()
            if c not in (1, -1):
                return LaurentPoly.monomial(-e, Fraction(1) / c) ** (-n)
            return LaurentPoly.monomial(-e, c) ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._t == other._t
        if isinstance(other, Rational):
            if not other:
                return not self._t
            return self._t == {0: other}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._t.items()))
        return self._hash

    # -- substitutions --------------------------------------------------
    def bar(self) -> "LaurentPoly":
        """The involution q -> q^-1."""
        return LaurentPoly._raw({-e: c for e, c in self._t.items()})

    def subs_power(self, k: int) -> "LaurentPoly":
        """Substitute q -> q^k."""
        if k == 0:
            return LaurentPoly.const(sum(self._t.values()))
        return LaurentPoly._raw({e * k: c for e, c in self._t.items()})

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by q^k."""
        return LaurentPoly._raw({e + k: c for e, c in self._t.items()})

    def evaluate(self, x):
        """Evaluate at ``x``; ``x`` must support ``**`` with negative exponents if needed."""
        total = 0
        for e, c in self._t.items():
            total = total + c * (x ** e)
        return total

    # -- text -------------------------------------------------------------
    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"LaurentPoly({render(self)!r})"


ZERO = LaurentPoly._raw({})
ONE = LaurentPoly._raw({0: 1})
Q = LaurentPoly._raw({1: 1})


def _poly_divmod(num, den):
    """Long division of dense ascending coefficient lists over Q."""
    num = [Fraction(c) for c in num]
    dlead = Fraction(den[-1])
    dn = len(den) - 1
    quot = [Fraction(0)] * max(len(num) - dn, 0)
    for k in range(len(num) - 1, dn - 1, -1):
        c = num[k]
        if not c:
            continue
        f = c / dlead
        quot[k - dn] = f
        for j in range(dn + 1):
            num[k - dn + j] -= f * den[j]
    return quot, num[:dn]


def exact_div(num: LaurentPoly, den: LaurentPoly, ring: str = None) -> LaurentPoly:
    """Quotient ``num / den`` in Z[q, q^-1] or Q[q, q^-1].

    ``ring`` defaults to ZZ when both arguments are integral.  Raises
    :class:`NotDivisibleError` when no exact quotient exists in that ring.
    """
    num = LaurentPoly.coerce(num)
    den = LaurentPoly.coerce(den)
    if den.is_zero():
        raise ZeroDivisionError("division by the zero Laurent polynomial")
    if ring is None:
        ring = ZZ if (num.is_integral() and den.is_integral()) else QQ
    if num.is_zero():
        return ZERO
    dmin, dmax = den.min_exp, den.max_exp
    if dmin == dmax:
        c = den.coeff(dmin)
        out = {e - dmin: Fraction(v) / c for e, v in num.items()}
        quot = LaurentPoly(out)
    else:
        nmin, nmax = num.min_exp, num.max_exp
        if nmax - nmin < dmax - dmin:
            raise NotDivisibleError(f"{den} does not divide {num}")
        nd = [num.coeff(e) for e in range(nmin, nmax + 1)]
        dd = [den.coeff(e) for e in range(dmin, dmax + 1)]
        q, r = _poly_divmod(nd, dd)
        if any(r):
            raise NotDivisibleError(f"{den} does not divide {num}")
        quot = LaurentPoly({nmin - dmin + k: c for k, c in enumerate(q)})
    if ring == ZZ and not quot.is_integral():
        raise NotDivisibleError(f"{den} does not divide {num} over the integers")
    return quot


def divides(den: LaurentPoly, num: LaurentPoly, ring: str = None) -> bool:
    try:
        exact_div(num, den, ring)
    except NotDivisibleError:
        return False
    return True


# -- q-numbers ----------------------------------------------------------------

_QINT_CACHE: Dict[int, LaurentPoly] = {}


def qint(m: int) -> LaurentPoly:
    """Balanced quantum integer (q^m - q^-m)/(q - q^-1)."""
    p = _QINT_CACHE.get(m)
    if p is None:
        if m == 0:
            p = ZERO
        elif m < 0:
            p = -qint(-m)
        else:
            p = LaurentPoly._raw({m - 1 - 2 * k: 1 for k in range(m)})
        _QINT_CACHE[m] = p
    return p


def qfact(m: int) -> LaurentPoly:
    if m < 0:
        raise ValueError("qfact needs m >= 0")
    p = ONE
    for k in range(2, m + 1):
        p = p * qint(k)
    return p


def qbinom(m: int, r: int) -> LaurentPoly:
    if not 0 <= r <= m:
        raise ValueError(f"qbinom needs m >= r >= 0, got m={m}, r={r}")
    return exact_div(qfact(m), qfact(r) * qfact(m - r), ring=ZZ)


# -- text format ----------------------------------------------------------------
# Ascending exponents, explicit signs: "-q^-2+1+2*q^3", "1/2*q".

def _fmt_coeff(c) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return str(c)


def render(p: LaurentPoly) -> str:
    if p.is_zero():
        return "0"
    out = []
    for e, c in sorted(p.items()):
        neg = c < 0
        a = -c if neg else c
        if e == 0:
            body = _fmt_coeff(a)
        else:
            mono = "q" if e == 1 else f"q^{e}"
            body = mono if a == 1 else f"{_fmt_coeff(a)}*{mono}"
        if neg:
            out.append("-" + body)
        else:
            out.append(("+" if out else "") + body)
    return "".join(out)


_TERM = re.compile(
    r"(?P<sign>[+-]?)"
    r"(?:(?P<coef>\d+(?:/\d+)?)(?:\*(?=q))?)?"
    r"(?P<q>q(?:\^(?P<exp>-?\d+))?)?"
)


def parse_laurent(text: str) -> LaurentPoly:
    """Parse the grammar produced by :func:`render` (whitespace is ignored)."""
    s = re.sub(r"\s+", "", text)
    if not s:
        raise ValueError("empty Laurent polynomial")
    pos = 0
    acc: Dict[int, Coeff] = {}
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos or (m.group("coef") is None and m.group("q") is None):
            raise ValueError(f"cannot parse Laurent polynomial at position {pos}: {text!r}")
        if not first and not m.group("sign"):
            raise ValueError(f"missing sign at position {pos}: {text!r}")
        first = False
        coef = Fraction(m.group("coef")) if m.group("coef") else Fraction(1)
        if m.group("sign") == "-":
            coef = -coef
        exp = 0
        if m.group("q"):
            exp = int(m.group("exp")) if m.group("exp") is not None else 1
        acc[exp] = acc.get(exp, 0) + coef
        pos = m.end()
    return LaurentPoly(acc)

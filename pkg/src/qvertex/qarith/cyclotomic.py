"""Exact arithmetic in Q(zeta_l) = Q[x]/Phi_l(x).

Elements are stored as canonical residues of degree < phi(l).  This is the
value ring after specialising q to a primitive l-th root of unity, so zero
tests are decidable.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational
from typing import List, Sequence, Tuple

from .laurent import LaurentPoly, _norm


@lru_cache(maxsize=None)
def cyclotomic_poly(l: int) -> Tuple[int, ...]:
    """Integer coefficients of Phi_l, ascending.  Monic."""
    if l < 1:
        raise ValueError("cyclotomic_poly needs l >= 1")
    num = [-1] + [0] * (l - 1) + [1]  # x^l - 1
    for d in range(1, l):
        if l % d == 0:
            num = _int_exact_quotient(num, cyclotomic_poly(d))
    return tuple(num)


def _int_exact_quotient(num: List[int], den: Sequence[int]) -> List[int]:
    # den monic
    num = list(num)
    dn = len(den) - 1
    quot = [0] * (len(num) - dn)
    for k in range(len(num) - 1, dn - 1, -1):
        c = num[k]
        if c:
            quot[k - dn] = c
            for j in range(dn + 1):
                num[k - dn + j] -= c * den[j]
    assert not any(num[:dn]), "cyclotomic division left a remainder"
    return quot


def euler_phi(l: int) -> int:
    return len(cyclotomic_poly(l)) - 1


def _reduce(coeffs: List, l: int) -> List:
    """Reduce a dense ascending coefficient list modulo Phi_l."""
    phi = cyclotomic_poly(l)
    n = len(phi) - 1
    c = list(coeffs)
    for k in range(len(c) - 1, n - 1, -1):
        a = c[k]
        if a:
            base = k - n
            for j in range(n):
                if phi[j]:
                    c[base + j] -= a * phi[j]
    c = c[:n]
    if len(c) < n:
        c.extend([0] * (n - len(c)))
    return c


def _trim(p: List) -> List:
    while p and not p[-1]:
        p.pop()
    return p


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_divmod(a, b):
    a = [Fraction(x) for x in a]
    b = _trim([Fraction(x) for x in b])
    if len(a) < len(b):
        return [], _trim(a)
    lead = b[-1]
    db = len(b) - 1
    q = [Fraction(0)] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if c:
            f = c / lead
            q[k - db] = f
            for j in range(db + 1):
                a[k - db + j] -= f * b[j]
    return _trim(q), _trim(a[:db])


def _poly_sub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]
    return _trim(out)


class CyclotomicNum:
    """Element of Q(zeta) with zeta a primitive l-th root of unity."""

    __slots__ = ("l", "coeffs")

    def __init__(self, l: int, coeffs: Sequence = ()):
        if l < 1:
            raise ValueError("l must be positive")
        self.l = l
        n = euler_phi(l)
        c = list(coeffs)
        if len(c) > n:
            c = _reduce(c, l)
        else:
            c = c + [0] * (n - len(c))
        self.coeffs = tuple(_norm(Fraction(x)) if not isinstance(x, int) else x for x in c)

    @classmethod
    def _raw(cls, l, coeffs):
        obj = cls.__new__(cls)
        obj.l = l
        obj.coeffs = tuple(_norm(x) for x in coeffs)
        return obj

    @classmethod
    def from_int(cls, l: int, value) -> "CyclotomicNum":
        return cls(l, [value])

    @classmethod
    def zeta(cls, l: int, power: int = 1) -> "CyclotomicNum":
        """The class of x^power, x a primitive l-th root."""
        e = power % l
        c = [0] * (e + 1)
        c[e] = 1
        return cls(l, _reduce(c, l) if e >= euler_phi(l) else c)

    # -- predicates ------------------------------------------------------
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def _coerce(self, other):
        if isinstance(other, CyclotomicNum):
            if other.l != self.l:
                raise ValueError(f"mixing Q(zeta_{self.l}) and Q(zeta_{other.l})")
            return other
        if isinstance(other, Rational):
            return CyclotomicNum.from_int(self.l, other)
        return None

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.l, self.coeffs))

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CyclotomicNum._raw(self.l, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNum._raw(self.l, [-a for a in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return CyclotomicNum._raw(self.l, [a - b for a, b in zip(self.coeffs, o.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Rational):
            return CyclotomicNum._raw(self.l, [a * other for a in self.coeffs])
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_rational():
            s = o.coeffs[0]
            return CyclotomicNum._raw(self.l, [a * s for a in self.coeffs])
        if self.is_rational():
            s = self.coeffs[0]
            return CyclotomicNum._raw(self.l, [a * s for a in o.coeffs])
        prod = _poly_mul(self.coeffs, o.coeffs)
        return CyclotomicNum._raw(self.l, _reduce(prod, self.l))

    __rmul__ = __mul__

    def inverse(self) -> "CyclotomicNum":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        if self.is_rational():
            return CyclotomicNum._raw(self.l, [Fraction(1) / Fraction(self.coeffs[0])] + [0] * (len(self.coeffs) - 1))
        # extended Euclid: s*a + t*Phi = g, g a nonzero constant since Phi is irreducible
        r0, r1 = list(cyclotomic_poly(self.l)), _trim(list(self.coeffs))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        g = Fraction(r1[0])
        return CyclotomicNum(self.l, [Fraction(c) / g for c in s1])

    def __truediv__(self, other):
        if isinstance(other, Rational):
            if not other:
                raise ZeroDivisionError("division by zero")
            f = Fraction(1) / Fraction(other)
            return self * f
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = CyclotomicNum.from_int(self.l, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __repr__(self):
        return f"CyclotomicNum({self.l}, {list(self.coeffs)})"

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            neg = c < 0
            a = -c if neg else c
            if mono:
                body = mono if a == 1 else f"{a}*{mono}"
            else:
                body = str(a)
            parts.append(("-" if neg else ("+" if parts else "")) + body)
        return "".join(parts)


def specialize(p: LaurentPoly, l: int) -> CyclotomicNum:
    """Image of ``p`` under q -> zeta_l (ring homomorphism)."""
    if l < 1:
        raise ValueError("l must be positive")
    p = LaurentPoly.coerce(p)
    dense = [0] * l
    for e, c in p.items():
        dense[e % l] += c
    return CyclotomicNum(l, _reduce(dense, l) if l > euler_phi(l) else dense)


def specialize_power(p: LaurentPoly, l: int, k: int) -> CyclotomicNum:
    """Value of ``p`` at zeta_l^k."""
    return specialize(LaurentPoly.coerce(p).subs_power(k), l)


def primitive_order(l: int, k: int) -> int:
    """Order of zeta_l^k."""
    return l // gcd(l, k)

"""Sparse Laurent polynomials in q and z_1..z_r with integer coefficients."""

from __future__ import annotations

from itertools import permutations
from typing import Dict, Iterable, Sequence, Tuple

from ..qarith import LaurentPoly

Exp = Tuple[int, ...]  # (q exponent, z_1 exponent, ..., z_r exponent)


class MultivarLaurent:
    __slots__ = ("nz", "terms")

    def __init__(self, nz: int, terms: Dict[Exp, int] = None):
        self.nz = nz
        self.terms = {e: c for e, c in (terms or {}).items() if c}
        for e in self.terms:
            if len(e) != nz + 1:
                raise ValueError("exponent vector has the wrong length")

    @classmethod
    def const(cls, nz: int, c: int = 1) -> "MultivarLaurent":
        return cls(nz, {(0,) * (nz + 1): c})

    @classmethod
    def z(cls, nz: int, k: int, power: int = 1) -> "MultivarLaurent":
        """z_k (1-based) raised to ``power``."""
        e = [0] * (nz + 1)
        e[k] = power
        return cls(nz, {tuple(e): 1})

    @classmethod
    def q(cls, nz: int, power: int = 1) -> "MultivarLaurent":
        return cls(nz, {(power,) + (0,) * nz: 1})

    @classmethod
    def from_laurent(cls, nz: int, p: LaurentPoly) -> "MultivarLaurent":
        if not p.is_integral():
            raise ValueError("integer coefficients required")
        return cls(nz, {(e,) + (0,) * nz: int(c) for e, c in p.items()})

    def _coerce(self, other) -> "MultivarLaurent":
        if isinstance(other, MultivarLaurent):
            if other.nz != self.nz:
                raise ValueError("variable count mismatch")
            return other
        if isinstance(other, int):
            return MultivarLaurent.const(self.nz, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return MultivarLaurent(self.nz, out)

    __radd__ = __add__

    def __neg__(self):
        return MultivarLaurent(self.nz, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: Dict[Exp, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return MultivarLaurent(self.nz, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not supported")
        out = MultivarLaurent.const(self.nz)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        other = self._coerce(other)
        return other is not NotImplemented and self.terms == other.terms

    def __hash__(self):
        return hash((self.nz, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def permute(self, perm: Sequence[int]) -> "MultivarLaurent":
        """Substitute z_k -> z_{perm[k-1]} (perm is a 1-based permutation)."""
        out: Dict[Exp, int] = {}
        for e, c in self.terms.items():
            new = [0] * (self.nz + 1)
            new[0] = e[0]
            for k in range(1, self.nz + 1):
                new[perm[k - 1]] += e[k]
            out[tuple(new)] = out.get(tuple(new), 0) + c
        return MultivarLaurent(self.nz, out)

    def coefficient(self, zexp: Sequence[int]) -> LaurentPoly:
        """Coefficient (a Laurent polynomial in q) of the given z-monomial."""
        zexp = tuple(zexp)
        return LaurentPoly({e[0]: c for e, c in self.terms.items() if e[1:] == zexp})

    def collapse(self) -> LaurentPoly:
        """Set every z_k = 1."""
        out: Dict[int, int] = {}
        for e, c in self.terms.items():
            out[e[0]] = out.get(e[0], 0) + c
        return LaurentPoly(out)

    def __repr__(self):
        return f"MultivarLaurent({self.nz}, {len(self.terms)} terms)"


def vandermonde(nz: int) -> MultivarLaurent:
    """prod_{j<k} (z_j - z_k)."""
    out = MultivarLaurent.const(nz)
    for j in range(1, nz + 1):
        for k in range(j + 1, nz + 1):
            out = out * (MultivarLaurent.z(nz, j) - MultivarLaurent.z(nz, k))
    return out


def perm_sign(perm: Sequence[int]) -> int:
    inv = sum(1 for a in range(len(perm)) for b in range(a + 1, len(perm)) if perm[a] > perm[b])
    return -1 if inv & 1 else 1


def all_perms(r: int) -> Iterable[Tuple[int, ...]]:
    return permutations(range(1, r + 1))

"""Colored symmetric functions modelling U^-(0) and the Heisenberg action.

Each Dynkin node carries its own ring of symmetric functions.  Two bases are
used:

* ``HBASIS`` -- monomials in the complete homogeneous generators
  ``Pt[i,k]`` (the integral basis of U_A^-(0));
* ``PBASIS`` -- monomials in the power sums ``ht[i,-k]``.

A monomial in either basis is indexed by a :class:`ColoredPartition`.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial
from typing import Callable, Dict, Iterable, Iterator, List, Sequence, Tuple

from .qarith import ONE, ZERO, LaurentPoly, exact_div, qint
from .rootdata import RootDatum

HBASIS = "HBASIS"
PBASIS = "PBASIS"

Partition = Tuple[int, ...]


class ColoredPartition(tuple):
    """One weakly decreasing tuple of positive parts per node."""

    __slots__ = ()

    def __new__(cls, parts: Iterable[Iterable[int]]):
        norm = []
        for p in parts:
            p = tuple(sorted((int(x) for x in p), reverse=True))
            if p and p[-1] <= 0:
                raise ValueError(f"parts must be positive, got {p}")
            norm.append(p)
        return tuple.__new__(cls, norm)

    @classmethod
    def empty(cls, rank: int) -> "ColoredPartition":
        return tuple.__new__(cls, ((),) * rank)

    @classmethod
    def _make(cls, parts) -> "ColoredPartition":
        # parts already canonical
        return tuple.__new__(cls, parts)

    @property
    def total(self) -> int:
        return sum(sum(p) for p in self)

    @property
    def rank(self) -> int:
        return len(self)

    def with_part(self, i: int, k: int) -> "ColoredPartition":
        parts = list(self)
        parts[i] = _insert_part(parts[i], k)
        return ColoredPartition._make(parts)

    def is_empty(self) -> bool:
        return not any(self)

    def render(self) -> str:
        inner = ", ".join(f"{i + 1}:[{','.join(map(str, p))}]" for i, p in enumerate(self) if p)
        return "{" + inner + "}"

    def __repr__(self):
        return f"ColoredPartition({self.render()})"


def _insert_part(p: Partition, k: int) -> Partition:
    if k <= 0:
        return p
    for idx, x in enumerate(p):
        if x < k:
            return p[:idx] + (k,) + p[idx:]
    return p + (k,)


def _merge(a: Partition, b: Partition) -> Partition:
    if not a:
        return b
    if not b:
        return a
    return tuple(sorted(a + b, reverse=True))


_CP_RE = re.compile(r"\s*(\d+)\s*:\s*\[\s*([\d\s,]*)\]\s*")


def parse_colored_partition(text: str, rank: int) -> ColoredPartition:
    """Parse ``{1:[2,1], 3:[1]}`` (1-based node labels)."""
    s = text.strip()
    if not (s.startswith("{") and s.endswith("}")):
        raise ValueError(f"colored partition must be enclosed in braces: {text!r}")
    body = s[1:-1].strip()
    parts: List[List[int]] = [[] for _ in range(rank)]
    if body:
        for chunk in _split_top(body):
            m = _CP_RE.fullmatch(chunk)
            if not m:
                raise ValueError(f"cannot parse colored-partition entry {chunk!r}")
            node = int(m.group(1))
            if not 1 <= node <= rank:
                raise ValueError(f"node {node} out of range 1..{rank}")
            vals = [int(x) for x in m.group(2).replace(" ", "").split(",") if x]
            parts[node - 1].extend(vals)
    return ColoredPartition(parts)


def _split_top(body: str) -> List[str]:
    out, depth, cur = [], 0, ""
    for ch in body:
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
        else:
            cur += ch
    if cur.strip():
        out.append(cur)
    return out


# -- partitions -----------------------------------------------------------------

@lru_cache(maxsize=None)
def partitions(n: int, max_part: int = None) -> Tuple[Partition, ...]:
    """All partitions of n (parts <= max_part), reverse-lexicographic."""
    if max_part is None or max_part > n:
        max_part = n
    if n == 0:
        return ((),)
    out = []
    for first in range(max_part, 0, -1):
        for rest in partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


@lru_cache(maxsize=None)
def colored_partitions(n: int, rank: int) -> Tuple[ColoredPartition, ...]:
    """All colored partitions of total n over ``rank`` colors; deterministic order."""
    out = []
    for split in _compositions_weak(n, rank):
        for combo in product(*(partitions(s) for s in split)):
            out.append(ColoredPartition._make(combo))
    return tuple(out)


def _compositions_weak(n: int, k: int) -> Iterator[Tuple[int, ...]]:
    if k == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _compositions_weak(n - first, k - 1):
            yield (first,) + rest


def multiplicities(p: Partition) -> Dict[int, int]:
    m: Dict[int, int] = {}
    for x in p:
        m[x] = m.get(x, 0) + 1
    return m


def z_lambda(p: Partition) -> int:
    z = 1
    for k, m in multiplicities(p).items():
        z *= k ** m * factorial(m)
    return z


# -- single-color transitions ------------------------------------------------------
# A single-color element is a dict Partition -> coefficient.

def _mul_sym(a: Dict[Partition, object], b: Dict[Partition, object]) -> Dict[Partition, object]:
    out: Dict[Partition, object] = {}
    for pa, ca in a.items():
        for pb, cb in b.items():
            key = _merge(pa, pb)
            out[key] = out.get(key, 0) + ca * cb
    return {k: v for k, v in out.items() if v}


@lru_cache(maxsize=None)
def _h_gen_in_p(k: int) -> Tuple[Tuple[Partition, Fraction], ...]:
    """Complete homogeneous h_k in power sums, via k h_k = sum_{m=1..k} p_m h_{k-m}."""
    if k == 0:
        return (((), Fraction(1)),)
    acc: Dict[Partition, Fraction] = {}
    for m in range(1, k + 1):
        for part, c in _h_gen_in_p(k - m):
            key = _insert_part(part, m)
            acc[key] = acc.get(key, 0) + c
    return tuple(sorted(((p, Fraction(c, k)) for p, c in acc.items() if c), reverse=True))


@lru_cache(maxsize=None)
def _p_gen_in_h(k: int) -> Tuple[Tuple[Partition, int], ...]:
    """Power sum p_k in complete homogeneous functions, via p_k = k h_k - sum_{m<k} p_m h_{k-m}."""
    acc: Dict[Partition, int] = {(k,): k}
    for m in range(1, k):
        for part, c in _p_gen_in_h(m):
            key = _insert_part(part, k - m)
            acc[key] = acc.get(key, 0) - c
    return tuple(sorted(((p, c) for p, c in acc.items() if c), reverse=True))


@lru_cache(maxsize=None)
def h_monomial_in_p(part: Partition) -> Tuple[Tuple[Partition, Fraction], ...]:
    acc: Dict[Partition, object] = {(): Fraction(1)}
    for k in part:
        acc = _mul_sym(acc, dict(_h_gen_in_p(k)))
    return tuple(sorted(acc.items(), reverse=True))


@lru_cache(maxsize=None)
def p_monomial_in_h(part: Partition) -> Tuple[Tuple[Partition, int], ...]:
    acc: Dict[Partition, object] = {(): 1}
    for k in part:
        acc = _mul_sym(acc, dict(_p_gen_in_h(k)))
    return tuple(sorted(acc.items(), reverse=True))


# -- SymVector ------------------------------------------------------------------------

class SymVector:
    """Sparse linear combination of colored-partition monomials in one basis."""

    __slots__ = ("basis", "terms")

    def __init__(self, basis: str, terms: Dict[ColoredPartition, LaurentPoly] = None):
        if basis not in (HBASIS, PBASIS):
            raise ValueError(f"unknown basis tag {basis!r}")
        self.basis = basis
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def one(cls, basis: str, rank: int) -> "SymVector":
        return cls(basis, {ColoredPartition.empty(rank): ONE})

    @classmethod
    def monomial(cls, basis: str, cp: ColoredPartition, coeff=ONE) -> "SymVector":
        return cls(basis, {cp: LaurentPoly.coerce(coeff)})

    def __eq__(self, other):
        if not isinstance(other, SymVector):
            return NotImplemented
        return self.basis == other.basis and self.terms == other.terms

    def __add__(self, other: "SymVector") -> "SymVector":
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, ZERO) + v
        return SymVector(self.basis, out)

    def __sub__(self, other: "SymVector") -> "SymVector":
        return self + other.scale(-1)

    def scale(self, c) -> "SymVector":
        c = LaurentPoly.coerce(c)
        return SymVector(self.basis, {k: v * c for k, v in self.terms.items()})

    def _check(self, other):
        if self.basis != other.basis:
            raise ValueError(f"basis mismatch: {self.basis} vs {other.basis}")

    def is_zero(self) -> bool:
        return not self.terms

    def is_integral(self) -> bool:
        return all(c.is_integral() for c in self.terms.values())

    def energy_component(self, d: int) -> "SymVector":
        return SymVector(self.basis, {k: v for k, v in self.terms.items() if k.total == d})

    def items(self):
        return sorted(self.terms.items())

    def __repr__(self):
        body = " + ".join(f"({c}){k.render()}" for k, c in self.items()) or "0"
        return f"SymVector[{self.basis}]({body})"


def _convert(v: SymVector, table: Callable[[Partition], Sequence], target: str) -> SymVector:
    out: Dict[ColoredPartition, LaurentPoly] = {}
    for cp, coeff in v.terms.items():
        per_color = [table(p) for p in cp]
        for combo in product(*per_color):
            c = Fraction(1)
            for _, x in combo:
                c *= x
            key = ColoredPartition._make(tuple(p for p, _ in combo))
            out[key] = out.get(key, ZERO) + coeff * c
    return SymVector(target, out)


def to_power_sums(v: SymVector) -> SymVector:
    if v.basis != HBASIS:
        raise ValueError("to_power_sums expects an HBASIS vector")
    return _convert(v, h_monomial_in_p, PBASIS)


def to_h_basis(v: SymVector) -> SymVector:
    if v.basis != PBASIS:
        raise ValueError("to_h_basis expects a PBASIS vector")
    return _convert(v, p_monomial_in_h, HBASIS)


# -- Heisenberg pairing and action -------------------------------------------------------

def pair_ht(datum: RootDatum, i: int, j: int, k: int) -> LaurentPoly:
    """Contraction [ht(i,k), ht(j,-k)] = k [k a_ij] / [k] in closed form."""
    if k < 1:
        raise ValueError("pair_ht needs k >= 1")
    a = datum.cartan[i][j]
    if a == 2:
        return LaurentPoly({k: k, -k: k})
    if a == -1:
        return LaurentPoly.const(-k)
    return ZERO


def pair_ratio(datum: RootDatum, i: int, j: int, k: int) -> LaurentPoly:
    """pair_ht / k = [k a_ij]/[k], the entry of [A] at q^k."""
    a = datum.cartan[i][j]
    if a == 2:
        return LaurentPoly({k: 1, -k: 1})
    if a == -1:
        return LaurentPoly.const(-1)
    return ZERO


def act_annihilate(datum: RootDatum, i: int, k: int, v: SymVector) -> SymVector:
    """pi(ht(i,k)) as a derivation on power-sum monomials."""
    if v.basis != PBASIS:
        raise ValueError("act_annihilate acts on PBASIS vectors")
    if k < 1:
        raise ValueError("k must be positive")
    out: Dict[ColoredPartition, LaurentPoly] = {}
    pairs = [pair_ht(datum, i, j, k) for j in datum.nodes]
    for cp, coeff in v.terms.items():
        for j, part in enumerate(cp):
            c = pairs[j]
            if not c:
                continue
            mult = part.count(k)
            if not mult:
                continue
            idx = part.index(k)
            parts = list(cp)
            parts[j] = part[:idx] + part[idx + 1:]
            key = ColoredPartition._make(parts)
            out[key] = out.get(key, ZERO) + coeff * c * mult
    return SymVector(PBASIS, out)


def act_create(i: int, k: int, v: SymVector) -> SymVector:
    """Multiplication by ht(i,-k) (PBASIS) or Pt(i,k) (HBASIS)."""
    if k < 1:
        raise ValueError("k must be positive")
    return SymVector(v.basis, {cp.with_part(i, k): c for cp, c in v.terms.items()})


def act_annihilate_h(datum: RootDatum, i: int, k: int, v: SymVector) -> SymVector:
    """pi(ht(i,k)) directly on HBASIS: a derivation with Pt(j,m) -> ([k a_ij]/[k]) Pt(j,m-k).

    The coefficients are integral, so the lattice is visibly preserved.
    """
    if v.basis != HBASIS:
        raise ValueError("act_annihilate_h acts on HBASIS vectors")
    return SymVector(HBASIS, annihilate_h_terms(datum, i, k, v.terms))


def annihilate_h_terms(datum, i, k, terms):
    ratios = [pair_ratio(datum, i, j, k) for j in datum.nodes]
    out: Dict[ColoredPartition, LaurentPoly] = {}
    for cp, coeff in terms.items():
        for j, part in enumerate(cp):
            c = ratios[j]
            if not c:
                continue
            seen = set()
            for idx, m in enumerate(part):
                if m < k or m in seen:
                    continue
                seen.add(m)
                mult = part.count(m)
                rest = part[:idx] + part[idx + 1:]
                parts = list(cp)
                parts[j] = _insert_part(rest, m - k)
                key = ColoredPartition._make(parts)
                out[key] = out.get(key, ZERO) + coeff * c * mult
    return {k_: v for k_, v in out.items() if v}


# -- generating series ---------------------------------------------------------

def exp_series(coeffs: Sequence[LaurentPoly], order: int) -> List[LaurentPoly]:
    """Coefficients 0..order of exp(sum_{k>=1} coeffs[k] x^k); coeffs[0] is ignored.

    Uses n E_n = sum_{k=1..n} k B_k E_{n-k}.
    """
    E = [ONE]
    for n in range(1, order + 1):
        acc = ZERO
        for k in range(1, n + 1):
            if k < len(coeffs) and coeffs[k]:
                acc = acc + coeffs[k] * E[n - k] * k
        E.append(acc * Fraction(1, n))
    return E


def f_series(datum: RootDatum, i: int, j: int, order: int) -> List[LaurentPoly]:
    """Coefficients of (uv)^m, m <= order, of f_ij(u, v)."""
    a = datum.cartan[i][j]
    if a == 0:
        return [ONE] + [ZERO] * order
    if a == -1:
        return ([ONE, LaurentPoly.const(-1)] + [ZERO] * order)[: order + 1]
    return [qint(m + 1) for m in range(order + 1)]


def elementary_in_h(a: int) -> Dict[Partition, int]:
    """P^-_a = (-1)^a e_a in the h basis (coefficient of u^a in 1/H(u))."""
    out: Dict[Partition, int] = {}
    for lam in partitions(a):
        m = multiplicities(lam)
        c = factorial(len(lam))
        for x in m.values():
            c //= factorial(x)
        out[lam] = (-1) ** len(lam) * c
    return out


def creation_series_h(weights: Callable[[int], LaurentPoly], a: int) -> Dict[Partition, LaurentPoly]:
    """Degree-a coefficient of exp(sum_k weights(k) p_k u^k), in the h basis (one color)."""
    out: Dict[Partition, LaurentPoly] = {}
    for lam in partitions(a):
        c = ONE
        for k, m in multiplicities(lam).items():
            c = c * (weights(k) ** m) * Fraction(1, factorial(m))
        for part, x in p_monomial_in_h(lam):
            out[part] = out.get(part, ZERO) + c * x
    return {p: c for p, c in out.items() if c}


def heisenberg_generating_check(datum: RootDatum, i: int, j: int, order: int) -> bool:
    """Apply exp(sum_k pi(ht(i,k)) u^k / k) to Pt_j^-(v).1 and compare with f_ij(u,v) Pt_j^-(v).1.

    Everything is done in PBASIS with explicit act_annihilate compositions; the
    comparison is coefficientwise in u^a v^b for a, b <= order.
    """
    n = datum.rank
    # Pt_j^-(v) coefficients: v^b -> h_b of color j, in power sums
    state = {}
    for b in range(order + 1):
        parts = [()] * n
        parts[j] = (b,) if b else ()
        state[b] = to_power_sums(SymVector.monomial(HBASIS, ColoredPartition._make(parts)))
    f = f_series(datum, i, j, order)
    for b in range(order + 1):
        # exp(D) with D = sum_k ht(i,k) u^k / k; coefficient of u^a
        lhs_by_a = _exp_annihilators(datum, i, state[b], order)
        for a in range(order + 1):
            # rhs coefficient of u^a v^b: f_m with (uv)^m, so a = m and v^{b-m} from Pt
            if a <= b:
                rhs = state[b - a].scale(f[a])
            else:
                rhs = SymVector(PBASIS)
            if lhs_by_a[a] != rhs:
                return False
    return True


def _exp_annihilators(datum, i, v: SymVector, order: int) -> List[SymVector]:
    """Coefficients u^0..u^order of exp(sum_k act_annihilate(i,k)/k u^k) v."""
    # T_a = coefficient of u^a; a T_a = sum_{k=1..a} k * (1/k) D_k T_{a-k}  (derivations commute)
    T = [v]
    for a in range(1, order + 1):
        acc = SymVector(PBASIS)
        for k in range(1, a + 1):
            acc = acc + act_annihilate(datum, i, k, T[a - k])
        T.append(acc.scale(Fraction(1, a)))
    return T

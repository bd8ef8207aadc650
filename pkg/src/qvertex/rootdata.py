"""ADE root data: Cartan matrices, positive roots, the sign cocycle, q-Cartan
determinants and Coxeter numbers.

Root-lattice elements are plain integer tuples (coordinates in the simple-root
basis).  Nodes are numbered 1..n in the Bourbaki convention; Python indices
are 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .qarith import ONE, ZERO, CyclotomicNum, LaurentPoly, exact_div, qint, specialize_power

QElement = Tuple[int, ...]


class InvalidRootDatum(ValueError):
    pass


def _edges(family: str, n: int) -> List[Tuple[int, int]]:
    if family == "A":
        return [(k, k + 1) for k in range(n - 1)]
    if family == "D":
        return [(k, k + 1) for k in range(n - 2)] + [(n - 3, n - 1)]
    if family == "E":
        # 1-3-4-5-6-7-8 with 2 attached to 4
        return [(0, 2), (2, 3), (3, 4), (1, 3)] + [(k, k + 1) for k in range(4, n - 1)]
    raise InvalidRootDatum(f"unknown family {family!r}")


def validate_type(family: str, rank: int) -> None:
    if family == "A" and rank >= 1:
        return
    if family == "D" and rank >= 4:
        return
    if family == "E" and rank in (6, 7, 8):
        return
    raise InvalidRootDatum(
        f"({family}, {rank}) is not an ADE type; need A_n (n>=1), D_n (n>=4) or E_6/E_7/E_8"
    )


def coxeter_number(family: str, rank: int) -> int:
    validate_type(family, rank)
    if family == "A":
        return rank + 1
    if family == "D":
        return 2 * rank - 2
    return {6: 12, 7: 18, 8: 30}[rank]


@dataclass(frozen=True)
class RootDatum:
    family: str
    rank: int
    cartan: Tuple[Tuple[int, ...], ...]
    positive_roots: Tuple[QElement, ...]
    theta: QElement
    coxeter: int
    eps_table: Tuple[Tuple[int, ...], ...]
    _eps_parity: Tuple[Tuple[int, ...], ...] = field(repr=False, compare=False, default=())

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    @property
    def nodes(self) -> range:
        return range(self.rank)

    def simple_root(self, i: int) -> QElement:
        v = [0] * self.rank
        v[i] = 1
        return tuple(v)

    def zero(self) -> QElement:
        return (0,) * self.rank

    def adjacent(self, i: int, j: int) -> bool:
        return self.cartan[i][j] == -1

    def pairing(self, a: Sequence[int], b: Sequence[int]) -> int:
        A = self.cartan
        n = self.rank
        total = 0
        for i in range(n):
            ai = a[i]
            if ai:
                row = A[i]
                s = 0
                for j in range(n):
                    if b[j] and row[j]:
                        s += row[j] * b[j]
                total += ai * s
        return total

    def pairing_with_simple(self, a: Sequence[int], i: int) -> int:
        row = self.cartan[i]
        return sum(row[j] * a[j] for j in range(self.rank) if a[j])

    def norm2(self, a: Sequence[int]) -> int:
        """(a, a) / 2, always an integer for ADE lattices."""
        return self.pairing(a, a) // 2

    def cocycle(self, a: Sequence[int], b: Sequence[int]) -> int:
        """Bimultiplicative sign with eps(alpha_i, alpha_j) = (-1)^{a_ij} for i > j, else 1."""
        par = self._eps_parity
        n = self.rank
        e = 0
        for i in range(n):
            if a[i] & 1:
                row = par[i]
                for j in range(n):
                    if row[j] and b[j] & 1:
                        e ^= 1
        return -1 if e else 1

    def height(self, a: Sequence[int]) -> int:
        return sum(a)

    def summary(self) -> dict:
        return {
            "type": self.family,
            "rank": self.rank,
            "cartan": [list(r) for r in self.cartan],
            "coxeter": self.coxeter,
            "num_positive_roots": len(self.positive_roots),
            "theta": list(self.theta),
            "det": str(qcartan_det(self)),
        }


def add(a: Sequence[int], b: Sequence[int]) -> QElement:
    return tuple(x + y for x, y in zip(a, b))


def sub(a: Sequence[int], b: Sequence[int]) -> QElement:
    return tuple(x - y for x, y in zip(a, b))


def scale(k: int, a: Sequence[int]) -> QElement:
    return tuple(k * x for x in a)


def _closure(cartan, n) -> List[QElement]:
    simple = []
    for i in range(n):
        v = [0] * n
        v[i] = 1
        simple.append(tuple(v))
    roots = set(simple)
    frontier = list(simple)
    while frontier:
        new = []
        for beta in frontier:
            for i in range(n):
                # simply laced: beta + alpha_i is a root iff (beta, alpha_i) = -1
                p = sum(cartan[i][j] * beta[j] for j in range(n))
                if p == -1:
                    gamma = list(beta)
                    gamma[i] += 1
                    gamma = tuple(gamma)
                    if gamma not in roots:
                        roots.add(gamma)
                        new.append(gamma)
        frontier = new
    return sorted(roots, key=lambda r: (sum(r), tuple(-x for x in r)))


@lru_cache(maxsize=None)
def build_root_datum(family: str, rank: int) -> RootDatum:
    family = family.upper()
    validate_type(family, rank)
    n = rank
    A = [[0] * n for _ in range(n)]
    for i in range(n):
        A[i][i] = 2
    for i, j in _edges(family, n):
        A[i][j] = A[j][i] = -1
    cartan = tuple(tuple(r) for r in A)
    roots = tuple(_closure(cartan, n))
    theta = max(roots, key=sum)
    eps = tuple(
        tuple((-1) ** (A[i][j] % 2) if i > j else 1 for j in range(n)) for i in range(n)
    )
    parity = tuple(tuple(1 if eps[i][j] == -1 else 0 for j in range(n)) for i in range(n))
    return RootDatum(
        family=family,
        rank=n,
        cartan=cartan,
        positive_roots=roots,
        theta=theta,
        coxeter=coxeter_number(family, n),
        eps_table=eps,
        _eps_parity=parity,
    )


def parse_type(text: str) -> RootDatum:
    """``"A2"``, ``"D4"``, ``"E8"`` -> datum."""
    text = text.strip().upper()
    if len(text) < 2 or not text[1:].isdigit():
        raise InvalidRootDatum(f"cannot parse type {text!r}")
    return build_root_datum(text[0], int(text[1:]))


# -- q-Cartan matrix ----------------------------------------------------------

def qcartan(datum: RootDatum) -> List[List[LaurentPoly]]:
    return [[qint(a) for a in row] for row in datum.cartan]


def cofactor_det(M: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    """Laplace expansion along rows, memoised on the set of remaining columns."""
    n = len(M)
    memo: Dict[int, LaurentPoly] = {}

    def minor(row: int, cols: int) -> LaurentPoly:
        if row == n:
            return ONE
        hit = memo.get(cols)
        if hit is not None:
            return hit
        total = ZERO
        sign_pos = 0
        for c in range(n):
            if cols >> c & 1:
                entry = M[row][c]
                if entry:
                    sub_det = minor(row + 1, cols & ~(1 << c))
                    if sub_det:
                        term = entry * sub_det
                        total = total - term if sign_pos & 1 else total + term
                sign_pos += 1
        memo[cols] = total
        return total

    return minor(0, (1 << n) - 1)


def bareiss_det(M: Sequence[Sequence[LaurentPoly]]) -> LaurentPoly:
    """Fraction-free elimination over Z[q, q^-1]."""
    n = len(M)
    a = [list(r) for r in M]
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if a[k][k].is_zero():
            swap = next((r for r in range(k + 1, n) if not a[r][k].is_zero()), None)
            if swap is None:
                return ZERO
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = exact_div(a[i][j] * a[k][k] - a[i][k] * a[k][j], prev)
        prev = a[k][k]
    return a[n - 1][n - 1] if sign == 1 else -a[n - 1][n - 1]


@lru_cache(maxsize=None)
def _det_cached(family: str, rank: int) -> LaurentPoly:
    return cofactor_det(qcartan(build_root_datum(family, rank)))


def qcartan_det(datum: RootDatum) -> LaurentPoly:
    return _det_cached(datum.family, datum.rank)


def classical_det(datum: RootDatum) -> int:
    M = [[LaurentPoly.const(a) for a in row] for row in datum.cartan]
    return cofactor_det(M).constant_value()


@dataclass
class NonvanishingReport:
    type: str
    l: int
    kmax: int
    zeros: List[int]
    coprime: bool

    def as_dict(self) -> dict:
        return {"type": self.type, "l": self.l, "kmax": self.kmax,
                "zeros": self.zeros, "coprime": self.coprime}


def detq_nonvanishing(datum: RootDatum, l: int, kmax: int) -> NonvanishingReport:
    """Evaluate det[A] at zeta_l^k for k = 1..kmax and list the k where it vanishes."""
    from math import gcd

    if l < 1:
        raise ValueError("l must be positive")
    det = qcartan_det(datum)
    zeros = [k for k in range(1, kmax + 1) if specialize_power(det, l, k).is_zero()]
    return NonvanishingReport(datum.name, l, kmax, zeros, gcd(l, datum.coxeter) == 1)


def det_at(datum: RootDatum, l: int, k: int) -> CyclotomicNum:
    return specialize_power(qcartan_det(datum), l, k)


# -- closed forms -------------------------------------------------------------------

def det_closed_form(datum: RootDatum) -> LaurentPoly:
    """Tabulated det[A]; for D_n this is [2](q^(n-1) + q^(1-n))."""
    n = datum.rank
    P = lambda d: LaurentPoly(d)
    if datum.family == "A":
        return qint(n + 1)
    if datum.family == "D":
        return qint(2) * P({n - 1: 1, 1 - n: 1})
    return {
        6: P({4: 1, -4: 1, 0: -1}) * P({2: 1, 0: 1, -2: 1}),
        7: qint(2) * P({6: 1, -6: 1, 0: -1}),
        8: P({8: 1, 6: 1, -6: 1, -8: 1, 2: -1, 0: -1, -2: -1}),
    }[n]


def det_closed_form_dn_symmetric_typo(n: int) -> LaurentPoly:
    """[2](q^(n-1) + q^(n-1)), a commonly printed but incorrect D_n variant."""
    return qint(2) * LaurentPoly({n - 1: 2})

"""Specialisation of the lattice at a primitive l-th root of unity.

Everything here is exact: coefficients live in Q(zeta_l) as
:class:`CyclotomicNum`.  ``l = 0`` stands for generic q; generic ranks are
certified by evaluating at q = 2 (a nonzero minor there is nonzero as a
rational function, so full rank at q = 2 implies full generic rank).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .fock import FockSpace, FockVector, Label, render_label
from .linalg import nullspace, rank
from .qarith import CyclotomicNum, LaurentPoly, specialize, specialize_power
from .rootdata import RootDatum, det_at, qcartan_det
from .symcore import ColoredPartition, colored_partitions, pair_ratio

GENERIC_POINT = Fraction(2)


class CoprimalityViolation(ArithmeticError):
    """The level-k pairing matrix is singular at zeta."""

    def __init__(self, datum: RootDatum, l: int, k: int, det: CyclotomicNum):
        self.datum, self.l, self.k, self.det = datum, l, k, det
        super().__init__(
            f"coprimality violated: pairing matrix of {datum.name} at level k={k} is singular "
            f"at a primitive {l}-th root of unity (det[A] at zeta^{k} = {det}); "
            f"gcd({l}, {datum.coxeter}) = {gcd(l, datum.coxeter)}"
        )


# -- scalar fields -------------------------------------------------------------------

class _Field:
    """Conversion of Laurent coefficients into the target field."""

    def __init__(self, l: int):
        if l < 0:
            raise ValueError("l must be >= 0")
        self.l = l
        self._cache: Dict[LaurentPoly, object] = {}
        if l == 0:
            self.one, self.zero = Fraction(1), Fraction(0)
        else:
            self.one, self.zero = CyclotomicNum.from_int(l, 1), CyclotomicNum.from_int(l, 0)

    def __call__(self, p: LaurentPoly):
        hit = self._cache.get(p)
        if hit is None:
            hit = Fraction(p.evaluate(GENERIC_POINT)) if self.l == 0 else specialize(p, self.l)
            self._cache[p] = hit
        return hit


# -- specialised vectors ---------------------------------------------------------------

class SpecializedVector:
    """A vector of the specialised module: label -> CyclotomicNum, no zero entries."""

    __slots__ = ("l", "terms")

    def __init__(self, l: int, terms: Optional[Dict[Label, CyclotomicNum]] = None):
        self.l = l
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    def __add__(self, other: "SpecializedVector") -> "SpecializedVector":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return SpecializedVector(self.l, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c) -> "SpecializedVector":
        return SpecializedVector(self.l, {k: v * c for k, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, SpecializedVector) and self.l == other.l and self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def items(self):
        return sorted(self.terms.items(), key=lambda kv: render_label(kv[0]))

    def render(self) -> List[Tuple[str, str]]:
        return [(render_label(k), str(v)) for k, v in self.items()]

    def __repr__(self):
        return f"SpecializedVector(l={self.l}, {dict(self.render())})"


def specialize_vector(v: FockVector, l: int) -> SpecializedVector:
    """Coefficientwise q -> zeta_l; only lattice vectors can be specialised."""
    if l < 1:
        raise ValueError("l must be a positive integer")
    if not v.is_lattice():
        raise ValueError("cannot specialise a vector with non-integral coefficients")
    return SpecializedVector(l, {k: specialize(c, l) for k, c in v.terms.items()})


def specialized_apply(space: FockSpace, op: Callable[[FockVector], FockVector],
                      w: SpecializedVector) -> SpecializedVector:
    """Push a lattice-preserving operator down to the specialised module."""
    F = _Field(w.l)
    out: Dict[Label, CyclotomicNum] = {}
    for label, c in w.terms.items():
        img = op(FockVector({label: LaurentPoly.const(1)}))
        if not img.is_lattice():
            raise ValueError("operator does not preserve the lattice")
        for k2, c2 in img.terms.items():
            val = F(c2) * c
            out[k2] = out[k2] + val if k2 in out else val
    return SpecializedVector(w.l, out)


# -- weights at a root of unity -----------------------------------------------------------

def split_weight(values: Sequence[int], l: int) -> Tuple[List[int], List[int]]:
    """Write each value as v' + l v'' with 0 <= v' < l."""
    if l < 1:
        raise ValueError("l must be positive")
    low = [v % l for v in values]
    high = [(v - r) // l for v, r in zip(values, low)]
    return low, high


def weight_labels(space: FockSpace, label: Label, l: int) -> dict:
    """K-exponents and D-exponent of a basis label, with their l-adic splits."""
    w = space.weight(label)
    mu = w.k_exponents(space.datum)
    mu1, mu2 = split_weight(mu, l)
    n1, n2 = split_weight([w.d_exponent()], l)
    return {"mu": mu, "mu_low": mu1, "mu_high": mu2, "n": w.d_exponent(), "n_low": n1[0], "n_high": n2[0]}


# -- dual Heisenberg elements ------------------------------------------------------------

def _solve(M: List[List[object]], one, zero) -> Optional[List[List[object]]]:
    """Inverse of a square matrix by Gauss-Jordan, or None if singular."""
    n = len(M)
    a = [list(row) + [one if c == r else zero for c in range(n)] for r, row in enumerate(M)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col]), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        inv = p.inverse() if hasattr(p, "inverse") else 1 / p
        a[col] = [x * inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def pairing_matrix(datum: RootDatum, k: int, l: int) -> List[List[CyclotomicNum]]:
    """[k a_ij]/[k] evaluated at zeta_l, i.e. the contraction ht(i,k) . Pt_j^- per unit shift."""
    return [[specialize(pair_ratio(datum, i, j, k), l) for j in datum.nodes] for i in datum.nodes]


@dataclass
class DualHeisenberg:
    """h^{i,k} = sum_j coeffs[j] ht(j,k) at q = zeta_l."""

    datum: RootDatum
    i: int
    k: int
    l: int
    coeffs: List[CyclotomicNum] = field(default_factory=list)

    def apply(self, space: FockSpace, w: SpecializedVector) -> SpecializedVector:
        out = SpecializedVector(self.l)
        for j, b in enumerate(self.coeffs):
            if b:
                out = out + specialized_apply(space, lambda v, j=j: space.apply_ht(j, self.k, v), w).scale(b)
        return out

    def commutator_with_creation(self, space: FockSpace, j: int, w: SpecializedVector) -> SpecializedVector:
        """[h^{i,k}, ht(j,-k)] applied to w."""
        create = lambda v: space.apply_ht(j, -self.k, v)
        left = self.apply(space, specialized_apply(space, create, w))
        right = specialized_apply(space, create, self.apply(space, w))
        return left - right

    def as_dict(self) -> dict:
        return {"i": self.i + 1, "k": self.k, "l": self.l, "coeffs": [str(b) for b in self.coeffs]}


def dual_heisenberg(datum: RootDatum, i: int, k: int, l: int) -> DualHeisenberg:
    """Coefficients b with [h^{i,k}, ht(j,-k)] = delta_ij, via b = (k M(k))^-1."""
    if k < 1 or l < 1:
        raise ValueError("k and l must be positive")
    one, zero = CyclotomicNum.from_int(l, 1), CyclotomicNum.from_int(l, 0)
    M = [[x * k for x in row] for row in pairing_matrix(datum, k, l)]
    inv = _solve(M, one, zero)
    if inv is None:
        raise CoprimalityViolation(datum, l, k, det_at(datum, l, k))
    return DualHeisenberg(datum, i, k, l, list(inv[i]))


def dual_basis(datum: RootDatum, l: int, kmax: int) -> List[DualHeisenberg]:
    """All h^{i,k} with k <= kmax; raises on the first singular level."""
    return [dual_heisenberg(datum, i, k, l) for k in range(1, kmax + 1) for i in datum.nodes]


# -- kernels -----------------------------------------------------------------------------

def _operator_rows(space: FockSpace, op: Callable[[FockVector], FockVector], cols: List[Label],
                   F: _Field, rows: Dict[Label, Dict[int, object]]) -> None:
    for c, label in enumerate(cols):
        img = op(FockVector({label: LaurentPoly.const(1)}))
        for k2, val in img.terms.items():
            x = F(val)
            if x:
                rows.setdefault(k2, {})[c] = x


def heisenberg_kernel(datum: RootDatum, l: int, depth: int) -> List[int]:
    """Joint kernel dimension of {ht(i,k)} on each energy-d piece of U^-(0), d = 1..depth."""
    space = FockSpace(datum)
    F = _Field(l)
    zero_eta = datum.zero()
    dims = []
    for d in range(1, depth + 1):
        cols = [(cp, zero_eta) for cp in colored_partitions(d, datum.rank)]
        blocks: List[Dict[int, object]] = []
        for i in datum.nodes:
            for k in range(1, d + 1):
                rows: Dict[Label, Dict[int, object]] = {}
                _operator_rows(space, lambda v, i=i, k=k: space.apply_ht(i, k, v), cols, F, rows)
                blocks.extend(rows.values())
        dims.append(len(cols) - rank(blocks, len(cols)))
    return dims


@dataclass
class SingularReport:
    type: str
    l: int
    depth: int
    signs: Tuple[int, ...]
    components_checked: int
    vacuum_excluded: bool
    candidates: List[Tuple[Tuple[int, ...], int, SpecializedVector]]
    dimension_checks: int

    @property
    def singular_found(self) -> bool:
        return bool(self.candidates)

    def as_dict(self) -> dict:
        return {
            "type": self.type, "l": self.l, "depth": self.depth,
            "raising": ["x+" if s > 0 else "x-" for s in self.signs],
            "components_checked": self.components_checked,
            "vacuum_excluded": self.vacuum_excluded,
            "singular_found": self.singular_found,
            "candidates": [{"eta": list(e), "energy": d, "vector": v.render()} for e, d, v in self.candidates],
        }


def singular_vector_search(datum: RootDatum, l: int, depth: int, signs: Sequence[int] = (1, -1)) -> SingularReport:
    """Vectors of energy 1..depth killed by every ht(i,k) and every x^{sign}_{i,m} staying in the window.

    ``signs=(1,)`` restricts to the raising half; with it, extremal vectors
    such as 1 (x) e^{2 theta} near the window edge show up as spurious hits.
    """
    space = FockSpace(datum)
    F = _Field(l)
    character = space.character(depth)
    candidates = []
    checked = 0
    dim_checks = 0
    for eta in space.etas_up_to(depth):
        e0 = datum.norm2(eta)
        for d in range(max(e0, 1), depth + 1):
            cols = space.component(eta, d)
            if len(cols) != character[(eta, d)]:
                raise AssertionError(f"weight space ({eta}, {d}) has the wrong dimension")
            dim_checks += 1
            checked += 1
            rows: Dict[Label, Dict[int, object]] = {}
            blocks: List[Dict[int, object]] = []
            for i in datum.nodes:
                for k in range(1, d + 1):
                    rows = {}
                    _operator_rows(space, lambda v, i=i, k=k: space.apply_ht(i, k, v), cols, F, rows)
                    blocks.extend(rows.values())
                for s in signs:
                    for m in range(d - depth, d + 1):
                        rows = {}
                        _operator_rows(space, lambda v, i=i, s=s, m=m: space.apply_x(i, s, m, v), cols, F, rows)
                        blocks.extend(rows.values())
            for vec in nullspace(blocks, len(cols), F.one, F.zero):
                sv = SpecializedVector(l, {cols[c]: x for c, x in enumerate(vec) if x})
                candidates.append((eta, d, sv))
    return SingularReport(datum.name, l, depth, tuple(signs), checked, True, candidates, dim_checks)


def irreducibility_report(datum: RootDatum, l: int, depth: int) -> dict:
    """Kernel dimensions, dual-basis status and singular-vector search in one record."""
    det = qcartan_det(datum)
    det_checks = []
    dual_ok = True
    for k in range(1, depth + 1):
        val = specialize_power(det, l, k)
        det_checks.append({"k": k, "det": str(val), "zero": val.is_zero()})
        try:
            for i in datum.nodes:
                dual_heisenberg(datum, i, k, l)
        except CoprimalityViolation:
            dual_ok = False
    kernel = heisenberg_kernel(datum, l, depth)
    search = singular_vector_search(datum, l, depth)
    return {
        "type": datum.family, "rank": datum.rank, "l": l, "depth": depth,
        "coprime": gcd(l, datum.coxeter) == 1,
        "kernel_dims": kernel,
        "dual_basis_ok": dual_ok,
        "singular_found": search.singular_found,
        "num_candidates": len(search.candidates),
        "det_checks": det_checks,
    }

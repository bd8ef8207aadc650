"""Independent routes to quantities the fock module computes.

* :func:`x_via_power_sums` rebuilds the vertex-operator coefficients in the
  power-sum basis from the Heisenberg derivations, with no substitution series.
* :func:`verify_product_formula` evaluates the symmetrised product of r
  vertex operators in closed form and compares it with r! times iterated
  :meth:`FockSpace.apply_x`.
* :func:`character_oracle` counts weights from a generating function and a
  brute-force lattice enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import factorial
from typing import Dict, List, Optional, Sequence, Tuple

from ..fock import FockSpace, FockVector, LatticeViolation, Label, render_label
from ..qarith import ONE, ZERO, LaurentPoly, qfact
from ..rootdata import RootDatum, add, scale
from ..symcore import (
    HBASIS,
    PBASIS,
    ColoredPartition,
    SymVector,
    _merge,
    act_annihilate,
    f_series,
    partitions,
    to_h_basis,
    to_power_sums,
)
from .multivar import MultivarLaurent, vandermonde


# -- power-sum route -------------------------------------------------------------------

def _ann_weight(sign: int, k: int) -> LaurentPoly:
    return LaurentPoly.monomial(-k, Fraction(-1, k)) if sign > 0 else LaurentPoly.const(Fraction(1, k))


def _cre_weight(sign: int, k: int) -> LaurentPoly:
    return LaurentPoly.const(Fraction(1, k)) if sign > 0 else LaurentPoly.monomial(k, Fraction(-1, k))


def _exp_derivations(datum: RootDatum, i: int, sign: int, v: SymVector) -> Dict[int, SymVector]:
    """exp(sum_k t_k ht(i,k) z^-k) v, graded by the power of z^-1."""
    top = max((cp.total for cp in v.terms), default=0)
    graded = {0: v}
    for k in range(1, top + 1):
        t = _ann_weight(sign, k)
        nxt: Dict[int, SymVector] = {}
        for b, w in graded.items():
            term, m = w, 0
            while not term.is_zero():
                nxt[b + k * m] = nxt[b + k * m] + term if b + k * m in nxt else term
                m += 1
                term = act_annihilate(datum, i, k, term).scale(t * Fraction(1, m))
        graded = nxt
    return graded


def _creation_poly(i: int, sign: int, a: int, rank: int) -> SymVector:
    """Coefficient of z^a in exp(sum_k c_k ht(i,-k) z^k), in power sums."""
    out: Dict[ColoredPartition, LaurentPoly] = {}
    for lam in partitions(a):
        c = ONE
        mult: Dict[int, int] = {}
        for k in lam:
            mult[k] = mult.get(k, 0) + 1
        for k, m in mult.items():
            c = c * (_cre_weight(sign, k) ** m) * Fraction(1, factorial(m))
        parts = [()] * rank
        parts[i] = lam
        out[ColoredPartition._make(parts)] = c
    return SymVector(PBASIS, out)


def _mul_p(a: SymVector, b: SymVector) -> SymVector:
    out: Dict[ColoredPartition, LaurentPoly] = {}
    for ca, xa in a.terms.items():
        for cb, xb in b.terms.items():
            key = ColoredPartition._make(tuple(_merge(p, q) for p, q in zip(ca, cb)))
            out[key] = out.get(key, ZERO) + xa * xb
    return SymVector(PBASIS, out)


def x_via_power_sums(space: FockSpace, i: int, sign: int, n: int, v: FockVector) -> FockVector:
    datum = space.datum
    alpha = datum.simple_root(i)
    out: Dict[Label, LaurentPoly] = {}
    for (cp, eta), c in v.terms.items():
        m = datum.pairing_with_simple(eta, i)
        if sign > 0:
            eps, eta2, zpow = datum.cocycle(alpha, eta), add(eta, alpha), m
        else:
            eps, eta2, zpow = datum.cocycle(scale(-1, alpha), eta), add(eta, scale(-1, alpha)), -m
        pv = to_power_sums(SymVector(HBASIS, {cp: ONE}))
        for b, w in _exp_derivations(datum, i, sign, pv).items():
            a = b - zpow - n - 1
            if a < 0:
                continue
            img = to_h_basis(_mul_p(_creation_poly(i, sign, a, datum.rank), w))
            for cp2, c2 in img.terms.items():
                key = (cp2, eta2)
                out[key] = out.get(key, ZERO) + c * c2 * eps
    return FockVector({k: x for k, x in out.items() if x})


# -- product formula -------------------------------------------------------------------------

def _inverse_series(s: List[LaurentPoly], order: int) -> List[LaurentPoly]:
    inv = [ONE]
    for m in range(1, order + 1):
        acc = ZERO
        for t in range(1, m + 1):
            if t < len(s):
                acc = acc + s[t] * inv[m - t]
        inv.append(-acc)
    return inv


def annihilation_factor(datum: RootDatum, i: int, j: int, order: int) -> List[LaurentPoly]:
    """Coefficients g_t of (w/z)^t in f_ij((qz)^-1, w)^-1."""
    f = f_series(datum, i, j, order)
    # f_ij(u, v) = sum_t f_t (uv)^t and u = (qz)^-1 contributes q^-t
    f = [c.shift(-t) for t, c in enumerate(f)]
    return _inverse_series(f, order)


@dataclass
class ProductCheck:
    i: int
    r: int
    n: int
    state: str
    passed: bool
    mismatches: int = 0
    witness: Optional[str] = None

    def as_dict(self) -> dict:
        out = {"suite": "product", "case": f"i={self.i + 1} r={self.r} n={self.n} state={self.state}",
               "status": "pass" if self.passed else "fail"}
        if self.witness:
            out["witness"] = self.witness
        return out


def product_formula_route(space: FockSpace, i: int, r: int, n: int, label: Label) -> FockVector:
    """Coefficient of (z_1..z_r)^(-n-1) in the closed symmetrised r-fold product on one basis state."""
    datum = space.datum
    cp, eta = label
    rank = datum.rank
    m = datum.pairing_with_simple(eta, i)
    alpha = datum.simple_root(i)
    eps = datum.cocycle(scale(r, alpha), eta)
    for k in range(1, r):
        eps *= datum.cocycle(alpha, scale(k, alpha))
    const = qfact(r).shift(-r * (r - 1) // 2) * eps
    vsq = vandermonde(r) ** 2
    target = -n - 1

    # the annihilation parts act on each Pt(j, mu) independently: split mu into
    # (t_1..t_r, rest) with weight prod g_{t_k} (w/z_k)^{t_k}
    states: Dict[Tuple[Tuple[int, ...], Tuple[tuple, ...]], LaurentPoly] = {((0,) * r, tuple(() for _ in range(rank))): ONE}
    for j, part in enumerate(cp):
        if not part:
            continue
        g = annihilation_factor(datum, i, j, max(part))
        for mu in part:
            nxt: Dict = {}
            for (ts, rest), c in states.items():
                for split in product(range(mu + 1), repeat=r):
                    tot = sum(split)
                    if tot > mu:
                        continue
                    coef = c
                    for t in split:
                        coef = coef * g[t]
                        if not coef:
                            break
                    if not coef:
                        continue
                    ts2 = tuple(a + b for a, b in zip(ts, split))
                    parts = list(rest)
                    if mu - tot:
                        parts[j] = _merge(parts[j], (mu - tot,))
                    key = (ts2, tuple(parts))
                    nxt[key] = nxt.get(key, ZERO) + coef
            states = {k: x for k, x in nxt.items() if x}

    out: Dict[Label, LaurentPoly] = {}
    eta2 = add(eta, scale(r, alpha))
    for (ts, rest), c in states.items():
        for e, vc in vsq.terms.items():
            # z_k exponent: m + e_k - t_k + a_k, where a_k is the creation degree
            degs = [target - m - e[k + 1] + ts[k] for k in range(r)]
            if any(a < 0 for a in degs):
                continue
            parts = list(rest)
            parts[i] = _merge(parts[i], tuple(sorted((a for a in degs if a), reverse=True)))
            key = (ColoredPartition._make(parts), eta2)
            out[key] = out.get(key, ZERO) + c * vc
    return FockVector({k: (x * const) for k, x in out.items() if x})


def verify_product_formula(datum: RootDatum, i: int, r: int, label: Label, n: int,
                           space: Optional[FockSpace] = None) -> ProductCheck:
    space = space or FockSpace(datum)
    closed = product_formula_route(space, i, r, n, label)
    v = FockVector({label: ONE})
    iterated = space.apply_x_power(i, 1, n, r, v).scale(factorial(r))
    diff = closed - iterated
    res = ProductCheck(i, r, n, render_label(label), not diff, len(diff))
    if diff:
        lab, c = diff.items()[0]
        res.witness = f"{render_label(lab)}: {c}"
    return res


def product_formula_sweep(datum: RootDatum, depth: int, rmax: int, nmax: int = 2) -> List[ProductCheck]:
    space = FockSpace(datum)
    out = []
    for label in space.enumerate_basis(depth):
        for i in datum.nodes:
            for r in range(1, rmax + 1):
                for n in range(-nmax, nmax + 1):
                    out.append(verify_product_formula(datum, i, r, label, n, space))
    return out


# -- single vertex-operator steps --------------------------------------------------

@dataclass
class SimpleStepReport:
    type: str
    checks: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_single_steps(datum: RootDatum, box: int = 2) -> SimpleStepReport:
    """x^+_{i,-m-1} e^eta = eps(a_i, eta) e^{eta+a_i} and x^-_{i,m-1} e^eta = eps(-a_i, eta) e^{eta-a_i}."""
    space = FockSpace(datum)
    rep = SimpleStepReport(datum.name)
    for eta in product(range(-box, box + 1), repeat=datum.rank):
        for i in datum.nodes:
            m = datum.pairing_with_simple(eta, i)
            alpha = datum.simple_root(i)
            for sign in (1, -1):
                a = alpha if sign > 0 else scale(-1, alpha)
                n = -m - 1 if sign > 0 else m - 1
                got = space.apply_x(i, sign, n, space.e(eta))
                want = space.e(add(eta, a)).scale(datum.cocycle(a, eta))
                rep.checks += 1
                if got != want:
                    rep.failures.append(f"i={i + 1} sign={sign} eta={list(eta)}")
    return rep


# -- lattice preservation -----------------------------------------------------------------

@dataclass
class LatticeReport:
    type: str
    depth: int
    basis_size: int
    checks: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {"suite": "lattice", "case": f"{self.type} depth={self.depth}",
                "status": "pass" if self.passed else "fail", "basis_size": self.basis_size,
                "checks": self.checks, "failures": len(self.failures), "witness": self.failures[:3]}


def verify_lattice(datum: RootDatum, depth: int, nmax: int = 2, rmax: int = 3) -> LatticeReport:
    """Every divided power (x^{+-}_{i,n})^(r) maps each basis vector into the lattice."""
    space = FockSpace(datum)
    basis = space.enumerate_basis(depth)
    rep = LatticeReport(datum.name, depth, len(basis))
    for label in basis:
        v = FockVector({label: ONE})
        for i in datum.nodes:
            for sign in (1, -1):
                for n in range(-nmax, nmax + 1):
                    w = v
                    for r in range(1, rmax + 1):
                        w = space.apply_x(i, sign, n, w)
                        rep.checks += 1
                        try:
                            out = _divide(w, r)
                        except LatticeViolation as exc:
                            rep.failures.append(str(exc))
                            continue
                        if not out.is_lattice():
                            rep.failures.append(f"non-integral image at {render_label(label)}")
    return rep


def _divide(w: FockVector, r: int) -> FockVector:
    from ..qarith import NotDivisibleError, exact_div
    den = qfact(r)
    out = {}
    for label, c in w.terms.items():
        try:
            out[label] = exact_div(c, den, ring="ZZ")
        except NotDivisibleError as exc:
            raise LatticeViolation(f"[{r}]! does not divide {c} at {render_label(label)}") from exc
    return FockVector(out)


# -- character -------------------------------------------------------------------------------

def colored_partition_counts(rank: int, order: int) -> List[int]:
    """Coefficients of prod_k (1 - x^k)^(-rank) up to x^order."""
    series = [1] + [0] * order
    for k in range(1, order + 1):
        for _ in range(rank):
            for m in range(k, order + 1):
                series[m] += series[m - k]
    return series


def lattice_points(datum: RootDatum, depth: int) -> Dict[Tuple[int, ...], int]:
    """All eta with (eta, eta)/2 <= depth, by a box search."""
    bound = 2 * depth + 2
    out = {}
    for eta in product(range(-bound, bound + 1), repeat=datum.rank):
        e = datum.norm2(eta)
        if e <= depth:
            out[eta] = e
    return out


def character_oracle(datum: RootDatum, depth: int) -> Dict[Tuple[Tuple[int, ...], int], int]:
    counts = colored_partition_counts(datum.rank, depth)
    out = {}
    for eta, e in lattice_points(datum, depth).items():
        for d in range(e, depth + 1):
            out[(eta, d)] = counts[d - e]
    return out

"""The level-one Fock module U^-(0) (x) Q(q)[Q] and its lattice.

Basis labels are pairs ``(cp, eta)`` of a :class:`ColoredPartition` (a
monomial in the Pt generators, i.e. HBASIS) and a root-lattice element.  All
operators below act directly on HBASIS coordinates.  The annihilation parts of
the vertex operators are exponentials of derivations, hence ring
homomorphisms, so on a generating series Pt_j^-(v) they act by a scalar power
series in (wv); this is how they are expanded.

Grading: a label has energy ``|cp| + (eta, eta)/2`` and D acts by q^-energy.
"""

from __future__ import annotations

import re
from collections import deque
from fractions import Fraction
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .qarith import ONE, Q, ZERO, LaurentPoly, NotDivisibleError, exact_div, parse_laurent, qfact, qint
from .rootdata import QElement, RootDatum
from .symcore import (
    ColoredPartition,
    _merge,
    annihilate_h_terms,
    colored_partitions,
    creation_series_h,
    exp_series,
    pair_ratio,
    p_monomial_in_h,
    parse_colored_partition,
)

Label = Tuple[ColoredPartition, QElement]


class LatticeViolation(ArithmeticError):
    """A divided power failed to map a lattice vector into the lattice."""


class FockVector:
    """Sparse combination of basis labels with Laurent-polynomial coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Dict[Label, LaurentPoly] = None):
        self.terms = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    def __add__(self, other: "FockVector") -> "FockVector":
        out = dict(self.terms)
        for k, v in other.terms.items():
            s = out.get(k, ZERO) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return FockVector._raw(out)

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "FockVector":
        c = LaurentPoly.coerce(c)
        if not c:
            return FockVector()
        return FockVector._raw({k: v * c for k, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, FockVector):
            return NotImplemented
        return self.terms == other.terms

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __len__(self):
        return len(self.terms)

    def items(self) -> List[Tuple[Label, LaurentPoly]]:
        return sorted(self.terms.items())

    def coeff(self, label: Label) -> LaurentPoly:
        return self.terms.get(label, ZERO)

    @property
    def ring(self) -> str:
        return "ZZ" if self.is_lattice() else "QQ"

    def is_lattice(self) -> bool:
        """Every HBASIS (x) e^eta coordinate lies in Z[q, q^-1]."""
        return all(c.is_integral() for c in self.terms.values())

    def map_coeffs(self, f: Callable[[LaurentPoly], LaurentPoly]) -> "FockVector":
        return FockVector({k: f(v) for k, v in self.terms.items()})

    def __repr__(self):
        if not self.terms:
            return "FockVector(0)"
        return "FockVector(" + " + ".join(f"({c})*{render_label(k)}" for k, c in self.items()) + ")"


def render_label(label: Label) -> str:
    cp, eta = label
    return f"{cp.render()} @ eta=[{','.join(map(str, eta))}]"


_STATE_RE = re.compile(r"^\s*(?P<cp>\{.*\})\s*(?:@\s*eta\s*=\s*\[(?P<eta>[-\d\s,]*)\])?\s*$")


def parse_state(text: str, rank: int) -> Label:
    """Parse ``{1:[2,1]} @ eta=[1,0]``; ``@ eta=...`` may be omitted (eta = 0)."""
    m = _STATE_RE.match(text)
    if not m:
        pos = text.find("@")
        raise ValueError(f"cannot parse state at position {max(pos, 0)}: {text!r}")
    cp = parse_colored_partition(m.group("cp"), rank)
    eta_txt = m.group("eta")
    if eta_txt is None:
        eta = (0,) * rank
    else:
        vals = [x for x in eta_txt.replace(" ", "").split(",") if x]
        if len(vals) != rank:
            raise ValueError(f"eta needs {rank} coordinates, got {len(vals)} in {text!r}")
        eta = tuple(int(x) for x in vals)
    return cp, eta


# -- series weights for the exponentials --------------------------------------------------
# An annihilation exponential exp(sum_k t_k ht(i,k) w^k) sends Pt_j^-(v) to
# G_j(wv) Pt_j^-(v) with G_j = exp(sum_k t_k [k a_ij]/[k] x^k).

def _t_xplus(k):  # P_i^+(q^-1 z^-1)
    return LaurentPoly.monomial(-k, Fraction(-1, k))


def _t_xminus(k):  # Pt_i^+(z^-1)
    return LaurentPoly.const(Fraction(1, k))


def _t_psiplus(k):  # exp((q - q^-1) sum h_{i,s} u^s)
    return LaurentPoly({k: Fraction(1, k), -k: Fraction(-1, k)})


_ANN_WEIGHTS = {"x+": _t_xplus, "x-": _t_xminus, "psi+": _t_psiplus}


def _c_xplus(k):  # Pt_i^-(z)
    return LaurentPoly.const(Fraction(1, k))


def _c_xminus(k):  # P_i^-(q z)
    return LaurentPoly.monomial(k, Fraction(-1, k))


def _c_psiminus(k):  # exp(-(q - q^-1) sum h_{i,-s} u^-s)
    return LaurentPoly({k: Fraction(-1, k), -k: Fraction(1, k)})


_CRE_WEIGHTS = {"x+": _c_xplus, "x-": _c_xminus, "psi-": _c_psiminus}


class FockSpace:
    """Operators of the level-one module attached to one ADE root datum."""

    def __init__(self, datum: RootDatum, check_weights: bool = True):
        self.datum = datum
        self.rank = datum.rank
        self.check_weights = check_weights
        self._series: Dict[Tuple[str, int], List[LaurentPoly]] = {}
        self._cre: Dict[Tuple[str, int], Dict[tuple, LaurentPoly]] = {}
        self._ann: Dict[Tuple[str, int, ColoredPartition], Dict[int, Dict[ColoredPartition, LaurentPoly]]] = {}
        self._xcache: Dict[tuple, Dict[Label, LaurentPoly]] = {}
        self._simple = [datum.simple_root(i) for i in datum.nodes]

    # -- labels ------------------------------------------------------------
    def vacuum(self) -> FockVector:
        return FockVector({(ColoredPartition.empty(self.rank), self.datum.zero()): ONE})

    def basis_vector(self, cp: ColoredPartition, eta: Sequence[int], coeff=ONE) -> FockVector:
        return FockVector({(cp, tuple(eta)): LaurentPoly.coerce(coeff)})

    def e(self, eta: Sequence[int]) -> FockVector:
        """1 (x) e^eta."""
        return self.basis_vector(ColoredPartition.empty(self.rank), eta)

    def energy(self, label: Label) -> int:
        cp, eta = label
        return cp.total + self.datum.norm2(eta)

    def weight(self, label: Label) -> "WeightLabel":
        return WeightLabel(label[1], self.energy(label))

    def energies(self, v: FockVector) -> set:
        return {self.energy(k) for k in v.terms}

    def energy_component(self, v: FockVector, d: int) -> FockVector:
        return FockVector({k: c for k, c in v.terms.items() if self.energy(k) == d})

    # -- series helpers ------------------------------------------------------
    def _subst_series(self, kind: str, a: int, order: int) -> List[LaurentPoly]:
        key = (kind, a)
        ser = self._series.get(key)
        if ser is None or len(ser) <= order:
            order = max(order, 8)
            t = _ANN_WEIGHTS[kind]
            # pair_ratio depends only on a_ij; use a proxy datum-free formula
            if a == 2:
                ratio = lambda k: LaurentPoly({k: 1, -k: 1})
            elif a == -1:
                ratio = lambda k: LaurentPoly.const(-1)
            else:
                ratio = lambda k: ZERO
            coeffs = [ZERO] + [t(k) * ratio(k) for k in range(1, order + 1)]
            ser = exp_series(coeffs, order)
            if not all(c.is_integral() for c in ser):
                raise AssertionError(f"non-integral substitution series for {kind}, a={a}")
            self._series[key] = ser
        return ser

    def _creation(self, kind: str, a: int) -> Dict[tuple, LaurentPoly]:
        key = (kind, a)
        hit = self._cre.get(key)
        if hit is None:
            hit = creation_series_h(_CRE_WEIGHTS[kind], a)
            self._cre[key] = hit
        return hit

    def _annihilation(self, kind: str, i: int, cp: ColoredPartition) -> Dict[int, Dict[ColoredPartition, LaurentPoly]]:
        """Degree-graded image of the monomial ``cp`` under an annihilation exponential."""
        key = (kind, i, cp)
        hit = self._ann.get(key)
        if hit is not None:
            return hit
        A = self.datum.cartan
        per_color = []
        for j, part in enumerate(cp):
            a = A[i][j]
            if a == 0 or not part:
                per_color.append({0: {part: ONE}})
                continue
            G = self._subst_series(kind, a, max(part))
            states: Dict[Tuple[int, tuple], LaurentPoly] = {(0, ()): ONE}
            for m in part:
                nxt: Dict[Tuple[int, tuple], LaurentPoly] = {}
                for (b, acc), c in states.items():
                    for s in range(0, m + 1):
                        g = G[s]
                        if not g:
                            continue
                        r = m - s
                        acc2 = _merge(acc, (r,)) if r else acc
                        k2 = (b + s, acc2)
                        nxt[k2] = nxt.get(k2, ZERO) + c * g
                states = {k2: v for k2, v in nxt.items() if v}
            graded: Dict[int, Dict[tuple, LaurentPoly]] = {}
            for (b, acc), c in states.items():
                graded.setdefault(b, {})[acc] = c
            per_color.append(graded)
        out: Dict[int, Dict[ColoredPartition, LaurentPoly]] = {0: {(): ONE}}
        # combine colors: keys are tuples of per-color partitions built incrementally
        combo: Dict[int, Dict[tuple, LaurentPoly]] = {0: {(): ONE}}
        for graded in per_color:
            nxt2: Dict[int, Dict[tuple, LaurentPoly]] = {}
            for b1, d1 in combo.items():
                for b2, d2 in graded.items():
                    tgt = nxt2.setdefault(b1 + b2, {})
                    for k1, c1 in d1.items():
                        for k2, c2 in d2.items():
                            kk = k1 + (k2,)
                            tgt[kk] = tgt.get(kk, ZERO) + c1 * c2
            combo = nxt2
        out = {}
        for b, d in combo.items():
            dd = {ColoredPartition._make(k): c for k, c in d.items() if c}
            if dd:
                out[b] = dd
        self._ann[key] = out
        return out

    # -- vertex operators ----------------------------------------------------------
    def _x_label(self, i: int, sign: int, n: int, label: Label) -> Dict[Label, LaurentPoly]:
        key = (i, sign, n, label)
        hit = self._xcache.get(key)
        if hit is not None:
            return hit
        datum = self.datum
        cp, eta = label
        m = datum.pairing_with_simple(eta, i)
        alpha = self._simple[i]
        if sign > 0:
            eps = datum.cocycle(alpha, eta)
            eta2 = tuple(x + y for x, y in zip(eta, alpha))
            zpow = m
            kind = "x+"
        else:
            eps = datum.cocycle(tuple(-x for x in alpha), eta)
            eta2 = tuple(x - y for x, y in zip(eta, alpha))
            zpow = -m
            kind = "x-"
        out: Dict[Label, LaurentPoly] = {}
        ann = self._annihilation(kind, i, cp)
        for b, comp in ann.items():
            a = b - zpow - n - 1
            if a < 0:
                continue
            cre = self._creation(kind, a)
            for cp2, c in comp.items():
                ci = cp2[i]
                for part, c2 in cre.items():
                    parts = list(cp2)
                    parts[i] = _merge(ci, part)
                    k2 = (ColoredPartition._make(parts), eta2)
                    out[k2] = out.get(k2, ZERO) + c * c2
        out = {k2: (v if eps == 1 else -v) for k2, v in out.items() if v}
        if self.check_weights and out:
            target = self.energy(label) - n
            for k2 in out:
                if self.energy(k2) != target:
                    raise AssertionError(
                        f"x{'+' if sign > 0 else '-'}_{i},{n} broke homogeneity on {render_label(label)}"
                    )
        self._xcache[key] = out
        return out

    def apply_x(self, i: int, sign: int, n: int, v: FockVector) -> FockVector:
        """Coefficient of z^(-n-1) in X_i^{sign}(z) v."""
        sign = _sign(sign)
        out: Dict[Label, LaurentPoly] = {}
        for label, c in v.terms.items():
            for k2, c2 in self._x_label(i, sign, n, label).items():
                out[k2] = out.get(k2, ZERO) + c * c2
        return FockVector({k: val for k, val in out.items() if val})

    def apply_x_power(self, i: int, sign: int, n: int, r: int, v: FockVector) -> FockVector:
        for _ in range(r):
            v = self.apply_x(i, sign, n, v)
        return v

    def apply_x_divided(self, i: int, sign: int, n: int, r: int, v: FockVector) -> FockVector:
        """(x_{i,n}^sign)^r / [r]!; on lattice input the division must be exact over Z."""
        if r < 1:
            raise ValueError("r must be positive")
        w = self.apply_x_power(i, sign, n, r, v)
        if r == 1:
            return w
        den = qfact(r)
        lattice = v.is_lattice()
        out = {}
        for label, c in w.terms.items():
            try:
                out[label] = exact_div(c, den, ring="ZZ" if lattice else "QQ")
            except NotDivisibleError as exc:
                raise LatticeViolation(
                    f"(x^{'+' if _sign(sign) > 0 else '-'}_{i},{n})^({r}) left the lattice at "
                    f"{render_label(label)}: coefficient {c} not divisible by [{r}]!"
                ) from exc
        return FockVector(out)

    # -- Heisenberg part ---------------------------------------------------------------
    def apply_ht(self, i: int, k: int, v: FockVector) -> FockVector:
        """ht(i,k) = k h(i,k)/[k]: annihilation for k > 0, multiplication by p_|k| for k < 0."""
        if k == 0:
            raise ValueError("k must be nonzero")
        out: Dict[Label, LaurentPoly] = {}
        if k > 0:
            by_eta: Dict[QElement, Dict[ColoredPartition, LaurentPoly]] = {}
            for (cp, eta), c in v.terms.items():
                by_eta.setdefault(eta, {})[cp] = c
            for eta, terms in by_eta.items():
                for cp, c in annihilate_h_terms(self.datum, i, k, terms).items():
                    out[(cp, eta)] = c
        else:
            gen = p_monomial_in_h((-k,))
            for (cp, eta), c in v.terms.items():
                for part, x in gen:
                    parts = list(cp)
                    parts[i] = _merge(cp[i], part)
                    key = (ColoredPartition._make(parts), eta)
                    out[key] = out.get(key, ZERO) + c * x
        return FockVector({kk: val for kk, val in out.items() if val})

    def apply_h(self, i: int, k: int, v: FockVector) -> FockVector:
        """pi(h_{i,k}) (x) 1 = ([|k|]/|k|) ht(i,k)."""
        kk = abs(k)
        return self.apply_ht(i, k, v).scale(qint(kk) * Fraction(1, kk))

    def apply_torus(self, gen: str, v: FockVector, i: Optional[int] = None, power: int = 1) -> FockVector:
        """K_i, D or C (optionally raised to ``power``)."""
        if gen == "C":
            return v.scale(LaurentPoly.monomial(power))
        out = {}
        for label, c in v.terms.items():
            if gen == "K":
                if i is None:
                    raise ValueError("K needs a node")
                e = self.datum.pairing_with_simple(label[1], i)
            elif gen == "D":
                e = -self.energy(label)
            else:
                raise ValueError(f"unknown torus generator {gen!r}")
            out[label] = c.shift(e * power)
        return FockVector(out)

    def psi(self, i: int, sign: int, r: int, v: FockVector) -> FockVector:
        """psi^+_{i,r} (r >= 0) or psi^-_{i,r} (r <= 0), from their defining series."""
        sign = _sign(sign)
        if sign > 0 and r < 0 or sign < 0 and r > 0:
            return FockVector()
        out: Dict[Label, LaurentPoly] = {}
        if sign > 0:
            for (cp, eta), c in v.terms.items():
                kpow = self.datum.pairing_with_simple(eta, i)
                comp = self._annihilation("psi+", i, cp).get(r)
                if not comp:
                    continue
                for cp2, c2 in comp.items():
                    key = (cp2, eta)
                    out[key] = out.get(key, ZERO) + (c * c2).shift(kpow)
        else:
            cre = self._creation("psi-", -r)
            for (cp, eta), c in v.terms.items():
                kpow = -self.datum.pairing_with_simple(eta, i)
                for part, c2 in cre.items():
                    parts = list(cp)
                    parts[i] = _merge(cp[i], part)
                    key = (ColoredPartition._make(parts), eta)
                    out[key] = out.get(key, ZERO) + (c * c2).shift(kpow)
        return FockVector({k: val for k, val in out.items() if val})

    # -- basis and character ----------------------------------------------------------
    def etas_up_to(self, depth: int) -> List[QElement]:
        """Root-lattice elements with (eta, eta)/2 <= depth, sorted."""
        datum = self.datum
        start = datum.zero()
        seen = {start}
        queue = deque([start])
        while queue:
            eta = queue.popleft()
            for i in datum.nodes:
                for s in (1, -1):
                    nb = list(eta)
                    nb[i] += s
                    nb = tuple(nb)
                    if nb not in seen and datum.norm2(nb) <= depth:
                        seen.add(nb)
                        queue.append(nb)
        return sorted(seen, key=lambda e: (datum.norm2(e), e))

    def component(self, eta: Sequence[int], d: int) -> List[Label]:
        eta = tuple(eta)
        rest = d - self.datum.norm2(eta)
        if rest < 0:
            return []
        return [(cp, eta) for cp in colored_partitions(rest, self.rank)]

    def enumerate_basis(self, depth: int) -> List[Label]:
        etas = self.etas_up_to(depth)
        out = []
        for d in range(depth + 1):
            for eta in etas:
                out.extend(self.component(eta, d))
        return out

    def character(self, depth: int) -> Dict["WeightLabel", int]:
        out = {}
        for eta in self.etas_up_to(depth):
            e0 = self.datum.norm2(eta)
            for d in range(e0, depth + 1):
                out[WeightLabel(eta, d)] = len(colored_partitions(d - e0, self.rank))
        return out

    def dimensions_by_energy(self, depth: int) -> List[int]:
        dims = [0] * (depth + 1)
        for w, c in self.character(depth).items():
            dims[w.energy] += c
        return dims


class WeightLabel(tuple):
    """(eta, energy); K_i acts by q^(eta, alpha_i) and D by q^-energy."""

    __slots__ = ()

    def __new__(cls, eta: Sequence[int], energy: int):
        return tuple.__new__(cls, (tuple(eta), int(energy)))

    @property
    def eta(self) -> QElement:
        return self[0]

    @property
    def energy(self) -> int:
        return self[1]

    def k_exponents(self, datum: RootDatum) -> List[int]:
        return [datum.pairing_with_simple(self.eta, i) for i in datum.nodes]

    def d_exponent(self) -> int:
        return -self.energy


def _sign(s) -> int:
    if s in (1, "+"):
        return 1
    if s in (-1, "-"):
        return -1
    raise ValueError(f"sign must be + or -, got {s!r}")


# -- operator grammar ------------------------------------------------------------------

_OP_RE = re.compile(r"^\s*(?P<name>x\+|x-|h|ht|K|D|C)(?P<args>(?:\s+\w+=-?\d+)*)\s*$")


def parse_operator(text: str) -> dict:
    """``x+ i=1 n=-1 r=2``, ``h i=1 k=-1``, ``K i=1``, ``D``, ``C``.  Node labels are 1-based."""
    m = _OP_RE.match(text)
    if not m:
        raise ValueError(f"cannot parse operator at position 0: {text!r}")
    args = {}
    for tok in m.group("args").split():
        k, v = tok.split("=")
        if k in args:
            raise ValueError(f"duplicate argument {k!r} at position {text.find(tok)}: {text!r}")
        args[k] = int(v)
    name = m.group("name")
    allowed = {"x+": {"i", "n", "r"}, "x-": {"i", "n", "r"}, "h": {"i", "k"}, "ht": {"i", "k"},
               "K": {"i"}, "D": set(), "C": set()}[name]
    required = {"x+": {"i", "n"}, "x-": {"i", "n"}, "h": {"i", "k"}, "ht": {"i", "k"},
                "K": {"i"}, "D": set(), "C": set()}[name]
    extra = set(args) - allowed
    if extra:
        bad = sorted(extra)[0]
        raise ValueError(f"unexpected argument {bad!r} at position {text.find(bad + '=')}: {text!r}")
    missing = required - set(args)
    if missing:
        raise ValueError(f"missing argument(s) {sorted(missing)} at position {len(text)}: {text!r}")
    return {"name": name, **args}


def apply_operator(space: FockSpace, op: dict, v: FockVector) -> FockVector:
    name = op["name"]
    if "i" in op and not 1 <= op["i"] <= space.rank:
        raise ValueError(f"node i={op['i']} out of range 1..{space.rank}")
    i = op.get("i", 1) - 1
    if name in ("x+", "x-"):
        sign = 1 if name == "x+" else -1
        r = op.get("r", 1)
        return space.apply_x_divided(i, sign, op["n"], r, v)
    if name == "h":
        return space.apply_h(i, op["k"], v)
    if name == "ht":
        return space.apply_ht(i, op["k"], v)
    if name == "K":
        return space.apply_torus("K", v, i=i)
    return space.apply_torus(name, v)

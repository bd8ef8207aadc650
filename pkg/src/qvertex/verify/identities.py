"""Symbolic checks of the antisymmetrisation identity and the r!-divisibility expansion."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial
from typing import Dict, List, Tuple

from ..qarith import qfact
from ..symcore import partitions
from .multivar import MultivarLaurent, all_perms, perm_sign, vandermonde


@dataclass
class IdentityResult:
    name: str
    r: int
    passed: bool
    residual_terms: int = 0
    details: Dict[str, object] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"suite": self.name, "case": f"r={self.r}", "status": "pass" if self.passed else "fail",
                "residual_terms": self.residual_terms, **self.details}


def antisymmetrized_product(r: int) -> MultivarLaurent:
    """sum_sigma sgn(sigma) prod_{k<s} (z_sigma(k) - q^-2 z_sigma(s))."""
    z = lambda k: MultivarLaurent.z(r, k)
    base = MultivarLaurent.const(r)
    for k in range(1, r + 1):
        for s in range(k + 1, r + 1):
            base = base * (z(k) - MultivarLaurent.q(r, -2) * z(s))
    total = MultivarLaurent(r)
    for perm in all_perms(r):
        term = base.permute(perm)
        total = total + term if perm_sign(perm) == 1 else total - term
    return total


def verify_antisymmetrization(r: int) -> IdentityResult:
    if r < 1:
        raise ValueError("r must be positive")
    lhs = antisymmetrized_product(r)
    rhs = MultivarLaurent.from_laurent(r, qfact(r).shift(-r * (r - 1) // 2)) * vandermonde(r)
    diff = lhs - rhs
    return IdentityResult("id", r, not diff, len(diff.terms), {"permutations": factorial(r)})


def _monomial(r: int, exps) -> MultivarLaurent:
    return MultivarLaurent(r, {(0,) + tuple(exps): 1})


def rfact_expansion(r: int) -> MultivarLaurent:
    """sum_tau sgn(tau) sum_rho z^{rho(delta + tau delta)}."""
    delta = list(range(r - 1, -1, -1))
    out = MultivarLaurent(r)
    for tau in all_perms(r):
        mu = [delta[k] + delta[tau[k] - 1] for k in range(r)]
        sym = MultivarLaurent(r)
        for rho in all_perms(r):
            sym = sym + _monomial(r, [mu[rho[k] - 1] for k in range(r)])
        out = out + sym if perm_sign(tau) == 1 else out - sym
    return out


def elementary(r: int, k: int) -> MultivarLaurent:
    from itertools import combinations
    out = MultivarLaurent(r)
    for subset in combinations(range(r), k):
        out = out + _monomial(r, [1 if j in subset else 0 for j in range(r)])
    return out


def symmetric_samples(r: int, max_degree: int = 4) -> List[Tuple[Tuple[int, ...], MultivarLaurent]]:
    """Products e_lambda of elementary symmetric polynomials, |lambda| <= max_degree, parts <= r."""
    out = [((), MultivarLaurent.const(r))]
    for d in range(1, max_degree + 1):
        for lam in partitions(d, r):
            g = MultivarLaurent.const(r)
            for part in lam:
                g = g * elementary(r, part)
            out.append((lam, g))
    return out


def verify_rfact(r: int, max_degree: int = 4) -> IdentityResult:
    if r < 1:
        raise ValueError("r must be positive")
    square = vandermonde(r) ** 2
    expansion_ok = rfact_expansion(r) == square
    failures = []
    checked = 0
    for lam, g in symmetric_samples(r, max_degree):
        prod = square * g
        for e, c in prod.terms.items():
            zs = e[1:]
            if all(x == zs[0] for x in zs):
                checked += 1
                if c % factorial(r):
                    failures.append({"G": list(lam), "n": zs[0], "coefficient": c})
    res = IdentityResult("rfact", r, expansion_ok and not failures, len(failures),
                         {"expansion": expansion_ok, "diagonal_coefficients": checked})
    if failures:
        res.details["failures"] = failures[:5]
    return res

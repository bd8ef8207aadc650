import pytest
from hypothesis import given, strategies as st

from qvertex.fock import FockSpace, FockVector
from qvertex.qarith import ONE, LaurentPoly, qint
from qvertex.rootdata import parse_type
from qvertex.symcore import ColoredPartition
from qvertex.verify import (
    MultivarLaurent,
    character_oracle,
    colored_partition_counts,
    product_formula_route,
    product_formula_sweep,
    vandermonde,
    verify_drinfeld,
    verify_lattice,
    verify_antisymmetrization,
    verify_product_formula,
    verify_rfact,
    verify_single_steps,
    x_via_power_sums,
)
from qvertex.verify.identities import antisymmetrized_product, elementary, rfact_expansion


def mv(nz):
    exps = st.tuples(*[st.integers(-2, 2)] * (nz + 1))
    return st.dictionaries(exps, st.integers(-4, 4), max_size=4).map(lambda t: MultivarLaurent(nz, t))


@given(mv(2), mv(2), mv(2))
def test_multivar_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a and a * b == b * a
    assert all(v for v in (a * b).terms.values())


def test_multivar_collapse():
    p = LaurentPoly({-1: 2, 3: -1})
    assert MultivarLaurent.from_laurent(1, p).collapse() == p
    z = MultivarLaurent.z(1, 1)
    assert (z * 3 - MultivarLaurent.q(1, 2)).collapse() == LaurentPoly({0: 3, 2: -1})


def test_antisymmetrization_small_cases():
    assert antisymmetrized_product(1) == MultivarLaurent.const(1)
    z1, z2 = MultivarLaurent.z(2, 1), MultivarLaurent.z(2, 2)
    assert antisymmetrized_product(2) == (MultivarLaurent.const(2) + MultivarLaurent.q(2, -2)) * (z1 - z2)
    for r in range(1, 5):
        assert verify_antisymmetrization(r).passed


def test_rfact_examples():
    z1, z2 = MultivarLaurent.z(2, 1), MultivarLaurent.z(2, 2)
    assert rfact_expansion(2) == z1 * z1 + z2 * z2 - z1 * z2 * 2
    assert (vandermonde(2) ** 2).coefficient((1, 1)) == -2
    prod = vandermonde(3) ** 2 * elementary(3, 1) ** 3
    diag = [c for e, c in prod.terms.items() if e[1] == e[2] == e[3]]
    assert diag and all(c % 6 == 0 for c in diag)
    for r in range(2, 5):
        assert verify_rfact(r).passed


def test_rfact_divisibility_is_sharp_without_symmetry():
    # a non-symmetric G breaks the r! divisibility
    prod = vandermonde(2) ** 2 * MultivarLaurent.z(2, 1, 2)
    assert prod.coefficient((2, 2)) == 1


def test_drinfeld_examples():
    sp = FockSpace(parse_type("A1"))
    vac, e = sp.vacuum(), sp.e((1,))
    comm = lambda v: sp.apply_x(0, 1, 0, sp.apply_x(0, -1, 0, v)) - sp.apply_x(0, -1, 0, sp.apply_x(0, 1, 0, v))
    assert comm(vac).is_zero()
    assert comm(e) == e.scale(qint(2))
    for v in sp.enumerate_basis(2):
        w = FockVector({v: ONE})
        hh = sp.apply_h(0, 1, sp.apply_h(0, -1, w)) - sp.apply_h(0, -1, sp.apply_h(0, 1, w))
        assert hh == w.scale(qint(2))


@pytest.mark.parametrize("name,depth", [("A1", 3), ("A2", 2)])
def test_drinfeld_small_windows(name, depth):
    rep = verify_drinfeld(parse_type(name), depth, rmax=2, smax=2)
    assert rep.passed, [t.as_dict() for t in rep.relations.values() if not t.passed]
    assert all(t.checks > 0 for name_, t in rep.relations.items() if name_ != "serre" or name == "A2")
    # the uniform C^r twist in the opposite-sign family is detected as wrong
    info = rep.informational["h-x opposite-sign, uniform C^r twist"]
    assert info.failures > 0


def test_product_formula_examples():
    a1 = FockSpace(parse_type("A1"))
    vac = next(iter(a1.vacuum().terms))
    assert verify_product_formula(a1.datum, 0, 1, vac, -1, a1).passed
    assert verify_product_formula(a1.datum, 0, 2, vac, -2, a1).passed
    assert product_formula_route(a1, 0, 2, -2, vac) == a1.e((2,)).scale(LaurentPoly({-2: -2, 0: -2}))
    a2 = FockSpace(parse_type("A2"))
    state = (ColoredPartition([[], [1]]), (0, 1))
    for n in range(-3, 2):
        assert verify_product_formula(a2.datum, 0, 2, state, n, a2).passed


def test_product_formula_sweep_a2():
    res = product_formula_sweep(parse_type("A2"), 2, 2)
    assert res and all(c.passed for c in res)


@pytest.mark.parametrize("name,depth", [("A1", 3), ("A2", 2), ("D4", 1)])
def test_power_sum_route_agrees(name, depth):
    sp = FockSpace(parse_type(name))
    for label in sp.enumerate_basis(depth):
        v = FockVector({label: ONE})
        for i in sp.datum.nodes:
            for sign in (1, -1):
                for n in range(-2, 3):
                    assert x_via_power_sums(sp, i, sign, n, v) == sp.apply_x(i, sign, n, v)


def test_single_steps_and_lattice_small():
    assert verify_single_steps(parse_type("A2"), box=1).passed
    rep = verify_lattice(parse_type("A2"), 2, nmax=2, rmax=3)
    assert rep.passed and rep.checks > 0


def test_character_oracle():
    assert colored_partition_counts(1, 7) == [1, 1, 2, 3, 5, 7, 11, 15]
    assert colored_partition_counts(2, 4) == [1, 2, 5, 10, 20]
    for name in ["A1", "A2"]:
        sp = FockSpace(parse_type(name))
        got = {(w.eta, w.energy): m for w, m in sp.character(5).items()}
        assert got == character_oracle(sp.datum, 5)
    # A1 totals: sum_m p(d - m^2)
    p = colored_partition_counts(1, 6)
    totals = [sum(p[d - m * m] for m in range(-3, 4) if d - m * m >= 0) for d in range(7)]
    assert totals == [1, 3, 4, 7, 13, 19, 29]

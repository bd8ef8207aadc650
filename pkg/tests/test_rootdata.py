from math import gcd

import pytest
from hypothesis import given, strategies as st

from qvertex.qarith import LaurentPoly, qint, specialize
from qvertex.rootdata import (
    InvalidRootDatum,
    add,
    bareiss_det,
    build_root_datum,
    classical_det,
    coxeter_number,
    det_closed_form,
    det_closed_form_dn_symmetric_typo,
    detq_nonvanishing,
    parse_type,
    qcartan,
    qcartan_det,
    scale,
)

ALL_TYPES = [("A", n) for n in range(1, 9)] + [("D", n) for n in range(4, 9)] + [("E", n) for n in (6, 7, 8)]
# |R+| and N from the standard tables
POSITIVE_ROOTS = {"A": lambda n: n * (n + 1) // 2, "D": lambda n: n * (n - 1), "E": lambda n: {6: 36, 7: 63, 8: 120}[n]}


@pytest.mark.parametrize("family,rank", ALL_TYPES)
def test_root_datum_invariants(family, rank):
    d = build_root_datum(family, rank)
    A = d.cartan
    for i in range(rank):
        assert A[i][i] == 2
        for j in range(rank):
            assert A[i][j] == A[j][i]
            if i != j:
                assert A[i][j] in (0, -1)
    assert len(d.positive_roots) == POSITIVE_ROOTS[family](rank)
    assert d.theta == max(d.positive_roots, key=sum)
    assert d.pairing(d.theta, d.theta) == 2
    assert d.coxeter == coxeter_number(family, rank)
    assert d.coxeter == len(d.positive_roots) * 2 // rank
    for i in range(rank):
        for j in range(rank):
            ai, aj = d.simple_root(i), d.simple_root(j)
            assert d.cocycle(ai, aj) * d.cocycle(aj, ai) == (-1) ** (A[i][j] % 2)


def test_small_examples():
    a1 = build_root_datum("A", 1)
    assert a1.positive_roots == ((1,),) and a1.theta == (1,) and a1.coxeter == 2
    a2 = parse_type("A2")
    assert len(a2.positive_roots) == 3 and a2.theta == (1, 1) and a2.coxeter == 3
    e8 = parse_type("E8")
    assert len(e8.positive_roots) == 120 and e8.coxeter == 30


@pytest.mark.parametrize("bad", [("A", 0), ("D", 3), ("E", 5), ("E", 9), ("B", 2)])
def test_invalid_types_rejected(bad):
    with pytest.raises(InvalidRootDatum):
        build_root_datum(*bad)


def test_pairing_examples():
    d = parse_type("A2")
    assert d.pairing(d.simple_root(0), d.simple_root(0)) == 2
    assert d.pairing((3, -1), d.zero()) == 0
    assert d.pairing(d.theta, d.theta) == 2


def test_cocycle_examples():
    d = parse_type("A2")
    a1, a2 = d.simple_root(0), d.simple_root(1)
    assert d.cocycle(a1, d.zero()) == d.cocycle(d.zero(), a1) == 1
    assert d.cocycle(a1, a2) == 1
    assert d.cocycle(a2, a1) == -1
    assert d.cocycle(a1, a1) ** 2 == 1


def _elements(rank):
    return st.tuples(*[st.integers(-3, 3)] * rank)


@pytest.mark.parametrize("name", ["A2", "A4", "D4", "E6"])
def test_cocycle_laws(name):
    d = parse_type(name)
    special = [d.simple_root(i) for i in d.nodes] + [scale(-1, d.simple_root(i)) for i in d.nodes]
    special += [d.theta, scale(-1, d.theta)]

    def laws(a, b, c):
        e = d.cocycle
        assert e(a, b) * e(add(a, b), c) == e(a, add(b, c)) * e(b, c)
        assert e(add(a, b), c) == e(a, c) * e(b, c)
        assert e(a, add(b, c)) == e(a, b) * e(a, c)
        assert e(a, b) * e(b, a) == (-1) ** (d.pairing(a, b) % 2)

    for a in special:
        for b in special:
            for c in special[:4]:
                laws(a, b, c)

    @given(_elements(d.rank), _elements(d.rank), _elements(d.rank))
    def random_triples(a, b, c):
        laws(a, b, c)

    random_triples()


@pytest.mark.parametrize("family,rank", ALL_TYPES)
def test_det_cofactor_equals_bareiss(family, rank):
    d = build_root_datum(family, rank)
    assert qcartan_det(d) == bareiss_det(qcartan(d))


@pytest.mark.parametrize("family,rank", ALL_TYPES)
def test_det_closed_forms(family, rank):
    d = build_root_datum(family, rank)
    assert qcartan_det(d) == det_closed_form(d)
    assert qcartan_det(d).bar() == qcartan_det(d)


def test_det_examples():
    assert qcartan_det(parse_type("A1")) == qint(2)
    assert qcartan_det(parse_type("A2")) == LaurentPoly({2: 1, 0: 1, -2: 1})
    assert qcartan_det(parse_type("E7")) == qint(2) * LaurentPoly({6: 1, -6: 1, 0: -1})
    assert qcartan_det(parse_type("D4")) == LaurentPoly({4: 1, 2: 1, -2: 1, -4: 1})


@pytest.mark.parametrize("n", range(4, 9))
def test_dn_repeated_exponent_variant_is_wrong(n):
    assert qcartan_det(build_root_datum("D", n)) != det_closed_form_dn_symmetric_typo(n)


@pytest.mark.parametrize("family,rank", ALL_TYPES)
def test_det_at_one_is_classical(family, rank):
    d = build_root_datum(family, rank)
    assert specialize(qcartan_det(d), 1) == classical_det(d)
    expected = {"A": rank + 1, "D": 4}.get(family, {6: 3, 7: 2, 8: 1}.get(rank))
    assert classical_det(d) == expected


def test_nonvanishing_examples():
    assert detq_nonvanishing(parse_type("A2"), 2, 4).zeros == []
    assert detq_nonvanishing(parse_type("A2"), 3, 3).zeros == [1, 2]
    assert detq_nonvanishing(parse_type("A1"), 4, 4).zeros == [1, 3]


def test_nonvanishing_small_sweep():
    for name in ["A1", "A3", "D5", "E6"]:
        d = parse_type(name)
        for l in range(1, 16):
            if gcd(l, d.coxeter) == 1:
                assert detq_nonvanishing(d, l, 2 * l).zeros == []


def test_noncoprime_does_not_force_zeros():
    # gcd(2, 2) != 1 for A1, yet [2] never vanishes at -1
    rep = detq_nonvanishing(parse_type("A1"), 2, 4)
    assert not rep.coprime and rep.zeros == []

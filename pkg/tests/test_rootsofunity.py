from math import gcd

import pytest
from hypothesis import given, strategies as st

from qvertex.fock import FockSpace, FockVector
from qvertex.qarith import ONE, CyclotomicNum, LaurentPoly, qint
from qvertex.rootdata import det_at, parse_type
from qvertex.rootsofunity import (
    CoprimalityViolation,
    SpecializedVector,
    dual_heisenberg,
    heisenberg_kernel,
    singular_vector_search,
    specialize_vector,
    specialized_apply,
    split_weight,
    weight_labels,
)
from qvertex.symcore import ColoredPartition


def test_specialize_vector_examples():
    sp = FockSpace(parse_type("A1"))
    vac = specialize_vector(sp.vacuum(), 5)
    assert vac.terms == {next(iter(sp.vacuum().terms)): 1}
    assert specialize_vector(sp.e((1,)).scale(qint(2)), 4).is_zero()
    v = sp.e((1,))
    assert specialize_vector(v.scale(qint(3)), 2) == specialize_vector(v, 2).scale(3)
    assert specialize_vector(FockVector(), 3).is_zero()
    with pytest.raises(ValueError):
        specialize_vector(sp.apply_h(0, -2, sp.vacuum()), 3)


@pytest.mark.parametrize("name", ["A1", "A2"])
@pytest.mark.parametrize("l", [2, 3, 5])
def test_specialisation_is_equivariant(name, l):
    sp = FockSpace(parse_type(name))
    labels = sp.enumerate_basis(3)
    nodes = list(sp.datum.nodes)
    coeff = st.dictionaries(st.integers(-2, 2), st.integers(-3, 3), min_size=1, max_size=3).map(LaurentPoly)

    @given(st.dictionaries(st.sampled_from(labels), coeff, min_size=1, max_size=4),
           st.sampled_from(nodes), st.sampled_from([1, -1]), st.integers(-2, 2), st.integers(1, 3))
    def check(terms, i, sign, n, k):
        v = FockVector(terms)
        ops = [
            lambda w: sp.apply_x(i, sign, n, w),
            lambda w: sp.apply_ht(i, k, w),
            lambda w: sp.apply_ht(i, -k, w),
            lambda w: sp.apply_torus("K", w, i=i),
            lambda w: sp.apply_torus("D", w),
        ]
        sv = specialize_vector(v, l)
        for op in ops:
            assert specialized_apply(sp, op, sv) == specialize_vector(op(v), l)

    check()


def test_dual_examples():
    h = dual_heisenberg(parse_type("A1"), 0, 1, 3)
    assert h.coeffs == [-1]
    with pytest.raises(CoprimalityViolation) as info:
        dual_heisenberg(parse_type("A2"), 0, 1, 3)
    assert info.value.det.is_zero()
    assert "coprimality violated" in str(info.value)


COPRIME_CASES = [(name, l) for name in ("A1", "A2", "A3") for l in range(1, 8)
                 if gcd(l, parse_type(name).coxeter) == 1]


@pytest.mark.parametrize("name,l", COPRIME_CASES)
def test_dual_elements_are_dual(name, l):
    d = parse_type(name)
    sp = FockSpace(d)
    probes = [sp.vacuum(), sp.basis_vector(ColoredPartition.empty(d.rank).with_part(0, 2), d.zero())]
    for k in range(1, 5):
        for i in d.nodes:
            h = dual_heisenberg(d, i, k, l)
            for j in d.nodes:
                for v in probes:
                    w = specialize_vector(v, l)
                    got = h.commutator_with_creation(sp, j, w)
                    assert got == (w if i == j else SpecializedVector(l))


@pytest.mark.parametrize("name,l", [("A2", 2), ("A1", 3), ("A3", 5)])
def test_dual_lowers_generators(name, l):
    # h^{i,k} Pt(j,m).1 = delta_ij / k Pt(j,m-k).1
    d = parse_type(name)
    sp = FockSpace(d)
    empty = ColoredPartition.empty(d.rank)
    for k in range(1, 4):
        for i in d.nodes:
            h = dual_heisenberg(d, i, k, l)
            for j in d.nodes:
                for m in range(k, k + 3):
                    src = specialize_vector(sp.basis_vector(empty.with_part(j, m), d.zero()), l)
                    got = h.apply(sp, src)
                    if i == j:
                        tgt = empty.with_part(j, m - k) if m > k else empty
                        want = SpecializedVector(l, {(tgt, d.zero()): CyclotomicNum.from_int(l, 1) / k})
                    else:
                        want = SpecializedVector(l)
                    assert got == want


@pytest.mark.parametrize("name", ["A1", "A2", "A3"])
def test_dual_fails_exactly_when_det_vanishes(name):
    d = parse_type(name)
    for l in range(1, 9):
        for k in range(1, 2 * l + 1):
            zero = det_at(d, l, k).is_zero()
            try:
                dual_heisenberg(d, 0, k, l)
                built = True
            except CoprimalityViolation:
                built = False
            assert built == (not zero)


def test_kernel_examples():
    assert heisenberg_kernel(parse_type("A2"), 2, 4) == [0, 0, 0, 0]
    assert heisenberg_kernel(parse_type("A1"), 3, 4) == [0, 0, 0, 0]
    assert any(heisenberg_kernel(parse_type("A2"), 3, 3))


@pytest.mark.parametrize("name", ["A1", "A2", "A3"])
def test_generic_kernel_is_zero(name):
    assert heisenberg_kernel(parse_type(name), 0, 5) == [0] * 5


def test_singular_search_examples():
    for name, l in [("A2", 2), ("A1", 3)]:
        rep = singular_vector_search(parse_type(name), l, 3)
        assert not rep.singular_found and rep.vacuum_excluded
        assert rep.dimension_checks == rep.components_checked > 0
    assert not singular_vector_search(parse_type("A2"), 2, 0).candidates
    assert singular_vector_search(parse_type("A2"), 3, 3).singular_found


def test_raising_half_alone_gives_spurious_hits():
    rep = singular_vector_search(parse_type("A1"), 3, 4, signs=(1,))
    assert [(eta, d) for eta, d, _ in rep.candidates] == [((2,), 4)]
    assert not singular_vector_search(parse_type("A1"), 3, 4).singular_found


def test_weight_split():
    assert split_weight([5, -1, 0], 3) == ([2, 2, 0], [1, -1, 0])
    sp = FockSpace(parse_type("A2"))
    lab = (ColoredPartition([[1], []]), (1, 0))
    w = weight_labels(sp, lab, 2)
    assert w["mu"] == [2, -1] and w["n"] == -2
    for m, lo, hi in zip(w["mu"], w["mu_low"], w["mu_high"]):
        assert m == lo + 2 * hi and 0 <= lo < 2

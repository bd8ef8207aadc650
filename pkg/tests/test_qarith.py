from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qvertex.qarith import (
    ONE,
    Q,
    ZERO,
    CyclotomicNum,
    LaurentPoly,
    NotDivisibleError,
    cyclotomic_poly,
    divides,
    euler_phi,
    exact_div,
    parse_laurent,
    qbinom,
    qfact,
    qint,
    render,
    specialize,
    specialize_power,
)

from conftest import laurent_polys, nonzero_laurent


def P(d):
    return LaurentPoly(d)


# -- q-numbers --------------------------------------------------------------------------

def test_qint_small_values():
    assert qint(0) == ZERO
    assert qint(1) == ONE
    assert qint(2) == P({1: 1, -1: 1})
    assert qint(3) == P({2: 1, 0: 1, -2: 1})


@pytest.mark.parametrize("m", range(-8, 9))
def test_qint_odd_and_integral(m):
    assert qint(-m) == -qint(m)
    assert qint(m).is_integral()


@pytest.mark.parametrize("m", range(1, 9))
def test_qint_matches_defining_quotient(m):
    num = P({m: 1, -m: -1})
    assert exact_div(num, P({1: 1, -1: -1})) == qint(m)


def test_qbinom_examples():
    assert qbinom(5, 0) == ONE
    assert qbinom(2, 1) == P({1: 1, -1: 1})
    assert qbinom(4, 2) == P({4: 1, 2: 1, 0: 2, -2: 1, -4: 1})


def test_qfact_product():
    assert qfact(0) == ONE
    assert qfact(3) == qint(1) * qint(2) * qint(3)


@pytest.mark.parametrize("m", range(1, 13))
def test_q_pascal(m):
    for r in range(0, m + 1):
        left = qbinom(m - 1, r - 1).shift(m - r) if r >= 1 else ZERO
        right = qbinom(m - 1, r).shift(-r) if r <= m - 1 else ZERO
        assert qbinom(m, r) == left + right


@pytest.mark.parametrize("m", range(0, 10))
def test_bar_symmetry(m):
    assert qint(m).bar() == qint(m)
    assert qfact(m).bar() == qfact(m)
    for r in range(m + 1):
        assert qbinom(m, r).bar() == qbinom(m, r)
        assert qbinom(m, r).is_integral()


# -- ring axioms and division ----------------------------------------------------------------

@given(laurent_polys(), laurent_polys(), laurent_polys())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(laurent_polys(ints_only=False))
def test_no_zero_terms_and_ring_flag(a):
    assert all(c != 0 for _, c in a.items())
    if all(Fraction(c).denominator == 1 for _, c in a.items()):
        assert a.ring == "ZZ"
        assert a.to_rational().to_integer() == a


@given(laurent_polys(), nonzero_laurent())
def test_exact_div_round_trip(a, b):
    assert exact_div(a * b, b) == a


def test_exact_div_examples():
    assert exact_div(P({2: 1, -2: -1}), P({1: 1, -1: -1})) == qint(2)
    assert exact_div(qfact(3) * qint(2), qfact(3)) == qint(2)
    with pytest.raises(NotDivisibleError):
        exact_div(qint(2), P({1: 1, -1: -1}))
    assert not divides(P({1: 1, -1: -1}), qint(2))


def test_exact_div_integer_ring_reports_fractional_quotient():
    with pytest.raises(NotDivisibleError):
        exact_div(LaurentPoly.const(1), LaurentPoly.const(2), ring="ZZ")
    assert exact_div(LaurentPoly.const(1), LaurentPoly.const(2), ring="QQ") == Fraction(1, 2)


@given(laurent_polys(ints_only=False))
def test_render_parse_round_trip(a):
    assert parse_laurent(render(a)) == a


def test_render_format():
    assert render(P({-2: -1, 0: 1, 3: 2})) == "-q^-2+1+2*q^3"
    assert render(ZERO) == "0"
    assert render(P({1: Fraction(1, 2)})) == "1/2*q"


# -- cyclotomic specialisation ------------------------------------------------------------------

def test_cyclotomic_polys():
    assert cyclotomic_poly(1) == (-1, 1)
    assert cyclotomic_poly(4) == (1, 0, 1)
    assert cyclotomic_poly(6) == (1, -1, 1)
    for l in range(1, 31):
        assert len(cyclotomic_poly(l)) - 1 == euler_phi(l)


@pytest.mark.parametrize("l", range(1, 13))
def test_zeta_is_primitive(l):
    z = CyclotomicNum.zeta(l)
    assert z ** l == 1
    for d in range(1, l):
        if l % d == 0:
            assert z ** d != 1


def test_specialize_examples():
    for m in range(0, 7):
        assert specialize(qint(m), 1) == m
    assert specialize(qint(2), 4).is_zero()
    assert specialize(qint(3), 2) == 3
    assert specialize(qint(3), 3).is_zero()
    assert specialize_power(qint(2), 4, 2) == -2


@given(laurent_polys(), laurent_polys(), st.integers(1, 12))
def test_specialize_is_ring_homomorphism(a, b, l):
    assert specialize(a * b, l) == specialize(a, l) * specialize(b, l)
    assert specialize(a + b, l) == specialize(a, l) + specialize(b, l)


@given(laurent_polys(), st.integers(1, 12))
def test_cyclotomic_inverse(a, l):
    x = specialize(a, l)
    if not x.is_zero():
        assert x * x.inverse() == 1

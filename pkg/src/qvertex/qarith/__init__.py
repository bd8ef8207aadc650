"""Exact q-arithmetic: Laurent polynomials, q-numbers, cyclotomic values."""

from .laurent import (
    ONE,
    Q,
    QQ,
    ZERO,
    ZZ,
    LaurentPoly,
    NotDivisibleError,
    divides,
    exact_div,
    parse_laurent,
    qbinom,
    qfact,
    qint,
    render,
)
from .cyclotomic import (
    CyclotomicNum,
    cyclotomic_poly,
    euler_phi,
    primitive_order,
    specialize,
    specialize_power,
)

__all__ = [
    "ONE", "Q", "QQ", "ZERO", "ZZ",
    "LaurentPoly", "NotDivisibleError", "divides", "exact_div", "parse_laurent",
    "qbinom", "qfact", "qint", "render",
    "CyclotomicNum", "cyclotomic_poly", "euler_phi", "primitive_order",
    "specialize", "specialize_power",
]

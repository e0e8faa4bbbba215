import cmath
import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from coxdef.coxeter import CoxeterMatrix
from coxdef.cyclotomic import CyclotomicValue, cyclotomic_polynomial, specialize_group, totient
from coxdef.laurent import LaurentPoly, t


@pytest.mark.parametrize("n", list(range(1, 61)))
def test_cyclotomic_polynomial_matches_sympy(n):
    x = sympy.Symbol("x")
    expected = sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs()[::-1]
    assert list(cyclotomic_polynomial(n)) == [int(c) for c in expected]
    assert totient(n) == int(sympy.totient(n))


def _numeric(v: CyclotomicValue) -> complex:
    z = cmath.exp(2j * cmath.pi / v.n)
    return sum(float(c) * z**k for k, c in enumerate(v.coeffs))


@st.composite
def values(draw, n):
    coeffs = [Fraction(draw(st.integers(-6, 6)), draw(st.integers(1, 5))) for _ in range(totient(n))]
    return CyclotomicValue(n, coeffs)


@pytest.mark.parametrize("n", [3, 4, 5, 12, 20])
def test_arithmetic_against_complex_numbers(n):
    @settings(max_examples=60, deadline=None)
    @given(values(n), values(n))
    def check(a, b):
        assert abs(_numeric(a * b) - _numeric(a) * _numeric(b)) < 1e-6
        assert abs(_numeric(a + b) - (_numeric(a) + _numeric(b))) < 1e-6
        if not a.is_zero():
            assert a * a.inverse() == CyclotomicValue.rational(n, 1)

    check()


def test_zeta_power_reduction():
    z = CyclotomicValue.zeta(12)
    assert z**12 == CyclotomicValue.rational(12, 1)
    assert z**6 == CyclotomicValue.rational(12, -1)


def test_group_specialization_examples():
    m2 = CoxeterMatrix.dihedral(2)
    assert specialize_group(t(m2, 0, 1, 1)) == CyclotomicValue.rational(2, -1)
    for m in range(2, 9):
        matrix = CoxeterMatrix.dihedral(m)
        total = sum((t(matrix, 0, 1, k) for k in range(1, m + 1)), LaurentPoly.constant(0))
        prod = LaurentPoly.constant(1)
        for k in range(1, m + 1):
            prod = prod * t(matrix, 0, 1, k)
        assert specialize_group(total).is_zero()
        assert specialize_group(prod) == CyclotomicValue.rational(m, (-1) ** (m + 1))


def test_specialization_commutes_with_sigma():
    # sigma fixes the root-of-unity point: t_{ij,-k}^{-1} = zeta^k there
    matrix = CoxeterMatrix.triangle(2, 3, 5)
    rng = random.Random(0)
    params = [t(matrix, i, j, k) for i, j in matrix.pairs() for k in range(1, matrix.m(i, j) + 1)]
    for _ in range(30):
        p = LaurentPoly.constant(0)
        for _ in range(3):
            mono = LaurentPoly.constant(rng.randint(-3, 3))
            for _ in range(3):
                mono = mono * rng.choice(params) ** rng.choice((-1, 1, 2))
            p = p + mono
        assert specialize_group(p, 30) == specialize_group(p.sigma(), 30)


def test_conductor_mismatch_raises():
    with pytest.raises(ValueError):
        CyclotomicValue.zeta(3) + CyclotomicValue.zeta(4)

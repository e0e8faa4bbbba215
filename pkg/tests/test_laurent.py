import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from coxdef.coxeter import CoxeterMatrix
from coxdef.errors import InvalidInputError, NotAUnitError
from coxdef.laurent import LaurentPoly, ParamIndex, parameters, random_assignment, sigma_twist, t

M3 = CoxeterMatrix.triangle(2, 3, 4)
PARAMS = parameters(M3)


@st.composite
def polys(draw, max_terms=4):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        exps = {}
        for _ in range(draw(st.integers(0, 3))):
            idx = draw(st.sampled_from(PARAMS))
            exps[idx] = exps.get(idx, 0) + draw(st.integers(-2, 2))
        mono = tuple(sorted((i, e) for i, e in exps.items() if e))
        terms[mono] = terms.get(mono, 0) + Fraction(draw(st.integers(-5, 5)), draw(st.integers(1, 4)))
    return LaurentPoly(terms)


POINT = random_assignment(M3, random.Random(11))


def test_additive_inverse():
    x = t(M3, 0, 1, 1)
    assert (x + (-x)).is_zero()


def test_unit_inverse():
    x = t(M3, 0, 1, 1)
    assert x.invert_unit() * x == LaurentPoly.constant(1)


def test_distributivity_example():
    a, b = t(M3, 0, 1, 1), t(M3, 0, 1, 2)
    assert (a + b) * a.invert_unit() == 1 + b * a.invert_unit()


def test_non_monomial_is_not_a_unit():
    with pytest.raises(NotAUnitError):
        (t(M3, 0, 1, 1) + 1).invert_unit()


def test_reversed_index_convention():
    # t_{jik} = t_{ij,-k}^{-1}
    matrix = CoxeterMatrix.dihedral(5)
    for k in range(1, 6):
        assert t(matrix, 1, 0, k) * t(matrix, 0, 1, -k) == 1


def test_sigma_examples():
    m3 = CoxeterMatrix.dihedral(3)
    assert t(m3, 0, 1, 1).sigma() == t(m3, 0, 1, 2).invert_unit()
    m2 = CoxeterMatrix.dihedral(2)
    assert t(m2, 0, 1, 2).sigma() == t(m2, 0, 1, 2).invert_unit()


def test_evaluate_examples():
    matrix = CoxeterMatrix.dihedral(3)
    x = t(matrix, 0, 1, 1)
    assert LaurentPoly.constant(1).evaluate({}) == 1
    assert x.evaluate({ParamIndex(0, 1, 1, 3): Fraction(2, 3)}) == Fraction(2, 3)
    assert (x * x.invert_unit()).evaluate({}) == 1


def test_evaluate_rejects_missing_or_zero():
    x = t(CoxeterMatrix.dihedral(3), 0, 1, 1)
    with pytest.raises(InvalidInputError):
        x.evaluate({})
    with pytest.raises(InvalidInputError):
        x.evaluate({ParamIndex(0, 1, 1, 3): 0})


@settings(max_examples=150, deadline=None)
@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a


@settings(max_examples=150, deadline=None)
@given(polys(), polys())
def test_evaluation_is_a_ring_homomorphism(a, b):
    assert (a * b).evaluate(POINT) == a.evaluate(POINT) * b.evaluate(POINT)
    assert (a - b).evaluate(POINT) == a.evaluate(POINT) - b.evaluate(POINT)


@settings(max_examples=150, deadline=None)
@given(polys(), polys())
def test_sigma_is_an_involutive_ring_automorphism(a, b):
    assert sigma_twist(sigma_twist(a)) == a
    assert (a * b).sigma() == a.sigma() * b.sigma()
    assert (a + b).sigma() == a.sigma() + b.sigma()


@settings(max_examples=100, deadline=None)
@given(polys())
def test_json_roundtrip(a):
    assert LaurentPoly.from_json(a.to_json(), M3) == a


def test_json_rejects_out_of_range_index():
    with pytest.raises(InvalidInputError):
        LaurentPoly.from_json({"terms": [{"coeff": "1", "exps": [["t", 0, 1, 9, 1]]}]}, M3)

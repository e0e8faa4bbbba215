import random

import pytest

from coxdef.coxeter import INF, CoxeterMatrix, alternating
from coxdef.cyclotomic import CyclotomicValue, specialize_group
from coxdef.errors import InvalidInputError, NoRuleError
from coxdef.laurent import LaurentPoly
from coxdef.rank2 import braid_rule, canonical_alternating_words, rank2_model

ONE = LaurentPoly.constant(1)


def test_inverse_of_a_for_m2():
    model = rank2_model(2)
    t1, t2 = model.params
    inv = (t1 * t2).invert_unit()
    assert model.inverse_of_a() == {0: inv * (t1 + t2), 1: -inv}
    # a * a^{-1} = 1
    assert model._poly_mulmod({1: ONE}, model.inverse_of_a()) == {0: ONE}


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_a_to_the_m_uses_elementary_symmetric_functions(m):
    model = rank2_model(m)
    ts = model.params
    # a^m = e1 a^{m-1} - e2 a^{m-2} + ... ; compare the top coefficient with e1
    e1 = sum(ts, LaurentPoly.constant(0))
    assert model.power(m)[m - 1] == e1
    prod = ONE
    for x in ts:
        prod = prod * x
    assert model.power(m).get(0, LaurentPoly.constant(0)) == prod * (-1) ** (m + 1)


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
@pytest.mark.parametrize("offset", [-1, "centered"])
def test_model_is_associative_and_has_dihedral_specialization(m, offset):
    model = rank2_model(m, offset=-(m // 2) if offset == "centered" else offset)
    basis = model.basis()
    rng = random.Random(m)
    for _ in range(12):
        x, y, z = (rng.choice(basis) for _ in range(3))
        lhs = model.multiply(model.multiply({x: ONE}, {y: ONE}), {z: ONE})
        rhs = model.multiply({x: ONE}, model.multiply({y: ONE}, {z: ONE}))
        assert lhs == rhs
    # at the roots of unity a^m = 1
    power = {d: specialize_group(c, m) for d, c in model.power(m).items()}
    assert {d: c for d, c in power.items() if not c.is_zero()} == {0: CyclotomicValue.rational(m, 1)}


def test_generators_are_involutions():
    model = rank2_model(4)
    for letter in (0, 1):
        g = model.generator(letter)
        assert model.multiply(g, g) == {(0, 0): ONE}


def test_rule_for_m2():
    rule = braid_rule(CoxeterMatrix.dihedral(2), 0, 1)
    model = rank2_model(2)
    t1, t2 = model.params
    inv = (t1 * t2).invert_unit()
    assert rule.lhs == (1, 0)
    assert dict(rule.rhs) == {(0, 1): -inv, (): inv * (t1 + t2)}


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6, 7])
def test_rule_leading_coefficient_and_shorter_terms(m):
    rule = braid_rule(CoxeterMatrix.dihedral(m), 1, 0)
    word, lead = rule.leading
    assert word == alternating(0, 1, m) and rule.lhs == alternating(1, 0, m)
    prod = ONE
    for x in rank2_model(m).params:
        prod = prod * x
    assert lead == prod.invert_unit() * (-1) ** (m + 1)
    for w, _ in rule.shorter:
        assert len(w) < m and len(w) % 2 == m % 2


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_rule_holds_in_the_model(m):
    rule = braid_rule(CoxeterMatrix.dihedral(m), 0, 1)
    model = rank2_model(m, offset=-(m // 2))
    rhs = {}
    for w, c in rule.rhs:
        for key, v in model.multiply(model.monomial(0, 0, c), model.word(w)).items():
            rhs[key] = rhs.get(key, LaurentPoly.constant(0)) + v
    rhs = {k: v for k, v in rhs.items() if v}
    assert model.word(rule.lhs) == rhs


@pytest.mark.parametrize("m", [2, 3, 5, 6])
def test_rule_specializes_to_plain_braid_move(m):
    rule = braid_rule(CoxeterMatrix.dihedral(m), 0, 1)
    _, lead = rule.leading
    assert specialize_group(lead, m) == CyclotomicValue.rational(m, 1)
    for _, c in rule.shorter:
        assert specialize_group(c, m).is_zero()


def test_canonical_alternating_words_count():
    assert len(canonical_alternating_words(0, 1, 5)) == 10


def test_errors():
    with pytest.raises(NoRuleError):
        braid_rule(CoxeterMatrix.dihedral(INF), 0, 1)
    with pytest.raises(InvalidInputError):
        rank2_model(1)

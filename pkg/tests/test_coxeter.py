import itertools
import random

import pytest

from coxdef.coxeter import (
    INF,
    CoxeterMatrix,
    canonical_word,
    enumerate_elements,
    group_for,
    growth_series,
    is_reduced,
    parabolic_submatrix,
    rank3_is_finite,
)
from coxdef.errors import BudgetExceededError, InvalidInputError
from oracles import GeometricRep, all_words, brute_force_group, poincare_polynomial


# --- matrix validation ------------------------------------------------------

def test_matrix_rejects_order_one():
    with pytest.raises(InvalidInputError):
        CoxeterMatrix.dihedral(1)


def test_matrix_requires_every_pair():
    with pytest.raises(InvalidInputError):
        CoxeterMatrix(3, ((0, 1, 2), (0, 2, 3)))


def test_matrix_json_roundtrip_with_infinity():
    m = CoxeterMatrix.triangle(3, 3, INF)
    again = CoxeterMatrix.from_json(m.to_json())
    assert again == m and again.m(2, 1) == INF


def test_malformed_json_is_invalid_input():
    with pytest.raises(InvalidInputError):
        CoxeterMatrix.from_json('{"rank": 2}')


# --- reduced words ------------------------------------------------------------

@pytest.mark.parametrize("m", [2, 3, 5, INF])
def test_square_is_never_reduced(m):
    assert not is_reduced(CoxeterMatrix.dihedral(m), [0, 0])
    assert is_reduced(CoxeterMatrix.dihedral(m), [])


def test_braid_orbit_without_square_is_reduced():
    assert is_reduced(CoxeterMatrix.dihedral(3), [0, 1, 0])
    assert not is_reduced(CoxeterMatrix.dihedral(3), [0, 1, 0, 1])


def test_canonical_examples():
    assert canonical_word(CoxeterMatrix.dihedral(3), [1, 0, 1]).canonical == (0, 1, 0)
    assert canonical_word(CoxeterMatrix.dihedral(2), [0, 1, 1, 0]).canonical == ()
    # 0101 = (101)1 = 10
    assert canonical_word(CoxeterMatrix.dihedral(3), [0, 1, 0, 1]).canonical == (1, 0)


@pytest.mark.parametrize(
    "matrix",
    [CoxeterMatrix.triangle(2, 3, 3), CoxeterMatrix.triangle(2, 3, 4), CoxeterMatrix.triangle(3, 3, INF)],
    ids=["A3", "B3", "33inf"],
)
def test_canonical_words_agree_with_geometric_representation(matrix):
    rep = GeometricRep(matrix)
    group = group_for(matrix)
    seen = {}
    for word in all_words(matrix.rank, 6):
        w = group.canonical(word)
        key = rep.of_word(word)
        assert rep.of_word(w) == key
        assert seen.setdefault(key, w) == w


def test_lengths_match_brute_force_bfs():
    matrix = CoxeterMatrix.triangle(2, 3, 5)
    rep = GeometricRep(matrix)
    lengths = brute_force_group(rep, 20)
    for layer in group_for(matrix).enumerate(20):
        for w in layer:
            assert lengths[rep.of_word(w)] == len(w)


# --- enumeration and growth ---------------------------------------------------

def test_enumerate_dihedral_three():
    layers = enumerate_elements(CoxeterMatrix.dihedral(3), 3)
    assert [len(layer) for layer in layers] == [1, 2, 2, 1]


def test_enumerate_a3_has_one_longest_element():
    layers = enumerate_elements(CoxeterMatrix.triangle(2, 3, 3), 6)
    assert sum(map(len, layers)) == 24 and len(layers[6]) == 1


def test_enumerate_length_zero():
    assert [list(map(tuple, layer)) for layer in enumerate_elements(CoxeterMatrix.triangle(3, 3, 3), 0)] == [[((),)]]


@pytest.mark.parametrize(
    "matrix,degrees",
    [
        (CoxeterMatrix.triangle(2, 3, 3), (2, 3, 4)),
        (CoxeterMatrix.triangle(2, 3, 4), (2, 4, 6)),
        (CoxeterMatrix.triangle(2, 3, 5), (2, 6, 10)),
        (CoxeterMatrix.triangle(2, 2, 5), (2, 2, 5)),
        (CoxeterMatrix.dihedral(6), (2, 6)),
    ],
)
def test_growth_of_finite_groups_is_poincare_polynomial(matrix, degrees):
    poly = poincare_polynomial(degrees)
    assert growth_series(matrix, len(poly) + 2) == poly


def test_growth_examples():
    assert growth_series(CoxeterMatrix.dihedral(4), 4) == [1, 2, 2, 2, 1]
    assert growth_series(CoxeterMatrix.triangle(3, 3, 3), 2) == [1, 3, 6]
    assert growth_series(CoxeterMatrix(1, ()), 3) == [1, 1]


def test_affine_growth_is_linear():
    # affine A2: growth 1, 3, 6, 9, 12, ...
    assert growth_series(CoxeterMatrix.triangle(3, 3, 3), 6) == [1, 3, 6, 9, 12, 15, 18]


def test_budget_exhaustion():
    with pytest.raises(BudgetExceededError):
        group_for(CoxeterMatrix.triangle(3, 3, 3), budget=50).enumerate(30)


def test_budget_from_environment(monkeypatch):
    monkeypatch.setenv("COXDEF_BUDGET", "20")
    with pytest.raises(BudgetExceededError):
        group_for(CoxeterMatrix.triangle(3, 3, 3)).enumerate(30)


# --- multiplication -------------------------------------------------------------

def test_multiply_matches_geometric_representation():
    matrix = CoxeterMatrix.triangle(2, 3, 4)
    group = group_for(matrix)
    rep = GeometricRep(matrix)
    elements = group.elements(9)
    rng = random.Random(3)
    for _ in range(200):
        x, y = rng.choice(elements), rng.choice(elements)
        assert rep.of_word(group.multiply(x, y)) == rep._mul(rep.of_word(x), rep.of_word(y))
        assert group.multiply(x, group.inverse(x)) == ()


# --- finiteness and parabolics --------------------------------------------------

def test_rank3_finiteness_catalog():
    finite = set()
    values = [2, 3, 4, 5, 6, 7, INF]
    for triple in itertools.combinations_with_replacement(values, 3):
        if rank3_is_finite(*triple):
            finite.add(triple)
    expected = {(2, 2, m) for m in values if m != INF} | {(2, 3, 3), (2, 3, 4), (2, 3, 5)}
    assert finite == expected


def test_rank3_finiteness_spot_values():
    assert rank3_is_finite(2, 3, 5)
    assert not rank3_is_finite(2, 3, 6)
    assert not rank3_is_finite(2, 2, INF)


def test_parabolic_submatrix_reindexes():
    matrix = CoxeterMatrix.from_mapping(4, {(0, 1): 3, (0, 2): 2, (0, 3): 4, (1, 2): 5, (1, 3): 2, (2, 3): 6})
    sub, old = parabolic_submatrix(matrix, [3, 1, 2])
    assert old == (1, 2, 3)
    assert (sub.m(0, 1), sub.m(0, 2), sub.m(1, 2)) == (5, 2, 6)

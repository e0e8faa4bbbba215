"""Flatness predicate, determinant obstruction and bounded witness search."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from .algebra import FOLDS, TIEBREAKS, DeformedAlgebra
from .coefficients import GenericPoint
from .coxeter import CoxeterMatrix, group_for, parabolic_submatrix, rank3_is_finite
from .cyclotomic import CyclotomicValue, specialize_group
from .errors import InvalidInputError
from .laurent import LaurentPoly, ParamIndex, t


@dataclass
class ObstructionRelation:
    """prod over the cyclic pairs (ab, bc, ca) of (prod_k t_pqk)^(D/m_pq) = 1."""

    triple: tuple[int, int, int]
    orders: tuple
    group_order: int
    D: int
    exponents: dict  # {(p, q): D / m_pq} for the oriented pairs
    relation: LaurentPoly  # the left-hand side, a unit monomial

    def at_group(self) -> CyclotomicValue:
        return specialize_group(self.relation)

    def evaluate(self, assignment: Mapping[ParamIndex, Fraction]) -> Fraction:
        return self.relation.evaluate(assignment)

    def first_order(self) -> dict[ParamIndex, int]:
        """Linear functional in tau obtained from t = zeta^k (1 + tau)."""
        ((mono, _),) = self.relation.items()
        return dict(mono)

    def to_json(self) -> dict:
        return {
            "triple": list(self.triple),
            "orders": list(self.orders),
            "D": self.D,
            "exponents": [[p, q, e] for (p, q), e in self.exponents.items()],
            "relation": self.relation.to_json(),
        }


@dataclass
class FlatnessReport:
    flat: bool
    offending_triples: list = field(default_factory=list)
    obstructions: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "flat": self.flat,
            "offending_triples": [list(tr) for tr in self.offending_triples],
            "obstructions": [ob.to_json() for ob in self.obstructions],
        }


def determinant_obstruction(matrix: CoxeterMatrix, triple=(0, 1, 2)) -> ObstructionRelation:
    a, b, c = sorted(triple)
    pairs = [(a, b), (b, c), (c, a)]
    orders = tuple(matrix.m(p, q) for p, q in pairs)
    if not rank3_is_finite(*orders):
        raise InvalidInputError(f"triple {triple} generates an infinite group; no obstruction")
    sub, _ = parabolic_submatrix(matrix, (a, b, c))
    size = sum(len(layer) for layer in group_for(sub).enumerate(sum(orders) * 3))
    D = size // 2
    relation = LaurentPoly.constant(1)
    exponents = {}
    for (p, q), m in zip(pairs, orders):
        if D % m:
            raise AssertionError(f"m={m} does not divide D={D}")
        exponents[(p, q)] = D // m
        block = LaurentPoly.constant(1)
        for k in range(1, m + 1):
            block = block * t(matrix, p, q, k)
        relation = relation * block ** (D // m)
    return ObstructionRelation((a, b, c), orders, size, D, exponents, relation)


def is_flat(matrix: CoxeterMatrix) -> FlatnessReport:
    offending, obstructions = [], []
    for triple in itertools.combinations(range(matrix.rank), 3):
        a, b, c = triple
        if rank3_is_finite(matrix.m(a, b), matrix.m(a, c), matrix.m(b, c)):
            offending.append(triple)
            obstructions.append(determinant_obstruction(matrix, triple))
    return FlatnessReport(not offending, offending, obstructions)


@dataclass
class Witness:
    kind: str  # "strategy" or "associativity"
    data: tuple
    values: list
    labels: list
    point: dict

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "data": [list(w) for w in self.data] if self.kind == "associativity" else list(self.data),
            "computed": [{"via": label, "value": v.to_json()} for label, v in zip(self.labels, self.values)],
            "point": self.point,
        }


def find_nonflat_witness(
    matrix: CoxeterMatrix,
    bound: int,
    seed: int = 0,
    samples: int = 200,
    budget: int | None = None,
) -> Witness | None:
    """Search for evidence that T_{w(x)} is not a basis at a generic point.

    First every word of length <= bound is normalized under the four
    strategies (fold direction x braid tie-break); then ``samples`` random
    triples of basis elements of length <= bound are tested for
    associativity.  The first discrepancy in this order is returned.
    """
    backend = GenericPoint(matrix, seed=seed)
    algebras = [DeformedAlgebra(matrix, backend, fold=f, tiebreak=tb, budget=budget) for f in FOLDS for tb in TIEBREAKS]
    labels = [f"fold={a.fold},tiebreak={a.strategy['tiebreak']}" for a in algebras]
    point = backend.describe()
    for n in range(bound + 1):
        for word in itertools.product(range(matrix.rank), repeat=n):
            values = [a.normal_form(word) for a in algebras]
            if any(v != values[0] for v in values[1:]):
                return Witness("strategy", word, values, labels, point)
    algebra = algebras[0]
    elements = algebra.group.elements(bound)
    rng = random.Random(seed)
    for _ in range(samples):
        u, v, w = (rng.choice(elements) for _ in range(3))
        x, y, z = algebra.basis(u), algebra.basis(v), algebra.basis(w)
        left, right = (x * y) * z, x * (y * z)
        if left != right:
            return Witness("associativity", (u, v, w), [left, right], ["(xy)z", "x(yz)"], point)
    return None

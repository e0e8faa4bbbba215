"""Coefficient backends for computing in A(M).

Every backend turns a symbolic LaurentPoly into a value supporting ``+``,
``-``, ``*``, truth testing and ``twist()`` (the image of the involution
t_ijk -> t_jik).  The algebra code never looks inside the values.

* :class:`Symbolic` keeps exact Laurent polynomials.
* :class:`GenericPoint` evaluates at a rational point p.  Since the twist
  does not fix p, a value is stored as the pair (c(p), sigma(c)(p)) and the
  twist swaps the pair.  This is evaluation at the sigma-stable pair of
  points {p, sigma(p)}, so A(M) specializes to an honest algebra.
* :class:`GroupPoint` evaluates at t_ijk = exp(2 pi i k/m_ij) in Q(zeta_N),
  a point fixed by the twist.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Mapping

from .coxeter import CoxeterMatrix
from .cyclotomic import CyclotomicValue, specialize_group
from .laurent import LaurentPoly, ParamIndex, random_assignment


class Twin:
    __slots__ = ("a", "b")

    def __init__(self, a: Fraction, b: Fraction):
        self.a = a
        self.b = b

    def __add__(self, other: Twin) -> Twin:
        return Twin(self.a + other.a, self.b + other.b)

    def __sub__(self, other: Twin) -> Twin:
        return Twin(self.a - other.a, self.b - other.b)

    def __neg__(self) -> Twin:
        return Twin(-self.a, -self.b)

    def __mul__(self, other: Twin) -> Twin:
        return Twin(self.a * other.a, self.b * other.b)

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def twist(self) -> Twin:
        return Twin(self.b, self.a)

    def __eq__(self, other):
        if not isinstance(other, Twin):
            return NotImplemented
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return f"Twin({self.a}, {self.b})"

    def to_json(self) -> dict:
        return {"value": str(self.a), "twisted": str(self.b)}


class Symbolic:
    name = "symbolic"

    def __init__(self, matrix: CoxeterMatrix):
        self.matrix = matrix
        self.one = LaurentPoly.constant(1)
        self.zero = LaurentPoly.constant(0)

    def lift(self, p: LaurentPoly) -> LaurentPoly:
        return p

    def describe(self) -> dict:
        return {"backend": self.name}


class GenericPoint:
    name = "generic"

    def __init__(self, matrix: CoxeterMatrix, assignment: Mapping[ParamIndex, Fraction] | None = None, seed: int = 0):
        self.matrix = matrix
        self.seed = seed
        if assignment is None:
            assignment = random_assignment(matrix, random.Random(seed))
        self.assignment = dict(assignment)
        self.one = Twin(Fraction(1), Fraction(1))
        self.zero = Twin(Fraction(0), Fraction(0))
        self._cache: dict[LaurentPoly, Twin] = {}

    def lift(self, p: LaurentPoly) -> Twin:
        v = self._cache.get(p)
        if v is None:
            v = Twin(p.evaluate(self.assignment), p.sigma().evaluate(self.assignment))
            self._cache[p] = v
        return v

    def describe(self) -> dict:
        return {
            "backend": self.name,
            "seed": self.seed,
            "point": {str(idx): str(v) for idx, v in sorted(self.assignment.items())},
        }


class GroupPoint:
    name = "group"

    def __init__(self, matrix: CoxeterMatrix):
        self.matrix = matrix
        self.conductor = matrix.conductor()
        self.one = CyclotomicValue.rational(self.conductor, 1)
        self.zero = CyclotomicValue(self.conductor)

    def lift(self, p: LaurentPoly) -> CyclotomicValue:
        return specialize_group(p, self.conductor)

    def describe(self) -> dict:
        return {"backend": self.name, "conductor": self.conductor}

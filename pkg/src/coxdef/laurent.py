"""Exact Laurent polynomials in the parameters t_ijk with rational coefficients."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Mapping, NamedTuple

from .coxeter import INF, CoxeterMatrix
from .errors import InvalidInputError, NotAUnitError


class ParamIndex(NamedTuple):
    """Canonical parameter t_{i,j,k} with i < j and 1 <= k <= m (= m_ij)."""

    i: int
    j: int
    k: int
    m: int

    def conjugate(self) -> ParamIndex:
        """Index of t_{i,j,-k}, with -k taken in 1..m."""
        k = (-self.k) % self.m or self.m
        return ParamIndex(self.i, self.j, k, self.m)

    def __str__(self):
        return f"t{self.i}{self.j}_{self.k}"


def parameters(matrix: CoxeterMatrix) -> list[ParamIndex]:
    return [
        ParamIndex(i, j, k, m)
        for i, j, m in matrix.orders
        if m != INF
        for k in range(1, m + 1)
    ]


def _to_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, str)) and not isinstance(c, bool):
        return Fraction(c)
    raise TypeError(f"unsupported coefficient {c!r}")


def _mono_mul(a: tuple, b: tuple) -> tuple:
    if not a:
        return b
    if not b:
        return a
    exps = dict(a)
    for idx, e in b:
        s = exps.get(idx, 0) + e
        if s:
            exps[idx] = s
        else:
            del exps[idx]
    return tuple(sorted(exps.items()))


class LaurentPoly:
    """Finite sum of rational multiples of Laurent monomials in canonical t_ijk.

    A monomial is a sorted tuple of ``(ParamIndex, exponent)`` pairs with
    nonzero exponents; zero coefficients are never stored.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping | None = None):
        clean = {}
        if terms:
            for mono, c in terms.items():
                c = _to_fraction(c)
                if c:
                    mono = tuple(sorted((idx, e) for idx, e in mono if e))
                    clean[mono] = clean.get(mono, 0) + c
                    if not clean[mono]:
                        del clean[mono]
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> LaurentPoly:
        p = cls.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, c) -> LaurentPoly:
        c = _to_fraction(c)
        return cls._raw({(): c} if c else {})

    @classmethod
    def monomial(cls, exps: Mapping[ParamIndex, int] | None = None, coeff=1) -> LaurentPoly:
        mono = tuple(sorted((idx, e) for idx, e in (exps or {}).items() if e))
        return cls({mono: coeff})

    @classmethod
    def var(cls, idx: ParamIndex, power: int = 1) -> LaurentPoly:
        return cls.monomial({idx: power})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __bool__(self):
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def variables(self) -> set[ParamIndex]:
        return {idx for mono in self._terms for idx, _ in mono}

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other) -> LaurentPoly:
        if isinstance(other, LaurentPoly):
            return other
        return LaurentPoly.constant(other)

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for mono, c in other._terms.items():
            s = out.get(mono, 0) + c
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return LaurentPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({mono: -c for mono, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            try:
                c = _to_fraction(other)
            except TypeError:
                return NotImplemented
            if not c:
                return LaurentPoly._raw({})
            return LaurentPoly._raw({mono: v * c for mono, v in self._terms.items()})
        out: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                mono = _mono_mul(m1, m2)
                s = out.get(mono, 0) + c1 * c2
                if s:
                    out[mono] = s
                else:
                    out.pop(mono, None)
        return LaurentPoly._raw(out)

    __rmul__ = __mul__

    def invert_unit(self) -> LaurentPoly:
        if len(self._terms) != 1:
            raise NotAUnitError(f"{self} is not a unit monomial")
        ((mono, c),) = self._terms.items()
        return LaurentPoly._raw({tuple((idx, -e) for idx, e in mono): 1 / c})

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.invert_unit() ** (-n)
        result = LaurentPoly.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        try:
            return self._terms == LaurentPoly.constant(other)._terms
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- twists and evaluation ---------------------------------------------

    def sigma(self) -> LaurentPoly:
        """Apply t_ijk -> t_jik, i.e. t_{i,j,k} -> t_{i,j,-k}^{-1}."""
        out = {}
        for mono, c in self._terms.items():
            new = tuple(sorted((idx.conjugate(), -e) for idx, e in mono))
            out[new] = c
        return LaurentPoly._raw(out)

    twist = sigma

    def evaluate(self, assignment: Mapping[ParamIndex, Fraction]) -> Fraction:
        total = Fraction(0)
        for mono, c in self._terms.items():
            value = c
            for idx, e in mono:
                try:
                    v = assignment[idx]
                except KeyError:
                    raise InvalidInputError(f"no value assigned to {idx}") from None
                if v == 0:
                    raise InvalidInputError(f"parameter {idx} assigned zero")
                value *= Fraction(v) ** e
            total += value
        return total

    # -- display / serialization -------------------------------------------

    def __repr__(self):
        if not self._terms:
            return "0"
        parts = []
        for mono, c in sorted(self._terms.items()):
            factors = "*".join(str(idx) if e == 1 else f"{idx}^{e}" for idx, e in mono)
            if not factors:
                parts.append(str(c))
            elif c == 1:
                parts.append(factors)
            elif c == -1:
                parts.append("-" + factors)
            else:
                parts.append(f"{c}*{factors}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self) -> dict:
        return {
            "terms": [
                {
                    "coeff": str(c),
                    "exps": [["t", idx.i, idx.j, idx.k, e] for idx, e in mono],
                }
                for mono, c in sorted(self._terms.items())
            ]
        }

    @classmethod
    def from_json(cls, data, matrix: CoxeterMatrix) -> LaurentPoly:
        if isinstance(data, str):
            data = json.loads(data)
        terms: dict = {}
        try:
            for term in data["terms"]:
                coeff = Fraction(term["coeff"])
                exps = {}
                for tag, i, j, k, e in term["exps"]:
                    if tag != "t" or not (0 <= i < j < matrix.rank):
                        raise InvalidInputError(f"bad parameter {[tag, i, j, k, e]}")
                    m = matrix.m(i, j)
                    if m == INF or not 1 <= k <= m or e == 0:
                        raise InvalidInputError(f"bad parameter {[tag, i, j, k, e]}")
                    idx = ParamIndex(i, j, k, m)
                    exps[idx] = exps.get(idx, 0) + e
                mono = tuple(sorted((idx, e) for idx, e in exps.items() if e))
                terms[mono] = terms.get(mono, 0) + coeff
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInputError(f"malformed LaurentPoly JSON: {exc}") from exc
        return cls(terms)


def t(matrix: CoxeterMatrix, i: int, j: int, k: int) -> LaurentPoly:
    """The parameter t_{ijk} for any ordered pair, using t_ijk = t_{ji,-k}^{-1}."""
    m = matrix.m(i, j)
    if m == INF:
        raise InvalidInputError(f"pair ({i}, {j}) has infinite order and carries no parameters")
    if i < j:
        return LaurentPoly.var(ParamIndex(i, j, k % m or m, m))
    return LaurentPoly.var(ParamIndex(j, i, (-k) % m or m, m), -1)


def sigma_twist(p: LaurentPoly) -> LaurentPoly:
    return p.sigma()


def specialize_rational(p: LaurentPoly, assignment: Mapping[ParamIndex, Fraction]) -> Fraction:
    return p.evaluate(assignment)


def random_assignment(matrix: CoxeterMatrix, rng, bound: int = 7) -> dict[ParamIndex, Fraction]:
    """Seeded generic point: nonzero rationals with small numerators/denominators."""
    values = {}
    for idx in parameters(matrix):
        while True:
            num = rng.randint(-bound, bound)
            den = rng.randint(1, bound)
            if num and abs(Fraction(num, den)) != 1:
                values[idx] = Fraction(num, den)
                break
    return values

"""Normal forms and products in the deformed Coxeter group algebra A(M).

Elements are left R-combinations of T_{w(x)}, w(x) the ShortLex-minimal
reduced word of x.  Coefficients never commute past a letter for free:

    s_p c = sigma(c) s_p

so a coefficient picked up at position p inside a word is twisted p times.

A normal form is computed by folding the letters of a word one at a time
(left to right by default).  Appending a letter rewrites the current
reduced word along a BFS braid-move path using the deformed braid rules;
every rule application also emits strictly shorter words, which are
normalized recursively.  For flat M the result does not depend on the
strategy; for non-flat M it may, and that is what the witness search
looks for.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .coefficients import GroupPoint, Symbolic
from .coxeter import INF, CoxeterMatrix, group_for
from .errors import BudgetExceededError, InvalidInputError
from .laurent import LaurentPoly, t
from .rank2 import braid_rule

FOLDS = ("left", "right")
TIEBREAKS = ("forward", "reverse")


def _accumulate(acc: dict, word, c) -> None:
    s = acc.get(word)
    s = c if s is None else s + c
    if s:
        acc[word] = s
    else:
        acc.pop(word, None)


class AlgebraElement:
    """Finite left R-combination of basis elements T_{w(x)}."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: DeformedAlgebra, terms: dict | None = None):
        self.algebra = algebra
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @property
    def matrix(self) -> CoxeterMatrix:
        return self.algebra.matrix

    @property
    def is_even(self) -> bool:
        return all(len(w) % 2 == 0 for w in self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, word):
        return self.terms.get(tuple(word), self.algebra.backend.zero)

    def _check(self, other: AlgebraElement) -> None:
        if other.algebra.matrix != self.algebra.matrix:
            raise InvalidInputError("elements belong to algebras of different Coxeter matrices")

    def __add__(self, other: AlgebraElement) -> AlgebraElement:
        self._check(other)
        acc = dict(self.terms)
        for w, c in other.terms.items():
            _accumulate(acc, w, c)
        return AlgebraElement(self.algebra, acc)

    def __neg__(self) -> AlgebraElement:
        return AlgebraElement(self.algebra, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: AlgebraElement) -> AlgebraElement:
        return self + (-other)

    def __mul__(self, other: AlgebraElement) -> AlgebraElement:
        return self.algebra.multiply(self, other)

    def scale(self, c) -> AlgebraElement:
        """Left multiplication by a backend scalar."""
        return AlgebraElement(self.algebra, {w: c * v for w, v in self.terms.items()})

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            return NotImplemented
        return self.algebra.matrix == other.algebra.matrix and self.terms == other.terms

    __hash__ = None

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(
            f"({c})*T{list(w)}" for w, c in sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))
        )

    def to_json(self) -> dict:
        return {
            "even": self.is_even,
            "terms": [
                {"word": list(w), "coeff": c.to_json()}
                for w, c in sorted(self.terms.items(), key=lambda kv: (len(kv[0]), kv[0]))
            ],
        }


@dataclass
class _Move:
    """Deformed braid move starting at an alternating word of length m."""

    target: tuple
    lead: object
    lead_twisted: object
    shorter: list  # [(word, coeff, coeff_twisted)]


class DeformedAlgebra:
    """A(M) over a coefficient backend, with a fixed rewriting strategy."""

    def __init__(
        self,
        matrix: CoxeterMatrix,
        backend=None,
        fold: str = "left",
        tiebreak: str = "forward",
        budget: int | None = None,
    ):
        if fold not in FOLDS:
            raise InvalidInputError(f"fold must be one of {FOLDS}")
        if tiebreak not in TIEBREAKS:
            raise InvalidInputError(f"tiebreak must be one of {TIEBREAKS}")
        self.matrix = matrix
        self.backend = Symbolic(matrix) if backend is None else backend
        self.fold = fold
        self.reverse = tiebreak == "reverse"
        self.group = group_for(matrix, budget)
        self.budget = self.group.budget
        self._moves = self._build_moves()
        self._nf: dict[tuple, dict] = {(): {(): self.backend.one}}
        self._kernel: dict[tuple, dict] = {}

    @property
    def strategy(self) -> dict:
        return {"fold": self.fold, "tiebreak": "reverse" if self.reverse else "forward"}

    def _build_moves(self) -> dict[tuple[int, int], _Move]:
        lift = self.backend.lift
        moves = {}
        for i, j in self.matrix.finite_pairs():
            rule = braid_rule(self.matrix, i, j)
            (lead_word, lead), shorter = rule.leading, rule.shorter
            # larger -> smaller: the rule as stated
            entries = [(w, c) for w, c in shorter]
            moves[(j, i)] = self._make_move(lead_word, lead, entries, lift)
            # smaller -> larger: T_small = lead^{-1} T_big - sum lead^{-1} c_v T_v
            inv = lead.invert_unit()
            moves[(i, j)] = self._make_move(rule.lhs, inv, [(w, -(inv * c)) for w, c in shorter], lift)
        return moves

    @staticmethod
    def _make_move(target, lead: LaurentPoly, shorter, lift) -> _Move:
        return _Move(
            target,
            lift(lead),
            lift(lead.sigma()),
            [(w, lift(c), lift(c.sigma())) for w, c in shorter],
        )

    # -- elementary constructors --------------------------------------------

    def zero(self) -> AlgebraElement:
        return AlgebraElement(self, {})

    def one(self) -> AlgebraElement:
        return AlgebraElement(self, {(): self.backend.one})

    def scalar(self, p: LaurentPoly) -> AlgebraElement:
        return AlgebraElement(self, {(): self.backend.lift(p)})

    def basis(self, word: Iterable[int]) -> AlgebraElement:
        """T_{w(x)} for the group element x represented by ``word``."""
        return AlgebraElement(self, {self.group.canonical(word): self.backend.one})

    def word(self, word: Iterable[int]) -> AlgebraElement:
        """T_w for an arbitrary word, expressed in the spanning set."""
        return self.normal_form(word)

    def generator_a(self, i: int, j: int) -> AlgebraElement:
        """a_ij = s_i s_j, the generators of the even subalgebra."""
        return self.normal_form((i, j))

    def t(self, i: int, j: int, k: int) -> LaurentPoly:
        return t(self.matrix, i, j, k)

    # -- rewriting core -----------------------------------------------------

    def _apply_path(self, word: tuple, path: tuple, coeff):
        """Rewrite coeff*T_word along braid moves; return (word, coeff, shorter)."""
        shorter = []
        for p in path:
            a, b = word[p], word[p + 1]
            move = self._moves[(a, b)]
            m = len(move.target)
            odd = p % 2 == 1
            prefix, suffix = word[:p], word[p + m :]
            for v, c, c_tw in move.shorter:
                shorter.append((prefix + v + suffix, coeff * (c_tw if odd else c)))
            coeff = coeff * (move.lead_twisted if odd else move.lead)
            word = prefix + move.target + suffix
        return word, coeff, shorter

    def _remember_kernel(self, key, value) -> None:
        if len(self._kernel) >= self.budget:
            raise BudgetExceededError(f"kernel cache exceeded {self.budget} entries")
        self._kernel[key] = value

    def _right_kernel(self, x: tuple, i: int) -> dict:
        """T_{w(x)} s_i in the spanning set."""
        key = ("R", x, i)
        cached = self._kernel.get(key)
        if cached is not None:
            return cached
        one = self.backend.one
        y = self.group.right_multiply(x, i)
        acc: dict = {}
        if len(y) > len(x):
            path = self.group.braid_path(x + (i,), y, self.reverse)
            end, lead, shorter = self._apply_path(x + (i,), path, one)
            acc[end] = lead
            for w, c in shorter:
                for u, d in self._normal_form_terms(w).items():
                    _accumulate(acc, u, c * d)
        else:
            path = self.group.braid_path(x, y + (i,), self.reverse)
            _, lead, shorter = self._apply_path(x, path, one)
            _accumulate(acc, y, lead)
            for w, c in shorter:
                for u, d in self._normal_form_terms(w + (i,)).items():
                    _accumulate(acc, u, c * d)
        self._remember_kernel(key, acc)
        return acc

    def _left_kernel(self, i: int, x: tuple) -> dict:
        """s_i T_{w(x)} in the spanning set."""
        key = ("L", i, x)
        cached = self._kernel.get(key)
        if cached is not None:
            return cached
        one = self.backend.one
        y = self.group.left_multiply(i, x)
        acc: dict = {}
        if len(y) > len(x):
            path = self.group.braid_path((i,) + x, y, self.reverse)
            end, lead, shorter = self._apply_path((i,) + x, path, one)
            acc[end] = lead
            for w, c in shorter:
                for u, d in self._normal_form_terms(w).items():
                    _accumulate(acc, u, c * d)
        else:
            path = self.group.braid_path(x, (i,) + y, self.reverse)
            _, lead, shorter = self._apply_path(x, path, one)
            # s_i (c T_{i w}) = sigma(c) T_w
            _accumulate(acc, y, lead.twist())
            for w, c in shorter:
                for u, d in self._normal_form_terms((i,) + w).items():
                    _accumulate(acc, u, c.twist() * d)
        self._remember_kernel(key, acc)
        return acc

    def _times_generator(self, terms: dict, i: int) -> dict:
        acc: dict = {}
        for x, c in terms.items():
            for y, d in self._right_kernel(x, i).items():
                _accumulate(acc, y, c * d)
        return acc

    def _generator_times(self, i: int, terms: dict) -> dict:
        acc: dict = {}
        for x, c in terms.items():
            c = c.twist()
            for y, d in self._left_kernel(i, x).items():
                _accumulate(acc, y, c * d)
        return acc

    def _normal_form_terms(self, word: tuple) -> dict:
        cached = self._nf.get(word)
        if cached is not None:
            return cached
        if self.fold == "left":
            # longest cached prefix, then fold the remaining letters
            n = len(word) - 1
            while word[:n] not in self._nf:
                n -= 1
            terms = self._nf[word[:n]]
            for k in range(n, len(word)):
                terms = self._times_generator(terms, word[k])
                self._nf[word[: k + 1]] = terms
        else:
            n = 1
            while word[n:] not in self._nf:
                n += 1
            terms = self._nf[word[n:]]
            for k in range(n - 1, -1, -1):
                terms = self._generator_times(word[k], terms)
                self._nf[word[k:]] = terms
        return terms

    # -- public operations --------------------------------------------------

    def normal_form(self, word: Iterable[int]) -> AlgebraElement:
        w = self.matrix.check_word(word)
        return AlgebraElement(self, dict(self._normal_form_terms(w)))

    def multiply(self, x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
        if x.algebra.matrix != self.matrix or y.algebra.matrix != self.matrix:
            raise InvalidInputError("ambient Coxeter matrix mismatch")
        acc: dict = {}
        for u, c in x.terms.items():
            odd = len(u) % 2 == 1
            for v, d in y.terms.items():
                coeff = c * (d.twist() if odd else d)
                for w, e in self._normal_form_terms(u + v).items():
                    _accumulate(acc, w, coeff * e)
        return AlgebraElement(self, acc)

    def structure_constants(self, length: int) -> dict[tuple[tuple, tuple], AlgebraElement]:
        """T_{w(x)} T_{w(y)} for all x, y of length <= ``length``."""
        elements = self.group.elements(length)
        return {
            (x, y): AlgebraElement(self, dict(self._normal_form_terms(x + y)))
            for x in elements
            for y in elements
        }

    def sigma0(self, x: AlgebraElement, base: int = 0) -> AlgebraElement:
        """The involution of A_+ fixing the base index: coefficients twisted,

        a_ij -> a_ji if base in {i, j}, else a_{base,i} a_{j,base}.
        """
        if not x.is_even:
            raise InvalidInputError("sigma0 is defined on the even subalgebra only")
        if not 0 <= base < self.matrix.rank:
            raise InvalidInputError(f"base index {base} out of range")
        result = self.zero()
        for w, c in x.terms.items():
            image = self.one()
            for a, b in zip(w[0::2], w[1::2]):
                if base in (a, b):
                    factor = self.normal_form((b, a))
                else:
                    factor = self.multiply(self.normal_form((base, a)), self.normal_form((b, base)))
                image = self.multiply(image, factor)
            result = result + image.scale(c.twist())
        return result

    def minimal_polynomial_value(self, i: int, j: int) -> AlgebraElement:
        """prod_k (a_ij - t_ijk) evaluated in A(M); zero by definition."""
        m = self.matrix.m(i, j)
        if m == INF:
            raise InvalidInputError(f"m_{i}{j} is infinite")
        a = self.generator_a(i, j)
        value = self.one()
        for k in range(1, m + 1):
            value = self.multiply(value, a - self.scalar(self.t(i, j, k)))
        return value

    def iso_check(self, base: int = 0) -> dict[str, bool]:
        """Check the images s_i s_j satisfy the A_+ presentation and f f^{-1} = id."""
        rank = self.matrix.rank
        one = self.one()
        checks: dict[str, bool] = {}
        for i, j in itertools.permutations(range(rank), 2):
            checks[f"a{i}{j}*a{j}{i}=1"] = self.multiply(self.generator_a(i, j), self.generator_a(j, i)) == one
        for i, j, p in itertools.permutations(range(rank), 3):
            prod = self.multiply(
                self.multiply(self.generator_a(i, j), self.generator_a(j, p)), self.generator_a(p, i)
            )
            checks[f"a{i}{j}*a{j}{p}*a{p}{i}=1"] = prod == one
        for i, j in itertools.permutations(range(rank), 2):
            if self.matrix.m(i, j) != INF:
                checks[f"minpoly(a{i}{j})=0"] = self.minimal_polynomial_value(i, j).is_zero()
        s0 = self.normal_form((base,))
        for i in range(rank):
            if i == base:
                continue
            # f(sigma_0 a_{0i}) = s_0 s_0 s_i
            image = self.multiply(s0, self.generator_a(base, i))
            checks[f"f(inv(s{i}))=s{i}"] = image == self.normal_form((i,))
        return checks

    def filtration_degree(self, x: AlgebraElement) -> int | None:
        if x.is_zero():
            return None
        return max(len(w) for w in x.terms)

    def multidegree(self, x: AlgebraElement) -> dict[tuple[int, ...], int]:
        comps = self.matrix.odd_components()
        out = {comp: 0 for comp in comps}
        for w in x.terms:
            for comp in comps:
                out[comp] = max(out[comp], sum(1 for letter in w if letter in comp))
        return out


def specialize_element(x: AlgebraElement, algebra: DeformedAlgebra) -> AlgebraElement:
    """Push a symbolic element into an algebra with another backend."""
    if not isinstance(x.algebra.backend, Symbolic):
        raise InvalidInputError("only symbolic elements can be specialized")
    return AlgebraElement(algebra, {w: algebra.backend.lift(c) for w, c in x.terms.items()})


def group_algebra(matrix: CoxeterMatrix, **kwargs) -> DeformedAlgebra:
    return DeformedAlgebra(matrix, GroupPoint(matrix), **kwargs)


def normal_form(matrix: CoxeterMatrix, word: Iterable[int]) -> AlgebraElement:
    return DeformedAlgebra(matrix).normal_form(word)


def element_from_json(algebra: DeformedAlgebra, data) -> AlgebraElement:
    if not isinstance(algebra.backend, Symbolic):
        raise InvalidInputError("JSON elements carry symbolic coefficients")
    try:
        terms = {}
        for term in data["terms"]:
            w = algebra.group.canonical(term["word"])
            if w != tuple(term["word"]):
                raise InvalidInputError(f"word {term['word']} is not canonical")
            c = LaurentPoly.from_json(term["coeff"], algebra.matrix)
            _accumulate(terms, w, c)
    except (KeyError, TypeError) as exc:
        raise InvalidInputError(f"malformed AlgebraElement JSON: {exc}") from exc
    x = AlgebraElement(algebra, terms)
    if data.get("even") and not x.is_even:
        raise InvalidInputError("element flagged even has odd-length words")
    return x


def structure_constants_json(table: dict) -> list[dict]:
    return [
        {"x": list(x), "y": list(y), "product": product.to_json()}
        for (x, y), product in sorted(table.items(), key=lambda kv: (len(kv[0][0]), kv[0][0], len(kv[0][1]), kv[0][1]))
    ]



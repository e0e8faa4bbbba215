"""Coxeter matrices, words, and Tits' solution of the word problem.

Group elements are represented by their ShortLex-minimal reduced word
(index order 0 < 1 < ... < rank-1).  Everything is computed from braid-move
orbits, so finite and infinite groups are handled the same way.
"""

from __future__ import annotations

import itertools
import json
import math
import os
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple, Sequence

from .errors import BudgetExceededError, InvalidInputError, InvalidWordError

INF = math.inf
DEFAULT_BUDGET = 10**6

Word = tuple  # tuple[int, ...]


def default_budget() -> int:
    value = os.environ.get("COXDEF_BUDGET")
    if value is None:
        return DEFAULT_BUDGET
    try:
        return int(value)
    except ValueError as exc:
        raise InvalidInputError(f"COXDEF_BUDGET must be an integer, got {value!r}") from exc


def _check_order(m) -> int | float:
    if m == INF or m == "inf":
        return INF
    if isinstance(m, bool) or not isinstance(m, int):
        raise InvalidInputError(f"Coxeter order must be an integer >= 2 or inf, got {m!r}")
    if m < 2:
        raise InvalidInputError(f"Coxeter order must be >= 2, got {m}")
    return m


@dataclass(frozen=True)
class CoxeterMatrix:
    """Symmetric Coxeter matrix over the index set 0..rank-1.

    ``orders`` holds one entry ``(i, j, m)`` with ``i < j`` for every pair;
    ``m`` is an int >= 2 or ``INF``.
    """

    rank: int
    orders: tuple

    def __post_init__(self):
        if not isinstance(self.rank, int) or self.rank < 1:
            raise InvalidInputError(f"rank must be a positive integer, got {self.rank!r}")
        seen = {}
        for i, j, m in self.orders:
            if not (0 <= i < j < self.rank):
                raise InvalidInputError(f"bad pair ({i}, {j}) for rank {self.rank}")
            if (i, j) in seen:
                raise InvalidInputError(f"pair ({i}, {j}) listed twice")
            seen[(i, j)] = _check_order(m)
        missing = [p for p in itertools.combinations(range(self.rank), 2) if p not in seen]
        if missing:
            raise InvalidInputError(f"orders missing for pairs {missing}")
        object.__setattr__(self, "orders", tuple((i, j, seen[(i, j)]) for i, j in sorted(seen)))
        object.__setattr__(self, "_table", seen)

    @classmethod
    def from_mapping(cls, rank: int, mapping: dict) -> CoxeterMatrix:
        orders = []
        for (i, j), m in mapping.items():
            if i > j:
                i, j = j, i
            orders.append((i, j, m))
        return cls(rank, tuple(orders))

    @classmethod
    def dihedral(cls, m) -> CoxeterMatrix:
        return cls(2, ((0, 1, m),))

    @classmethod
    def triangle(cls, m01, m02, m12) -> CoxeterMatrix:
        return cls(3, ((0, 1, m01), (0, 2, m02), (1, 2, m12)))

    @classmethod
    def uniform(cls, rank: int, m) -> CoxeterMatrix:
        return cls(rank, tuple((i, j, m) for i, j in itertools.combinations(range(rank), 2)))

    def m(self, i: int, j: int):
        if i == j:
            raise InvalidInputError("no order on the diagonal")
        if i > j:
            i, j = j, i
        return self._table[(i, j)]

    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j, _ in self.orders]

    def finite_pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j, m in self.orders if m != INF]

    def conductor(self) -> int:
        """lcm of the finite orders (1 if there are none)."""
        n = 1
        for _, _, m in self.orders:
            if m != INF:
                n = n * m // math.gcd(n, m)
        return n

    def odd_components(self) -> list[tuple[int, ...]]:
        """Connected components of the graph joining i, j when m_ij is odd."""
        parent = list(range(self.rank))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for i, j, m in self.orders:
            if m != INF and m % 2 == 1:
                parent[find(i)] = find(j)
        comps: dict[int, list[int]] = {}
        for a in range(self.rank):
            comps.setdefault(find(a), []).append(a)
        return sorted(tuple(c) for c in comps.values())

    def check_word(self, word: Iterable[int]) -> Word:
        w = tuple(word)
        for letter in w:
            if isinstance(letter, bool) or not isinstance(letter, int) or not 0 <= letter < self.rank:
                raise InvalidWordError(f"letter {letter!r} out of range for rank {self.rank}")
        return w

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "orders": [[i, j, "inf" if m == INF else m] for i, j, m in self.orders],
        }

    @classmethod
    def from_json(cls, data) -> CoxeterMatrix:
        if isinstance(data, str):
            data = json.loads(data)
        try:
            rank = data["rank"]
            orders = [(int(i), int(j), m) for i, j, m in data["orders"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInputError(f"malformed Coxeter matrix JSON: {exc}") from exc
        for i, j, _ in orders:
            if i >= j:
                raise InvalidInputError(f"pairs must be listed with i < j, got ({i}, {j})")
        return cls(rank, tuple(orders))

    def __repr__(self):
        body = ", ".join(f"m{i}{j}={'inf' if m == INF else m}" for i, j, m in self.orders)
        return f"CoxeterMatrix(rank={self.rank}{', ' if body else ''}{body})"


class GroupElement(NamedTuple):
    canonical: Word

    @property
    def length(self) -> int:
        return len(self.canonical)


def alternating(a: int, b: int, length: int) -> Word:
    return tuple(a if q % 2 == 0 else b for q in range(length))


class CoxeterGroup:
    """Cached word-problem machinery for W(M).

    All caches are keyed by words and only ever filled with values that are
    functions of the key, so sharing an instance never changes results.
    """

    def __init__(self, matrix: CoxeterMatrix, budget: int | None = None):
        self.matrix = matrix
        self.budget = default_budget() if budget is None else budget
        self._orbits: dict[Word, frozenset] = {}
        self._right: dict[tuple[Word, int], Word] = {}
        self._left: dict[tuple[int, Word], Word] = {}
        self._paths: dict[tuple[Word, Word, bool], tuple] = {}

    # -- braid moves -------------------------------------------------------

    def braid_moves(self, word: Word, reverse: bool = False) -> Iterator[tuple[int, Word]]:
        """Yield ``(position, new_word)`` for every single braid move."""
        positions = range(len(word) - 1)
        if reverse:
            positions = reversed(positions)
        for p in positions:
            a, b = word[p], word[p + 1]
            if a == b:
                continue
            m = self.matrix.m(a, b)
            if m == INF or p + m > len(word):
                continue
            if word[p : p + m] == alternating(a, b, m):
                yield p, word[:p] + alternating(b, a, m) + word[p + m :]

    def orbit(self, word: Word) -> frozenset:
        """All words reachable from ``word`` by braid moves."""
        word = tuple(word)
        cached = self._orbits.get(word)
        if cached is not None:
            return cached
        seen = {word}
        queue = deque([word])
        while queue:
            u = queue.popleft()
            for _, v in self.braid_moves(u):
                if v not in seen:
                    seen.add(v)
                    if len(seen) > self.budget:
                        raise BudgetExceededError(
                            f"braid orbit exceeded {self.budget} nodes (length {len(word)})"
                        )
                    queue.append(v)
        orbit = frozenset(seen)
        for u in orbit:
            self._orbits[u] = orbit
        return orbit

    def find_square(self, word: Word) -> tuple[Word, int] | None:
        """Return a braid-equivalent word and the index p with w[p] == w[p+1]."""
        word = tuple(word)
        seen = {word}
        queue = deque([word])
        while queue:
            u = queue.popleft()
            for p in range(len(u) - 1):
                if u[p] == u[p + 1]:
                    return u, p
            for _, v in self.braid_moves(u):
                if v not in seen:
                    seen.add(v)
                    if len(seen) > self.budget:
                        raise BudgetExceededError(f"braid orbit exceeded {self.budget} nodes")
                    queue.append(v)
        return None

    def is_reduced(self, word: Word) -> bool:
        return self.find_square(self.matrix.check_word(word)) is None

    def braid_path(self, source: Word, target: Word, reverse: bool = False) -> tuple:
        """Shortest sequence of braid-move positions turning source into target.

        Moves are explored left to right (right to left when ``reverse``);
        the first path discovered by BFS wins, which fixes the tie-break.
        """
        key = (source, target, reverse)
        cached = self._paths.get(key)
        if cached is not None:
            return cached
        if source == target:
            self._paths[key] = ()
            return ()
        parent = {source: None}
        queue = deque([source])
        while queue:
            u = queue.popleft()
            for p, v in self.braid_moves(u, reverse=reverse):
                if v in parent:
                    continue
                parent[v] = (u, p)
                if len(parent) > self.budget:
                    raise BudgetExceededError(f"braid path search exceeded {self.budget} nodes")
                if v == target:
                    moves = []
                    while parent[v] is not None:
                        v, p = parent[v]
                        moves.append(p)
                    path = tuple(reversed(moves))
                    self._paths[key] = path
                    return path
                queue.append(v)
        raise ValueError(f"{source} and {target} are not braid-equivalent")

    # -- multiplication ----------------------------------------------------

    def right_multiply(self, x: Word, i: int) -> Word:
        """Canonical word of x*s_i, given the canonical word of x."""
        key = (x, i)
        cached = self._right.get(key)
        if cached is not None:
            return cached
        orb = self.orbit(x)
        down = [u for u in orb if u and u[-1] == i]
        if down:
            result = min(self.orbit(min(down)[:-1]))
        else:
            result = min(self.orbit(x + (i,)))
        self._right[key] = result
        return result

    def left_multiply(self, i: int, x: Word) -> Word:
        key = (i, x)
        cached = self._left.get(key)
        if cached is not None:
            return cached
        orb = self.orbit(x)
        down = [u for u in orb if u and u[0] == i]
        if down:
            result = min(self.orbit(min(down)[1:]))
        else:
            result = min(self.orbit((i,) + x))
        self._left[key] = result
        return result

    def has_right_descent(self, x: Word, i: int) -> bool:
        return len(self.right_multiply(x, i)) < len(x)

    def has_left_descent(self, i: int, x: Word) -> bool:
        return len(self.left_multiply(i, x)) < len(x)

    def canonical(self, word: Sequence[int]) -> Word:
        x: Word = ()
        for letter in self.matrix.check_word(word):
            x = self.right_multiply(x, letter)
        return x

    def multiply(self, x: Word, y: Word) -> Word:
        for letter in y:
            x = self.right_multiply(x, letter)
        return x

    def inverse(self, x: Word) -> Word:
        return self.canonical(tuple(reversed(x)))

    # -- enumeration -------------------------------------------------------

    def enumerate(self, length: int, max_elements: int | None = None) -> list[list[Word]]:
        """Canonical words of all elements of length <= ``length``, by length."""
        if length < 0:
            raise InvalidInputError("length bound must be >= 0")
        cap = self.budget if max_elements is None else max_elements
        layers: list[list[Word]] = [[()]]
        total = 1
        for n in range(1, length + 1):
            layer = set()
            for x in layers[-1]:
                for i in range(self.matrix.rank):
                    y = self.right_multiply(x, i)
                    if len(y) == n:
                        layer.add(y)
            if not layer:
                break
            total += len(layer)
            if total > cap:
                raise BudgetExceededError(f"enumeration exceeded {cap} elements at length {n}")
            layers.append(sorted(layer))
        return layers

    def elements(self, length: int) -> list[Word]:
        return [x for layer in self.enumerate(length) for x in layer]


def group_for(matrix: CoxeterMatrix, budget: int | None = None) -> CoxeterGroup:
    """Shared group object per (matrix, budget); None means the environment default."""
    return _cached_group(matrix, default_budget() if budget is None else budget)


@lru_cache(maxsize=64)
def _cached_group(matrix: CoxeterMatrix, budget: int) -> CoxeterGroup:
    return CoxeterGroup(matrix, budget)


def is_reduced(matrix: CoxeterMatrix, word: Sequence[int]) -> bool:
    return group_for(matrix).is_reduced(tuple(word))


def canonical_word(matrix: CoxeterMatrix, word: Sequence[int]) -> GroupElement:
    return GroupElement(group_for(matrix).canonical(word))


def enumerate_elements(matrix: CoxeterMatrix, length: int, budget: int | None = None) -> list[list[GroupElement]]:
    layers = group_for(matrix, budget).enumerate(length)
    return [[GroupElement(x) for x in layer] for layer in layers]


def growth_series(matrix: CoxeterMatrix, length: int, budget: int | None = None) -> list[int]:
    return [len(layer) for layer in group_for(matrix, budget).enumerate(length)]


def _reciprocal(m) -> Fraction:
    return Fraction(0) if m == INF else Fraction(1, m)


def rank3_is_finite(m12, m13, m23) -> bool:
    """Finite iff 1/m12 + 1/m13 + 1/m23 > 1 (spherical triangle)."""
    return _reciprocal(m12) + _reciprocal(m13) + _reciprocal(m23) > 1


def sign_character(word: Sequence[int]) -> int:
    return -1 if len(word) % 2 else 1


def parabolic_submatrix(matrix: CoxeterMatrix, subset: Iterable[int]) -> tuple[CoxeterMatrix, tuple[int, ...]]:
    """Restrict M to ``subset``; returns the submatrix and new->old index table."""
    old = tuple(sorted(set(subset)))
    if not old:
        raise InvalidInputError("parabolic subset must be nonempty")
    for a in old:
        if not 0 <= a < matrix.rank:
            raise InvalidInputError(f"index {a} out of range")
    orders = tuple(
        (p, q, matrix.m(old[p], old[q])) for p, q in itertools.combinations(range(len(old)), 2)
    )
    return CoxeterMatrix(len(old), orders), old

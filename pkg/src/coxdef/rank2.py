"""The rank-2 algebra A(I_2(m)) as an explicit free module of rank 2m.

With a = s_i s_j (i < j) the algebra has left R-basis a^d s_i^eps,
0 <= d < m, eps in {0, 1}, and multiplication is determined by

    prod_k (a - t_ijk) = 0,    s_i a s_i = a^{-1},    s_i c = sigma(c) s_i.

Deformed braid rules are solved inside this model.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .coxeter import INF, CoxeterMatrix, alternating
from .errors import InvalidInputError, NoRuleError
from .laurent import LaurentPoly, ParamIndex

ONE = LaurentPoly.constant(1)


def _add_into(acc: dict, key, c: LaurentPoly) -> None:
    s = acc.get(key)
    s = c if s is None else s + c
    if s:
        acc[key] = s
    else:
        acc.pop(key, None)


class Rank2Model:
    """Basis a^d s_i^eps with d in the window offset, ..., offset + m - 1."""

    def __init__(self, m: int, i: int = 0, j: int = 1, offset: int = 0):
        if m == INF or not isinstance(m, int) or m < 2:
            raise InvalidInputError(f"rank-2 model needs a finite order >= 2, got {m!r}")
        if not i < j:
            raise InvalidInputError("model expects i < j")
        self.m, self.i, self.j, self.offset = m, i, j, offset
        self.params = [LaurentPoly.var(ParamIndex(i, j, k, m)) for k in range(1, m + 1)]
        # coefficients p_0..p_m of P(a) = prod_k (a - t_k)
        poly = [ONE]
        for tk in self.params:
            shifted = [LaurentPoly.constant(0)] + poly
            poly = [shifted[d] - (tk * poly[d] if d < len(poly) else 0) for d in range(len(shifted))]
        self.relation = poly
        self._inv_p0 = poly[0].invert_unit()
        self._powers: dict[int, dict[int, LaurentPoly]] = {}

    # -- powers of a, reduced modulo P --------------------------------------

    def _reduce(self, x: dict) -> dict:
        """Rewrite exponents outside the window using P(a) a^n = 0."""
        lo, hi = self.offset, self.offset + self.m - 1
        p = self.relation
        while x:
            top, bottom = max(x), min(x)
            if top > hi:
                c = x.pop(top)
                # a^top = -sum_{d<m} p_d a^{top-m+d}
                for d in range(self.m):
                    if p[d]:
                        _add_into(x, top - self.m + d, -(c * p[d]))
            elif bottom < lo:
                c = x.pop(bottom)
                # a^bottom = -p_0^{-1} sum_{d>=1} p_d a^{bottom+d}
                for d in range(1, self.m + 1):
                    if p[d]:
                        _add_into(x, bottom + d, -(c * self._inv_p0 * p[d]))
            else:
                break
        return x

    def _poly_mulmod(self, x: dict, y: dict) -> dict:
        prod: dict = {}
        for d1, c1 in x.items():
            for d2, c2 in y.items():
                _add_into(prod, d1 + d2, c1 * c2)
        return self._reduce(prod)

    def inverse_of_a(self) -> dict[int, LaurentPoly]:
        return self.power(-1)

    def power(self, n: int) -> dict[int, LaurentPoly]:
        """a^n written in the basis of the window."""
        cached = self._powers.get(n)
        if cached is None:
            cached = self._reduce({n: ONE})
            self._powers[n] = cached
        return cached

    # -- elements -----------------------------------------------------------

    def basis(self) -> list[tuple[int, int]]:
        return [(d, eps) for eps in (0, 1) for d in range(self.offset, self.offset + self.m)]

    def monomial(self, e: int, eps: int, coeff: LaurentPoly = ONE) -> dict:
        return {(d, eps): coeff * c for d, c in self.power(e).items()}

    def multiply(self, x: dict, y: dict) -> dict:
        out: dict = {}
        for (d, eps), c in x.items():
            for (e, delta), c2 in y.items():
                coeff = c * (c2.sigma() if eps else c2)
                exponent = d - e if eps else d + e
                for dd, r in self.power(exponent).items():
                    _add_into(out, (dd, eps ^ delta), coeff * r)
        return out

    def generator(self, letter: int) -> dict:
        if letter == self.i:
            return self.monomial(0, 1)
        if letter == self.j:
            # s_j = s_i s_i s_j = s_i a = a^{-1} s_i
            return self.monomial(-1, 1)
        raise InvalidInputError(f"letter {letter} not in pair ({self.i}, {self.j})")

    def word(self, word) -> dict:
        x = self.monomial(0, 0)
        for letter in word:
            x = self.multiply(x, self.generator(letter))
        return x

    def word_exponent(self, word) -> tuple[int, int]:
        """(e, eps) with T_word = a^e s_i^eps for an alternating word."""
        n = len(word)
        if n == 0:
            return 0, 0
        if word[0] == self.i:
            return n // 2, n % 2
        return (-(n // 2), 0) if n % 2 == 0 else (-(n // 2) - 1, 1)

    def table(self) -> dict:
        """Products of basis elements, keyed by the pair of basis labels."""
        return {
            (b1, b2): self.multiply({b1: ONE}, {b2: ONE})
            for b1 in self.basis()
            for b2 in self.basis()
        }


@lru_cache(maxsize=None)
def rank2_model(m: int, i: int = 0, j: int = 1, offset: int = 0) -> Rank2Model:
    return Rank2Model(m, i, j, offset)


@dataclass(frozen=True)
class RewriteRule:
    """lhs = sum of coeff * word over rhs; lhs starts with the larger letter."""

    pair: tuple[int, int]
    m: int
    lhs: tuple
    rhs: tuple  # ((word, LaurentPoly), ...), longest word first

    @property
    def leading(self) -> tuple[tuple, LaurentPoly]:
        return self.rhs[0]

    @property
    def shorter(self) -> tuple:
        return self.rhs[1:]


def canonical_alternating_words(i: int, j: int, m: int) -> list[tuple]:
    """The 2m ShortLex-minimal reduced words of the dihedral group on i < j."""
    words = [()]
    for n in range(1, m):
        words += [alternating(i, j, n), alternating(j, i, n)]
    words.append(alternating(i, j, m))
    return words


def braid_rule(matrix: CoxeterMatrix, i: int, j: int) -> RewriteRule:
    lo, hi = min(i, j), max(i, j)
    m = matrix.m(lo, hi)
    if m == INF:
        raise NoRuleError(f"m_{lo}{hi} is infinite: no braid relation")
    return _braid_rule(lo, hi, m)


@lru_cache(maxsize=None)
def _braid_rule(lo: int, hi: int, m: int) -> RewriteRule:
    model = rank2_model(m, lo, hi)
    lhs = alternating(hi, lo, m)
    e_star, eps = model.word_exponent(lhs)
    window = {}
    for w in canonical_alternating_words(lo, hi, m):
        e, parity = model.word_exponent(w)
        if parity == eps:
            window[e] = w
    low, high = min(window), max(window)
    assert len(window) == m and high - low == m - 1
    p = model.relation
    terms: dict[int, LaurentPoly] = {}
    if e_star == low - 1:
        # a^{lo-1} P(a) = 0, solved for its lowest term
        inv_p0 = p[0].invert_unit()
        for d in range(1, m + 1):
            if p[d]:
                terms[low + d - 1] = -(inv_p0 * p[d])
    elif e_star == high + 1:
        for d in range(m):
            if p[d]:
                terms[low + d] = -p[d]
    else:
        raise AssertionError("alternating word outside the expected window")
    lead_word = alternating(lo, hi, m)
    lead_e = model.word_exponent(lead_word)[0]
    rhs = [(lead_word, terms[lead_e])]
    for e in sorted(terms, key=lambda e: (-len(window[e]), window[e])):
        if e != lead_e:
            rhs.append((window[e], terms[e]))
    return RewriteRule((lo, hi), m, lhs, tuple(rhs))

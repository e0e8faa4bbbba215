"""Hecke algebras of polygonal Fuchsian groups as even parts of cyclic A(M).

For Gamma(m_1, ..., m_r) take the rank-r matrix with m_{j,j+1} = m_j
(indices mod r) and infinity elsewhere.  The generator c_j goes to
a_{j,j+1} = s_j s_{j+1}, so c_1 c_2 ... c_r telescopes to 1.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .algebra import DeformedAlgebra
from .coxeter import INF, CoxeterMatrix, _check_order, group_for
from .errors import InvalidInputError
from .laurent import LaurentPoly, t


@dataclass(frozen=True)
class FuchsianSignature:
    orders: tuple

    def __post_init__(self):
        orders = tuple(_check_order(m) for m in self.orders)
        if len(orders) < 3:
            raise InvalidInputError("a polygonal Fuchsian group needs r >= 3 cone points")
        object.__setattr__(self, "orders", orders)

    @property
    def r(self) -> int:
        return len(self.orders)

    @classmethod
    def from_json(cls, data) -> FuchsianSignature:
        if isinstance(data, str):
            data = json.loads(data)
        try:
            return cls(tuple("inf" if m == "inf" else int(m) for m in data["orders"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInputError(f"malformed signature JSON: {exc}") from exc

    def to_json(self) -> dict:
        return {"orders": ["inf" if m == INF else m for m in self.orders]}


def cyclic_matrix(sig: FuchsianSignature) -> CoxeterMatrix:
    r = sig.r
    mapping = {}
    for i in range(r):
        for j in range(i + 1, r):
            mapping[(i, j)] = INF
    for j, m in enumerate(sig.orders):
        pair = tuple(sorted((j, (j + 1) % r)))
        mapping[pair] = m
    return CoxeterMatrix.from_mapping(r, mapping)


def fuchsian_is_flat(sig: FuchsianSignature) -> bool:
    total = sum(1 - (Fraction(0) if m == INF else Fraction(1, m)) for m in sig.orders)
    return total >= 2


def c_parameter(sig: FuchsianSignature, j: int, k: int) -> LaurentPoly:
    """t_{jk} of H(Gamma) as the parameter t_{j,j+1,k} of A(M)."""
    return t(cyclic_matrix(sig), j, (j + 1) % sig.r, k)


def pair_to_c_word(r: int, a: int, b: int) -> list[tuple[int, int]]:
    """a_ab as a word in c_j^{+-1}: c_a c_{a+1} ... c_{b-1}, or the inverse route if shorter."""
    forward = (b - a) % r
    backward = r - forward
    if forward <= backward:
        return [((a + q) % r, 1) for q in range(forward)]
    # a_ab = a_ba^{-1} = (c_b ... c_{a-1})^{-1}
    return [((a - 1 - q) % r, -1) for q in range(backward)]


def c_word_to_s_word(r: int, cword) -> tuple:
    out = []
    for j, e in cword:
        out += [j, (j + 1) % r] if e == 1 else [(j + 1) % r, j]
    return tuple(out)


def hecke_basis(sig: FuchsianSignature, length: int, budget: int | None = None) -> list[dict]:
    """Even canonical words of length <= ``length`` with their c-generator words."""
    matrix = cyclic_matrix(sig)
    r = sig.r
    out = []
    for layer in group_for(matrix, budget).enumerate(length):
        for w in layer:
            if len(w) % 2:
                continue
            cword = []
            for a, b in zip(w[0::2], w[1::2]):
                cword += pair_to_c_word(r, a, b)
            out.append({"word": w, "c_word": cword})
    return out


def c_minimal_polynomial(sig: FuchsianSignature, j: int, algebra: DeformedAlgebra | None = None):
    """prod_k (c_j - t_jk), computed in A(M); vanishes when m_j is finite."""
    matrix = cyclic_matrix(sig)
    algebra = algebra or DeformedAlgebra(matrix)
    m = sig.orders[j]
    if m == INF:
        raise InvalidInputError(f"m_{j} is infinite")
    c = algebra.normal_form((j, (j + 1) % sig.r))
    value = algebra.one()
    for k in range(1, m + 1):
        value = algebra.multiply(value, c - algebra.scalar(c_parameter(sig, j, k)))
    return value

"""Exact arithmetic in the cyclotomic field Q(zeta_N)."""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

from .laurent import LaurentPoly


def _poly_divmod(num: list, den: list) -> tuple[list, list]:
    """Divide polynomials (coefficient lists, low degree first); den monic-ish."""
    num = list(num)
    q = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    lead = den[-1]
    for shift in range(len(num) - len(den), -1, -1):
        c = num[shift + len(den) - 1]
        if c:
            c = Fraction(c) / lead
            q[shift] = c
            for k, d in enumerate(den):
                num[shift + k] -= c * d
    rem = num[: len(den) - 1]
    return q, rem


def _trim(p: list) -> list:
    while p and not p[-1]:
        p.pop()
    return p


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Coefficients of Phi_n, lowest degree first.

    Obtained by dividing x^n - 1 exactly by Phi_d for every proper divisor d.
    """
    if n < 1:
        raise ValueError("n must be positive")
    poly = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            q, r = _poly_divmod(poly, [Fraction(c) for c in cyclotomic_polynomial(d)])
            assert not any(r), "inexact cyclotomic division"
            poly = _trim(q)
    return tuple(int(c) for c in poly)


def totient(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


class CyclotomicValue:
    """Element sum_k c_k zeta_N^k of Q(zeta_N), with k < phi(N)."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs=()):
        self.n = n
        phi = totient(n)
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > phi:
            cs = _reduce(n, cs)
        self.coeffs = tuple(cs) + (Fraction(0),) * (phi - len(cs))

    @classmethod
    def rational(cls, n: int, c) -> CyclotomicValue:
        return cls(n, [c])

    @classmethod
    def zeta(cls, n: int, power: int = 1) -> CyclotomicValue:
        power %= n
        cs = [0] * (power + 1)
        cs[power] = 1
        return cls(n, cs)

    def _coerce(self, other) -> CyclotomicValue:
        if isinstance(other, CyclotomicValue):
            if other.n != self.n:
                raise ValueError(f"conductor mismatch {self.n} != {other.n}")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return CyclotomicValue(self.n, [other])
        raise TypeError(f"cannot combine CyclotomicValue with {other!r}")

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return CyclotomicValue._make(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicValue._make(self.n, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return CyclotomicValue._make(self.n, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return CyclotomicValue._make(self.n, tuple(a * other for a in self.coeffs))
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if self.is_rational():
            return other * self.coeffs[0]
        if other.is_rational():
            return self * other.coeffs[0]
        a, b = self.coeffs, other.coeffs
        prod = [Fraction(0)] * (len(a) + len(b) - 1)
        for p, x in enumerate(a):
            if x:
                for q, y in enumerate(b):
                    if y:
                        prod[p + q] += x * y
        return CyclotomicValue._make(self.n, tuple(_reduce(self.n, prod)))

    __rmul__ = __mul__

    def inverse(self) -> CyclotomicValue:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in Q(zeta)")
        if self.is_rational():
            return CyclotomicValue(self.n, [1 / self.coeffs[0]])
        # extended Euclid: find u with u*self = 1 mod Phi_n
        modulus = [Fraction(c) for c in cyclotomic_polynomial(self.n)]
        r0, r1 = modulus, _trim(list(self.coeffs))
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1 or (r1 and r1[0] == 0):
            q, r = _poly_divmod(r0, r1)
            r = _trim(r)
            s = _poly_sub(s0, _poly_mul(q, s1))
            r0, r1, s0, s1 = r1, r, s1, s
            if not r1:
                raise ZeroDivisionError("non-invertible element")
        c = r1[0]
        return CyclotomicValue(self.n, [x / c for x in s1])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self * (1 / Fraction(other))
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = CyclotomicValue(self.n, [1])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def conjugate(self) -> CyclotomicValue:
        """Complex conjugation zeta -> zeta^{-1}."""
        out = [Fraction(0)] * self.n
        for k, c in enumerate(self.coeffs):
            if c:
                out[(-k) % self.n] += c
        return CyclotomicValue(self.n, out)

    def twist(self) -> CyclotomicValue:
        # the coefficient twist fixes the group specialization point
        return self

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self):
        return not self.is_zero()

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def __eq__(self, other):
        if isinstance(other, CyclotomicValue):
            return self.n == other.n and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.is_rational() and self.coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.n, self.coeffs))

    def __repr__(self):
        parts = []
        for k, c in enumerate(self.coeffs):
            if c:
                parts.append(str(c) if k == 0 else f"{c}*z{self.n}^{k}")
        return " + ".join(parts) if parts else "0"

    def to_json(self) -> dict:
        return {"conductor": self.n, "coeffs": [str(c) for c in self.coeffs]}

    @classmethod
    def _make(cls, n: int, coeffs: tuple) -> CyclotomicValue:
        v = cls.__new__(cls)
        v.n = n
        v.coeffs = coeffs
        return v


def _poly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for p, x in enumerate(a):
        for q, y in enumerate(b):
            out[p + q] += x * y
    return out


def _poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def _reduce(n: int, coeffs: list) -> list:
    phi_poly = cyclotomic_polynomial(n)
    phi = len(phi_poly) - 1
    cs = list(coeffs)
    for top in range(len(cs) - 1, phi - 1, -1):
        c = cs[top]
        if c:
            # Phi is monic: x^phi = -sum_{k<phi} a_k x^k
            base = top - phi
            for k in range(phi):
                if phi_poly[k]:
                    cs[base + k] -= c * phi_poly[k]
    cs = cs[:phi]
    return cs + [Fraction(0)] * (phi - len(cs))


def conductor_of(p: LaurentPoly) -> int:
    n = 1
    for idx in p.variables():
        n = n * idx.m // math.gcd(n, idx.m)
    return n


def specialize_group(p: LaurentPoly, n: int | None = None) -> CyclotomicValue:
    """Substitute t_ijk -> exp(2 pi i k / m_ij) exactly in Q(zeta_n)."""
    if n is None:
        n = conductor_of(p)
    total = CyclotomicValue(n)
    for mono, c in p.items():
        power = 0
        for idx, e in mono:
            if n % idx.m:
                raise ValueError(f"conductor {n} is not a multiple of m={idx.m}")
            power += e * idx.k * (n // idx.m)
        total = total + CyclotomicValue.zeta(n, power) * c
    return total

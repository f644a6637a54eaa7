"""Exact arithmetic in cyclotomic fields Q(zeta_m).

An element is a polynomial in zeta = exp(2*pi*i/m) with rational
coefficients, reduced modulo the m-th cyclotomic polynomial.  Elements of
different orders are combined by lifting both to the lcm order.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from numbers import Rational

__all__ = ["Cyclotomic", "cyclotomic_polynomial"]

Poly = list  # coefficient lists, lowest degree first


def _trim(p: Poly) -> Poly:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    a = [Fraction(c) for c in a]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = Fraction(b[-1])
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / lead
        if c:
            q[i] = c
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    return _trim(q), _trim(a[: len(b) - 1])


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, lowest degree first."""
    if m < 1:
        raise ValueError("order must be positive")
    num: Poly = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num, rem = _poly_divmod(num, list(cyclotomic_polynomial(d)))
            assert not rem
    return tuple(int(c) for c in num)


def _reduce(coeffs: Poly, m: int) -> tuple:
    """Reduce modulo Phi_m in place; entries are ints or Fractions."""
    phi = cyclotomic_polynomial(m)
    deg = len(phi) - 1
    c = coeffs
    for i in range(len(c) - 1, deg - 1, -1):
        t = c[i]
        if t:
            for j, pj in enumerate(phi):
                if pj:
                    c[i - deg + j] -= t * pj
    if len(c) < deg:
        c = c + [0] * (deg - len(c))
    return tuple(c[:deg])


def _fold(coeffs: dict[int, Fraction], m: int) -> tuple:
    dense: Poly = [0] * m
    for k, v in coeffs.items():
        dense[k % m] += v
    return _reduce(dense, m)


class Cyclotomic:
    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs) -> None:
        self.order = order
        self.coeffs = _reduce([Fraction(c) for c in coeffs], order)

    @classmethod
    def _raw(cls, order: int, coeffs: tuple[Fraction, ...]) -> Cyclotomic:
        obj = cls.__new__(cls)
        obj.order = order
        obj.coeffs = coeffs
        return obj

    @classmethod
    def root(cls, k: int, m: int) -> Cyclotomic:
        """zeta_m ** k."""
        return cls._raw(m, _fold({k: Fraction(1)}, m))

    @classmethod
    def rational(cls, q, m: int = 1) -> Cyclotomic:
        return cls._raw(m, _fold({0: Fraction(q)}, m))

    def lift(self, m: int) -> Cyclotomic:
        if m == self.order:
            return self
        if m % self.order:
            raise ValueError(f"cannot lift order {self.order} to {m}")
        step = m // self.order
        return Cyclotomic._raw(m, _fold({i * step: c for i, c in enumerate(self.coeffs) if c}, m))

    def _coerce(self, other) -> tuple[Cyclotomic, Cyclotomic] | None:
        if isinstance(other, Cyclotomic):
            if other.order == self.order:
                return self, other
            m = math.lcm(self.order, other.order)
            return self.lift(m), other.lift(m)
        if isinstance(other, (int, Fraction, Rational)):
            return self, Cyclotomic.rational(other, self.order)
        return None

    def __add__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return Cyclotomic._raw(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> Cyclotomic:
        return Cyclotomic._raw(self.order, tuple(-x for x in self.coeffs))

    def __sub__(self, other):
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return Cyclotomic._raw(a.order, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Rational)):
            return Cyclotomic._raw(self.order, tuple(x * other for x in self.coeffs))
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        if a.is_zero():
            return a
        if b.is_zero():
            return b
        prod: dict[int, Fraction] = {}
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        prod[i + j] = prod.get(i + j, 0) + x * y
        return Cyclotomic._raw(a.order, _fold(prod, a.order))

    __rmul__ = __mul__

    def inverse(self) -> Cyclotomic:
        """Multiplicative inverse via the extended Euclidean algorithm modulo Phi_m."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        phi = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        r0, r1 = phi, _trim(list(self.coeffs))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            s = _poly_sub(s0, _poly_mul(q, s1))
            r0, r1, s0, s1 = r1, r, s1, s
        # r1 is a nonzero constant: s1 * self == r1 (mod Phi)
        c = r1[0]
        return Cyclotomic(self.order, [x / c for x in s1])

    def __truediv__(self, other):
        if isinstance(other, (int, Rational)):
            return self * (1 / Fraction(other))
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a * b.inverse()

    def conjugate(self) -> Cyclotomic:
        m = self.order
        return Cyclotomic._raw(m, _fold({-i: c for i, c in enumerate(self.coeffs) if c}, m))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return self.is_zero()
        pair = self._coerce(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a.coeffs == b.coeffs

    __hash__ = None  # equality crosses orders

    def __complex__(self) -> complex:
        m = self.order
        return sum(
            (complex(c) * cmath.exp(2j * math.pi * i / m) for i, c in enumerate(self.coeffs) if c),
            0j,
        )

    def __abs__(self) -> float:
        return abs(complex(self))

    def __repr__(self) -> str:
        terms = [f"{c}*z^{i}" for i, c in enumerate(self.coeffs) if c]
        return f"Cyclotomic[{self.order}]({' + '.join(terms) or '0'})"


def _poly_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _poly_sub(a: Poly, b: Poly) -> Poly:
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])

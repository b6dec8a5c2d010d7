"""Exact arithmetic in the cyclotomic fields Q(zeta_N).

Elements are stored in the power basis 1, z, ..., z^(d-1) with d = phi(N)
and reduced modulo the N-th cyclotomic polynomial, so equality and zero
tests are exact.  Mixed-order operations lift both sides to Q(zeta_lcm).
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

from .torus import TorusExponent, lcm

Scalar = Union[int, Fraction]


def _poly_trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(num: list, den: list) -> tuple[list, list]:
    num = [Fraction(c) for c in num]
    den = _poly_trim([Fraction(c) for c in den])
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    out = [Fraction(0)] * max(len(num) - len(den) + 1, 1)
    lead = den[-1]
    while len(_poly_trim(num)) >= len(den):
        shift = len(num) - len(den)
        q = num[-1] / lead
        out[shift] = q
        for i, c in enumerate(den):
            num[shift + i] -= q * c
        _poly_trim(num)
    return out, num


def _poly_mul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a: list, b: list) -> list:
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _poly_trim([Fraction(x) - y for x, y in zip(a, b)])


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients (lowest degree first) of the n-th cyclotomic polynomial."""
    if n < 1:
        raise ValueError("order must be positive")
    p = [Fraction(-1)] + [Fraction(0)] * (n - 1) + [Fraction(1)]
    for d in range(1, n):
        if n % d == 0:
            p, rem = _poly_divmod(p, list(cyclotomic_polynomial(d)))
            assert not _poly_trim(rem)
    p = _poly_trim(p)
    return tuple(int(c) for c in p)


@lru_cache(maxsize=None)
def _power_table(n: int) -> tuple[tuple[Fraction, ...], ...]:
    """Row k holds the reduced coordinates of z^k for 0 <= k < n."""
    phi = cyclotomic_polynomial(n)
    d = len(phi) - 1
    rows = []
    cur = [Fraction(0)] * d
    if d:
        cur[0] = Fraction(1)
    for _ in range(n):
        rows.append(tuple(cur))
        top = cur[-1] if d else Fraction(0)
        nxt = [Fraction(0)] + cur[:-1] if d else []
        for i in range(d):
            nxt[i] -= top * phi[i]
        cur = nxt
    return tuple(rows)


class Cyclotomic:
    """An element of Q(zeta_order), zeta_order = exp(2*pi*i/order)."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Iterable[Scalar]):
        self.order = order
        coeffs = tuple(Fraction(c) for c in coeffs)
        degree = len(cyclotomic_polynomial(order)) - 1
        if len(coeffs) != degree:
            raise ValueError(f"Q(zeta_{order}) needs {degree} coefficients, got {len(coeffs)}")
        self.coeffs = coeffs

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_exponents(cls, order: int, counts: Mapping[int, Scalar]) -> Cyclotomic:
        table = _power_table(order)
        acc = [Fraction(0)] * len(table[0]) if table else []
        for k, c in counts.items():
            if not c:
                continue
            for i, t in enumerate(table[k % order]):
                if t:
                    acc[i] += c * t
        return cls(order, acc)

    @classmethod
    def root(cls, k: int, order: int) -> Cyclotomic:
        return cls.from_exponents(order, {k % order: 1})

    @classmethod
    def from_torus(cls, t: TorusExponent, order: int | None = None) -> Cyclotomic:
        order = t.modulus if order is None else order
        return cls.root(t.over(order), order)

    @classmethod
    def rational(cls, q: Scalar, order: int = 1) -> Cyclotomic:
        return cls.from_exponents(order, {0: q})

    @classmethod
    def zero(cls, order: int = 1) -> Cyclotomic:
        return cls.from_exponents(order, {})

    # -- structure --------------------------------------------------------
    def lift(self, order: int) -> Cyclotomic:
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"cannot lift Q(zeta_{self.order}) into Q(zeta_{order})")
        f = order // self.order
        return Cyclotomic.from_exponents(order, {i * f: c for i, c in enumerate(self.coeffs)})

    @staticmethod
    def _coerce(a: Cyclotomic, b) -> tuple[Cyclotomic, Cyclotomic]:
        if isinstance(b, TorusExponent):
            b = Cyclotomic.from_torus(b)
        elif not isinstance(b, Cyclotomic):
            b = Cyclotomic.rational(b, a.order)
        n = lcm(a.order, b.order)
        return a.lift(n), b.lift(n)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other) -> Cyclotomic:
        try:
            a, b = self._coerce(self, other)
        except TypeError:
            return NotImplemented
        return Cyclotomic(a.order, (x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> Cyclotomic:
        return Cyclotomic(self.order, (-x for x in self.coeffs))

    def __sub__(self, other) -> Cyclotomic:
        a, b = self._coerce(self, other)
        return Cyclotomic(a.order, (x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other) -> Cyclotomic:
        return (-self) + other

    def __mul__(self, other) -> Cyclotomic:
        if isinstance(other, (int, Fraction)):
            return Cyclotomic(self.order, (x * other for x in self.coeffs))
        a, b = self._coerce(self, other)
        counts: dict[int, Fraction] = {}
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in enumerate(b.coeffs):
                    if y:
                        counts[i + j] = counts.get(i + j, 0) + x * y
        return Cyclotomic.from_exponents(a.order, counts)

    __rmul__ = __mul__

    def conjugate(self) -> Cyclotomic:
        return Cyclotomic.from_exponents(
            self.order, {(-i) % self.order: c for i, c in enumerate(self.coeffs)})

    def inverse(self) -> Cyclotomic:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        modulus = [Fraction(c) for c in cyclotomic_polynomial(self.order)]
        # extended Euclid: track s with s*self == r (mod modulus)
        r0, r1 = modulus, _poly_trim(list(self.coeffs))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, _poly_trim(r)
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        c = r1[0]
        s = [x / c for x in s1]
        counts = {i: x for i, x in enumerate(s)}
        return Cyclotomic.from_exponents(self.order, counts)

    def __truediv__(self, other) -> Cyclotomic:
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if isinstance(other, TorusExponent):
            return self * other.inverse()
        return self * other.inverse()

    def __rtruediv__(self, other) -> Cyclotomic:
        return self.inverse() * other

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, TorusExponent, Cyclotomic)):
            a, b = self._coerce(self, other)
            return a.coeffs == b.coeffs
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def __complex__(self) -> complex:
        z = cmath.exp(2j * math.pi / self.order)
        return complex(sum(complex(float(c)) * z ** i for i, c in enumerate(self.coeffs) if c))

    def as_root_of_unity(self) -> TorusExponent | None:
        """Exact root-of-unity value of this element, or None."""
        z = complex(self)
        if abs(abs(z) - 1) > 1e-6:
            return None
        n = self.order if self.order % 2 == 0 else 2 * self.order
        k = round(cmath.phase(z) * n / (2 * math.pi)) % n
        if Cyclotomic.root(k, n) == self:
            return TorusExponent(k, n)
        return None

    def __repr__(self) -> str:
        return f"Cyclotomic({self.order}, {[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if self.is_rational():
            return str(self.coeffs[0] if self.coeffs else 0)
        t = self.as_root_of_unity()
        if t is not None:
            return str(t)
        terms = [f"{c}*z{self.order}^{i}" if i else str(c) for i, c in enumerate(self.coeffs) if c]
        return "(" + " + ".join(terms) + ")"

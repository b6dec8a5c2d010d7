"""Exact elements of the circle group stored as rational turns."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // math.gcd(out, v)
    return out


@dataclass(frozen=True, order=True)
class TorusExponent:
    """The unit complex number exp(2*pi*i*numerator/modulus).

    Values are kept reduced (0 <= numerator < modulus, gcd == 1), so two
    exponents are equal exactly when the complex numbers are equal.
    """

    numerator: int
    modulus: int = 1

    def __post_init__(self) -> None:
        if self.modulus <= 0:
            raise ValueError(f"modulus must be positive, got {self.modulus}")
        num = self.numerator % self.modulus
        g = math.gcd(num, self.modulus)
        object.__setattr__(self, "numerator", num // g)
        object.__setattr__(self, "modulus", self.modulus // g)

    @classmethod
    def one(cls) -> TorusExponent:
        return cls(0, 1)

    @classmethod
    def from_turns(cls, turns: Fraction) -> TorusExponent:
        turns = Fraction(turns)
        return cls(turns.numerator, turns.denominator)

    @property
    def turns(self) -> Fraction:
        return Fraction(self.numerator, self.modulus)

    def over(self, modulus: int) -> int:
        """Numerator of this value written over ``modulus``."""
        if modulus % self.modulus:
            raise ValueError(f"{self} is not expressible over modulus {modulus}")
        return self.numerator * (modulus // self.modulus)

    def __mul__(self, other: TorusExponent) -> TorusExponent:
        if not isinstance(other, TorusExponent):
            return NotImplemented
        return TorusExponent.from_turns(self.turns + other.turns)

    def __truediv__(self, other: TorusExponent) -> TorusExponent:
        if not isinstance(other, TorusExponent):
            return NotImplemented
        return TorusExponent.from_turns(self.turns - other.turns)

    def __pow__(self, k: int) -> TorusExponent:
        return TorusExponent.from_turns(self.turns * k)

    def inverse(self) -> TorusExponent:
        return TorusExponent(-self.numerator, self.modulus)

    conjugate = inverse

    @property
    def is_one(self) -> bool:
        return self.numerator == 0

    def __complex__(self) -> complex:
        if self.numerator == 0:
            return 1 + 0j
        if 2 * self.numerator == self.modulus:
            return -1 + 0j
        if 4 * self.numerator == self.modulus:
            return 1j
        if 4 * self.numerator == 3 * self.modulus:
            return -1j
        return cmath.exp(2j * math.pi * self.numerator / self.modulus)

    def __str__(self) -> str:
        if self.numerator == 0:
            return "1"
        if self.modulus == 2:
            return "-1"
        return f"e({self.numerator}/{self.modulus})"

    def to_json(self) -> list[int]:
        return [self.numerator, self.modulus]

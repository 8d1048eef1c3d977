"""Exact coefficient fields: prime fields F_p and the rationals."""
from __future__ import annotations

from fractions import Fraction


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


class Field:
    """F_p for a prime p, or Q when characteristic == 0.

    Elements of F_p are plain ints in [0, p); elements of Q are Fractions.
    """

    __slots__ = ("characteristic",)

    def __init__(self, characteristic: int):
        if characteristic != 0 and not _is_prime(characteristic):
            raise ValueError(f"characteristic must be 0 or a prime, got {characteristic}")
        if characteristic >= 2**31:
            raise ValueError("characteristic must be below 2^31")
        self.characteristic = characteristic

    @classmethod
    def parse(cls, name: str) -> "Field":
        name = name.strip()
        if name in ("Q", "QQ"):
            return cls(0)
        if name.startswith("F") and name[1:].isdigit():
            return cls(int(name[1:]))
        if name.startswith("GF") and name[2:].isdigit():
            return cls(int(name[2:]))
        raise ValueError(f"unknown field {name!r}")

    def __call__(self, value) -> int | Fraction:
        p = self.characteristic
        if p:
            if isinstance(value, Fraction):
                return value.numerator * pow(value.denominator, -1, p) % p
            return int(value) % p
        return Fraction(value)

    def zero(self):
        return self(0)

    def one(self):
        return self(1)

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero")
        p = self.characteristic
        if p:
            return pow(a, -1, p)
        return 1 / a

    def norm(self, a):
        p = self.characteristic
        return a % p if p else a

    def __eq__(self, other):
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("Field", self.characteristic))

    def __repr__(self):
        return "Q" if self.characteristic == 0 else f"F{self.characteristic}"

    @property
    def name(self) -> str:
        return repr(self)

    def elements(self):
        """All elements of a finite field."""
        if not self.characteristic:
            raise ValueError("Q is infinite")
        return list(range(self.characteristic))

    def to_str(self, a) -> str:
        if self.characteristic:
            return str(a)
        return str(a) if a.denominator != 1 else str(a.numerator)

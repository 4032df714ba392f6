"""Exact coefficient fields: arbitrary-precision rationals and prime fields F_p.

Rationals are plain ``fractions.Fraction`` values (canonical lowest terms,
positive denominator).  Prime-field elements are immutable wrappers around a
reduced residue.  Both support ``+ - * / **`` and mix freely with Python ints,
so field-generic code can use integer literals in formulas.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import BadCharacteristicError

__all__ = ["QQ", "RationalField", "PrimeField", "FpElement", "field_from_name"]


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class FpElement:
    """A residue modulo a prime, normalized to 0..p-1."""

    value: int
    p: int

    def _lift(self, other) -> "FpElement":
        if isinstance(other, FpElement):
            if other.p != self.p:
                raise ValueError("cannot mix residues for different primes")
            return other
        if isinstance(other, int):
            return FpElement(other % self.p, self.p)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return FpElement((self.value + other.value) % self.p, self.p)

    __radd__ = __add__

    def __neg__(self):
        return FpElement(-self.value % self.p, self.p)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return FpElement((self.value - other.value) % self.p, self.p)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return FpElement((self.value * other.value) % self.p, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        if other.value == 0:
            raise ZeroDivisionError("division by zero residue")
        return self * other.inverse()

    def __rtruediv__(self, other):
        lifted = self._lift(other)
        return lifted / self

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return FpElement(pow(self.value, exponent, self.p), self.p)

    def inverse(self) -> "FpElement":
        if self.value == 0:
            raise ZeroDivisionError("zero residue has no inverse")
        return FpElement(pow(self.value, self.p - 2, self.p), self.p)

    def __bool__(self) -> bool:
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, FpElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __repr__(self):
        return str(self.value)


class RationalField:
    """The rationals; elements are ``Fraction`` instances."""

    char = 0
    name = "Q"

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def coerce(self, value) -> Fraction:
        if isinstance(value, Fraction):
            return value
        if isinstance(value, int):
            return Fraction(value)
        if isinstance(value, str):
            return Fraction(value)
        raise TypeError(f"cannot coerce {value!r} into Q")

    def random(self, rng: random.Random, height: int = 9) -> Fraction:
        return Fraction(rng.randint(-height, height), rng.randint(1, height))

    def random_nonzero(self, rng: random.Random, height: int = 9) -> Fraction:
        while True:
            x = self.random(rng, height)
            if x:
                return x

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("RationalField")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """The prime field F_p for a prime p >= 5.

    Characteristics 2 and 3 are rejected: several sign-sensitive identities in
    the solver implicitly divide by 2 or distinguish +/-.
    """

    def __init__(self, p: int):
        if not _is_prime(p):
            raise BadCharacteristicError(f"{p} is not prime")
        if p in (2, 3):
            raise BadCharacteristicError(f"characteristic {p} is not supported")
        self.p = p
        self.char = p
        self.name = f"Fp:{p}"

    @property
    def zero(self) -> FpElement:
        return FpElement(0, self.p)

    @property
    def one(self) -> FpElement:
        return FpElement(1, self.p)

    def coerce(self, value) -> FpElement:
        if isinstance(value, FpElement):
            if value.p != self.p:
                raise ValueError("residue for a different prime")
            return value
        if isinstance(value, int):
            return FpElement(value % self.p, self.p)
        if isinstance(value, Fraction):
            den = FpElement(value.denominator % self.p, self.p)
            if not den:
                raise ZeroDivisionError("denominator divisible by the characteristic")
            return FpElement(value.numerator % self.p, self.p) / den
        if isinstance(value, str):
            return self.coerce(Fraction(value))
        raise TypeError(f"cannot coerce {value!r} into F_{self.p}")

    def random(self, rng: random.Random, height: int = 0) -> FpElement:
        return FpElement(rng.randrange(self.p), self.p)

    def random_nonzero(self, rng: random.Random, height: int = 0) -> FpElement:
        return FpElement(rng.randrange(1, self.p), self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("PrimeField", self.p))

    def __repr__(self):
        return f"GF({self.p})"


QQ = RationalField()


def field_from_name(name: str):
    """Resolve a field header value: ``Q`` or ``Fp:<prime>``."""
    if name == "Q":
        return QQ
    if name.startswith("Fp:"):
        try:
            p = int(name[3:])
        except ValueError as exc:
            raise BadCharacteristicError(f"bad prime in field name {name!r}") from exc
        return PrimeField(p)
    raise BadCharacteristicError(f"unknown field {name!r}")

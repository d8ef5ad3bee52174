"""Exact arithmetic helpers: rationals, residue rings, factorials, harmonic numbers.

Rationals are plain ``fractions.Fraction`` values (always reduced, positive
denominator).  ``ModRing`` is a small immutable residue class that carries its
own modulus so that mixing precisions fails loudly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial, gcd

BigRat = Fraction


def harmonic(k: int, order: int = 1) -> Fraction:
    """H_k^(order) = sum_{j=1..k} 1/j^order, with H_0 = 0."""
    if k < 0 or order < 1:
        raise ValueError("harmonic needs k >= 0 and order >= 1")
    return _harmonic(k, order)


@lru_cache(maxsize=None)
def _harmonic(k, order):
    if k == 0:
        return Fraction(0)
    return _harmonic(k - 1, order) + Fraction(1, k ** order)


def factorial_ratio(a: int, b: int, e: int) -> Fraction:
    """a! / (b!)^e as an exact rational."""
    if a < 0 or b < 0 or e < 1:
        raise ValueError("factorial_ratio needs a, b >= 0 and e >= 1")
    return Fraction(factorial(a), factorial(b) ** e)


@dataclass(frozen=True)
class ModRing:
    """An element of Z/modulus."""

    value: int
    modulus: int

    def __post_init__(self):
        if self.modulus < 2:
            raise ValueError("modulus must be >= 2")
        object.__setattr__(self, "value", self.value % self.modulus)

    def _other(self, other):
        if isinstance(other, ModRing):
            if other.modulus != self.modulus:
                raise ValueError(
                    f"mixed moduli {self.modulus} and {other.modulus}")
            return other.value
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return ModRing(self.value + o, self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return ModRing(self.value - o, self.modulus)

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return ModRing(o - self.value, self.modulus)

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return ModRing(self.value * o, self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return ModRing(-self.value, self.modulus)

    def __pow__(self, e):
        return modring_pow(self, e)

    def __eq__(self, other):
        if isinstance(other, ModRing):
            return self.modulus == other.modulus and self.value == other.value
        if isinstance(other, int):
            return (self.value - other) % self.modulus == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.modulus))

    def inverse(self) -> "ModRing":
        if gcd(self.value, self.modulus) != 1:
            raise ZeroDivisionError(f"{self.value} not invertible mod {self.modulus}")
        return ModRing(pow(self.value, -1, self.modulus), self.modulus)

    def __repr__(self):
        return f"{self.value} mod {self.modulus}"


def modring_pow(x: ModRing, e: int) -> ModRing:
    """x^e by square-and-multiply (e >= 0)."""
    if e < 0:
        raise ValueError("negative exponent; use inverse()")
    result, base = 1 % x.modulus, x.value
    while e:
        if e & 1:
            result = result * base % x.modulus
        base = base * base % x.modulus
        e >>= 1
    return ModRing(result, x.modulus)


def valuation(n: int, p: int) -> int | None:
    """p-adic valuation of an integer; None for 0 (infinite)."""
    if n == 0:
        return None
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def rat_valuation(x: Fraction, p: int) -> int | None:
    if x == 0:
        return None
    return valuation(x.numerator, p) - valuation(x.denominator, p)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# JSON helpers: rationals as "num/den", integers as decimal strings.

def rat_to_json(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def rat_from_json(s) -> Fraction:
    return Fraction(s)


def int_to_json(n: int) -> str:
    return str(int(n))

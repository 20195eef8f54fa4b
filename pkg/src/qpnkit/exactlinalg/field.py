"""Coefficient fields: the rationals and prime fields GF(p).

Rational scalars are :class:`fractions.Fraction` (arbitrary precision);
prime-field scalars are plain ints normalized into ``range(p)``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


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
    """Common interface of :class:`Rationals` and :class:`PrimeField`.

    The arithmetic method names (``zero``, ``one``, ``add``, ``mul``, ...)
    are shared with the target rings so that substitution code can treat a
    field as a ring.
    """

    kind: str
    characteristic: int

    def __eq__(self, other):
        return (isinstance(other, Field) and self.kind == other.kind
                and self.characteristic == other.characteristic)

    def __hash__(self):
        return hash((self.kind, self.characteristic))

    def from_scalar(self, x):
        return self(x)

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def is_zero(self, a) -> bool:
        return a == 0

    def is_unit(self, a) -> bool:
        return a != 0

    def parse(self, text: str):
        m = _RATIONAL_RE.match(text)
        if not m:
            raise ValueError(f"not a scalar: {text!r}")
        num = int(m.group(1))
        den = int(m.group(2)) if m.group(2) else 1
        return self.div(self(num), self(den))


class Rationals(Field):
    kind = "rationals"
    characteristic = 0
    zero = Fraction(0)
    one = Fraction(1)

    def __call__(self, x):
        return Fraction(x)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return 1 / Fraction(a)

    def render(self, a) -> str:
        return str(Fraction(a))

    def __repr__(self):
        return "QQ"

    def __str__(self):
        return "Q"


class PrimeField(Field):
    kind = "prime-field"
    zero = 0
    one = 1

    def __init__(self, p: int):
        if not _is_prime(p) or p >= 2**31:
            raise ValueError(f"characteristic must be a prime below 2^31, got {p}")
        self.characteristic = p

    def __call__(self, x):
        if isinstance(x, Fraction):
            return self.div(x.numerator % self.characteristic,
                            x.denominator % self.characteristic)
        return int(x) % self.characteristic

    def add(self, a, b):
        return (a + b) % self.characteristic

    def neg(self, a):
        return -a % self.characteristic

    def mul(self, a, b):
        return a * b % self.characteristic

    def inv(self, a):
        if a % self.characteristic == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.characteristic)

    def render(self, a) -> str:
        return str(a)

    def __repr__(self):
        return f"GF({self.characteristic})"

    __str__ = __repr__


QQ = Rationals()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_spec(kind: str, characteristic: int = 0) -> Field:
    """Build a field from a (kind, characteristic) pair: ("rationals", 0) or ("prime-field", p)."""
    if kind == "rationals":
        if characteristic != 0:
            raise ValueError("the rationals have characteristic 0")
        return QQ
    if kind == "prime-field":
        return GF(characteristic)
    raise ValueError(f"unknown field kind {kind!r}")

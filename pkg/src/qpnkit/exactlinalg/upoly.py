"""Univariate polynomials over QQ or GF(p): the target ring k[t]."""

from __future__ import annotations

import re
from fractions import Fraction

from .field import Field


class UPoly:
    """Immutable polynomial with ascending coefficient tuple.

    The coefficient tuple is trimmed so that the last entry is nonzero; the
    zero polynomial has ``coeffs == ()`` and degree -1.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Field, coeffs=()):
        cs = [field(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, field, cs):
        # cs already normalized field scalars
        while cs and cs[-1] == 0:
            cs.pop()
        obj = object.__new__(cls)
        obj.field = field
        obj.coeffs = tuple(cs)
        return obj

    @classmethod
    def constant(cls, field: Field, c) -> "UPoly":
        return cls(field, (c,))

    @classmethod
    def gen(cls, field: Field) -> "UPoly":
        return cls(field, (0, 1))

    # -- basic queries -------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lead(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs and self.field == other.field
        if isinstance(other, (int, Fraction)):
            return self.coeffs == ((self.field(other),) if other else ())
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def is_unit(self) -> bool:
        return len(self.coeffs) == 1

    def lead_inverse(self):
        return self.field.inv(self.coeffs[-1])

    def monic(self) -> "UPoly":
        if not self.coeffs or self.coeffs[-1] == 1:
            return self
        return self.scale(self.lead_inverse())

    # -- ring operations -----------------------------------------------------

    def _coerce(self, other) -> "UPoly":
        if isinstance(other, UPoly):
            return other
        return UPoly(self.field, (other,))

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        F = self.field
        cs = list(a)
        for i, c in enumerate(b):
            cs[i] = F.add(cs[i], c)
        return UPoly._raw(F, cs)

    __radd__ = __add__

    def __neg__(self):
        F = self.field
        return UPoly._raw(F, [F.neg(c) for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, UPoly):
            return self.scale(self.field(other))
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UPoly._raw(self.field, [])
        F = self.field
        p = F.characteristic
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        if p:
            out = [c % p for c in out]
        return UPoly._raw(F, out)

    __rmul__ = __mul__

    def scale(self, c) -> "UPoly":
        F = self.field
        if c == 0:
            return UPoly._raw(F, [])
        return UPoly._raw(F, [F.mul(c, x) for x in self.coeffs])

    def __pow__(self, e: int):
        result = UPoly(self.field, (1,))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other):
        other = self._coerce(other)
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        F = self.field
        rem = list(self.coeffs)
        db = len(other.coeffs) - 1
        if len(rem) - 1 < db:
            return UPoly._raw(F, []), self
        inv = other.lead_inverse()
        b = other.coeffs
        quot = [F.zero] * (len(rem) - db)
        for k in range(len(rem) - 1 - db, -1, -1):
            c = F.mul(rem[k + db], inv)
            quot[k] = c
            if c:
                for i, bi in enumerate(b):
                    rem[k + i] = F.sub(rem[k + i], F.mul(c, bi))
        return UPoly._raw(F, quot), UPoly._raw(F, rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def divides(self, other: "UPoly") -> bool:
        if not self:
            return not other
        return not (other % self)

    def xgcd(self, other: "UPoly"):
        """Return ``(g, u, v)`` with ``u*self + v*other == g`` and ``g`` monic (or zero)."""
        F = self.field
        zero, one = UPoly._raw(F, []), UPoly._raw(F, [F.one])
        if self.is_unit():
            return one, UPoly._raw(F, [self.lead_inverse()]), zero
        r0, r1 = self, other
        s0, s1 = one, zero
        t0, t1 = zero, one
        while r1:
            q, r = divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, s0 - q * s1
            t0, t1 = t1, t0 - q * t1
        if not r0:
            return r0, s0, t0
        c = r0.lead_inverse()
        return r0.scale(c), s0.scale(c), t0.scale(c)

    def gcd(self, other: "UPoly") -> "UPoly":
        a, b = self, other
        while b:
            a, b = b, a % b
        return a.monic()

    def __call__(self, x, ring=None):
        """Evaluate by Horner's rule, in ``ring`` if given (default: the coefficient field)."""
        R = ring if ring is not None else self.field
        acc = R.zero
        for c in reversed(self.coeffs):
            acc = R.add(R.mul(acc, x), R.from_scalar(c))
        return acc

    # -- text ----------------------------------------------------------------

    def render(self, var: str = "t") -> str:
        if not self.coeffs:
            return "0"
        F = self.field
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            s = F.render(c)
            neg = s.startswith("-")
            if neg:
                s = s[1:]
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            if mono and s == "1":
                term = mono
            elif mono:
                term = f"{s}*{mono}"
            else:
                term = s
            if not parts:
                parts.append(("-" if neg else "") + term)
            else:
                parts.append(("- " if neg else "+ ") + term)
        return " ".join(parts)

    def __repr__(self):
        return f"UPoly({self.render()})"

    __str__ = render

    @classmethod
    def parse(cls, field: Field, text: str, var: str = "t") -> "UPoly":
        """Parse expressions such as ``t^2 - 3*t + 1/2``."""
        src = text.replace(" ", "")
        if not src:
            raise ValueError("empty polynomial")
        pos = 0
        terms = []
        term_re = re.compile(
            rf"([+-]?)(\d+(?:/\d+)?)?(\*?)({re.escape(var)}(?:\^(\d+))?)?"
        )
        coeffs: dict[int, object] = {}
        while pos < len(src):
            m = term_re.match(src, pos)
            if not m or m.end() == pos or (m.group(2) is None and m.group(4) is None):
                raise ValueError(f"cannot parse polynomial {text!r} at offset {pos}")
            if m.group(3) and (m.group(2) is None or m.group(4) is None):
                raise ValueError(f"dangling '*' in {text!r}")
            if terms and not m.group(1):
                raise ValueError(f"missing sign between terms in {text!r}")
            sign, num, _, mono, exp = m.groups()
            c = field.parse(num) if num else field.one
            if sign == "-":
                c = field.neg(c)
            k = 0 if mono is None else (int(exp) if exp else 1)
            coeffs[k] = field.add(coeffs.get(k, field.zero), c)
            terms.append(m.group(0))
            pos = m.end()
        top = max(coeffs)
        return cls(field, [coeffs.get(k, 0) for k in range(top + 1)])

"""The graded polynomial ring S = k[x0, ..., xn] and its homogeneous elements.

Monomials are exponent tuples. Degree-m monomials are listed in descending
lexicographic order of exponent vectors (x0 > x1 > ...), which fixes the
basis order of every graded piece.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .exactlinalg.field import Field

Monomial = tuple  # exponent vector of length n+1


@lru_cache(maxsize=4096)
def enumerate_monomials(n: int, m: int) -> tuple[Monomial, ...]:
    """H_m for n+1 variables, lex order with x0 > x1 > ...; empty for m < 0."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if m < 0:
        return ()
    out = []
    for combo in itertools.combinations_with_replacement(range(n + 1), m):
        e = [0] * (n + 1)
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return tuple(out)


@lru_cache(maxsize=4096)
def monomial_index(n: int, m: int) -> dict:
    return {p: i for i, p in enumerate(enumerate_monomials(n, m))}


def num_monomials(n: int, m: int) -> int:
    return comb(n + m, n) if m >= 0 else 0


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial | None:
    """a / b, or None when b does not divide a."""
    q = tuple(x - y for x, y in zip(a, b))
    return None if min(q, default=0) < 0 else q


def var_monomial(n: int, i: int) -> Monomial:
    return tuple(1 if k == i else 0 for k in range(n + 1))


def render_monomial(e: Monomial) -> str:
    parts = []
    for i, k in enumerate(e):
        if k == 1:
            parts.append(f"x{i}")
        elif k > 1:
            parts.append(f"x{i}^{k}")
    return "*".join(parts) if parts else "1"


_MONO_FACTOR = re.compile(r"x(\d+)(?:\^(\d+))?$")


def parse_monomial(text: str, n: int) -> Monomial:
    e = [0] * (n + 1)
    text = text.strip()
    if text == "1":
        return tuple(e)
    for factor in text.split("*"):
        m = _MONO_FACTOR.match(factor.strip())
        if not m:
            raise ValueError(f"bad monomial factor {factor!r}")
        i = int(m.group(1))
        if i > n:
            raise ValueError(f"variable x{i} out of range for x0..x{n}")
        e[i] += int(m.group(2)) if m.group(2) else 1
    return tuple(e)


@dataclass(frozen=True)
class PolyRing:
    field: Field
    n: int  # variables x0..xn

    @property
    def nvars(self) -> int:
        return self.n + 1

    def zero(self, degree: int) -> "HomPoly":
        return HomPoly(self, degree, {})

    def one(self) -> "HomPoly":
        return HomPoly(self, 0, {(0,) * self.nvars: self.field.one})

    def var(self, i: int) -> "HomPoly":
        return HomPoly(self, 1, {var_monomial(self.n, i): self.field.one})

    def monomial(self, e: Monomial, coeff=1) -> "HomPoly":
        return HomPoly(self, sum(e), {tuple(e): self.field(coeff)})

    def parse(self, text: str, degree: int | None = None) -> "HomPoly":
        return parse_hompoly(self, text, degree)

    def __str__(self):
        return f"{self.field}[x0..x{self.n}]"


class HomPoly:
    """A homogeneous polynomial of a fixed declared degree.

    ``terms`` maps monomials (all of degree ``degree``) to nonzero scalars.
    The zero polynomial carries a degree too, so it can stand in any slot of a
    graded matrix.
    """

    __slots__ = ("ring", "degree", "terms")

    def __init__(self, ring: PolyRing, degree: int, terms: dict):
        F = ring.field
        clean = {}
        for mono, c in terms.items():
            mono = tuple(mono)
            if len(mono) != ring.nvars:
                raise ValueError(f"monomial {mono} has wrong number of variables")
            if sum(mono) != degree:
                raise ValueError(f"monomial {render_monomial(mono)} is not of degree {degree}")
            c = F(c)
            if c != 0:
                clean[mono] = c
        self.ring = ring
        self.degree = degree
        self.terms = clean

    @classmethod
    def _raw(cls, ring, degree, terms):
        obj = object.__new__(cls)
        obj.ring, obj.degree, obj.terms = ring, degree, terms
        return obj

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, HomPoly):
            return NotImplemented
        if not self.terms and not other.terms:
            return self.ring == other.ring
        return (self.ring == other.ring and self.degree == other.degree
                and self.terms == other.terms)

    def __hash__(self):
        return hash((self.degree, frozenset(self.terms.items())))

    def _check(self, other: "HomPoly"):
        if self.ring != other.ring:
            raise ValueError("polynomials over different rings")

    def __add__(self, other: "HomPoly") -> "HomPoly":
        self._check(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        if self.degree != other.degree:
            raise ValueError(f"cannot add degrees {self.degree} and {other.degree}")
        F = self.ring.field
        out = dict(self.terms)
        for mono, c in other.terms.items():
            w = F.add(out.get(mono, F.zero), c)
            if w == 0:
                out.pop(mono, None)
            else:
                out[mono] = w
        return HomPoly._raw(self.ring, self.degree, out)

    def __neg__(self) -> "HomPoly":
        F = self.ring.field
        return HomPoly._raw(self.ring, self.degree, {m: F.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other: "HomPoly") -> "HomPoly":
        return self + (-other)

    def scale(self, c) -> "HomPoly":
        F = self.ring.field
        c = F(c)
        if c == 0:
            return HomPoly._raw(self.ring, self.degree, {})
        return HomPoly._raw(self.ring, self.degree,
                            {m: F.mul(c, v) for m, v in self.terms.items()})

    def __mul__(self, other) -> "HomPoly":
        if not isinstance(other, HomPoly):
            return self.scale(other)
        return multiply(self, other)

    __rmul__ = __mul__

    def times_monomial(self, mono: Monomial) -> "HomPoly":
        return HomPoly._raw(self.ring, self.degree + sum(mono),
                            {mono_mul(m, mono): c for m, c in self.terms.items()})

    def substitute(self, sections, ring=None):
        return substitute(self, sections, ring)

    def render(self) -> str:
        if not self.terms:
            return "0"
        F = self.ring.field
        parts = []
        for mono in sorted(self.terms, reverse=True):
            s = F.render(self.terms[mono])
            neg = s.startswith("-")
            if neg:
                s = s[1:]
            m = render_monomial(mono)
            if m == "1":
                term = s
            elif s == "1":
                term = m
            else:
                term = f"{s}*{m}"
            if not parts:
                parts.append(("-" if neg else "") + term)
            else:
                parts.append(("- " if neg else "+ ") + term)
        return " ".join(parts)

    def __repr__(self):
        return f"HomPoly({self.render()}; deg {self.degree})"

    __str__ = render


def multiply(p: HomPoly, q: HomPoly) -> HomPoly:
    """Product in S; the degree is the sum of degrees."""
    p._check(q)
    F = p.ring.field
    out: dict = {}
    for m1, c1 in p.terms.items():
        for m2, c2 in q.terms.items():
            mono = mono_mul(m1, m2)
            w = F.add(out.get(mono, F.zero), F.mul(c1, c2))
            if w == 0:
                out.pop(mono, None)
            else:
                out[mono] = w
    return HomPoly._raw(p.ring, p.degree + q.degree, out)


def substitute(p: HomPoly, sections, ring=None):
    """Ring homomorphism S -> T sending x_i to ``sections[i]``.

    ``ring`` supplies ``zero``, ``one``, ``add``, ``mul`` and ``from_scalar``;
    it defaults to the coefficient field.
    """
    if len(sections) != p.ring.nvars:
        raise ValueError(f"need {p.ring.nvars} sections, got {len(sections)}")
    R = ring if ring is not None else p.ring.field
    powers: dict = {}

    def power(i, k):
        key = (i, k)
        if key not in powers:
            acc = R.one
            for _ in range(k):
                acc = R.mul(acc, sections[i])
            powers[key] = acc
        return powers[key]

    total = R.zero
    for mono, c in p.terms.items():
        term = R.from_scalar(c)
        for i, k in enumerate(mono):
            if k:
                term = R.mul(term, power(i, k))
        total = R.add(total, term)
    return total


_TERM_RE = re.compile(r"([+-])?\s*([^+-]+)")


def parse_hompoly(ring: PolyRing, text: str, degree: int | None = None) -> HomPoly:
    """Parse ``x0^2*x1 - 3*x2^3 + 1/2*x0*x1*x2``.

    ``0`` parses to the zero polynomial of ``degree`` (default 0). Terms must
    share one degree; a mismatch with ``degree`` raises ValueError.
    """
    src = text.strip()
    if not src:
        raise ValueError("empty polynomial")
    F = ring.field
    terms: dict = {}
    found = None
    pos = 0
    first = True
    while pos < len(src):
        m = _TERM_RE.match(src, pos)
        if not m or (not first and m.group(1) is None):
            raise ValueError(f"cannot parse {text!r} at offset {pos}")
        first = False
        sign, body = m.group(1), m.group(2).strip()
        pos = m.end()
        factors = [f.strip() for f in body.split("*")]
        coeff = F.one
        if factors and re.fullmatch(r"\d+(?:/\d+)?", factors[0]):
            coeff = F.parse(factors.pop(0))
        mono = parse_monomial("*".join(factors), ring.n) if factors else (0,) * ring.nvars
        if sign == "-":
            coeff = F.neg(coeff)
        if coeff == 0:
            continue
        d = sum(mono)
        if found is not None and d != found:
            raise ValueError(f"{text!r} is not homogeneous")
        found = d
        terms[mono] = F.add(terms.get(mono, F.zero), coeff)
    if found is None:
        return HomPoly(ring, 0 if degree is None else degree, {})
    if degree is not None and found != degree:
        p = HomPoly(ring, found, terms)
        if p.terms:
            raise ValueError(f"{text!r} has degree {found}, expected {degree}")
        return HomPoly(ring, degree, {})
    return HomPoly(ring, found, terms)

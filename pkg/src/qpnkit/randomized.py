"""Seeded random inputs shared by the CLI and the test corpus."""

from __future__ import annotations

import random

from .exactlinalg import UPoly
from .grmod import FPGradedModule, GradedFree, GradedMatrix
from .polyring import HomPoly, PolyRing, enumerate_monomials


def random_form(rng: random.Random, ring: PolyRing, degree: int, density: float = 0.6) -> HomPoly:
    F = ring.field
    terms = {p: F(rng.randint(-3, 3)) for p in enumerate_monomials(ring.n, degree)
             if rng.random() < density}
    return HomPoly(ring, degree, terms)


def random_cokernel(rng: random.Random, ring: PolyRing, max_gens: int = 2, max_rels: int = 2,
                    max_twist: int = 1) -> FPGradedModule:
    """Small cokernel with twists in [-max_twist, max_twist] and random relation
    forms of the forced degrees (some entries left zero)."""
    gens = GradedFree(tuple(rng.randint(-max_twist, max_twist) for _ in range(rng.randint(1, max_gens))))
    top = max(gens.twists)
    src = GradedFree(tuple(top - rng.randint(0, 2) for _ in range(rng.randint(0, max_rels))))
    entries = {}
    for j, sj in enumerate(src.twists):
        for i, gi in enumerate(gens.twists):
            deg = gi - sj
            if deg >= 0 and rng.random() >= 0.3:
                entries[(i, j)] = random_form(rng, ring, deg)
    return FPGradedModule(ring, gens, GradedMatrix(ring, src, gens, entries))


def random_upoly(rng: random.Random, field, max_degree: int = 3) -> UPoly:
    deg = rng.randint(0, max_degree)
    return UPoly(field, [field(rng.randint(-3, 3)) for _ in range(deg + 1)])


def random_unit_gcd_sections(rng: random.Random, field, n: int, max_degree: int = 3) -> tuple:
    """n+1 polynomials in k[t] with unit gcd (rejection sampling)."""
    while True:
        s = [random_upoly(rng, field, max_degree) for _ in range(n + 1)]
        g = UPoly(field)
        for x in s:
            g = g.gcd(x)
        if g.is_unit():
            return tuple(s)

"""Commutative algebra objects in Mod(T), their modules, and descent along an algebra map.

An algebra is a finitely presented carrier ``A = coker(P)`` with structure
maps given on generators: ``mult[i][j]`` is the image of ``e_i (x) e_j`` and
``unit`` the image of 1. Quotient algebras T/I are therefore allowed. Every
axiom is an equality of maps out of a free module modulo the carrier
relations, hence decidable.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import InvalidAlgebraMap, InvalidModuleStructure
from .modules import ModuleMap, TModule, base_change, tensor_tmodules
from .rings import RingMap, TargetRing


def _combine(ring: TargetRing, coeffs, vectors, length: int) -> tuple:
    """sum_k coeffs[k] * vectors[k]."""
    out = [ring.zero] * length
    for c, v in zip(coeffs, vectors):
        if ring.is_zero(c):
            continue
        for i, x in enumerate(v):
            out[i] = ring.add(out[i], ring.mul(c, x))
    return tuple(out)


def _diff(ring: TargetRing, u, v) -> tuple:
    return tuple(ring.sub(x, y) for x, y in zip(u, v))


@dataclass(frozen=True)
class AlgebraObject:
    carrier: TModule
    mult: tuple  # mult[i][j]: vector in T^r
    unit: tuple  # vector in T^r

    @property
    def ring(self) -> TargetRing:
        return self.carrier.ring

    @property
    def rank(self) -> int:
        return self.carrier.nrows

    @classmethod
    def unit_algebra(cls, ring: TargetRing) -> "AlgebraObject":
        return cls(TModule.free(ring, 1), (((ring.one,),),), (ring.one,))

    def mult_map(self) -> ModuleMap:
        """A (x) A -> A on the pair generators i * r + j."""
        r = self.rank
        cols = [self.mult[i][j] for i in range(r) for j in range(r)]
        return ModuleMap(tensor_tmodules(self.carrier, self.carrier), self.carrier, cols, check=False)

    def times(self, u, v) -> tuple:
        """Product of two carrier elements given on generators."""
        R, r = self.ring, self.rank
        out = [R.zero] * r
        for i, x in enumerate(u):
            if R.is_zero(x):
                continue
            for j, y in enumerate(v):
                if R.is_zero(y):
                    continue
                out = list(_combine(R, [R.one, R.mul(x, y)], [out, self.mult[i][j]], r))
        return tuple(out)

    def check(self) -> None:
        """Raise InvalidModuleStructure unless mult is well defined, commutative,
        associative and unital."""
        R, r, A = self.ring, self.rank, self.carrier
        if len(self.mult) != r or any(len(row) != r for row in self.mult) or len(self.unit) != r:
            raise InvalidModuleStructure("structure data does not match the carrier rank")
        bad = self.mult_map().first_ill_defined_relation()
        if bad is not None:
            raise InvalidModuleStructure(f"multiplication is not well defined on relation {bad}")
        basis = [tuple(R.one if k == i else R.zero for k in range(r)) for i in range(r)]
        for i in range(r):
            if not A.contains(_diff(R, self.times(self.unit, basis[i]), basis[i])):
                raise InvalidModuleStructure(f"unit law fails on generator {i}")
            for j in range(r):
                if not A.contains(_diff(R, self.mult[i][j], self.mult[j][i])):
                    raise InvalidModuleStructure(f"not commutative on ({i}, {j})")
                for k in range(r):
                    lhs = self.times(self.mult[i][j], basis[k])
                    rhs = self.times(basis[i], self.mult[j][k])
                    if not A.contains(_diff(R, lhs, rhs)):
                        raise InvalidModuleStructure(f"not associative on ({i}, {j}, {k})")


def make_algebra(carrier: TModule, mult, unit) -> AlgebraObject:
    a = AlgebraObject(carrier, tuple(tuple(tuple(v) for v in row) for row in mult), tuple(unit))
    a.check()
    return a


@dataclass(frozen=True)
class AModule:
    algebra: AlgebraObject
    underlying: TModule
    action: tuple  # action[i][l]: image of e_i (x) m_l, a vector in T^s

    def act(self, i: int, vec) -> tuple:
        R, s = self.algebra.ring, self.underlying.nrows
        return _combine(R, vec, [self.action[i][l] for l in range(s)], s)

    def act_element(self, a, vec) -> tuple:
        R, s = self.algebra.ring, self.underlying.nrows
        out = (R.zero,) * s
        for i, c in enumerate(a):
            if not R.is_zero(c):
                out = _combine(R, [R.one, c], [out, self.act(i, vec)], s)
        return out

    def check(self) -> None:
        A, M = self.algebra, self.underlying
        R, r, s = A.ring, A.rank, M.nrows
        if len(self.action) != r or any(len(row) != s for row in self.action):
            raise InvalidModuleStructure("action data does not match the ranks")
        cols = [self.action[i][l] for i in range(r) for l in range(s)]
        bad = ModuleMap(tensor_tmodules(A.carrier, M), M, cols, check=False).first_ill_defined_relation()
        if bad is not None:
            raise InvalidModuleStructure(f"action is not well defined on relation {bad}")
        mbasis = [tuple(R.one if k == l else R.zero for k in range(s)) for l in range(s)]
        for l in range(s):
            if not M.contains(_diff(R, self.act_element(A.unit, mbasis[l]), mbasis[l])):
                raise InvalidModuleStructure(f"unit does not act as the identity on generator {l}")
            for i in range(r):
                for j in range(r):
                    lhs = self.act_element(A.mult[i][j], mbasis[l])
                    rhs = self.act(i, self.act(j, mbasis[l]))
                    if not M.contains(_diff(R, lhs, rhs)):
                        raise InvalidModuleStructure(f"action is not associative on ({i}, {j}, {l})")


def make_amodule(algebra: AlgebraObject, underlying: TModule, action) -> AModule:
    m = AModule(algebra, underlying, tuple(tuple(tuple(v) for v in row) for row in action))
    m.check()
    return m


def regular_module(a: AlgebraObject) -> AModule:
    """A as a module over itself."""
    return AModule(a, a.carrier, a.mult)


def base_change_algebra(f: RingMap, a: AlgebraObject) -> AlgebraObject:
    return AlgebraObject(base_change(f, a.carrier),
                         tuple(tuple(tuple(f(x) for x in v) for v in row) for row in a.mult),
                         tuple(f(x) for x in a.unit))


def check_algebra_map_to_unit(b: AlgebraObject, sigma) -> None:
    """sigma: B -> T (the unit algebra), given by the images of the generators.

    Checks that relations go to 0, the unit goes to 1 and products are respected.
    """
    R, r = b.ring, b.rank
    if len(sigma) != r:
        raise InvalidAlgebraMap(f"need {r} generator images, got {len(sigma)}")
    for j, rel in enumerate(b.carrier.relations):
        if not R.is_zero(R.dot(sigma, rel)):
            raise InvalidAlgebraMap(f"relation {j} is not sent to 0")
    if not R.eq(R.dot(sigma, b.unit), R.one):
        raise InvalidAlgebraMap("unit is not sent to 1")
    for i in range(r):
        for j in range(r):
            if not R.eq(R.dot(sigma, b.mult[i][j]), R.mul(sigma[i], sigma[j])):
                raise InvalidAlgebraMap(f"product of generators {i}, {j} is not respected")


def descend_module(f: RingMap, a: AlgebraObject, sigma, m: AModule) -> TModule:
    """``f^* M`` with the two actions of ``f^* A`` identified through sigma.

    Presentation: the base-changed relations of M, plus for every algebra
    generator i and module generator l the relation
    ``f(action(e_i (x) m_l)) - sigma_i m_l``.
    """
    if m.algebra != a:
        raise InvalidModuleStructure("module is over a different algebra")
    a.check()
    m.check()
    sigma = tuple(sigma)
    b = base_change_algebra(f, a)
    check_algebra_map_to_unit(b, sigma)
    T2 = f.target
    base = base_change(f, m.underlying)
    s = base.nrows
    rels = list(base.relations)
    for i in range(a.rank):
        for l in range(s):
            v = [f(x) for x in m.action[i][l]]
            v[l] = T2.sub(v[l], sigma[i])
            rels.append(tuple(v))
    return TModule(T2, s, tuple(rels), base.twists)

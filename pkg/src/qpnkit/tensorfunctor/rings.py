"""Affine target rings T: a field k, k[t], or a finite-dimensional commutative k-algebra."""

from __future__ import annotations

import itertools

from ..errors import InvalidRingMap
from ..exactlinalg import DenseMatrix, Field, UPoly, solve


class TargetRing:
    """Shared interface. Elements are field scalars, :class:`UPoly`, or coordinate tuples."""

    kind: str
    field: Field

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def is_zero(self, a) -> bool:
        return a == self.zero

    def eq(self, a, b) -> bool:
        return self.is_zero(self.sub(a, b))

    def dot(self, xs, ys):
        acc = self.zero
        for x, y in zip(xs, ys):
            acc = self.add(acc, self.mul(x, y))
        return acc


class FieldTarget(TargetRing):
    kind = "field"

    def __init__(self, field: Field):
        self.field = field
        self.zero = field.zero
        self.one = field.one

    def __eq__(self, other):
        return isinstance(other, FieldTarget) and other.field == self.field

    def __hash__(self):
        return hash(("field", self.field))

    def __repr__(self):
        return f"FieldTarget({self.field!r})"

    def __str__(self):
        return str(self.field)

    @property
    def k_dim(self) -> int:
        return 1

    def add(self, a, b):
        return self.field.add(a, b)

    def neg(self, a):
        return self.field.neg(a)

    def mul(self, a, b):
        return self.field.mul(a, b)

    def from_scalar(self, c):
        return self.field(c)

    def is_unit(self, a) -> bool:
        return a != 0

    def inverse(self, a):
        return self.field.inv(a)

    def coords(self, a) -> list:
        return [a]

    def basis(self) -> list:
        return [self.one]

    def parse(self, text: str):
        return self.field.parse(text)

    def render(self, a) -> str:
        return self.field.render(a)


class UnivariateTarget(TargetRing):
    kind = "univariate"

    def __init__(self, field: Field):
        self.field = field
        self.zero = UPoly(field)
        self.one = UPoly.constant(field, 1)
        self.t = UPoly.gen(field)

    def __eq__(self, other):
        return isinstance(other, UnivariateTarget) and other.field == self.field

    def __hash__(self):
        return hash(("univariate", self.field))

    def __repr__(self):
        return f"UnivariateTarget({self.field!r})"

    def __str__(self):
        return f"{self.field}[t]"

    k_dim = None

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def from_scalar(self, c):
        return UPoly.constant(self.field, c)

    def is_zero(self, a) -> bool:
        return not a

    def is_unit(self, a) -> bool:
        return a.is_unit()

    def inverse(self, a):
        if not a.is_unit():
            raise ZeroDivisionError(f"{a} is not a unit in {self}")
        return UPoly.constant(self.field, a.lead_inverse())

    def parse(self, text: str):
        return UPoly.parse(self.field, text)

    def render(self, a) -> str:
        return a.render()


class FinDimTarget(TargetRing):
    """k-algebra with basis b_0..b_{dim-1} and b_i b_j = sum_k c[i][j][k] b_k.

    Commutativity, associativity and unitality of the structure constants are
    verified at construction.
    """

    kind = "findim"

    def __init__(self, field: Field, dim: int, constants, unit):
        self.field = field
        self.dim = dim
        c = [[[field(constants[i][j][k]) for k in range(dim)] for j in range(dim)]
             for i in range(dim)]
        self.constants = tuple(tuple(tuple(r) for r in m) for m in c)
        self.one = tuple(field(x) for x in unit)
        self.zero = tuple(field.zero for _ in range(dim))
        if len(self.one) != dim:
            raise ValueError("unit vector has the wrong length")
        self._verify()

    @classmethod
    def from_flat(cls, field: Field, dim: int, flat, unit=None) -> "FinDimTarget":
        flat = list(flat)
        if len(flat) != dim ** 3:
            raise ValueError(f"need {dim ** 3} structure constants, got {len(flat)}")
        cube = [[[flat[(i * dim + j) * dim + k] for k in range(dim)] for j in range(dim)]
                for i in range(dim)]
        if unit is None:
            unit = [1] + [0] * (dim - 1)
        return cls(field, dim, cube, unit)

    def _verify(self):
        basis = self.basis()
        for x, y in itertools.product(basis, repeat=2):
            if self.mul(x, y) != self.mul(y, x):
                raise ValueError("structure constants are not commutative")
        for x, y, z in itertools.product(basis, repeat=3):
            if self.mul(self.mul(x, y), z) != self.mul(x, self.mul(y, z)):
                raise ValueError("structure constants are not associative")
        for x in basis:
            if self.mul(self.one, x) != x:
                raise ValueError("the given unit is not a unit")

    def __eq__(self, other):
        return (isinstance(other, FinDimTarget) and other.field == self.field
                and other.constants == self.constants and other.one == self.one)

    def __hash__(self):
        return hash(("findim", self.field, self.constants))

    def __repr__(self):
        return f"FinDimTarget({self.field!r}, dim={self.dim})"

    def __str__(self):
        return f"algebra({self.field}, {self.dim})"

    @property
    def k_dim(self) -> int:
        return self.dim

    def basis(self) -> list[tuple]:
        F = self.field
        return [tuple(F.one if i == j else F.zero for j in range(self.dim)) for i in range(self.dim)]

    def add(self, a, b):
        F = self.field
        return tuple(F.add(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.field.neg(x) for x in a)

    def mul(self, a, b):
        F = self.field
        out = [F.zero] * self.dim
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                if y == 0:
                    continue
                xy = F.mul(x, y)
                for k, c in enumerate(self.constants[i][j]):
                    if c != 0:
                        out[k] = F.add(out[k], F.mul(xy, c))
        return tuple(out)

    def from_scalar(self, c):
        F = self.field
        return tuple(F.mul(F(c), u) for u in self.one)

    def coords(self, a) -> list:
        return list(a)

    def mult_matrix(self, a) -> DenseMatrix:
        """k-matrix of multiplication by a (columns: images of basis vectors)."""
        return DenseMatrix.from_columns(self.field, [self.mul(a, b) for b in self.basis()], self.dim)

    def is_unit(self, a) -> bool:
        return self.inverse_or_none(a) is not None

    def inverse_or_none(self, a):
        x = solve(self.mult_matrix(a), list(self.one))
        return None if x is None else tuple(x)

    def inverse(self, a):
        x = self.inverse_or_none(a)
        if x is None:
            raise ZeroDivisionError(f"{a} is not a unit")
        return x

    def parse(self, text: str):
        s = text.strip()
        if not (s.startswith("[") and s.endswith("]")):
            raise ValueError(f"algebra elements are written [c0, ..., c{self.dim - 1}], got {text!r}")
        parts = [p for p in s[1:-1].split(",")]
        if len(parts) != self.dim:
            raise ValueError(f"expected {self.dim} coordinates in {text!r}")
        return tuple(self.field.parse(p) for p in parts)

    def render(self, a) -> str:
        return "[" + ", ".join(self.field.render(x) for x in a) + "]"


class RingMap:
    """k-algebra map between target rings, given on generators.

    Source field: no generators (structure map). Source k[t]: the image of t.
    Source findim: the images of the basis vectors, checked against the unit
    and the structure constants.
    """

    def __init__(self, source: TargetRing, target: TargetRing, images=()):
        if source.field != target.field:
            raise InvalidRingMap("source and target have different coefficient fields")
        self.source, self.target = source, target
        images = tuple(images)
        if source.kind == "field":
            if images:
                raise InvalidRingMap("a map out of a field takes no generator images")
        elif source.kind == "univariate":
            if len(images) != 1:
                raise InvalidRingMap("a map out of k[t] needs exactly the image of t")
        else:
            if len(images) != source.dim:
                raise InvalidRingMap(f"need images of all {source.dim} basis vectors")
        self.images = images
        if source.kind == "findim":
            self._check_findim()

    def _check_findim(self):
        T = self.target
        if not T.eq(self(self.source.one), T.one):
            raise InvalidRingMap("the unit is not sent to 1")
        B = self.source.basis()
        for i, j in itertools.product(range(len(B)), repeat=2):
            lhs = self(self.source.mul(B[i], B[j]))
            rhs = T.mul(self.images[i], self.images[j])
            if not T.eq(lhs, rhs):
                raise InvalidRingMap(f"b{i}*b{j} is not respected")

    @classmethod
    def identity(cls, ring: TargetRing) -> "RingMap":
        if ring.kind == "field":
            return cls(ring, ring)
        if ring.kind == "univariate":
            return cls(ring, ring, (ring.t,))
        return cls(ring, ring, ring.basis())

    def __call__(self, x):
        S, T = self.source, self.target
        if S.kind == "field":
            return T.from_scalar(x)
        if S.kind == "univariate":
            return x(self.images[0], T)
        acc = T.zero
        for c, img in zip(x, self.images):
            if c != 0:
                acc = T.add(acc, T.mul(T.from_scalar(c), img))
        return acc

    def compose(self, inner: "RingMap") -> "RingMap":
        """self after inner."""
        if inner.target != self.source:
            raise InvalidRingMap("ring maps are not composable")
        return RingMap(inner.source, self.target, tuple(self(x) for x in inner.images))

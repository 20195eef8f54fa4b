"""Finitely presented graded S-modules and degreewise verification.

Conventions
-----------
``S(d)_k = S_{d+k}``: the generator of ``S(d)`` sits in degree ``-d``. A
matrix entry from summand ``S(b)`` (source) to summand ``S(a)`` (target) is
therefore homogeneous of degree ``a - b``.

A module ``coker(R : F1 -> F0)`` is realized in degree ``k`` as the quotient
of the field vector space ``(F0)_k`` (basis: pairs of generator and monomial)
by the span of the realized relation columns. All exactness and isomorphism
verdicts here are *bounded*: they cover the degrees of a finite window only,
so a pass is evidence, not a certificate.
"""

from __future__ import annotations

import os
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import DegreeError, IllDefinedMap, NotComplex
from .exactlinalg.echelon import FieldEchelon
from .polyring import (
    HomPoly,
    PolyRing,
    enumerate_monomials,
    mono_mul,
    monomial_index,
    num_monomials,
)


@dataclass(frozen=True)
class GradedFree:
    """Direct sum of twists ``S(d)``; ``labels`` are optional display names."""

    twists: tuple
    labels: tuple | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "twists", tuple(int(d) for d in self.twists))
        if self.labels is not None and len(self.labels) != len(self.twists):
            raise ValueError("one label per summand required")

    def __len__(self):
        return len(self.twists)

    def dim(self, n: int, k: int) -> int:
        return sum(num_monomials(n, k + d) for d in self.twists)

    def generator_degrees(self) -> list[int]:
        return [-d for d in self.twists]

    def __add__(self, other: "GradedFree") -> "GradedFree":
        return GradedFree(self.twists + other.twists)


@lru_cache(maxsize=2048)
def _layout(twists: tuple, n: int, k: int):
    """Offsets and monomial index maps of each summand in degree k."""
    offsets, indices = [], []
    off = 0
    for d in twists:
        offsets.append(off)
        indices.append(monomial_index(n, k + d))
        off += num_monomials(n, k + d)
    return tuple(offsets), tuple(indices), off


def basis(free: GradedFree, n: int, k: int) -> list[tuple[int, tuple]]:
    """Ordered basis of ``free_k``: (summand, monomial) pairs."""
    return [(i, m) for i, d in enumerate(free.twists) for m in enumerate_monomials(n, k + d)]


class GradedMatrix:
    """Homogeneous matrix between twisted free modules.

    ``entries`` maps (row, col) to a nonzero :class:`HomPoly`; rows index
    target summands, columns source summands.
    """

    __slots__ = ("ring", "source", "target", "entries", "_cols")

    def __init__(self, ring: PolyRing, source: GradedFree, target: GradedFree, entries: dict):
        clean = {}
        for (i, j), p in entries.items():
            if not 0 <= i < len(target) or not 0 <= j < len(source):
                raise IndexError(f"entry ({i}, {j}) outside a {len(target)}x{len(source)} matrix")
            if p is None or not p:
                continue
            want = target.twists[i] - source.twists[j]
            if p.degree != want:
                raise DegreeError(i, j, want, p.degree)
            if p.ring != ring:
                raise ValueError("entry over a different ring")
            clean[(i, j)] = p
        self.ring = ring
        self.source = source
        self.target = target
        self.entries = clean
        cols = [[] for _ in source.twists]
        for (i, j) in sorted(clean):
            cols[j].append((i, clean[(i, j)]))
        self._cols = tuple(tuple(c) for c in cols)

    @classmethod
    def from_rows(cls, ring: PolyRing, source: GradedFree, target: GradedFree, rows) -> "GradedMatrix":
        """Build from a row grid whose cells are HomPoly, strings or 0."""
        if len(rows) != len(target):
            raise ValueError(f"expected {len(target)} rows, got {len(rows)}")
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != len(source):
                raise ValueError(f"row {i}: expected {len(source)} entries, got {len(row)}")
            for j, x in enumerate(row):
                want = target.twists[i] - source.twists[j]
                if isinstance(x, HomPoly):
                    p = x
                elif isinstance(x, str):
                    try:
                        p = ring.parse(x)
                    except ValueError as exc:
                        raise ValueError(f"entry ({i}, {j}): {exc}") from None
                    if not p:
                        continue
                elif x == 0:
                    continue
                else:
                    p = HomPoly(ring, 0, {(0,) * ring.nvars: x})
                if p and p.degree != want:
                    raise DegreeError(i, j, want, p.degree)
                entries[(i, j)] = p
        return cls(ring, source, target, entries)

    @classmethod
    def zero(cls, ring: PolyRing, source: GradedFree, target: GradedFree) -> "GradedMatrix":
        return cls(ring, source, target, {})

    @classmethod
    def identity(cls, ring: PolyRing, free: GradedFree) -> "GradedMatrix":
        one = ring.one()
        return cls(ring, free, free, {(i, i): one for i in range(len(free))})

    def __eq__(self, other):
        return (isinstance(other, GradedMatrix) and self.ring == other.ring
                and self.source == other.source and self.target == other.target
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.source, self.target, len(self.entries)))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.target), len(self.source)

    def __getitem__(self, ij) -> HomPoly:
        i, j = ij
        p = self.entries.get((i, j))
        if p is None:
            return self.ring.zero(self.target.twists[i] - self.source.twists[j])
        return p

    def column(self, j: int) -> tuple:
        return self._cols[j]

    def rows(self) -> list[list[HomPoly]]:
        return [[self[i, j] for j in range(len(self.source))] for i in range(len(self.target))]

    def compose(self, other: "GradedMatrix") -> "GradedMatrix":
        """``self @ other`` (apply ``other`` first)."""
        if other.target != self.source:
            raise ValueError("matrices are not composable")
        out: dict = {}
        for j, col in enumerate(other._cols):
            for k, q in col:
                for i, p in self._cols[k]:
                    key = (i, j)
                    prod = p * q
                    out[key] = out[key] + prod if key in out else prod
        return GradedMatrix(self.ring, other.source, self.target, out)

    __matmul__ = compose

    def hstack(self, other: "GradedMatrix") -> "GradedMatrix":
        if self.target != other.target:
            raise ValueError("targets differ")
        k = len(self.source)
        entries = dict(self.entries)
        entries.update({(i, j + k): p for (i, j), p in other.entries.items()})
        return GradedMatrix(self.ring, self.source + other.source, self.target, entries)

    def apply(self, vec) -> list[HomPoly]:
        """Image of an element given as one HomPoly per source summand."""
        out = [None] * len(self.target)
        for j, x in enumerate(vec):
            if not x:
                continue
            for i, p in self._cols[j]:
                prod = p * x
                out[i] = prod if out[i] is None else out[i] + prod
        deg = _vector_degree(self.source, vec)
        return [o if o is not None else self.ring.zero(deg + self.target.twists[i])
                for i, o in enumerate(out)]

    def realize(self, k: int) -> list[dict]:
        """Sparse field matrix of the degree-k piece, one dict per source basis element."""
        n = self.ring.n
        offsets, indices, _ = _layout(self.target.twists, n, k)
        cols = []
        for j, sj in enumerate(self.source.twists):
            entries = self._cols[j]
            for m in enumerate_monomials(n, k + sj):
                col = {}
                for i, p in entries:
                    off, idx = offsets[i], indices[i]
                    for mono, c in p.terms.items():
                        col[off + idx[mono_mul(mono, m)]] = c
                cols.append(col)
        return cols

    def __repr__(self):
        return f"GradedMatrix({len(self.target)}x{len(self.source)}, {len(self.entries)} nonzero)"


def _vector_degree(free: GradedFree, vec) -> int:
    for x, d in zip(vec, free.twists):
        if x is not None:
            return x.degree - d
    raise ValueError("cannot infer degree of an empty vector")


def realize_vector(ring: PolyRing, free: GradedFree, k: int, vec) -> dict:
    """Sparse coordinates of a degree-k element (one HomPoly per summand)."""
    offsets, indices, _ = _layout(free.twists, ring.n, k)
    out = {}
    for i, x in enumerate(vec):
        if x:
            if x.degree != k + free.twists[i]:
                raise ValueError(f"component {i} has degree {x.degree}, expected "
                                 f"{k + free.twists[i]}")
            for mono, c in x.terms.items():
                out[offsets[i] + indices[i][mono]] = c
    return out


@dataclass(frozen=True)
class DegreeWindow:
    lo: int
    hi: int

    def __post_init__(self):
        if self.lo > self.hi:
            raise ValueError(f"empty window [{self.lo}, {self.hi}]")

    def __iter__(self):
        return iter(range(self.lo, self.hi + 1))

    def __len__(self):
        return self.hi - self.lo + 1


class FPGradedModule:
    """``coker(rels)`` with ``rels.target == gens``."""

    __slots__ = ("ring", "gens", "rels", "_cache", "_lock")

    def __init__(self, ring: PolyRing, gens: GradedFree, rels: GradedMatrix | None = None):
        if rels is None:
            rels = GradedMatrix.zero(ring, GradedFree(()), gens)
        if rels.target != gens:
            raise ValueError("relation matrix must land in the generators")
        self.ring = ring
        self.gens = gens
        self.rels = rels
        self._cache: dict = {}
        self._lock = threading.Lock()

    @classmethod
    def free(cls, ring: PolyRing, twists) -> "FPGradedModule":
        return cls(ring, GradedFree(tuple(twists)))

    def __eq__(self, other):
        return (isinstance(other, FPGradedModule) and self.ring == other.ring
                and self.gens == other.gens and self.rels == other.rels)

    def __hash__(self):
        return hash((self.gens, self.rels))

    def __repr__(self):
        return f"FPGradedModule(twists={list(self.gens.twists)}, {len(self.rels.source)} relations)"

    def relation_echelon(self, k: int) -> FieldEchelon:
        """Echelon form of the relations realized in degree k (do not mutate)."""
        with self._lock:
            ech = self._cache.get(k)
        if ech is None:
            ech = FieldEchelon(self.ring.field)
            for c in self.rels.realize(k):
                ech.insert(c)
            with self._lock:
                self._cache[k] = ech
        return ech

    def component_dim(self, k: int) -> int:
        return self.gens.dim(self.ring.n, k) - self.relation_echelon(k).rank

    def default_window(self) -> DegreeWindow:
        degs = self.gens.generator_degrees() or [0]
        return DegreeWindow(min(degs) - 1, max(degs) + 6)


def component_dim(m: FPGradedModule, k: int) -> int:
    return m.component_dim(k)


class GradedModuleMap:
    """Degree-preserving map given on generators; checked for well-definedness."""

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: FPGradedModule, target: FPGradedModule, matrix: GradedMatrix,
                 check: bool = True):
        if matrix.source != source.gens or matrix.target != target.gens:
            raise ValueError("matrix does not match the generators of source and target")
        self.source, self.target, self.matrix = source, target, matrix
        if check:
            bad = first_ill_defined_relation(source, target, matrix)
            if bad is not None:
                raise IllDefinedMap(*bad)

    def __repr__(self):
        return f"GradedModuleMap({self.source!r} -> {self.target!r})"

    def realize(self, k: int) -> list[dict]:
        return self.matrix.realize(k)


def first_ill_defined_relation(source: FPGradedModule, target: FPGradedModule,
                               matrix: GradedMatrix):
    """(column, degree) of the first relation not mapped into the target relations."""
    rels = source.rels
    for r, sr in enumerate(rels.source.twists):
        c = -sr
        vec = [None] * len(source.gens)
        for i, p in rels.column(r):
            vec[i] = p
        vec = [v if v is not None else source.ring.zero(c + source.gens.twists[i])
               for i, v in enumerate(vec)]
        image = matrix.apply(vec) if len(source.gens) else []
        coords = realize_vector(source.ring, target.gens, c, image)
        if coords and not target.relation_echelon(c).contains(coords):
            return r, c
    return None


def identity_map(m: FPGradedModule) -> GradedModuleMap:
    return GradedModuleMap(m, m, GradedMatrix.identity(m.ring, m.gens), check=False)


def zero_map(source: FPGradedModule, target: FPGradedModule) -> GradedModuleMap:
    return GradedModuleMap(source, target, GradedMatrix.zero(source.ring, source.gens, target.gens),
                           check=False)


def compose(g: GradedModuleMap, f: GradedModuleMap) -> GradedModuleMap:
    """g after f."""
    if f.target != g.source:
        raise ValueError("maps are not composable")
    return GradedModuleMap(f.source, g.target, g.matrix.compose(f.matrix), check=False)


# -- constructions -------------------------------------------------------------


def twist(m: FPGradedModule, e: int) -> FPGradedModule:
    """Shift every twist by e, so the degree-k piece of the result is the degree-(k+e) piece of m."""
    gens = GradedFree(tuple(d + e for d in m.gens.twists), m.gens.labels)
    src = GradedFree(tuple(d + e for d in m.rels.source.twists))
    return FPGradedModule(m.ring, gens, GradedMatrix(m.ring, src, gens, m.rels.entries))


def direct_sum(m: FPGradedModule, n: FPGradedModule) -> FPGradedModule:
    _same_ring(m, n)
    gens = m.gens + n.gens
    src = m.rels.source + n.rels.source
    g, r = len(m.gens), len(m.rels.source)
    entries = dict(m.rels.entries)
    entries.update({(i + g, j + r): p for (i, j), p in n.rels.entries.items()})
    return FPGradedModule(m.ring, gens, GradedMatrix(m.ring, src, gens, entries))


def tensor(m: FPGradedModule, n: FPGradedModule) -> FPGradedModule:
    """Presentation of m (x) n: generators are pairs (i, j) in row-major order;
    relations are rels_m (x) gens_n followed by gens_m (x) rels_n."""
    _same_ring(m, n)
    ring = m.ring
    a, b = m.gens.twists, n.gens.twists
    nb = len(b)
    gens = GradedFree(tuple(x + y for x in a for y in b))
    src, entries = [], {}
    for r, sr in enumerate(m.rels.source.twists):
        for j, bj in enumerate(b):
            col = len(src)
            src.append(sr + bj)
            for i, p in m.rels.column(r):
                entries[(i * nb + j, col)] = p
    for i, ai in enumerate(a):
        for r, sr in enumerate(n.rels.source.twists):
            col = len(src)
            src.append(ai + sr)
            for j, p in n.rels.column(r):
                entries[(i * nb + j, col)] = p
    return FPGradedModule(ring, gens, GradedMatrix(ring, GradedFree(tuple(src)), gens, entries))


def cokernel(f: GradedModuleMap) -> FPGradedModule:
    """Target generators modulo the target relations and the image of f."""
    bad = first_ill_defined_relation(f.source, f.target, f.matrix)
    if bad is not None:
        raise IllDefinedMap(*bad)
    return FPGradedModule(f.target.ring, f.target.gens, f.target.rels.hstack(f.matrix))


def _same_ring(m, n):
    if m.ring != n.ring:
        raise ValueError("modules over different rings")


# -- verification ----------------------------------------------------------------


@dataclass(frozen=True)
class DegreeCheck:
    degree: int
    position: int
    dim: int
    image: int
    kernel: int
    is_complex: bool

    @property
    def exact(self) -> bool:
        return self.is_complex and self.image == self.kernel

    def as_dict(self) -> dict:
        return {"degree": self.degree, "position": self.position, "dim": self.dim,
                "image": self.image, "kernel": self.kernel, "exact": self.exact}


@dataclass(frozen=True)
class ExactnessReport:
    window: DegreeWindow
    checks: tuple

    @property
    def exact(self) -> bool:
        return all(c.exact for c in self.checks)

    @property
    def failures(self) -> list[DegreeCheck]:
        return [c for c in self.checks if not c.exact]

    @property
    def witness(self) -> tuple[int, int] | None:
        """(degree, position) of the first failure, if any."""
        bad = self.failures
        return (bad[0].degree, bad[0].position) if bad else None

    def __bool__(self):
        return self.exact


def _image_rank(target: FPGradedModule, k: int, cols) -> int:
    base = target.relation_echelon(k)
    ech = base.copy()
    for c in cols:
        ech.insert(c)
    return ech.rank - base.rank


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("QPNKIT_THREADS", "1")))
    except ValueError:
        return 1


def is_exact_window(complex_, window: DegreeWindow, require_complex: bool = True) -> ExactnessReport:
    """Check a sequence of maps M0 -> M1 -> ... -> Mr for exactness at M1..M(r-1).

    For every degree of the window and every interior position the composite
    must vanish and dim ker = dim im. A nonzero composite raises
    :class:`NotComplex` unless ``require_complex`` is False, in which case it is
    recorded as a failing check.
    """
    maps = list(complex_)
    for i in range(len(maps) - 1):
        if maps[i].target != maps[i + 1].source:
            raise ValueError(f"maps {i} and {i + 1} are not composable")
    composites = [compose(maps[i + 1], maps[i]) for i in range(len(maps) - 1)]

    def check_degree(k):
        out = []
        for pos in range(1, len(maps)):
            f, g = maps[pos - 1], maps[pos]
            mid = f.target
            comp_cols = composites[pos - 1].matrix.realize(k)
            ech = g.target.relation_echelon(k)
            ok = all(ech.contains(c) for c in comp_cols)
            if not ok and require_complex:
                raise NotComplex(pos, k)
            dim = mid.component_dim(k)
            image = _image_rank(mid, k, f.realize(k))
            kernel = dim - _image_rank(g.target, k, g.realize(k))
            out.append(DegreeCheck(k, pos, dim, image, kernel, ok))
        return out

    degrees = list(window)
    workers = _threads()
    if workers > 1 and len(degrees) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_degree = list(pool.map(check_degree, degrees))
    else:
        per_degree = [check_degree(k) for k in degrees]
    return ExactnessReport(window, tuple(c for chunk in per_degree for c in chunk))


def iso_table(f: GradedModuleMap, window: DegreeWindow) -> list[dict]:
    rows = []
    for k in window:
        src = f.source.component_dim(k)
        tgt = f.target.component_dim(k)
        img = _image_rank(f.target, k, f.realize(k))
        rows.append({"degree": k, "source": src, "target": tgt, "image": img,
                     "bijective": src == img == tgt})
    return rows


def is_iso_window(f: GradedModuleMap, window: DegreeWindow) -> bool:
    """Bijective in every degree of the window (bounded verdict)."""
    return all(r["bijective"] for r in iso_table(f, window))


def hilbert_table(m: FPGradedModule, window: DegreeWindow) -> list[tuple[int, int]]:
    return [(k, m.component_dim(k)) for k in window]

"""Section data (L, s) with L free of rank one, and the tensor functor it induces.

The functor sends a finitely presented graded module to the T-module obtained
by replacing every ``x_i`` by ``s_i`` in its presentation; each twist ``S(b)``
becomes a free rank-one T-module whose twist is only remembered as
bookkeeping. Right-exactness then holds by construction: the presentation of
a cokernel is the juxtaposition of the two matrices.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from ..errors import PreconditionNotGood
from ..exactlinalg import (
    DenseMatrix,
    PolyMatrix,
    column_span_equal,
    kernel_basis,
    pid_kernel_basis,
    rank,
    solve,
)
from ..grmod import FPGradedModule, GradedModuleMap, tensor
from ..koszulsym import truncation_presentation
from ..polyring import HomPoly, PolyRing, substitute
from .modules import ModuleMap, TModule, is_bijective, linearize, tensor_tmodules
from .rings import TargetRing


@dataclass(frozen=True)
class SectionData:
    ring: TargetRing
    sections: tuple

    def __post_init__(self):
        object.__setattr__(self, "sections", tuple(self.sections))
        if not self.sections:
            raise ValueError("need at least one section")

    @property
    def n(self) -> int:
        return len(self.sections) - 1

    def poly_ring(self) -> PolyRing:
        return PolyRing(self.ring.field, self.n)

    def substitute(self, p: HomPoly):
        return substitute(p, self.sections, self.ring)

    def render(self) -> list[str]:
        return [self.ring.render(s) for s in self.sections]


@dataclass(frozen=True)
class GoodEpiVerdict:
    epi: bool
    bezout: tuple | None  # a_i with sum a_i s_i = 1 when epi
    epi_witness: dict | None
    middle_exact: bool
    syzygy: tuple | None  # kernel element outside span K(s) when not middle exact

    @property
    def good(self) -> bool:
        return self.epi and self.middle_exact

    @property
    def verdict(self) -> str:
        if not self.epi:
            return "not_epi"
        return "good" if self.middle_exact else "not_middle_exact"

    def as_dict(self, ring: TargetRing) -> dict:
        out = {"verdict": self.verdict, "epi": self.epi, "middle_exact": self.middle_exact}
        if self.bezout is not None:
            out["bezout"] = [ring.render(a) for a in self.bezout]
        if self.epi_witness is not None:
            out["epi_witness"] = self.epi_witness
        if self.syzygy is not None:
            out["syzygy"] = [ring.render(a) for a in self.syzygy]
        return out


def koszul_columns(sd: SectionData) -> list[tuple]:
    """K(s): the column for i < j is s_i e_j - s_j e_i."""
    R, s = sd.ring, sd.sections
    cols = []
    for i, j in itertools.combinations(range(len(s)), 2):
        v = [R.zero] * len(s)
        v[j] = s[i]
        v[i] = R.neg(s[j])
        cols.append(tuple(v))
    return cols


def bezout_certificate(sd: SectionData):
    """(a_i) with sum a_i s_i = 1, or (None, witness)."""
    R, s = sd.ring, sd.sections
    if R.kind == "field":
        for i, x in enumerate(s):
            if x != 0:
                return tuple(R.inverse(x) if k == i else R.zero for k in range(len(s))), None
        return None, {"gcd": "0"}
    if R.kind == "univariate":
        g, coeffs = R.zero, []
        for x in s:
            g, u, v = g.xgcd(x)
            coeffs = [u * c for c in coeffs] + [v]
        if not g.is_unit():
            return None, {"gcd": g.render()}
        # xgcd returns a monic gcd, so g == 1 here
        return tuple(coeffs), None
    # finite-dimensional algebra: is 1 in the k-span of {s_i b_l}?
    basis = R.basis()
    cols = [R.coords(R.mul(x, b)) for x in s for b in basis]
    A = DenseMatrix.from_columns(R.field, cols, R.k_dim)
    alpha = solve(A, R.coords(R.one))
    if alpha is None:
        return None, {"ideal_dim": rank(A)}
    out = []
    for i in range(len(s)):
        a = R.zero
        for l, b in enumerate(basis):
            c = alpha[i * len(basis) + l]
            if c != 0:
                a = R.add(a, R.mul(R.from_scalar(c), b))
        out.append(a)
    return tuple(out), None


def _syzygy_witness(sd: SectionData):
    """None when ker(s) equals span K(s); otherwise a kernel element outside the span."""
    R, s = sd.ring, sd.sections
    K = koszul_columns(sd)
    N = len(s)
    F = R.field
    if R.kind == "univariate":
        kernel = pid_kernel_basis(F, [{0: x} if x else {} for x in s], 1)
        kmat = PolyMatrix.from_columns(F, [[v.get(i, R.zero) for i in range(N)] for v in kernel], N)
        smat = PolyMatrix.from_columns(F, [list(c) for c in K], N)
        if column_span_equal(kmat, smat):
            return None
        span = TModule(R, N, tuple(K))
        for v in kernel:
            vec = tuple(v.get(i, R.zero) for i in range(N))
            if not span.contains(vec):
                return vec
        raise AssertionError("spans differ but every kernel vector lies in span K(s)")
    # field or findim: compare k-linear spans
    dim = R.k_dim
    row_cols = []
    for i in range(N):
        row_cols.extend(linearize(R, [s[i]]))
    # row map T^N -> T linearized: column (i, l) = coords(s_i b_l)
    A = DenseMatrix.from_columns(F, [[c.get(r, F.zero) for r in range(dim)] for c in row_cols], dim)
    ker = kernel_basis(A)
    kcols = [ker.column(j) for j in range(ker.cols)]
    span_cols = [[c.get(r, F.zero) for r in range(N * dim)]
                 for col in K for c in linearize(R, col)]
    kmat = DenseMatrix.from_columns(F, kcols, N * dim)
    smat = DenseMatrix.from_columns(F, span_cols, N * dim)
    if column_span_equal(kmat, smat):
        return None
    span = TModule(R, N, tuple(K))
    basis = R.basis()
    for v in kcols:
        vec = []
        for i in range(N):
            x = R.zero
            for l, b in enumerate(basis):
                c = v[i * dim + l]
                if c != 0:
                    x = R.add(x, R.mul(R.from_scalar(c), b))
            vec.append(x)
        if not span.contains(tuple(vec)):
            return tuple(vec)
    raise AssertionError("spans differ but every kernel vector lies in span K(s)")


def check_good_epi(sd: SectionData) -> GoodEpiVerdict:
    """Is ``T^{C(n+1,2)} --K(s)--> T^{n+1} --(s)--> T --> 0`` exact?

    epi: the sections generate the unit ideal (Bezout certificate).
    middle_exact: the kernel of the row (s_0 ... s_n) equals the span of K(s).
    """
    bezout, witness = bezout_certificate(sd)
    syzygy = _syzygy_witness(sd)
    return GoodEpiVerdict(bezout is not None, bezout, witness, syzygy is None, syzygy)


# -- evaluation of the functor -------------------------------------------------------


def _check_ring(sd: SectionData, ring: PolyRing):
    if ring.n != sd.n:
        raise ValueError(f"module over {ring.n + 1} variables, sections have {sd.n + 1}")
    if ring.field != sd.ring.field:
        raise ValueError("module and target ring have different coefficient fields")


def evaluate_object(sd: SectionData, m: FPGradedModule) -> TModule:
    _check_ring(sd, m.ring)
    R = sd.ring
    rels = []
    for j in range(len(m.rels.source)):
        v = [R.zero] * len(m.gens)
        for i, p in m.rels.column(j):
            v[i] = sd.substitute(p)
        rels.append(tuple(v))
    return TModule(R, len(m.gens), tuple(rels), m.gens.twists)


def evaluate_map(sd: SectionData, f: GradedModuleMap) -> ModuleMap:
    """Substitute into the generator matrix; well-defined because substitution
    is a ring map, so images of relations stay in the relation span."""
    _check_ring(sd, f.source.ring)
    src, tgt = evaluate_object(sd, f.source), evaluate_object(sd, f.target)
    R = sd.ring
    cols = []
    for j in range(len(f.source.gens)):
        v = [R.zero] * len(f.target.gens)
        for i, p in f.matrix.column(j):
            v[i] = sd.substitute(p)
        cols.append(tuple(v))
    return ModuleMap(src, tgt, cols, check=False)


def section_row(sd: SectionData, d: int) -> ModuleMap:
    """The evaluated map sum_{p in H_d} S(0) e_p -> S(d), e_p -> p."""
    t = truncation_presentation(sd.poly_ring(), 0, d)
    return evaluate_map(sd, t.inclusion)


def require_good(sd: SectionData) -> GoodEpiVerdict:
    v = check_good_epi(sd)
    if not v.good:
        raise PreconditionNotGood(f"section data is not a good epimorphism ({v.verdict})")
    return v


def check_truncation_iso(sd: SectionData, d: int, a: int) -> bool:
    """Is the evaluated inclusion ``S(d)_{>=a} -> S(d)`` bijective? Exact verdict."""
    require_good(sd)
    if a + d < 0:
        return True
    t = truncation_presentation(sd.poly_ring(), a, d)
    return is_bijective(evaluate_map(sd, t.inclusion))


def check_substituted_exactness(sd: SectionData, m: int) -> bool:
    """Is ``T^{rels} -> T^{H_m} -> T -> 0``, the substituted truncation
    sequence for (a, d) = (0, m), exact? Checks the composite, then
    surjectivity and kernel = image via :func:`is_bijective` on the cokernel."""
    t = truncation_presentation(sd.poly_ring(), 0, m)
    f = evaluate_map(sd, t.inclusion)
    R = sd.ring
    for rel in f.source.relations:
        if not all(R.is_zero(x) for x in f.apply(rel)):
            return False
    return is_bijective(f)


def comparison_map(sd: SectionData, m: FPGradedModule, n: FPGradedModule) -> ModuleMap:
    """F(m) (x) F(n) -> F(m (x) n), the identity on generator pairs."""
    left = tensor_tmodules(evaluate_object(sd, m), evaluate_object(sd, n))
    right = evaluate_object(sd, tensor(m, n))
    return ModuleMap.identity(left, right)


def check_monoidality(sd: SectionData, m: FPGradedModule, n: FPGradedModule) -> bool:
    return is_bijective(comparison_map(sd, m, n))


def verify_relation(sd: SectionData, rel: HomPoly) -> bool:
    if rel.ring.n != sd.n:
        raise ValueError(f"relation in {rel.ring.n + 1} variables, sections have {sd.n + 1}")
    return sd.ring.is_zero(sd.substitute(rel))


# -- morphism reconstruction -------------------------------------------------------


@dataclass(frozen=True)
class Chart:
    index: int
    coordinates: tuple  # (s_j, s_i) pairs: s_j / s_i where s_i is invertible


@dataclass(frozen=True)
class ChartMap:
    ring: TargetRing
    sections: tuple
    charts: tuple
    cover_certificate: tuple

    def verify_cover(self) -> bool:
        R = self.ring
        return R.eq(R.dot(self.cover_certificate, self.sections), R.one)

    @property
    def point(self) -> tuple | None:
        """Homogeneous coordinates [s_0 : ... : s_n] when the target is a field."""
        return self.sections if self.ring.kind == "field" else None

    def as_dict(self) -> dict:
        R = self.ring
        out = {"charts": [{"index": c.index,
                           "coordinates": [[R.render(a), R.render(b)] for a, b in c.coordinates]}
                          for c in self.charts],
               "cover_certificate": [R.render(a) for a in self.cover_certificate]}
        if self.point is not None:
            out["point"] = "[" + " : ".join(R.render(x) for x in self.point) + "]"
        return out


def reconstruct_morphism(sd: SectionData) -> ChartMap:
    """The morphism Spec T -> P^n classified by (L, s).

    Charts are the loci D(s_i) for the indices carrying a nonzero Bezout
    coefficient; they cover Spec T because sum a_i s_i = 1. On D(s_i) the
    morphism is [s_0/s_i : ... : s_n/s_i], stored as unevaluated pairs.
    """
    v = require_good(sd)
    R, s = sd.ring, sd.sections
    charts = tuple(Chart(i, tuple((x, s[i]) for x in s))
                   for i, a in enumerate(v.bezout) if not R.is_zero(a))
    return ChartMap(R, s, charts, v.bezout)

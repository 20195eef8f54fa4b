"""Explicit presentations: truncated twists and symmetric powers.

The truncation ``S(d)_{>=a}`` (for ``a + d >= 0``) is presented as

    S(-a-1)^{H_{a+d-1} x pairs}  --K-->  S(-a)^{H_{a+d}}  --incl-->  S(d)

with ``e_p -> p`` on generators and the relation column for ``(q, i, j)``,
``i < j``, equal to ``x_i e_{x_j q} - x_j e_{x_i q}``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import IncompatibleTuple
from .grmod import (
    FPGradedModule,
    GradedFree,
    GradedMatrix,
    GradedModuleMap,
    identity_map,
    realize_vector,
)
from .polyring import (
    HomPoly,
    Monomial,
    PolyRing,
    enumerate_monomials,
    mono_div,
    mono_mul,
    monomial_index,
    var_monomial,
)


@dataclass(frozen=True)
class TruncationPresentation:
    ring: PolyRing
    a: int
    d: int
    module: FPGradedModule
    inclusion: GradedModuleMap
    gen_labels: tuple  # monomials p in H_{a+d}
    rel_labels: tuple  # triples (q, i, j)

    def free_sequence(self) -> tuple[GradedModuleMap, GradedModuleMap]:
        """The two maps relations -> generators -> S(d), between free modules."""
        ring = self.ring
        rel_free = FPGradedModule(ring, self.module.rels.source)
        gen_free = FPGradedModule(ring, self.module.gens)
        left = GradedModuleMap(rel_free, gen_free, self.module.rels, check=False)
        right = GradedModuleMap(gen_free, self.inclusion.target, self.inclusion.matrix, check=False)
        return left, right

    def truncated_dim(self, k: int) -> int:
        """dim of (S(d)_{>=a})_k."""
        if self.a + self.d < 0 or k >= self.a:
            return self.inclusion.target.component_dim(k)
        return 0


def koszul_triples(n: int, m: int) -> list[tuple[Monomial, int, int]]:
    """Relation labels (q, i, j): q in H_{m-1} (lex order), then pairs i < j."""
    pairs = list(itertools.combinations(range(n + 1), 2))
    return [(q, i, j) for q in enumerate_monomials(n, m - 1) for (i, j) in pairs]


def truncation_presentation(ring: PolyRing, a: int, d: int) -> TruncationPresentation:
    """Labeled presentation of ``S(d)_{>=a}`` with its inclusion into ``S(d)``.

    For ``a + d < 0`` the truncation is all of ``S(d)`` and the inclusion is
    the identity.
    """
    n = ring.n
    target = FPGradedModule.free(ring, (d,))
    m = a + d
    if m < 0:
        return TruncationPresentation(ring, a, d, target, identity_map(target), (), ())
    gen_labels = enumerate_monomials(n, m)
    idx = monomial_index(n, m)
    gens = GradedFree((-a,) * len(gen_labels), tuple(gen_labels))
    triples = koszul_triples(n, m)
    src = GradedFree((-a - 1,) * len(triples), tuple(triples))
    entries = {}
    for col, (q, i, j) in enumerate(triples):
        entries[(idx[mono_mul(q, var_monomial(n, j))], col)] = ring.var(i)
        entries[(idx[mono_mul(q, var_monomial(n, i))], col)] = -ring.var(j)
    module = FPGradedModule(ring, gens, GradedMatrix(ring, src, gens, entries))
    incl = GradedMatrix(ring, gens, target.gens,
                        {(0, c): ring.monomial(p) for c, p in enumerate(gen_labels)})
    inclusion = GradedModuleMap(module, target, incl, check=False)
    return TruncationPresentation(ring, a, d, module, inclusion, tuple(gen_labels), tuple(triples))


# -- the extension of a compatible tuple to a graded map ------------------------


@dataclass(frozen=True)
class SectionTuple:
    """Values m_p in the degree-a component of a target module, one per p in H_{a+d}.

    Each value is an element of the target's generator module: one HomPoly per
    generator, the i-th of degree ``a + twist_i``.
    """

    a: int
    d: int
    values: dict  # Monomial -> tuple of HomPoly


def _vec_sub(u, v):
    return [x - y for x, y in zip(u, v)]


def _vec_scale(p: HomPoly, v):
    return [p * x for x in v]


def incompatibility(t: TruncationPresentation, target: FPGradedModule, tup: SectionTuple):
    """First (q, i, j) in label order with x_i m_{x_j q} != x_j m_{x_i q} in the target, or None."""
    ring = t.ring
    n = ring.n
    ech = target.relation_echelon(t.a + 1)
    for q, i, j in t.rel_labels:
        lhs = _vec_scale(ring.var(i), tup.values[mono_mul(q, var_monomial(n, j))])
        rhs = _vec_scale(ring.var(j), tup.values[mono_mul(q, var_monomial(n, i))])
        diff = realize_vector(ring, target.gens, t.a + 1, _vec_sub(lhs, rhs))
        if diff and not ech.contains(diff):
            return q, i, j
    return None


def _check_tuple(t: TruncationPresentation, target: FPGradedModule, tup: SectionTuple) -> None:
    if t.a + t.d < 0:
        raise ValueError("the extension property needs a + d >= 0")
    if (tup.a, tup.d) != (t.a, t.d):
        raise ValueError("tuple and presentation disagree on (a, d)")
    missing = [p for p in t.gen_labels if p not in tup.values]
    if missing:
        raise ValueError(f"tuple has no value for monomials {missing[:3]}")
    for p in t.gen_labels:
        v = tup.values[p]
        if len(v) != len(target.gens):
            raise ValueError("tuple value has the wrong number of components")
        for x, tw in zip(v, target.gens.twists):
            if x and x.degree != t.a + tw:
                raise ValueError(f"value for {p} does not lie in degree {t.a}")
    bad = incompatibility(t, target, tup)
    if bad is not None:
        raise IncompatibleTuple(*bad)


def phi_extend(t: TruncationPresentation, target: FPGradedModule, tup: SectionTuple) -> GradedModuleMap:
    """The unique graded map from the truncation sending e_p to m_p."""
    _check_tuple(t, target, tup)
    ring = t.ring
    entries = {}
    for c, p in enumerate(t.gen_labels):
        for i, x in enumerate(tup.values[p]):
            if x:
                entries[(i, c)] = x
    matrix = GradedMatrix(ring, t.module.gens, target.gens, entries)
    # compatibility is exactly well-definedness on the Koszul relations
    return GradedModuleMap(t.module, target, matrix, check=False)


def evaluate_phi_recursive(t: TruncationPresentation, tup: SectionTuple, target: FPGradedModule,
                           mono: Monomial) -> list[HomPoly]:
    """phi(mono) by peeling the smallest-index variable until degree a + d is reached.

    ``mono`` has degree k + d with k >= a; the result is a degree-k element of
    the target, given on its generators.
    """
    _check_tuple(t, target, tup)
    m = t.a + t.d
    mono = tuple(mono)
    if sum(mono) < m:
        raise ValueError(f"monomial degree {sum(mono)} is below a + d = {m}")
    ring = t.ring
    factors = []
    while sum(mono) > m:
        s = next(i for i, v in enumerate(mono) if v)
        factors.append(s)
        mono = mono[:s] + (mono[s] - 1,) + mono[s + 1:]
    vec = list(tup.values[mono])
    for s in reversed(factors):
        vec = _vec_scale(ring.var(s), vec)
    return vec


def evaluate_phi_matrix(t: TruncationPresentation, phi: GradedModuleMap, mono: Monomial) -> list[HomPoly]:
    """phi(mono) through the presentation: write mono = p * r with p the
    lex-first divisor in H_{a+d} and apply the matrix column of e_p to r."""
    mono = tuple(mono)
    for c, p in enumerate(t.gen_labels):
        r = mono_div(mono, p)
        if r is not None:
            vec = [None] * len(t.gen_labels)
            deg_r = sum(r)
            ring = t.ring
            for k in range(len(vec)):
                vec[k] = ring.monomial(r) if k == c else ring.zero(deg_r)
            return phi.matrix.apply(vec)
    raise ValueError(f"{mono} is not in the truncation")


# -- symmetric powers ------------------------------------------------------------


def sym_free(f: GradedFree, m: int) -> GradedFree:
    """Sym^m of a twisted free module: one summand per degree-m multiset of
    generators (sorted index tuples, lex order), twisted by the sum of twists."""
    if m < 0:
        return GradedFree(())
    labels = tuple(itertools.combinations_with_replacement(range(len(f)), m))
    return GradedFree(tuple(sum(f.twists[i] for i in mu) for mu in labels), labels)


def sym_module(mod: FPGradedModule, k: int) -> FPGradedModule:
    """Sym^k(coker(X -> Y)) = coker(X (x) Sym^{k-1}(Y) -> Sym^k(Y)).

    The column for (relation r, multiset mu) is sum_i R[i, r] e_{mu + {i}}.
    """
    ring = mod.ring
    Y = mod.gens
    target = sym_free(Y, k)
    if k <= 0:
        return FPGradedModule(ring, target)
    index = {mu: c for c, mu in enumerate(target.labels)}
    lower = sym_free(Y, k - 1)
    X = mod.rels.source
    src, labels, entries = [], [], {}
    for r, xr in enumerate(X.twists):
        column = mod.rels.column(r)
        for mu, tmu in zip(lower.labels, lower.twists):
            col = len(src)
            src.append(xr + tmu)
            labels.append((r, mu))
            for i, p in column:
                row = index[tuple(sorted(mu + (i,)))]
                entries[(row, col)] = entries[(row, col)] + p if (row, col) in entries else p
    rels = GradedMatrix(ring, GradedFree(tuple(src), tuple(labels)), target, entries)
    return FPGradedModule(ring, target, rels)

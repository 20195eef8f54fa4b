import random
from math import comb

import pytest

from qpnkit.errors import DegreeError, IllDefinedMap, NotComplex
from qpnkit.exactlinalg import GF, QQ
from qpnkit.grmod import (
    DegreeWindow,
    FPGradedModule,
    GradedFree,
    GradedMatrix,
    GradedModuleMap,
    cokernel,
    component_dim,
    direct_sum,
    hilbert_table,
    identity_map,
    is_exact_window,
    is_iso_window,
    tensor,
    twist,
    zero_map,
)
from qpnkit.koszulsym import truncation_presentation
from qpnkit.polyring import PolyRing
from qpnkit.randomized import random_cokernel

S1 = PolyRing(QQ, 1)
W = DegreeWindow(-2, 6)


def coker_x0(ring=S1):
    src, tgt = FPGradedModule.free(ring, (-1,)), FPGradedModule.free(ring, (0,))
    f = GradedModuleMap(src, tgt, GradedMatrix.from_rows(ring, src.gens, tgt.gens, [["x0"]]))
    return f, cokernel(f)


def dims(m, window=W):
    return [component_dim(m, k) for k in window]


def test_component_dim_examples():
    assert component_dim(FPGradedModule.free(S1, (1,)), 0) == 2
    for n in range(3):
        ring = PolyRing(QQ, n)
        for d in range(-2, 3):
            assert component_dim(FPGradedModule.free(ring, (d,)), -d - 1) == 0
    assert component_dim(coker_x0()[1], 3) == 1


def test_twist():
    m = coker_x0()[1]
    assert twist(FPGradedModule.free(S1, (2,)), 3) == FPGradedModule.free(S1, (5,))
    assert twist(twist(m, 1), 2) == twist(m, 3)
    assert twist(m, 0) == m
    for e in (-2, 1, 3):
        assert all(component_dim(twist(m, e), k) == component_dim(m, k + e) for k in W)


def test_tensor_examples():
    for a in (-1, 0, 2):
        for b in (-2, 1):
            assert tensor(FPGradedModule.free(S1, (a,)), FPGradedModule.free(S1, (b,))) \
                == FPGradedModule.free(S1, (a + b,))
    m = coker_x0()[1]
    unit = FPGradedModule.free(S1, (0,))
    assert tensor(m, unit) == m
    mm = tensor(m, m)
    assert dims(mm, DegreeWindow(0, 6)) == dims(m, DegreeWindow(0, 6))


def test_direct_sum():
    s = direct_sum(FPGradedModule.free(S1, (1,)), FPGradedModule.free(S1, (-1,)))
    assert s.gens.twists == (1, -1)
    m = coker_x0()[1]
    zero = FPGradedModule(S1, GradedFree(()))
    assert direct_sum(m, zero) == m
    rng = random.Random(3)
    ring = PolyRing(GF(7), 2)
    for _ in range(10):
        a, b = random_cokernel(rng, ring), random_cokernel(rng, ring)
        s = direct_sum(a, b)
        assert all(s.component_dim(k) == a.component_dim(k) + b.component_dim(k) for k in W)


def test_cokernel_examples():
    f, m = coker_x0()
    assert m.rels.entries == {(0, 0): S1.var(0)}
    assert all(d == 0 for d in dims(cokernel(identity_map(m))))
    zero = FPGradedModule(S1, GradedFree(()))
    assert cokernel(zero_map(zero, m)) .component_dim(2) == m.component_dim(2)
    assert dims(cokernel(zero_map(zero, m))) == dims(m)


def test_degree_error_reports_position():
    a, b = GradedFree((0, 0)), GradedFree((0, 1))
    with pytest.raises(DegreeError) as exc:
        GradedMatrix.from_rows(S1, a, b, [["0", "0"], ["x0", "x0^2"]])
    assert (exc.value.row, exc.value.col) == (1, 1)


def test_ill_defined_map_detected():
    _, m = coker_x0()
    free = FPGradedModule.free(S1, (0,))
    # the identity on generators S/(x0) -> S does not respect the relation x0
    with pytest.raises(IllDefinedMap):
        GradedModuleMap(m, free, GradedMatrix.identity(S1, m.gens))
    with pytest.raises(IllDefinedMap):
        cokernel(GradedModuleMap(m, free, GradedMatrix.identity(S1, m.gens), check=False))


def test_exact_window_identity():
    _, m = coker_x0()
    zero = FPGradedModule(S1, GradedFree(()))
    seq = [zero_map(zero, m), identity_map(m), zero_map(m, zero)]
    assert is_exact_window(seq, W).exact


def test_exact_window_truncation_example():
    t = truncation_presentation(S1, 0, 1)
    left, right = t.free_sequence()
    rep = is_exact_window([left, right], DegreeWindow(-1, 6))
    assert rep.exact
    c1 = next(c for c in rep.checks if c.degree == 1)
    assert (c1.dim, c1.image, c1.kernel) == (4, 1, 1)


def _flip_first_entry(t):
    left, right = t.free_sequence()
    key = min(left.matrix.entries)
    entries = dict(left.matrix.entries)
    entries[key] = -entries[key]
    flipped = GradedMatrix(left.matrix.ring, left.matrix.source, left.matrix.target, entries)
    return GradedModuleMap(left.source, left.target, flipped, check=False), right


def test_mutated_koszul_entry_is_detected():
    t = truncation_presentation(S1, 0, 1)
    left, right = _flip_first_entry(t)
    with pytest.raises(NotComplex):
        is_exact_window([left, right], DegreeWindow(-1, 6))
    rep = is_exact_window([left, right], DegreeWindow(-1, 6), require_complex=False)
    assert not rep.exact and rep.witness is not None
    assert rep.witness[0] == 1


def test_is_iso_window_examples():
    _, m = coker_x0()
    assert is_iso_window(identity_map(m), W)
    f, _ = coker_x0()
    assert not is_iso_window(f, DegreeWindow(0, 0))
    incl = truncation_presentation(S1, 0, 1).inclusion
    assert not is_iso_window(incl, DegreeWindow(-1, -1))
    assert is_iso_window(incl, DegreeWindow(0, 6))


def test_hilbert_table():
    S = FPGradedModule.free(S1, (0,))
    assert [d for _, d in hilbert_table(S, DegreeWindow(0, 3))] == [1, 2, 3, 4]
    for n in (1, 2):
        ring = PolyRing(QQ, n)
        for a, d in [(0, 1), (1, 0), (2, -1), (-1, 2)]:
            t = truncation_presentation(ring, a, d)
            for k in range(a - 2, a + 4):
                want = comb(n + k + d, n) if k >= a and k + d >= 0 else 0
                assert t.module.component_dim(k) == want == t.truncated_dim(k)


def test_threads_do_not_change_the_verdict(monkeypatch):
    ring = PolyRing(GF(7), 2)
    t = truncation_presentation(ring, 1, 1)
    seq = t.free_sequence()
    single = is_exact_window(seq, DegreeWindow(0, 7))
    monkeypatch.setenv("QPNKIT_THREADS", "4")
    multi = is_exact_window(truncation_presentation(ring, 1, 1).free_sequence(), DegreeWindow(0, 7))
    assert single == multi and single.exact

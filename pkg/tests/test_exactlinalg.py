import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from qpnkit.exactlinalg import (
    GF,
    QQ,
    DenseMatrix,
    PolyMatrix,
    UPoly,
    cokernel_type,
    column_span_equal,
    field_from_spec,
    invariant_factors,
    kernel_basis,
    pid_kernel_basis,
    rank,
    smith_normal_form,
    solve,
)

small = st.integers(-4, 4)


def dense(field, rows):
    return DenseMatrix.from_rows(field, rows)


# -- fields -------------------------------------------------------------------------


def test_field_spec_invariants():
    assert field_from_spec("rationals") is QQ
    assert field_from_spec("prime-field", 7) == GF(7)
    with pytest.raises(ValueError):
        field_from_spec("rationals", 5)
    with pytest.raises(ValueError):
        GF(9)
    with pytest.raises(ValueError):
        GF(2 ** 31 + 11)  # prime-sized but beyond 31 bits


def test_prime_field_arithmetic():
    F = GF(7)
    assert F.mul(3, 5) == 1
    assert F.inv(3) == 5
    assert F.parse("1/2") == 4
    assert F(-1) == 6


def test_rationals_are_exact_for_large_values():
    big = Fraction(10 ** 40 + 1, 3)
    assert QQ.mul(big, QQ.inv(big)) == 1


# -- dense linear algebra ----------------------------------------------------------------


def test_rank_examples():
    assert rank(DenseMatrix.identity(QQ, 2)) == 2
    assert rank(dense(QQ, [[1, 2], [2, 4]])) == 1
    assert rank(dense(GF(2), [[1, 1], [1, 1]])) == 1


def test_kernel_examples():
    k = kernel_basis(dense(QQ, [[0, 0]]))
    assert (k.rows, k.cols) == (2, 2) and rank(k) == 2
    k = kernel_basis(dense(QQ, [[1, 2]]))
    assert k.cols == 1
    v = k.column(0)
    assert v[0] == -2 * v[1] and v[1] != 0
    assert kernel_basis(dense(QQ, [[1, 0], [0, 1]])).cols == 0


matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=r, max_size=r)))


@given(matrices)
@settings(max_examples=60, deadline=None)
def test_rank_matches_sympy_and_rank_nullity(rows):
    m = dense(QQ, rows)
    assert rank(m) == sympy.Matrix(rows).rank()
    k = kernel_basis(m)
    assert rank(m) + k.cols == m.cols
    assert (m @ k).is_zero() if k.cols else True


@given(matrices)
@settings(max_examples=40, deadline=None)
def test_rank_independent_of_column_order(rows):
    for field in (QQ, GF(7)):
        m = dense(field, rows)
        perm = list(reversed(range(m.cols)))
        m2 = dense(field, [[r[j] for j in perm] for r in rows])
        assert rank(m) == rank(m2)


def test_solve():
    m = dense(QQ, [[1, 1], [1, -1]])
    assert solve(m, [2, 0]) == [1, 1]
    assert solve(dense(QQ, [[1, 1], [1, 1]]), [1, 0]) is None


# -- univariate polynomials -------------------------------------------------------------


def up(*coeffs, field=QQ):
    return UPoly(field, [field(c) for c in coeffs])


upolys = st.lists(small, max_size=5).map(lambda cs: up(*cs))


@given(upolys, upolys)
@settings(max_examples=80, deadline=None)
def test_divmod_and_xgcd(a, b):
    if b:
        q, r = divmod(a, b)
        assert q * b + r == a
        assert r.degree < b.degree
    g, u, v = a.xgcd(b)
    assert u * a + v * b == g
    if a or b:
        assert g.lead == 1 and g.divides(a) and g.divides(b)


def test_parse_render_roundtrip():
    for text in ["t^2 - 1", "-t + 1", "1/2*t^3 + t", "0", "7"]:
        p = UPoly.parse(QQ, text)
        assert UPoly.parse(QQ, p.render()) == p
    assert UPoly.parse(QQ, "t^2 - 1") == up(-1, 0, 1)


# -- Smith normal form ---------------------------------------------------------------------


def _minors_gcd(a: PolyMatrix, k: int) -> UPoly:
    """Determinantal divisor: monic gcd of all k x k minors (independent oracle)."""
    g = UPoly(a.field)
    for rows in itertools.combinations(range(a.nrows), k):
        for cols in itertools.combinations(range(a.ncols), k):
            sub = PolyMatrix.from_rows(a.field, [[a[i, j] for j in cols] for i in rows])
            g = g.gcd(sub.det())
    return g


def _oracle_factors(a: PolyMatrix) -> list:
    out, prev = [], UPoly.constant(a.field, 1)
    for k in range(1, min(a.nrows, a.ncols) + 1):
        dk = _minors_gcd(a, k)
        if not dk:
            break
        out.append((dk // prev).monic())
        prev = dk
    return out


def _check_smith(a: PolyMatrix):
    sd = smith_normal_form(a)
    assert sd.left @ a @ sd.right == sd.diagonal_matrix(a.nrows, a.ncols)
    assert sd.left.det().is_unit() and sd.right.det().is_unit()
    nz = [d for d in sd.diag if d]
    for d in nz:
        assert d.lead == 1
    for x, y in zip(sd.diag, sd.diag[1:]):
        assert x.divides(y)
    return sd


def test_smith_examples():
    t = UPoly.gen(QQ)
    one, zero = UPoly.constant(QQ, 1), UPoly(QQ)
    sd = _check_smith(PolyMatrix.from_rows(QQ, [[t, zero], [zero, t * t]]))
    assert sd.invariant_factors == [t, t * t]
    sd = _check_smith(PolyMatrix.from_rows(QQ, [[t, one]]))
    assert sd.invariant_factors == [one]
    sd = _check_smith(PolyMatrix.from_rows(QQ, [[t - 1, zero], [zero, t + 1]]))
    assert sd.invariant_factors == [one, t * t - 1]


poly_matrices = st.integers(1, 3).flatmap(
    lambda r: st.integers(1, 3).flatmap(
        lambda c: st.lists(st.lists(st.lists(st.integers(-2, 2), max_size=3), min_size=c, max_size=c),
                           min_size=r, max_size=r)))


@given(poly_matrices)
@settings(max_examples=60, deadline=None)
def test_smith_against_determinantal_divisors(cells):
    for field in (QQ, GF(7)):
        a = PolyMatrix.from_rows(field, [[UPoly(field, [field(c) for c in e]) for e in row]
                                         for row in cells])
        sd = _check_smith(a)
        expected = _oracle_factors(a)
        assert sd.invariant_factors == expected
        # the sparse diagonalization used by the verdicts agrees
        assert invariant_factors(a) == expected


def test_cokernel_type():
    t = UPoly.gen(QQ)
    free, tors = cokernel_type(QQ, [{0: t}], 2)
    assert free == 1 and tors == [t]
    assert cokernel_type(QQ, [{0: t}, {0: UPoly.constant(QQ, 1)}], 1) == (0, [])
    assert cokernel_type(QQ, [], 2) == (2, [])


def test_column_span_examples():
    t = UPoly.gen(QQ)
    z = UPoly(QQ)
    a = PolyMatrix.from_columns(QQ, [[t, z], [z, t]], 2)
    b = PolyMatrix.from_columns(QQ, [[t, t], [z, t]], 2)
    assert column_span_equal(a, b)
    assert not column_span_equal(PolyMatrix.from_columns(QQ, [[t, z]], 2), a)
    assert column_span_equal(a, a)


@given(poly_matrices, poly_matrices)
@settings(max_examples=40, deadline=None)
def test_column_span_is_symmetric_and_detects_extra_columns(c1, c2):
    F = GF(7)

    def mk(cells):
        return PolyMatrix.from_rows(F, [[UPoly(F, [F(c) for c in e]) for e in row] for row in cells])

    a = mk(c1)
    assert column_span_equal(a, a)
    if len(c1) == len(c2):
        b = mk(c2)
        assert column_span_equal(a, b) == column_span_equal(b, a)
        ab = a.hstack(b)
        # span(a) == span([a | b]) iff b lies in span(a); compare via invariants
        same = cokernel_type(F, a.sparse_columns(), a.nrows) == cokernel_type(F, ab.sparse_columns(), a.nrows)
        assert column_span_equal(a, ab) == same


def test_pid_kernel_basis():
    t = UPoly.gen(QQ)
    one = UPoly.constant(QQ, 1)
    cols = [{0: one}, {0: t}, {0: t * t}]
    ker = pid_kernel_basis(QQ, cols, 1)
    assert len(ker) == 2
    for v in ker:
        total = UPoly(QQ)
        for j, x in v.items():
            total = total + cols[j].get(0, UPoly(QQ)) * x
        assert not total


def test_dense_span_equal():
    a = dense(QQ, [[1, 0], [0, 1]])
    b = dense(QQ, [[1, 1], [1, -1]])
    assert column_span_equal(a, b)
    assert not column_span_equal(dense(QQ, [[1], [0]]), a)


@given(poly_matrices)
@settings(max_examples=40, deadline=None)
def test_smith_against_sympy(cells):
    from sympy import GF as SGF
    from sympy import QQ as SQQ
    from sympy import Matrix, Poly, symbols
    from sympy.matrices.normalforms import smith_normal_form as sympy_snf

    x = symbols("t")
    for field, dom in ((QQ, SQQ[x]), (GF(7), SGF(7)[x])):
        rows = [[sum(c * x ** k for k, c in enumerate(e)) for e in row] for row in cells]
        diag = sympy_snf(Matrix(rows), domain=dom)
        expected = []
        for i in range(min(diag.shape)):
            p = Poly(diag[i, i], x, domain=dom.domain)
            if not p.is_zero:
                cs = [int(c) if field is not QQ else c for c in reversed(p.monic().all_coeffs())]
                expected.append(UPoly(field, [field(c) for c in cs]))
        a = PolyMatrix.from_rows(field, [[UPoly(field, [field(c) for c in e]) for e in row] for row in cells])
        assert invariant_factors(a) == expected

"""Matrices over k[t]: Smith normal form, invariant factors, spans and kernels."""

from __future__ import annotations

from dataclasses import dataclass

from .dense import DenseMatrix
from .echelon import FieldEchelon, PIDEchelon
from .field import Field
from .upoly import UPoly


@dataclass(frozen=True)
class PolyMatrix:
    field: Field
    nrows: int
    ncols: int
    rows: tuple  # tuple of tuples of UPoly

    @classmethod
    def from_rows(cls, field: Field, rows, ncols: int | None = None) -> "PolyMatrix":
        conv = [[_as_upoly(field, x) for x in r] for r in rows]
        if ncols is None:
            ncols = len(conv[0]) if conv else 0
        if any(len(r) != ncols for r in conv):
            raise ValueError("ragged rows")
        return cls(field, len(conv), ncols, tuple(tuple(r) for r in conv))

    @classmethod
    def from_columns(cls, field: Field, columns, nrows: int) -> "PolyMatrix":
        columns = [list(c) for c in columns]
        return cls.from_rows(field, [[c[i] for c in columns] for i in range(nrows)],
                             ncols=len(columns))

    @classmethod
    def identity(cls, field: Field, n: int) -> "PolyMatrix":
        return cls.from_rows(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)],
                             ncols=n)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> list[UPoly]:
        return [r[j] for r in self.rows]

    def sparse_columns(self) -> list[dict]:
        return [{i: r[j] for i, r in enumerate(self.rows) if r[j]} for j in range(self.ncols)]

    def hstack(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.nrows != other.nrows:
            raise ValueError("row counts differ")
        return PolyMatrix(self.field, self.nrows, self.ncols + other.ncols,
                          tuple(a + b for a, b in zip(self.rows, other.rows)))

    def __matmul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        zero = UPoly(self.field)
        out = []
        for r in self.rows:
            row = []
            for j in range(other.ncols):
                acc = zero
                for k, x in enumerate(r):
                    if x:
                        y = other.rows[k][j]
                        if y:
                            acc = acc + x * y
                row.append(acc)
            out.append(tuple(row))
        return PolyMatrix(self.field, self.nrows, other.ncols, tuple(out))

    def det(self) -> UPoly:
        """Determinant by cofactor expansion; intended for small matrices."""
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        return _det([list(r) for r in self.rows], self.field)

    def render(self) -> list[list[str]]:
        return [[x.render() for x in r] for r in self.rows]


def _as_upoly(field: Field, x) -> UPoly:
    if isinstance(x, UPoly):
        return x
    if isinstance(x, str):
        return UPoly.parse(field, x)
    return UPoly.constant(field, x)


def _det(a, field) -> UPoly:
    n = len(a)
    if n == 0:
        return UPoly.constant(field, 1)
    if n == 1:
        return a[0][0]
    total = UPoly(field)
    for j, x in enumerate(a[0]):
        if not x:
            continue
        minor = [r[:j] + r[j + 1:] for r in a[1:]]
        term = x * _det(minor, field)
        total = total - term if j % 2 else total + term
    return total


@dataclass(frozen=True)
class SmithData:
    """``left @ A @ right`` equals the rectangular diagonal matrix with ``diag``."""

    left: PolyMatrix
    diag: tuple
    right: PolyMatrix

    def diagonal_matrix(self, nrows: int, ncols: int) -> PolyMatrix:
        F = self.left.field
        zero = UPoly(F)
        rows = [[self.diag[i] if i == j and i < len(self.diag) else zero
                 for j in range(ncols)] for i in range(nrows)]
        return PolyMatrix.from_rows(F, rows, ncols=ncols)

    @property
    def invariant_factors(self) -> list[UPoly]:
        return [d for d in self.diag if d]


def smith_normal_form(a: PolyMatrix) -> SmithData:
    """Smith normal form with unimodular transforms.

    Pivot rule: the minimal-degree nonzero entry of the active submatrix,
    ties broken by lowest (row, col). A pivot is accepted once it divides its
    row, its column and every entry of the trailing submatrix; otherwise the
    offending row is added to the pivot row and the search repeats.
    """
    F = a.field
    m, n = a.nrows, a.ncols
    A = [list(r) for r in a.rows]
    U = [list(r) for r in PolyMatrix.identity(F, m).rows]
    V = [list(r) for r in PolyMatrix.identity(F, n).rows]
    zero = UPoly(F)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (A, V):
            for r in M:
                r[i], r[j] = r[j], r[i]

    def pick(t):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = A[i][j]
                if x and (best is None or (x.degree, i, j) < best):
                    best = (x.degree, i, j)
        return best

    for t in range(min(m, n)):
        best = pick(t)
        if best is None:
            break
        while True:
            _, i, j = best
            swap_rows(t, i)
            swap_cols(t, j)
            p = A[t][t]
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q, r = divmod(A[i][t], p)
                    if q:
                        A[i] = [x - q * y for x, y in zip(A[i], A[t])]
                        U[i] = [x - q * y for x, y in zip(U[i], U[t])]
                    dirty = dirty or bool(r)
            for j in range(t + 1, n):
                if A[t][j]:
                    q, r = divmod(A[t][j], p)
                    if q:
                        for M in (A, V):
                            for row in M:
                                if row[t]:
                                    row[j] = row[j] - q * row[t]
                    dirty = dirty or bool(r)
            if dirty:
                best = pick(t)
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] and not p.divides(A[i][j])), None)
            if bad is not None:
                i = bad[0]
                A[t] = [x + y for x, y in zip(A[t], A[i])]
                U[t] = [x + y for x, y in zip(U[t], U[i])]
                best = pick(t)
                continue
            c = p.lead_inverse()
            if c != 1:
                A[t] = [x.scale(c) for x in A[t]]
                U[t] = [x.scale(c) for x in U[t]]
            break

    diag = tuple(A[i][i] if A[i][i] else zero for i in range(min(m, n)))
    return SmithData(PolyMatrix.from_rows(F, U, ncols=m), diag,
                     PolyMatrix.from_rows(F, V, ncols=n))


def smith_diagonal(field: Field, columns, nrows: int) -> list[UPoly]:
    """Diagonalize a sparse matrix over k[t] by unimodular row/column operations.

    Returns the nonzero diagonal entries (not yet in divisibility order).
    Works on a sparse row/column index and always pivots on a minimal-degree
    entry, which keeps coefficient degrees small on the Koszul-type matrices
    the verdicts are computed from. No transforms are recorded.
    """
    rows: dict[int, dict[int, UPoly]] = {}
    colidx: dict[int, set] = {}
    for c, col in enumerate(columns):
        for r, v in col.items():
            if v:
                rows.setdefault(r, {})[c] = v
                colidx.setdefault(c, set()).add(r)
    out = []
    while rows:
        _, r, c = min((v.degree, r, c) for r, row in rows.items() for c, v in row.items())
        while True:
            a = rows[r][c]
            pivot_row = rows[r]
            for i in sorted(colidx[c] - {r}):
                q = rows[i][c] // a
                ri = rows[i]
                for j, v in pivot_row.items():
                    w = ri.get(j)
                    w = -(q * v) if w is None else w - q * v
                    if w:
                        ri[j] = w
                        colidx.setdefault(j, set()).add(i)
                    elif j in ri:
                        del ri[j]
                        colidx[j].discard(i)
                if not ri:
                    del rows[i]
            rest = [(rows[i][c].degree, i) for i in colidx[c] if i != r]
            if rest:
                r = min(rest)[1]
                continue
            for j in list(pivot_row):
                if j != c:
                    rem = pivot_row[j] % a
                    if rem:
                        pivot_row[j] = rem
                    else:
                        del pivot_row[j]
                        colidx[j].discard(r)
            rest = [(v.degree, j) for j, v in pivot_row.items() if j != c]
            if rest:
                c = min(rest)[1]
                continue
            out.append(a)
            del rows[r]
            colidx[c].discard(r)
            break
    return out


def invariant_factors_of_diagonal(diag: list[UPoly]) -> list[UPoly]:
    """Turn a nonzero diagonal into the monic divisibility chain d1 | d2 | ..."""
    d = [x.monic() for x in diag]
    for i in range(len(d)):
        for j in range(i + 1, len(d)):
            g = d[i].gcd(d[j])
            if g != d[i]:
                lcm = (d[i] * d[j]) // g
                d[i], d[j] = g, lcm.monic()
    return d


def invariant_factors(a: PolyMatrix) -> list[UPoly]:
    return invariant_factors_of_diagonal(smith_diagonal(a.field, a.sparse_columns(), a.nrows))


def cokernel_type(field: Field, columns, nrows: int) -> tuple[int, list[UPoly]]:
    """(free rank, non-unit invariant factors) of k[t]^nrows / span(columns)."""
    diag = invariant_factors_of_diagonal(smith_diagonal(field, columns, nrows))
    return nrows - len(diag), [d for d in diag if not d.is_unit()]


def column_span_equal(a, b) -> bool:
    """Do the columns of ``a`` and ``b`` span the same submodule?

    Over k[t] (``PolyMatrix``) each column of one matrix is tested for
    membership in the Hermite-style echelon form of the other; over a field
    (``DenseMatrix``) spans are compared by rank.
    """
    if isinstance(a, DenseMatrix):
        if a.rows != b.rows:
            raise ValueError("row counts differ")
        ech = FieldEchelon(a.field)
        for j in range(a.cols):
            ech.insert(_dense_col(a.column(j)))
        ra = ech.rank
        rb = FieldEchelon(b.field)
        for j in range(b.cols):
            col = _dense_col(b.column(j))
            rb.insert(col)
            if not ech.contains(col):
                return False
        return rb.rank == ra
    if a.nrows != b.nrows:
        raise ValueError("row counts differ")
    ea = PIDEchelon(a.field)
    for c in a.sparse_columns():
        ea.insert(c)
    eb = PIDEchelon(b.field)
    for c in b.sparse_columns():
        eb.insert(c)
    return (all(ea.contains(c) for c in b.sparse_columns())
            and all(eb.contains(c) for c in a.sparse_columns()))


def _dense_col(values) -> dict:
    return {i: v for i, v in enumerate(values) if v != 0}


def pid_kernel_basis(field: Field, columns, nrows: int) -> list[dict]:
    """Basis of the right kernel of a sparse k[t]-matrix.

    Echelonizes the columns of the stacked matrix [A; I]; the rows of A come
    first, so the pivots whose lead falls in the identity block have zero A
    part and their identity part is a kernel basis.
    """
    one = UPoly.constant(field, 1)
    ech = PIDEchelon(field)
    for j, col in enumerate(columns):
        aug = dict(col)
        aug[nrows + j] = one
        ech.insert(aug)
    basis = []
    for lead in sorted(ech.pivots):
        if lead >= nrows:
            p = ech.pivots[lead]
            basis.append({k - nrows: v for k, v in p.items()})
    return basis

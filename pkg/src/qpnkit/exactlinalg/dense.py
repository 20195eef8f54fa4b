"""Dense matrices over a field: rank, kernel, solving."""

from __future__ import annotations

from dataclasses import dataclass

from .field import Field


@dataclass(frozen=True)
class DenseMatrix:
    field: Field
    rows: int
    cols: int
    entries: tuple  # row-major, length rows * cols

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}")

    @classmethod
    def from_rows(cls, field: Field, rows, ncols: int | None = None) -> "DenseMatrix":
        rows = [list(r) for r in rows]
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(field, len(rows), ncols, tuple(field(x) for r in rows for x in r))

    @classmethod
    def from_columns(cls, field: Field, columns, nrows: int) -> "DenseMatrix":
        columns = [list(c) for c in columns]
        return cls.from_rows(field, [[c[i] for c in columns] for i in range(nrows)],
                             ncols=len(columns))

    @classmethod
    def identity(cls, field: Field, n: int) -> "DenseMatrix":
        return cls.from_rows(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)],
                             ncols=n)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def column(self, j: int) -> list:
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def to_rows(self) -> list[list]:
        return [self.row(i) for i in range(self.rows)]

    def __matmul__(self, other: "DenseMatrix") -> "DenseMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        F = self.field
        out = []
        for i in range(self.rows):
            r = self.row(i)
            for j in range(other.cols):
                acc = F.zero
                for k in range(self.cols):
                    if r[k]:
                        acc = F.add(acc, F.mul(r[k], other.entries[k * other.cols + j]))
                out.append(acc)
        return DenseMatrix(F, self.rows, other.cols, tuple(out))

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries)


def rref(m: DenseMatrix) -> tuple[list[list], list[int]]:
    """Reduced row echelon form; returns (rows, pivot columns).

    Pivots are taken column by column, first nonzero row from the top.
    """
    F = m.field
    a = m.to_rows()
    pivots = []
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        piv = next((i for i in range(r, m.rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = F.inv(a[r][c])
        a[r] = [F.mul(x, inv) for x in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [F.sub(x, F.mul(f, y)) for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m: DenseMatrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: DenseMatrix) -> DenseMatrix:
    """Columns form a basis of the right kernel of ``m``."""
    F = m.field
    a, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [F.zero] * m.cols
        v[f] = F.one
        for i, pc in enumerate(pivots):
            v[pc] = F.neg(a[i][f])
        basis.append(v)
    return DenseMatrix.from_columns(F, basis, m.cols)


def solve(m: DenseMatrix, b) -> list | None:
    """One solution x of ``m x = b``, or None when the system is inconsistent."""
    F = m.field
    aug = DenseMatrix.from_rows(F, [r + [F(bi)] for r, bi in zip(m.to_rows(), b)],
                                ncols=m.cols + 1)
    a, pivots = rref(aug)
    if m.cols in pivots:
        return None
    x = [F.zero] * m.cols
    for i, pc in enumerate(pivots):
        x[pc] = a[i][m.cols]
    return x

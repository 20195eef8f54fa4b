"""Incremental column echelon forms over a field and over k[t].

Columns are sparse dicts ``{row: value}``. Each stored pivot column is keyed
by its leading (smallest) row index; reducing a vector against the pivots
only touches rows strictly below the current lead, so reduction terminates.
"""

from __future__ import annotations

from .field import Field
from .upoly import UPoly


class FieldEchelon:
    """Span of a growing set of sparse column vectors over a field."""

    __slots__ = ("field", "pivots")

    def __init__(self, field: Field, pivots: dict | None = None):
        self.field = field
        self.pivots: dict[int, dict] = {} if pivots is None else pivots

    def copy(self) -> "FieldEchelon":
        return FieldEchelon(self.field, dict(self.pivots))

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, col: dict) -> dict:
        """Return the remainder of ``col`` after elimination; ``{}`` iff in the span."""
        F = self.field
        col = {r: v for r, v in col.items() if v != 0}
        pivots = self.pivots
        while col:
            r = min(col)
            p = pivots.get(r)
            if p is None:
                return col
            c = col[r]
            for k, v in p.items():
                w = F.sub(col.get(k, F.zero), F.mul(c, v))
                if w == 0:
                    col.pop(k, None)
                else:
                    col[k] = w
        return col

    def insert(self, col: dict) -> bool:
        """Add ``col`` to the span; True iff it raised the rank."""
        rem = self.reduce(col)
        if not rem:
            return False
        F = self.field
        r = min(rem)
        inv = F.inv(rem[r])
        self.pivots[r] = {k: F.mul(v, inv) for k, v in rem.items()}
        return True

    def contains(self, col: dict) -> bool:
        return not self.reduce(col)


def field_rank(field: Field, columns) -> int:
    ech = FieldEchelon(field)
    for c in columns:
        ech.insert(c)
    return ech.rank


class PIDEchelon:
    """Column echelon form of a submodule of k[t]^m (Hermite-style, unreduced).

    Inserting a column whose lead meets an existing pivot either subtracts a
    polynomial multiple (when the pivot lead divides it) or applies the
    unimodular 2x2 transform built from the extended gcd of the two leads.
    The pivot set is therefore always a basis of the span, triangular with
    respect to the lead rows, and membership is decided by successive exact
    division at the leads.
    """

    __slots__ = ("field", "pivots")

    def __init__(self, field: Field, pivots: dict | None = None):
        self.field = field
        self.pivots: dict[int, dict] = {} if pivots is None else pivots

    def copy(self) -> "PIDEchelon":
        return PIDEchelon(self.field, dict(self.pivots))

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def leads(self) -> dict[int, UPoly]:
        return {r: p[r] for r, p in self.pivots.items()}

    def reduce(self, col: dict) -> dict:
        """Remainder after exact-division reduction; ``{}`` iff ``col`` is in the span."""
        col = {r: v for r, v in col.items() if v}
        pivots = self.pivots
        while col:
            r = min(col)
            p = pivots.get(r)
            if p is None:
                return col
            q, rem = divmod(col[r], p[r])
            if rem:
                return col
            _axpy(col, -q, p)
        return col

    def contains(self, col: dict) -> bool:
        return not self.reduce(col)

    def insert(self, col: dict) -> bool:
        col = {r: v for r, v in col.items() if v}
        pivots = self.pivots
        while col:
            r = min(col)
            p = pivots.get(r)
            c = col[r]
            if p is None:
                pivots[r] = _scale(col, c.lead_inverse())
                return True
            pr = p[r]
            q, rem = divmod(c, pr)
            if not rem:
                _axpy(col, -q, p)
                continue
            g, u, v = pr.xgcd(c)
            cg = c // g
            pg = pr // g
            newp = _lincomb(u, p, v, col)
            col = _lincomb(cg, p, -pg, col)
            col.pop(r, None)
            pivots[r] = _scale(newp, newp[r].lead_inverse())
        return False


def _axpy(col: dict, a: UPoly, p: dict) -> None:
    """col += a * p, in place."""
    for k, v in p.items():
        w = col.get(k)
        w = a * v if w is None else w + a * v
        if w:
            col[k] = w
        else:
            col.pop(k, None)


def _lincomb(a: UPoly, x: dict, b: UPoly, y: dict) -> dict:
    out = {}
    if a:
        for k, v in x.items():
            out[k] = a * v
    if b:
        for k, v in y.items():
            w = out.get(k)
            w = b * v if w is None else w + b * v
            out[k] = w
    return {k: v for k, v in out.items() if v}


def _scale(col: dict, c) -> dict:
    if c == 1:
        return dict(col)
    return {k: v.scale(c) for k, v in col.items()}

"""Exception types shared across the toolkit."""

from __future__ import annotations


class QpnError(Exception):
    """Base class; ``kind`` and ``detail`` feed the CLI error serialization."""

    @property
    def kind(self) -> str:
        return type(self).__name__

    def detail(self) -> dict:
        return {"message": str(self)}


class DegreeError(QpnError, ValueError):
    """A matrix entry violates the twist-degree invariant."""

    def __init__(self, row: int, col: int, expected: int, found: int | None):
        self.row, self.col, self.expected, self.found = row, col, expected, found
        super().__init__(
            f"entry ({row}, {col}) must be homogeneous of degree {expected}"
            + ("" if found is None else f", got degree {found}")
        )

    def detail(self) -> dict:
        return {"row": self.row, "col": self.col, "expected": self.expected,
                "found": self.found}


class IllDefinedMap(QpnError, ValueError):
    """A module map does not send relations into relations."""

    def __init__(self, column: int, degree: int | None = None):
        self.column, self.degree = column, degree
        super().__init__(
            f"relation column {column} is not mapped into the target relations"
            + ("" if degree is None else f" (degree {degree})")
        )

    def detail(self) -> dict:
        return {"relation": self.column, "degree": self.degree}


class NotComplex(QpnError, ValueError):
    def __init__(self, position: int, degree: int):
        self.position, self.degree = position, degree
        super().__init__(f"composite at position {position} is nonzero in degree {degree}")

    def detail(self) -> dict:
        return {"position": self.position, "degree": self.degree}


class IncompatibleTuple(QpnError, ValueError):
    """x_i m_{x_j q} != x_j m_{x_i q} at the witness triple (q, i, j)."""

    def __init__(self, q: tuple, i: int, j: int):
        self.q, self.i, self.j = tuple(q), i, j
        super().__init__(f"tuple violates the compatibility relation at q={self.q}, i={i}, j={j}")

    def detail(self) -> dict:
        return {"q": list(self.q), "i": self.i, "j": self.j}


class PreconditionNotGood(QpnError, ValueError):
    """The section data does not define a good epimorphism."""


class InvalidRingMap(QpnError, ValueError):
    pass


class InvalidAlgebraMap(QpnError, ValueError):
    pass


class InvalidModuleStructure(QpnError, ValueError):
    pass

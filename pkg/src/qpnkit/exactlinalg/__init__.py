"""Exact arithmetic over QQ and GF(p), dense linear algebra, and k[t] normal forms."""

from .dense import DenseMatrix, kernel_basis, rank, rref, solve
from .echelon import FieldEchelon, PIDEchelon, field_rank
from .field import GF, QQ, Field, PrimeField, Rationals, field_from_spec
from .smith import (
    PolyMatrix,
    SmithData,
    cokernel_type,
    column_span_equal,
    invariant_factors,
    invariant_factors_of_diagonal,
    pid_kernel_basis,
    smith_diagonal,
    smith_normal_form,
)
from .upoly import UPoly

__all__ = [
    "DenseMatrix", "Field", "FieldEchelon", "GF", "PIDEchelon", "PolyMatrix", "PrimeField",
    "QQ", "Rationals", "SmithData", "UPoly", "cokernel_type", "column_span_equal",
    "field_from_spec", "field_rank", "invariant_factors", "invariant_factors_of_diagonal",
    "kernel_basis", "pid_kernel_basis", "rank", "rref", "smith_diagonal",
    "smith_normal_form", "solve",
]

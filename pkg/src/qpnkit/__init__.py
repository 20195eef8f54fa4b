"""Graded modules over k[x0..xn], truncation presentations, and the tensor
functors into module categories induced by section data (L, s)."""

from .errors import (
    DegreeError,
    IllDefinedMap,
    IncompatibleTuple,
    InvalidAlgebraMap,
    InvalidModuleStructure,
    InvalidRingMap,
    NotComplex,
    PreconditionNotGood,
    QpnError,
)
from .grmod import (
    DegreeWindow,
    FPGradedModule,
    GradedFree,
    GradedMatrix,
    GradedModuleMap,
    cokernel,
    direct_sum,
    hilbert_table,
    is_exact_window,
    is_iso_window,
    tensor,
    twist,
)
from .koszulsym import (
    SectionTuple,
    evaluate_phi_matrix,
    evaluate_phi_recursive,
    phi_extend,
    sym_free,
    sym_module,
    truncation_presentation,
)
from .polyring import HomPoly, PolyRing, enumerate_monomials, substitute

__version__ = "0.1.0"

__all__ = [
    "DegreeError", "DegreeWindow", "FPGradedModule", "GradedFree", "GradedMatrix",
    "GradedModuleMap", "HomPoly", "IllDefinedMap", "IncompatibleTuple", "InvalidAlgebraMap",
    "InvalidModuleStructure", "InvalidRingMap", "NotComplex", "PolyRing", "PreconditionNotGood",
    "QpnError", "SectionTuple", "cokernel", "direct_sum", "enumerate_monomials",
    "evaluate_phi_matrix", "evaluate_phi_recursive", "hilbert_table", "is_exact_window",
    "is_iso_window", "phi_extend", "substitute", "sym_free", "sym_module", "tensor",
    "truncation_presentation", "twist",
]

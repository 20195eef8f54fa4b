"""Target rings, modules over them, and the tensor functor induced by section data."""

from .algebra import (
    AlgebraObject,
    AModule,
    base_change_algebra,
    check_algebra_map_to_unit,
    descend_module,
    make_algebra,
    make_amodule,
    regular_module,
)
from .modules import (
    ModuleMap,
    TModule,
    base_change,
    base_change_map,
    compose_maps,
    is_bijective,
    is_injective,
    is_surjective,
    kernel_defect,
    tensor_maps,
    tensor_tmodules,
)
from .rings import FieldTarget, FinDimTarget, RingMap, TargetRing, UnivariateTarget
from .sections import (
    Chart,
    ChartMap,
    GoodEpiVerdict,
    SectionData,
    check_good_epi,
    check_monoidality,
    check_substituted_exactness,
    check_truncation_iso,
    comparison_map,
    evaluate_map,
    evaluate_object,
    koszul_columns,
    reconstruct_morphism,
    section_row,
    verify_relation,
)

__all__ = [
    "AModule", "AlgebraObject", "Chart", "ChartMap", "FieldTarget", "FinDimTarget",
    "GoodEpiVerdict", "ModuleMap", "RingMap", "SectionData", "TModule", "TargetRing",
    "UnivariateTarget", "base_change", "base_change_algebra", "base_change_map",
    "check_algebra_map_to_unit", "check_good_epi", "check_monoidality",
    "check_substituted_exactness", "check_truncation_iso", "comparison_map", "compose_maps",
    "descend_module", "evaluate_map", "evaluate_object", "is_bijective", "is_injective",
    "is_surjective", "kernel_defect", "koszul_columns", "make_algebra", "make_amodule",
    "reconstruct_morphism", "regular_module", "section_row", "tensor_maps",
    "tensor_tmodules", "verify_relation",
]

"""Nilpotent Lie algebras, BCH and exponential coordinates."""
from .algebra import (
    LieAlgebra,
    LieElement,
    SubspaceChecks,
    ValidationReport,
    bracket,
    generated_subalgebra,
    generates,
    is_ideal,
    is_subalgebra,
    structure_from_brackets,
    subspace_checks,
    validate_algebra,
)
from .bch import bch, bch_product, dynkin_terms, word_coefficient
from .coordinates import (
    CoordinateSystem,
    VectorField,
    certify_chart,
    coordinate_names,
    coords_convert,
    coords_from_element,
    element_from_coords,
    field_combination,
    group_mult,
    left_invariant_fields,
)
from .factor import DirectSum, factorize_ordered, recombine
from .linalg import Subspace

__all__ = [
    "LieAlgebra", "LieElement", "SubspaceChecks", "ValidationReport", "bracket",
    "generated_subalgebra", "generates", "is_ideal", "is_subalgebra",
    "structure_from_brackets", "subspace_checks", "validate_algebra",
    "bch", "bch_product", "dynkin_terms", "word_coefficient",
    "CoordinateSystem", "VectorField", "certify_chart", "coordinate_names",
    "coords_convert", "coords_from_element", "element_from_coords",
    "field_combination", "group_mult", "left_invariant_fields",
    "DirectSum", "factorize_ordered", "recombine", "Subspace",
]

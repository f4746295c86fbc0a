"""Exact matrix computations for nilpotent matrices commuting with J_P."""

from .core import (
    SYMBOLIC_AR_LIMIT,
    SYMBOLIC_DET_LIMIT,
    AssignmentError,
    MRow,
    NotNilpotentError,
    NotSaturatedError,
    basis,
    basis_index,
    component_monomials,
    det_M,
    distinguished_monomial,
    is_in_UB,
    jordan_block_matrix,
    jordan_type,
    jordan_types,
    matrix_M,
    ones_assignment,
    power_entry_via_chains,
    random_assignment,
    random_UB_element,
    random_UB_elements,
    specialize_AR,
    symbolic_AR,
    symbolic_det,
    ub_coordinates,
    ub_dimension,
    ub_from_coordinates,
    variables_of,
)
from .gf import DEFAULT_PRIME, check_modulus, det_mod, rank_mod
from .matrix import PolyMatrix, SparseMatrix, identity
from .poly import SparsePoly, parse_poly, parse_var

__all__ = [
    "AssignmentError",
    "basis",
    "basis_index",
    "check_modulus",
    "component_monomials",
    "DEFAULT_PRIME",
    "det_M",
    "det_mod",
    "distinguished_monomial",
    "identity",
    "is_in_UB",
    "jordan_block_matrix",
    "jordan_type",
    "jordan_types",
    "matrix_M",
    "MRow",
    "NotNilpotentError",
    "NotSaturatedError",
    "ones_assignment",
    "parse_poly",
    "parse_var",
    "PolyMatrix",
    "power_entry_via_chains",
    "random_assignment",
    "random_UB_element",
    "random_UB_elements",
    "rank_mod",
    "SparseMatrix",
    "SparsePoly",
    "specialize_AR",
    "symbolic_AR",
    "SYMBOLIC_AR_LIMIT",
    "symbolic_det",
    "SYMBOLIC_DET_LIMIT",
    "ub_coordinates",
    "ub_dimension",
    "ub_from_coordinates",
    "variables_of",
]

"""Exact linear algebra over Q and F_p."""

from ._backend import BACKEND
from .complexes import (
    Cohomology,
    ComplexError,
    FiniteComplex,
    check_chain_map,
    complex_cohomology,
    induced_cohomology_map,
)
from .field import GF, QQ, Field, ModP
from .matrix import (
    FieldMismatch,
    MatrixK,
    Subspace,
    image_basis,
    kernel_basis,
    rank,
    rref,
    solve,
)

__all__ = [
    "BACKEND", "Cohomology", "ComplexError", "FiniteComplex", "check_chain_map",
    "complex_cohomology", "induced_cohomology_map", "GF", "QQ", "Field", "ModP",
    "FieldMismatch", "MatrixK", "Subspace", "image_basis", "kernel_basis", "rank",
    "rref", "solve",
]

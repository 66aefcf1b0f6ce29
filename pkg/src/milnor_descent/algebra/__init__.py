"""Graded algebras with derivation and curvature, maps between them, and squares."""

from .fixtures import (
    extend_map,
    exterior_extension,
    monomial_algebra,
    nodal_rings,
    nodal_square,
    perturb_structure_constant,
    ring_map,
    sq1_square,
    sq2_square,
)
from .graded import AlgebraElement, GradedAlgebra
from .maps import CurvedDgaMap
from .square import (
    DescentSquare,
    FiberProductError,
    build_degree_zero_fiber_product,
    check_descent_assumptions,
)
from .validate import validate_cdga_map, validate_curved_dga

__all__ = [
    "AlgebraElement", "GradedAlgebra", "CurvedDgaMap", "DescentSquare", "FiberProductError",
    "build_degree_zero_fiber_product", "check_descent_assumptions", "validate_cdga_map",
    "validate_curved_dga", "exterior_extension", "extend_map", "monomial_algebra",
    "nodal_rings", "nodal_square", "perturb_structure_constant", "ring_map",
    "sq1_square", "sq2_square",
]

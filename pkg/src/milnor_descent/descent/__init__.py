"""Descent functors: restriction, its adjoint, Milnor patching and strict gluing."""

from .functors import ATilde, ATildeMorphism, Descent, Lambda, psi_tilde_complex
from .glue import (
    GlueError,
    GlueResult,
    PsiComplex,
    StrictDescentDatum,
    glue_strict,
    lift_to_patch,
    psi_complexes,
    unglue_map,
)
from .linear import SolveFailure, module_isomorphism_inverse, solve_affine
from .milnor import PsiResult, milnor_psi
from .piecewise import PiecewiseHom, PiecewiseModule, PiecewiseMorphism, piecewise_degree_zero_complex

__all__ = [
    "ATilde",
    "ATildeMorphism",
    "Descent",
    "GlueError",
    "GlueResult",
    "Lambda",
    "PiecewiseHom",
    "PiecewiseModule",
    "PiecewiseMorphism",
    "PsiComplex",
    "PsiResult",
    "SolveFailure",
    "StrictDescentDatum",
    "glue_strict",
    "lift_to_patch",
    "milnor_psi",
    "module_isomorphism_inverse",
    "piecewise_degree_zero_complex",
    "psi_complexes",
    "psi_tilde_complex",
    "solve_affine",
    "unglue_map",
]

"""The homotopy fiber product dg-category of two pullback functors."""

from .core import (
    COMPOSITION_VARIANTS,
    DIFFERENTIAL_VARIANTS,
    HfpContext,
    HfpHomComplex,
    HfpMorphism,
    HfpObject,
    HfpRejected,
    SignConvention,
    hfp_compose,
)
from .ops import (
    check_arrow_membership,
    hfp_inverse_search,
    hfp_is_homotopy_equivalence,
    les_check,
    les_report,
)
from .signs import axiom_suite, candidate_conventions, select_sign_convention

__all__ = [
    "COMPOSITION_VARIANTS",
    "DIFFERENTIAL_VARIANTS",
    "HfpContext",
    "HfpHomComplex",
    "HfpMorphism",
    "HfpObject",
    "HfpRejected",
    "SignConvention",
    "axiom_suite",
    "candidate_conventions",
    "check_arrow_membership",
    "hfp_compose",
    "hfp_inverse_search",
    "hfp_is_homotopy_equivalence",
    "les_check",
    "les_report",
    "select_sign_convention",
]

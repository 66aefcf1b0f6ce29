"""Cohesive modules, their hom complexes and the standard constructions."""

from .cone import NotClosedError, cone, cone_triangle
from .equivalence import (
    EquivalenceCertificate,
    InverseCertificate,
    cohesive_inverse_search,
    degree_zero_complex,
    h0_inverse_search,
    is_homotopy_equivalence,
    solve_rank_one_maurer_cartan,
)
from .hom import (
    HomComplexSpace,
    HomError,
    Morphism,
    compose_hom,
    hom_complex,
    identity_morphism,
    zero_morphism,
)
from .module import (
    CohesiveModule,
    CompressionError,
    PushforwardModule,
    check_cohesive,
    direct_sum,
    free_module,
    pullback,
    pushforward,
    shift,
    zero_module,
)

__all__ = [
    "CohesiveModule",
    "CompressionError",
    "EquivalenceCertificate",
    "HomComplexSpace",
    "HomError",
    "InverseCertificate",
    "Morphism",
    "NotClosedError",
    "PushforwardModule",
    "check_cohesive",
    "cohesive_inverse_search",
    "compose_hom",
    "cone",
    "cone_triangle",
    "degree_zero_complex",
    "direct_sum",
    "free_module",
    "h0_inverse_search",
    "hom_complex",
    "identity_morphism",
    "is_homotopy_equivalence",
    "pullback",
    "pushforward",
    "shift",
    "solve_rank_one_maurer_cartan",
    "zero_module",
    "zero_morphism",
]

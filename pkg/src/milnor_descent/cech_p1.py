"""Two-chart model of line bundles on the projective line.

``A(j) = (k[z], k[z⁻¹], z^{-j})`` is an object of the fiber product of the
two chart rings over the Laurent ring.  Its hom complex to ``A(j')`` has
``Q⁰ = k[z] ⊕ k[z⁻¹]`` and ``Q¹ = k[z, z⁻¹]`` with differential
``(μ, ν) -> z^{-j'} μ - z^{-j} ν`` (the cross term of the fiber-product
differential; there are no connections).  Polynomials are truncated at
degree N and the Laurent side is the exact window containing every image,
so the truncation never creates spurious cocycles.
"""

from __future__ import annotations

from dataclasses import dataclass

from .checks import ValidationReport
from .hfp.ops import les_report
from .linalg import QQ, FiniteComplex, MatrixK, Subspace, complex_cohomology

__all__ = [
    "LaurentWindow",
    "TwistedCechComplex",
    "TruncationTooSmall",
    "min_truncation",
    "build_q_complex",
    "q_cohomology",
    "monomial_oracle",
    "stabilization_check",
    "p1_les_check",
]


class TruncationTooSmall(ValueError):
    def __init__(self, needed):
        super().__init__(f"truncation too small: need N >= {needed}")
        self.needed = needed


def min_truncation(j1, j2):
    return abs(j1) + abs(j2) + 1


@dataclass(frozen=True)
class LaurentWindow:
    """Coefficients of ``z^lo .. z^hi``."""

    lo: int
    hi: int
    field: object = QQ

    @property
    def size(self):
        return self.hi - self.lo + 1

    def index(self, e):
        if not self.lo <= e <= self.hi:
            raise IndexError(f"exponent {e} outside window [{self.lo}, {self.hi}]")
        return e - self.lo

    def monomial(self, e):
        v = [self.field.zero] * self.size
        v[self.index(e)] = self.field.one
        return v


@dataclass
class TwistedCechComplex:
    j1: int
    j2: int
    N: int
    window: LaurentWindow
    complex: FiniteComplex

    @property
    def field(self):
        return self.window.field


def build_q_complex(j1, j2, N, field=QQ) -> TwistedCechComplex:
    need = min_truncation(j1, j2)
    if N < need:
        raise TruncationTooSmall(need)
    lo = min(-j2, -N - j1)
    hi = max(N - j2, -j1)
    W = LaurentWindow(lo, hi, field)
    cols = []
    for a in range(N + 1):          # μ = z^a  ->  z^{a - j2}
        cols.append(W.monomial(a - j2))
    for b in range(N + 1):          # ν = z^{-b}  ->  -z^{-b - j1}
        v = W.monomial(-b - j1)
        cols.append([-x for x in v])
    d0 = MatrixK.from_columns(field, cols, W.size)
    c = FiniteComplex(field, 0, 1, {0: 2 * (N + 1), 1: W.size}, {0: d0}).validate()
    return TwistedCechComplex(j1, j2, N, W, c)


def q_cohomology(q: TwistedCechComplex) -> dict:
    """Dimensions and monomial representatives.

    H⁰ generators are listed as ``(exponent of μ, exponent of ν)`` pairs of
    the cocycle basis; H¹ generators as exponents e of classes ``[z^e]``,
    picked greedily by increasing ``|e|`` among monomials independent
    modulo the image.
    """
    h = complex_cohomology(q.complex)
    fld = q.field
    W = q.window
    N = q.N
    h0 = []
    for v in h[0].representatives:
        mu = [a for a in range(N + 1) if v[a]]
        nu = [-b for b in range(N + 1) if v[N + 1 + b]]
        h0.append((mu, nu))
    img = [q.complex.d(0).column(i) for i in range(q.complex.dim(0))]
    span = Subspace(fld, W.size, img)
    gens = []
    for e in sorted(range(W.lo, W.hi + 1), key=lambda e: (abs(e), e)):
        if len(gens) == h[1].dim:
            break
        trial = Subspace(fld, W.size, list(span.basis) + [W.monomial(e)])
        if len(trial) > len(span):
            gens.append(e)
            span = trial
    return {"H0": h[0].dim, "H1": h[1].dim, "H0_generators": h0, "H1_generators": sorted(gens)}


def monomial_oracle(j1, j2, N):
    """Dimensions by counting exponents, no linear algebra.

    H⁰: pairs ``(a, b)`` in ``[0, N]²`` with ``a - j2 = -b - j1``.  H¹: window
    exponents hit by neither ``a - j2`` nor ``-b - j1``.
    """
    lo = min(-j2, -N - j1)
    hi = max(N - j2, -j1)
    hit_mu = {a - j2 for a in range(N + 1)}
    hit_nu = {-b - j1 for b in range(N + 1)}
    h0 = sum(1 for a in range(N + 1) if 0 <= j2 - j1 - a <= N)
    missed = sorted(e for e in range(lo, hi + 1) if e not in hit_mu and e not in hit_nu)
    return {"H0": h0, "H1": len(missed), "H1_generators": missed}


def stabilization_check(j1, j2, N, field=QQ) -> bool:
    """Dimensions and H¹ generator classes agree between truncations N and N+1."""
    a = q_cohomology(build_q_complex(j1, j2, N, field))
    b = q_cohomology(build_q_complex(j1, j2, N + 1, field))
    return (a["H0"], a["H1"], a["H1_generators"]) == (b["H0"], b["H1"], b["H1_generators"])


def p1_les_check(j1, j2, N, field=QQ, degrees=None) -> ValidationReport:
    """``0 -> k[z,z⁻¹][-1] -> Q -> k[z] ⊕ k[z⁻¹] -> 0`` and its long exact sequence."""
    q = build_q_complex(j1, j2, N, field)
    full = q.complex
    lo, hi = -4, 5
    n0, w = full.dim(0), q.window.size
    dims_full = {i: full.dim(i) for i in range(lo, hi + 1)}
    full = FiniteComplex(field, lo, hi, dims_full, {0: full.d(0)}).validate()
    pair = FiniteComplex(field, lo, hi, {i: (n0 if i == 0 else 0) for i in range(lo, hi + 1)}, {})
    tilde = FiniteComplex(field, lo, hi, {i: (w if i == 1 else 0) for i in range(lo, hi + 1)}, {})
    degrees = [0, 1, 2] if degrees is None else degrees
    return les_report(f"long exact sequence P1 ({j1},{j2}) N={N}", tilde, full, pair, degrees)

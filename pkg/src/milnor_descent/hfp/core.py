"""The homotopy fiber product ``B ×ʰ_D C`` of two pullback functors.

Objects are triples ``(M, N, φ)`` with ``φ : G(M) -> L(N)`` closed of degree
zero and invertible up to homotopy.  A degree-i morphism is
``(μ, ν, γ)`` with ``γ : G(M1) -> L(N2)`` of degree ``i - 1``.

The signs in the γ slot of the differential and of the composition are a
``SignConvention``; which one is used is decided by running the dg axioms
(see ``signs.select_sign_convention``).
"""

from __future__ import annotations

from dataclasses import dataclass

from ..algebra import amatrix as am
from ..algebra.maps import CurvedDgaMap
from ..cohesive import (
    CohesiveModule,
    HomComplexSpace,
    Morphism,
    compose_hom,
    h0_inverse_search,
    identity_morphism,
    pullback,
)
from ..linalg import FiniteComplex, MatrixK

__all__ = [
    "SignConvention",
    "DIFFERENTIAL_VARIANTS",
    "COMPOSITION_VARIANTS",
    "HfpContext",
    "HfpObject",
    "HfpMorphism",
    "HfpRejected",
    "HfpHomComplex",
]


def _alt(n):
    return -1 if n % 2 else 1


# (name, sign on dγ, sign on φ₂G(μ), sign on L(ν)φ₁) as functions of the degree i
DIFFERENTIAL_VARIANTS = [
    ("literal", lambda i: 1, lambda i: 1, lambda i: _alt(i)),
    ("negated-homotopy", lambda i: -1, lambda i: 1, lambda i: 1),
    ("alternating-cross", lambda i: 1, lambda i: _alt(i), lambda i: _alt(i)),
]

# (name, sign on γ'G(μ) as function of |μ|, sign on L(ν')γ as function of |ν'|)
COMPOSITION_VARIANTS = [
    ("literal", lambda dm: 1, lambda dn: 1),
    ("koszul-nu-prime", lambda dm: 1, lambda dn: _alt(dn)),
    ("koszul-mu", lambda dm: _alt(dm), lambda dn: 1),
]


@dataclass(frozen=True)
class SignConvention:
    differential: str = "negated-homotopy"
    composition: str = "koszul-nu-prime"

    def _d(self):
        for name, a, b, c in DIFFERENTIAL_VARIANTS:
            if name == self.differential:
                return a, b, c
        raise KeyError(self.differential)

    def _c(self):
        for name, a, b in COMPOSITION_VARIANTS:
            if name == self.composition:
                return a, b
        raise KeyError(self.composition)

    def d_signs(self, i):
        a, b, c = self._d()
        return a(i), b(i), c(i)

    def c_signs(self, deg_mu, deg_nu_prime):
        a, b = self._c()
        return a(deg_mu), b(deg_nu_prime)

    def describe(self):
        return f"differential={self.differential}; composition={self.composition}"


class HfpRejected(ValueError):
    def __init__(self, msg, ranks=None):
        super().__init__(msg)
        self.ranks = ranks or {}


class HfpContext:
    """The data ``B -G-> D <-L- C`` with G, L pullbacks along curved dga maps."""

    def __init__(self, g: CurvedDgaMap, l: CurvedDgaMap, convention: SignConvention | None = None,
                 name=""):
        if g.target is not l.target and g.target != l.target:
            raise ValueError("G and L must land in the same algebra")
        self.g, self.l = g, l
        self.B, self.C, self.D = g.source, l.source, g.target
        self.convention = convention or SignConvention()
        self.name = name
        self._G = {}
        self._L = {}

    def G(self, m: CohesiveModule):
        key = id(m)
        hit = self._G.get(key)
        if hit is None or hit[0] is not m:
            hit = (m, pullback(self.g, m))
            self._G[key] = hit
        return hit[1]

    def L(self, n: CohesiveModule):
        key = id(n)
        hit = self._L.get(key)
        if hit is None or hit[0] is not n:
            hit = (n, pullback(self.l, n))
            self._L[key] = hit
        return hit[1]

    def G_mor(self, mu: Morphism):
        return Morphism(self.G(mu.source), self.G(mu.target), mu.degree,
                        {k: am.mmap(self.g, M) for k, M in mu.blocks.items()})

    def L_mor(self, nu: Morphism):
        return Morphism(self.L(nu.source), self.L(nu.target), nu.degree,
                        {k: am.mmap(self.l, M) for k, M in nu.blocks.items()})

    def with_convention(self, convention):
        ctx = HfpContext(self.g, self.l, convention, self.name)
        ctx._G, ctx._L = self._G, self._L
        return ctx

    # -- objects -------------------------------------------------------------

    def make_object(self, m, n, phi_blocks, name="", require_inverse=True):
        """Build ``(m, n, φ)``; φ given as a block dict on ``G(m) -> L(n)`` or a Morphism."""
        Gm, Ln = self.G(m), self.L(n)
        if isinstance(phi_blocks, Morphism):
            phi_blocks = phi_blocks.blocks
        phi = Morphism(Gm, Ln, 0, phi_blocks)
        H = HomComplexSpace(Gm, Ln)
        H.coords(0, phi)  # raises if φ is not a compressed degree-0 morphism
        if not H.apply_d(phi).is_zero():
            raise HfpRejected("φ is not closed")
        cert = None
        if require_inverse:
            cert = h0_inverse_search(H, HomComplexSpace(Ln, Gm), HomComplexSpace(Gm, Gm),
                                     HomComplexSpace(Ln, Ln), compose_hom, phi,
                                     identity_morphism(Gm), identity_morphism(Ln))
            if not cert:
                raise HfpRejected("φ has no inverse in H⁰(D)", cert.ranks)
        return HfpObject(self, m, n, phi, cert, name)


class HfpObject:
    def __init__(self, ctx: HfpContext, m, n, phi: Morphism, certificate=None, name=""):
        self.ctx = ctx
        self.m, self.n, self.phi = m, n, phi
        self.Gm = ctx.G(m)
        self.Ln = ctx.L(n)
        self.certificate = certificate
        self.name = name or f"({m.name},{n.name})"

    @property
    def strict(self):
        c = self.certificate
        return bool(c) and c.h_source.is_zero() and c.h_target.is_zero()

    def identity(self):
        return HfpMorphism(self, self, 0, identity_morphism(self.m), identity_morphism(self.n),
                           Morphism(self.Gm, self.Ln, -1, {}))

    def __repr__(self):
        return f"HfpObject{self.name}"


class HfpMorphism:
    __slots__ = ("source", "target", "degree", "mu", "nu", "gamma")

    def __init__(self, source: HfpObject, target: HfpObject, degree, mu, nu, gamma):
        if mu.degree != degree or nu.degree != degree or gamma.degree != degree - 1:
            raise ValueError("component degrees are inconsistent with the total degree")
        self.source, self.target, self.degree = source, target, degree
        self.mu, self.nu, self.gamma = mu, nu, gamma

    @classmethod
    def zero(cls, x1, x2, i):
        return cls(x1, x2, i, Morphism(x1.m, x2.m, i, {}), Morphism(x1.n, x2.n, i, {}),
                   Morphism(x1.Gm, x2.Ln, i - 1, {}))

    def __add__(self, o):
        return HfpMorphism(self.source, self.target, self.degree, self.mu + o.mu, self.nu + o.nu,
                           self.gamma + o.gamma)

    def __neg__(self):
        return HfpMorphism(self.source, self.target, self.degree, -self.mu, -self.nu, -self.gamma)

    def __sub__(self, o):
        return self + (-o)

    def scale(self, c):
        return HfpMorphism(self.source, self.target, self.degree, self.mu.scale(c),
                           self.nu.scale(c), self.gamma.scale(c))

    def is_zero(self):
        return self.mu.is_zero() and self.nu.is_zero() and self.gamma.is_zero()

    def __eq__(self, o):
        return isinstance(o, HfpMorphism) and (self - o).is_zero()

    def __repr__(self):
        return f"HfpMorphism(deg {self.degree})"


def hfp_compose(g: HfpMorphism, f: HfpMorphism) -> HfpMorphism:
    """``(μ'μ, ν'ν, a γ'G(μ) + b L(ν')γ)`` with signs from the context convention."""
    if f.target is not g.source:
        raise ValueError("endpoint mismatch in composition")
    ctx = f.source.ctx
    a, b = ctx.convention.c_signs(f.mu.degree, g.nu.degree)
    fld = ctx.D.field
    mu = compose_hom(g.mu, f.mu)
    nu = compose_hom(g.nu, f.nu)
    t1 = compose_hom(g.gamma, _rebase(ctx.G_mor(f.mu), f.source.Gm, g.source.Gm))
    t2 = compose_hom(_rebase(ctx.L_mor(g.nu), f.target.Ln, g.target.Ln), f.gamma)
    gamma = _retarget(t1.scale(fld(a)), f.source.Gm, g.target.Ln) + \
        _retarget(t2.scale(fld(b)), f.source.Gm, g.target.Ln)
    return HfpMorphism(f.source, g.target, f.degree + g.degree, mu, nu, gamma)


def _rebase(m: Morphism, src, tgt):
    return Morphism(src, tgt, m.degree, m.blocks)


def _retarget(m: Morphism, src, tgt):
    return Morphism(src, tgt, m.degree, m.blocks)


class HfpHomComplex:
    """``Hom^i = B^i(m1,m2) ⊕ C^i(n1,n2) ⊕ D^{i-1}(G m1, L n2)``."""

    def __init__(self, x1: HfpObject, x2: HfpObject):
        if x1.ctx is not x2.ctx:
            raise ValueError("objects from different contexts")
        self.x1, self.x2 = x1, x2
        self.ctx = x1.ctx
        self.field = self.ctx.D.field
        self.Bh = HomComplexSpace(x1.m, x2.m)
        self.Ch = HomComplexSpace(x1.n, x2.n)
        self.Dh = HomComplexSpace(x1.Gm, x2.Ln)
        los = [h.lo for h in (self.Bh, self.Ch) if h.lo <= h.hi]
        his = [h.hi for h in (self.Bh, self.Ch) if h.lo <= h.hi]
        if self.Dh.lo <= self.Dh.hi:
            los.append(self.Dh.lo + 1)
            his.append(self.Dh.hi + 1)
        self.lo, self.hi = (min(los), max(his)) if los else (0, -1)
        self._dmat = {}

    def dims3(self, i):
        return self.Bh.dim(i), self.Ch.dim(i), self.Dh.dim(i - 1)

    def dim(self, i):
        return sum(self.dims3(i))

    def coords(self, i, F: HfpMorphism, check=True):
        return self.Bh.coords(i, F.mu, check) + self.Ch.coords(i, F.nu, check) + \
            self.Dh.coords(i - 1, F.gamma, check)

    def element(self, i, v):
        nb, nc, nd = self.dims3(i)
        mu = self.Bh.element(i, v[:nb])
        nu = self.Ch.element(i, v[nb:nb + nc])
        gamma = self.Dh.element(i - 1, v[nb + nc:])
        return HfpMorphism(self.x1, self.x2, i, mu, nu, gamma)

    def basis(self, i):
        n = self.dim(i)
        z, o = self.field.zero, self.field.one
        out = []
        for r in range(n):
            v = [z] * n
            v[r] = o
            out.append(self.element(i, v))
        return out

    def cross_term(self, mu, nu, i):
        """``s_μ φ₂G(μ) - s_ν L(ν)φ₁`` in ``D^i(G m1, L n2)``."""
        ctx = self.ctx
        _, sm, sn = ctx.convention.d_signs(i)
        fld = self.field
        a = compose_hom(self.x2.phi, _rebase(ctx.G_mor(mu), self.x1.Gm, self.x2.Gm))
        b = compose_hom(_rebase(ctx.L_mor(nu), self.x1.Ln, self.x2.Ln), self.x1.phi)
        a = Morphism(self.x1.Gm, self.x2.Ln, i, a.blocks).scale(fld(sm))
        b = Morphism(self.x1.Gm, self.x2.Ln, i, b.blocks).scale(fld(-sn))
        return a + b

    def apply_d(self, F: HfpMorphism) -> HfpMorphism:
        i = F.degree
        sg, _, _ = self.ctx.convention.d_signs(i)
        mu = self.Bh.apply_d(F.mu)
        nu = self.Ch.apply_d(F.nu)
        dg = self.Dh.apply_d(F.gamma).scale(self.field(sg))
        gamma = dg + self.cross_term(F.mu, F.nu, i)
        return HfpMorphism(self.x1, self.x2, i + 1, mu, nu, gamma)

    def d_matrix(self, i):
        m = self._dmat.get(i)
        if m is not None:
            return m
        n, n1 = self.dim(i), self.dim(i + 1)
        if n == 0:
            m = MatrixK.zeros(self.field, n1, 0)
        else:
            cols = [self.coords(i + 1, self.apply_d(b)) for b in self.basis(i)]
            m = MatrixK.from_columns(self.field, cols, n1)
        self._dmat[i] = m
        return m

    def complex(self, lo=None, hi=None) -> FiniteComplex:
        lo = self.lo - 1 if lo is None else lo
        hi = self.hi + 1 if hi is None else hi
        dims = {t: self.dim(t) for t in range(lo, hi + 1)}
        diffs = {t: self.d_matrix(t) for t in range(lo, hi)}
        return FiniteComplex(self.field, lo, hi, dims, diffs).validate()

"""Strict descent data, degreewise Milnor patching and strict gluing."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..algebra import amatrix as am
from ..checks import ValidationReport
from ..cohesive import CohesiveModule, HomComplexSpace, Morphism, check_cohesive
from ..cohesive.equivalence import InverseCertificate, degree_zero_complex
from ..cohesive.module import PushforwardModule
from ..hfp import HfpObject
from .linear import SolveFailure, matrix_unknowns, solve_affine
from .milnor import PsiResult, milnor_psi

__all__ = [
    "StrictDescentDatum",
    "GlueError",
    "PsiComplex",
    "psi_complexes",
    "glue_strict",
    "GlueResult",
    "lift_to_patch",
]


class GlueError(ValueError):
    pass


@dataclass
class StrictDescentDatum:
    """``(m, n, φ)`` with φ a closed strict isomorphism ``G m -> L n``.

    ``phi0[j]`` and ``phi0_inv[j]`` are the degree-j blocks (form degree 0).
    """

    m: CohesiveModule
    n: CohesiveModule
    phi0: dict
    phi0_inv: dict
    name: str = ""

    def check(self, ctx) -> ValidationReport:
        D = ctx.D
        Gm, Ln = ctx.G(self.m), ctx.L(self.n)
        rep = ValidationReport(f"strict descent datum {self.name or '?'}")
        degs = sorted(set(Gm.degrees) | set(Ln.degrees))
        bad = []
        for j in degs:
            a = self.phi0.get(j, am.zeros(Ln.size(j), Gm.size(j)))
            b = self.phi0_inv.get(j, am.zeros(Gm.size(j), Ln.size(j)))
            if Gm.size(j) and Ln.size(j):
                ok = am.mmul(D, a, b) == Ln.e(j) and am.mmul(D, b, a) == Gm.e(j)
            else:
                ok = Gm.size(j) == Ln.size(j) == 0
            if any(D.deg[i] for M in (a, b) for r in M for x in r for i in x):
                ok = False
            if not ok:
                bad.append(j)
        rep.add("strict-inverse", not bad, bad or None)
        phi = self.phi(ctx)
        try:
            closed = HomComplexSpace(Gm, Ln).apply_d(phi).is_zero()
        except ValueError:
            closed = False
        rep.add("phi-closed", closed)
        return rep

    def phi(self, ctx):
        return Morphism(ctx.G(self.m), ctx.L(self.n), 0,
                        {(j, j): M for j, M in self.phi0.items() if not am.is_zero(M)})

    def to_object(self, ctx, name=None) -> HfpObject:
        rep = self.check(ctx)
        if not rep.ok:
            raise GlueError(f"not a strict descent datum: {[c.name for c in rep.failed()]}")
        Gm, Ln = ctx.G(self.m), ctx.L(self.n)
        inv = Morphism(Ln, Gm, 0, {(j, j): M for j, M in self.phi0_inv.items() if not am.is_zero(M)})
        cert = InverseCertificate(True, inv, Morphism(Gm, Gm, -1, {}), Morphism(Ln, Ln, -1, {}),
                                  {"strict": True})
        return HfpObject(ctx, self.m, self.n, self.phi(ctx), cert, name or self.name)


def _zero_part(A, M):
    return am.homogeneous_part(A, M, 0)


def lift_to_patch(sq, res: PsiResult, XB, XC, k):
    """Solve ``UM f(Y) = XB, UN k(Y) = XC, P Y = Y`` with Y in form degree k.

    Returns Y or None when the pair does not lie in the patched module.
    """
    A, B, C = sq.A, sq.B, sq.C
    r = res.rank
    cols = len(XB[0]) if XB and XB[0] else (len(XC[0]) if XC and XC[0] else 0)
    if cols == 0:
        return am.zeros(r, 0)
    cnt, unpack = matrix_unknowns(A, [(r, cols)], k)

    def fun(x):
        (Y,) = unpack(x)
        out = []
        if XB:
            out += am.to_k_vector(B, am.msub(am.mmul(B, res.UM, am.mmap(sq.f, Y), cols), XB))
        if XC:
            out += am.to_k_vector(C, am.msub(am.mmul(C, res.UN, am.mmap(sq.k, Y), cols), XC))
        if r:
            out += am.to_k_vector(A, am.msub(am.mmul(A, res.P, Y, cols), Y))
        return out

    x, _ = solve_affine(A.field, cnt, fun)
    if x is None:
        return None
    return unpack(x)[0]


def _psi_degrees(sq, d: StrictDescentDatum):
    out = {}
    for j in sorted(set(d.m.degrees) | set(d.n.degrees)):
        eM, eN = d.m.e(j), d.n.e(j)
        phi0 = d.phi0.get(j, am.zeros(len(eN), len(eM)))
        out[j] = milnor_psi(sq, eM or [], eN or [], phi0)
    return out


@dataclass
class PsiComplex:
    """Degreewise patched modules with the induced differential over A⁰."""

    psi: dict
    diffs: dict
    module: CohesiveModule
    reports: list = field(default_factory=list)

    def finite_complex(self):
        return degree_zero_complex(self.module).complex()


def psi_complexes(sq, d: StrictDescentDatum) -> PsiComplex:
    """The kernel complex ``(ker[M ⊕ N -> N ⊗ D⁰], d_M ⊕ d_N)`` on degree-zero data.

    Only the form-degree-zero differentials of m and n are used.  Each
    degree is checked projective by ``milnor_psi``.
    """
    psi = _psi_degrees(sq, d)
    A, B, C = sq.A, sq.B, sq.C
    diffs = {}
    for j, res in psi.items():
        if j + 1 not in psi or not res.rank:
            continue
        WB = d.m.omega.get((j + 1, j))
        WC = d.n.omega.get((j + 1, j))
        XB = am.mmul(B, _zero_part(B, WB), res.UM, res.rank) if WB else \
            am.zeros(d.m.size(j + 1), res.rank)
        XC = am.mmul(C, _zero_part(C, WC), res.UN, res.rank) if WC else \
            am.zeros(d.n.size(j + 1), res.rank)
        Y = lift_to_patch(sq, psi[j + 1], XB, XC, 0)
        if Y is None:
            raise GlueError(f"differential does not preserve the kernel in degree {j}")
        if not am.is_zero(Y):
            diffs[j] = Y
    A0 = A.degree_zero()
    idem = {j: r.P for j, r in psi.items() if r.rank}
    omega = {(j + 1, j): am.mmul(A0, am.mmul(A0, idem[j + 1], Y), idem[j])
             for j, Y in diffs.items()}
    mod = CohesiveModule(A0, idem, omega, f"psi({d.name})" if d.name else "psi")
    rep = check_cohesive(mod)
    if not rep.ok:
        raise GlueError("patched differential does not square to zero")
    return PsiComplex(psi, diffs, mod, [rep])


@dataclass
class GlueResult:
    module: CohesiveModule
    psi: dict
    report: ValidationReport


def glue_strict(sq, d: StrictDescentDatum, name=None) -> GlueResult:
    """Glue a strict datum into a cohesive module over A.

    The underlying modules come from ``milnor_psi`` in each degree; the
    connection is the restriction of ``f_*𝔼_M ⊕ k_*𝔼_N`` to the kernel,
    computed by lifting its values on generators back through the patch.
    """
    A = sq.A
    psi = _psi_degrees(sq, d)
    pm, pn = PushforwardModule(sq.f, d.m), PushforwardModule(sq.k, d.n)
    idem = {j: r.P for j, r in psi.items() if r.rank}
    values = {}
    for j, res in psi.items():
        r = res.rank
        if not r:
            continue
        vb = pm.conn_apply(j, res.UM) if d.m.size(j) else {}
        vc = pn.conn_apply(j, res.UN) if d.n.size(j) else {}
        for jt in sorted(set(vb) | set(vc)):
            if jt not in psi:
                raise GlueError(f"connection leaves the patched degrees ({j} -> {jt})")
            tgt = psi[jt]
            total = am.zeros(tgt.rank, r)
            for k in range(A.max_degree + 1):
                XB = am.homogeneous_part(sq.B, vb[jt], k) if jt in vb else am.zeros(d.m.size(jt), r)
                XC = am.homogeneous_part(sq.C, vc[jt], k) if jt in vc else am.zeros(d.n.size(jt), r)
                if am.is_zero(XB) and am.is_zero(XC):
                    continue
                Y = lift_to_patch(sq, tgt, XB, XC, k)
                if Y is None:
                    raise GlueError(f"connection does not preserve the kernel ({j} -> {jt}, form degree {k})")
                if k != j - jt + 1 and not am.is_zero(Y):
                    raise GlueError(f"connection value of wrong form degree ({j} -> {jt})")
                total = am.madd(total, Y)
            values[(jt, j)] = total
    mod = CohesiveModule.from_connection_values(A, idem, values,
                                                name or (f"glue({d.name})" if d.name else "glue"))
    rep = check_cohesive(mod)
    if not rep.ok:
        raise GlueError(f"glued module is not cohesive: {rep}")
    return GlueResult(mod, psi, rep)


def comparison_morphisms(sq, glued: GlueResult, d: StrictDescentDatum, fP, kP):
    """``(μ, ν)``: ``f*P -> m`` and ``k*P -> n`` given by the patch projections."""
    mu = Morphism(fP, d.m, 0, {(j, j): r.UM for j, r in glued.psi.items() if r.rank and d.m.size(j)})
    nu = Morphism(kP, d.n, 0, {(j, j): r.UN for j, r in glued.psi.items() if r.rank and d.n.size(j)})
    return mu, nu


def unglue_map(sq, s: CohesiveModule, glued: GlueResult):
    """``s -> glue(R(s))``: lift the generators ``(f(e), k(e))`` into the patch."""
    blocks = {}
    for j in s.degrees:
        res = glued.psi.get(j)
        if res is None:
            raise SolveFailure("glued module misses a degree of the source", {"degree": j})
        XB = am.mmap(sq.f, s.e(j))
        XC = am.mmap(sq.k, s.e(j))
        Y = lift_to_patch(sq, res, XB, XC, 0)
        if Y is None:
            raise SolveFailure("generators do not lift into the patch", {"degree": j})
        blocks[(j, j)] = Y
    return Morphism(s, glued.module, 0, blocks)

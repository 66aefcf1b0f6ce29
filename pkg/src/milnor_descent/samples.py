"""Seeded randomness and the standard object sets used by checks and the CLI."""

from __future__ import annotations

import numpy as np

from .algebra import amatrix as am
from .cohesive import CohesiveModule, check_cohesive, direct_sum, free_module, shift
from .descent.glue import StrictDescentDatum
from .descent.linear import module_isomorphism_inverse
from .linalg import kernel_basis

__all__ = [
    "make_rng",
    "object_set",
    "matrix_factorization",
    "two_step",
    "random_invertible",
    "random_strict_datum",
    "hfp_probe_objects",
    "random_closed_hfp_morphism",
]


def make_rng(seed, *stream):
    """Counter-based generator; ``stream`` names an independent substream."""
    ss = np.random.SeedSequence(int(seed), spawn_key=tuple(int(s) for s in stream))
    return np.random.Generator(np.random.Philox(ss))


def _el(A, label, c=1):
    return {A.index(label): A.field(c)}


def two_step(A, a, name="", degrees=(0, 1)):
    """``A -a-> A`` in the given degrees (form-degree-zero differential a)."""
    j0, j1 = degrees
    return CohesiveModule(A, {j0: am.identity(A, 1), j1: am.identity(A, 1)}, {(j1, j0): [[a]]}, name)


def matrix_factorization(A, a, b, name="", extra=None):
    """Rank (1, 1) module in degrees 0, 1 with ``(1,0) = a`` (form degree 0)
    and ``(0,1) = b`` (form degree 2); ``extra`` adds form-degree-1 diagonal terms."""
    omega = {(1, 0): [[a]], (0, 1): [[b]]}
    if extra:
        u0, u1 = extra
        omega[(0, 0)] = [[u0]]
        omega[(1, 1)] = [[u1]]
    return CohesiveModule(A, {0: am.identity(A, 1), 1: am.identity(A, 1)}, omega, name)


def object_set(sq):
    """Six cohesive modules over ``sq.A``: free, shifts, two-step, a curved connection."""
    A = sq.A
    if A.curvature:
        dd = "d1d2"
        mf = matrix_factorization(A, _el(A, "x"), _el(A, dd, -1), "MF(x)")
        acyc = matrix_factorization(A, A.unit, _el(A, "x*" + dd, -1), "MF(1)")
        twist = matrix_factorization(A, _el(A, "x"), {A.index(dd): A.field(-1), A.index("y*" + dd): A.field(1)},
                                     "MF(x,y)")
        conn = matrix_factorization(A, _el(A, "x"), _el(A, dd, -1), "MF(x)+xd1",
                                    extra=(_el(A, "x*d1"), _el(A, "x*d1")))
        objs = [mf, shift(mf), acyc, conn, twist, shift(acyc, -1)]
    elif A.max_degree >= 1:
        d1 = "d1"
        conn = CohesiveModule(A, {0: am.identity(A, 1)}, {(0, 0): [[_el(A, "x*" + d1)]]}, "A_xd1")
        objs = [free_module(A, 1, 0, "A"), shift(free_module(A, 1, 0, "A")),
                direct_sum(free_module(A), free_module(A), name="A2"),
                two_step(A, _el(A, "x"), "xA"), shift(two_step(A, _el(A, "y"), "yA"), -1), conn]
    else:
        objs = [free_module(A, 1, 0, "A"), shift(free_module(A, 1, 0, "A")),
                direct_sum(free_module(A), free_module(A), name="A2"),
                two_step(A, _el(A, "x"), "xA"), two_step(A, _el(A, "y"), "yA"),
                two_step(A, A.unit, "1A")]
    for E in objs:
        rep = check_cohesive(E)
        if not rep.ok:
            raise ValueError(f"fixture object {E.name} is not cohesive: {rep}")
    return objs


def _scalar(fld, rng, lo=-3, hi=4):
    return fld(int(rng.integers(lo, hi)))


def random_invertible(R, n, rng, tries=50):
    """Random invertible ``n × n`` over the degree-zero part of R: scalar part
    invertible plus random nilpotent-direction terms.  Returns ``(U, U⁻¹)``."""
    fld = R.field
    unit = next(iter(R.unit))
    others = [i for i in R.degree_range(0) if i != unit]
    I = am.identity(R, n)
    for _ in range(tries):
        U = [[{} for _ in range(n)] for _ in range(n)]
        for a in range(n):
            for b in range(n):
                x = {unit: _scalar(fld, rng)}
                for s in others:
                    x[s] = _scalar(fld, rng, -2, 3)
                U[a][b] = {i: v for i, v in x.items() if v}
        V, _ = module_isomorphism_inverse(R, I, I, U)
        if V is not None:
            return U, V
    raise RuntimeError("no invertible matrix found")


def _embed(R, M, rows, cols):
    out = am.zeros(rows, cols)
    for a, r in enumerate(M):
        for b, x in enumerate(r):
            out[a][b] = dict(x)
    return out


def random_strict_datum(sq, rng, max_rank=3, name="") -> StrictDescentDatum:
    """Projective ``M``, ``N`` of equal rank ≤ max_rank glued by a random isomorphism.

    One or two degrees, zero connection (valid over uncurved squares with
    zero derivation).
    """
    B, C, D = sq.B, sq.C, sq.D
    degs = [0] if rng.integers(0, 2) == 0 else [0, 1]
    ie, oe = {}, {}
    phi0, phi0_inv = {}, {}
    for j in degs:
        r = int(rng.integers(1, max_rank + 1))
        nm = int(rng.integers(r, max_rank + 1))
        nn = int(rng.integers(r, max_rank + 1))
        Q, Qi = random_invertible(B, nm, rng)
        Q2, Q2i = random_invertible(C, nn, rng)
        G, Gi = random_invertible(D, r, rng)
        EM = _embed(B, am.identity(B, r), nm, nm)
        EN = _embed(C, am.identity(C, r), nn, nn)
        ie[j] = am.mmul(B, am.mmul(B, Q, EM), Qi)
        oe[j] = am.mmul(C, am.mmul(C, Q2, EN), Q2i)
        gQi, gQ = am.mmap(sq.g, Qi), am.mmap(sq.g, Q)
        lQ2, lQ2i = am.mmap(sq.l, Q2), am.mmap(sq.l, Q2i)
        phi0[j] = am.mmul(D, am.mmul(D, lQ2, _embed(D, G, nn, nm)), gQi)
        phi0_inv[j] = am.mmul(D, am.mmul(D, gQ, _embed(D, Gi, nm, nn)), lQ2i)
    m = CohesiveModule(B, ie, {}, f"M{name}")
    n = CohesiveModule(C, oe, {}, f"N{name}")
    return StrictDescentDatum(m, n, phi0, phi0_inv, name)


def hfp_probe_objects(ctx):
    """Fiber-product objects exercising every sign: free, shifted, two-step and
    a two-step with unit differential (so ``G(dμ) ≠ 0`` occurs).

    Over a curved chart the free and two-step parts are replaced by matrix
    factorizations of ``x·δ₁δ₂`` (the only curvature among the fixtures),
    so every probe is a genuine cohesive module.
    """
    B, C, D = ctx.B, ctx.C, ctx.D

    def obj(m, n, name):
        for E in (m, n):
            rep = check_cohesive(E)
            if not rep.ok:
                raise ValueError(f"probe {name}: {E.name} is not cohesive: {rep}")
        phi = {(j, j): am.identity(D, m.size(j)) for j in m.degrees}
        return ctx.make_object(m, n, phi, name)

    if B.curvature or C.curvature:
        def mf(R, unit=False, extra=False):
            dd = "d1d2"
            if not R.curvature:
                return matrix_factorization(R, R.unit if unit else {}, {} if unit else _el(R, dd, -1))
            ex = (_el(R, "x*d1"), _el(R, "x*d1")) if extra else None
            if unit:
                return matrix_factorization(R, R.unit, _el(R, "x*" + dd, -1))
            return matrix_factorization(R, _el(R, "x"), _el(R, dd, -1), extra=ex)

        return [
            obj(mf(B), mf(C), "X0"),
            obj(shift(mf(B)), shift(mf(C)), "X1"),
            obj(mf(B, extra=True), mf(C, extra=True), "X2"),
            obj(mf(B, unit=True), mf(C, unit=True), "X3"),
        ]
    xb = _el(B, "x") if "x" in B.flat_labels else B.unit
    return [
        obj(free_module(B), free_module(C), "X0"),
        obj(shift(free_module(B)), shift(free_module(C)), "X1"),
        obj(two_step(B, xb), two_step(C, {}), "X2"),
        obj(two_step(B, B.unit), two_step(C, C.unit), "X3"),
    ]


def random_closed_hfp_morphism(H, rng, degree=0):
    """Random cocycle of an HFP hom complex (coefficients in -2..2)."""
    fld = H.field
    dm = H.d_matrix(degree)
    n = H.dim(degree)
    if n == 0:
        return H.element(degree, [])
    basis = kernel_basis(fld, [list(r) for r in dm.entries], n) if dm.rows else \
        [[fld.one if i == t else fld.zero for i in range(n)] for t in range(n)]
    v = [fld.zero] * n
    for b in basis:
        c = _scalar(fld, rng, -2, 3)
        v = [p + c * q for p, q in zip(v, b)]
    return H.element(degree, v)

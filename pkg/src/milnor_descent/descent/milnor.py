"""Milnor patching of projective modules over the degree-zero square.

Given projective ``M`` over B⁰, ``N`` over C⁰ and an isomorphism
``φ⁰ : g*M -> l*N`` over D⁰, the patched module is the kernel of
``M ⊕ N -> l*N, (m, n) -> φ⁰ g(m) - l(n)``, viewed as an A⁰-module through f
and k.  We pick A⁰-generators of the kernel, then solve for an idempotent
``P`` on the free module that splits the surjection onto the kernel.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..algebra import amatrix as am
from ..algebra.graded import add, neg
from ..cohesive.equivalence import idempotent_image
from ..linalg import MatrixK, Subspace
from .linear import SolveFailure, matrix_unknowns, module_isomorphism_inverse, solve_affine

__all__ = ["PsiResult", "milnor_psi", "kernel_map_matrix"]


@dataclass
class PsiResult:
    """The patched module ``im(P) ⊂ (A⁰)^r`` and its comparison maps.

    ``UM`` (n_M × r over B) and ``UN`` (n_N × r over C) send the i-th free
    generator to the M and N components of the i-th kernel generator.
    ``VM``/``VN`` are the inverse isomorphisms ``M -> f*P`` and ``N -> k*P``.
    """

    P: list
    UM: list
    UN: list
    VM: list = None
    VN: list = None
    kernel_dim: int = 0
    info: dict = field(default_factory=dict)

    @property
    def rank(self):
        return len(self.P)


def _col(M, i):
    return [r[i] for r in M]


def kernel_map_matrix(sq, eM, eN, phi0):
    """The k-linear map ``M ⊕ N -> l*N`` on the A⁰-spans of the idempotents.

    Returns ``(matrix, M-space, N-space)``; spaces are ``(Subspace, to_vec, from_vec)``.
    """
    B, C, D = sq.B, sq.C, sq.D
    Ms = idempotent_image(B, eM)
    Ns = idempotent_image(C, eN)
    nN = len(eN)

    def toD(col):
        return [x for a in col for x in D.coords(a, 0)]

    cols = []
    for b in Ms[0].basis:
        m = Ms[2](b)
        img = am.mmul(D, phi0, [[sq.g(a)] for a in m]) if nN else []
        cols.append(toD([r[0] for r in img]))
    for b in Ns[0].basis:
        n = Ns[2](b)
        cols.append(toD([neg(sq.l(a)) for a in n]))
    rows = nN * D.dim_of_degree(0)
    fld = sq.A.field
    mat = MatrixK.from_columns(fld, cols, rows) if cols else MatrixK.zeros(fld, rows, 0)
    return mat, Ms, Ns


def milnor_psi(sq, eM, eN, phi0) -> PsiResult:
    """Patch ``(M, N, φ⁰)`` into a projective A⁰-module.

    ``eM``, ``eN`` are idempotent matrices over B⁰, C⁰ (as matrices over B, C);
    ``phi0`` is ``n_N × n_M`` over D⁰.  Raises SolveFailure with the ranks of
    the failing system when no splitting exists.
    """
    A, B, C = sq.A, sq.B, sq.C
    fld = A.field
    nM, nN = len(eM), len(eN)
    mat, Ms, Ns = kernel_map_matrix(sq, eM, eN, phi0)
    dm, dn = len(Ms[0]), len(Ns[0])
    # kernel elements as (column over B⁰, column over C⁰)
    kern = []
    for v in (mat.kernel_basis() if dm + dn else []):
        mvec = Ms[0].combine(v[:dm]) if dm else []
        nvec = Ns[0].combine(v[dm:]) if dn else []
        kern.append((Ms[2](mvec) if nM else [], Ns[2](nvec) if nN else []))

    wM, wN = nM * B.dim_of_degree(0), nN * C.dim_of_degree(0)

    def amb(m, n):
        return (Ms[1](m) if nM else []) + (Ns[1](n) if nN else [])

    def act(a, m, n):
        fa, ka = sq.f(a), sq.k(a)
        return [B.mul(fa, x) for x in m], [C.mul(ka, x) for x in n]

    a0 = list(A.degree_range(0))
    one = fld.one
    def orbit(m, n):
        return [amb(*act({s: one}, m, n)) for s in a0]

    # greedy: always take the candidate whose A⁰-orbit enlarges the span most,
    # so free modules come out with a minimal number of generators
    cands = list(kern)
    for i in range(len(kern)):
        for j in range(i + 1, len(kern)):
            (m1, n1), (m2, n2) = kern[i], kern[j]
            cands.append(([add(a, b) for a, b in zip(m1, m2)], [add(a, b) for a, b in zip(n1, n2)]))
    gens = []
    span = Subspace(fld, wM + wN, [])
    while len(span) < len(kern):
        best, best_dim = None, len(span)
        for c in cands:
            dim = len(Subspace(fld, wM + wN, list(span.basis) + orbit(*c)))
            if dim > best_dim:
                best, best_dim = c, dim
        if best is None:
            break
        gens.append(best)
        span = Subspace(fld, wM + wN, list(span.basis) + orbit(*best))
    if len(span) != len(kern):
        raise SolveFailure("kernel is not closed under the A⁰-action", {"kernel": len(kern), "span": len(span)})
    r = len(gens)
    UM = [[gens[i][0][row] for i in range(r)] for row in range(nM)]
    UN = [[gens[i][1][row] for i in range(r)] for row in range(nN)]

    def pi(col):
        """Ambient vector of ``Σ col_i · g_i``."""
        m = [{} for _ in range(nM)]
        n = [{} for _ in range(nN)]
        for i, a in enumerate(col):
            if not a:
                continue
            am_, an_ = act(a, *gens[i])
            m = [add(x, y) for x, y in zip(m, am_)]
            n = [add(x, y) for x, y in zip(n, an_)]
        return amb(m, n)

    # ker π as k-vectors of (A⁰)^r
    d0 = A.dim_of_degree(0)
    pcols = []
    for i in range(r):
        for s in a0:
            col = [{} for _ in range(r)]
            col[i] = {s: one}
            pcols.append(pi(col))
    pmat = MatrixK.from_columns(fld, pcols, wM + wN) if pcols else MatrixK.zeros(fld, wM + wN, 0)
    kerpi = [am.from_k_vector(A, v, r, 1, 0) for v in (pmat.kernel_basis() if pcols else [])]

    cnt, unpack = matrix_unknowns(A, [(r, r)])
    gamb = [amb(*g) for g in gens]

    def fun(x):
        (S,) = unpack(x)
        out = []
        for i in range(r):
            out.extend(p - q for p, q in zip(pi(_col(S, i)), gamb[i]))
        for w in kerpi:
            out.extend(am.to_k_vector(A, am.mmul(A, S, w), 0))
        return out

    x, info = solve_affine(fld, cnt, fun)
    info.update(kernel=len(kern), generators=r, kernel_of_pi=len(kerpi), A0_dim=d0)
    if x is None:
        raise SolveFailure("no idempotent splitting of the free surjection", info)
    (P,) = unpack(x)
    if r and am.mmul(A, P, P) != P:
        raise SolveFailure("splitting is not idempotent", info)
    res = PsiResult(P, UM, UN, kernel_dim=len(kern), info=info)
    round_trip(sq, res, eM, eN)
    return res


def round_trip(sq, res: PsiResult, eM, eN):
    """Base-change ``P`` back to B⁰, C⁰ and invert the comparison maps."""
    fP = am.mmap(sq.f, res.P)
    kP = am.mmap(sq.k, res.P)
    B, C = sq.B, sq.C
    if res.rank and eM and am.mmul(B, res.UM, fP, res.rank) != res.UM:
        raise SolveFailure("M-comparison is not compressed", {})
    VM, iM = module_isomorphism_inverse(B, fP, eM, res.UM)
    VN, iN = module_isomorphism_inverse(C, kP, eN, res.UN)
    if VM is None or VN is None:
        raise SolveFailure("base change of the patched module does not recover the input",
                           {"M": iM, "N": iN})
    res.VM, res.VN = VM, VN
    return res

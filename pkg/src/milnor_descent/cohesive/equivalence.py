"""Homotopy-equivalence tests.

Two independent routes:

* ``is_homotopy_equivalence`` looks only at the form-degree-zero part
  φ⁰ and asks whether it is a quasi-isomorphism of the complexes (E, 𝔼⁰);
* ``h0_inverse_search`` solves for an inverse class in H⁰ together with
  the two homotopies, using nothing but hom complexes and composition.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..algebra import amatrix as am
from ..linalg import (
    FiniteComplex,
    MatrixK,
    Subspace,
    complex_cohomology,
    induced_cohomology_map,
    rank,
    solve,
)
from .hom import HomComplexSpace, Morphism, compose_hom, identity_morphism

__all__ = [
    "DegreeZeroComplex",
    "degree_zero_complex",
    "EquivalenceCertificate",
    "is_homotopy_equivalence",
    "InverseCertificate",
    "h0_inverse_search",
    "cohesive_inverse_search",
    "solve_rank_one_maurer_cartan",
]


class DegreeZeroComplex:
    """The complex ``(E^j, 𝔼⁰)`` of k-vector spaces underlying a module.

    ``E^j`` is the span of the columns of ``e_j`` over A⁰, sitting inside
    ``k^{n_j dim A⁰}``; ``diff_apply(j, column)`` evaluates 𝔼⁰ on a column.
    """

    def __init__(self, field, spaces, diff_apply, lo, hi):
        self.field = field
        self.spaces = spaces  # j -> (Subspace, to_vec, from_vec)
        self.diff_apply = diff_apply
        self.lo, self.hi = lo, hi
        self._complex = None

    def dim(self, j):
        sp = self.spaces.get(j)
        return len(sp[0]) if sp else 0

    def coords(self, j, cols):
        sp, to_vec, _ = self.spaces[j]
        return sp.coords(to_vec(cols))

    def basis_columns(self, j):
        sp, _, from_vec = self.spaces[j]
        return [from_vec(b) for b in sp.basis]

    def complex(self):
        if self._complex is None:
            dims, diffs = {}, {}
            for j in range(self.lo, self.hi + 1):
                dims[j] = self.dim(j)
            for j in range(self.lo, self.hi):
                n, n1 = self.dim(j), self.dim(j + 1)
                if n == 0 or n1 == 0:
                    continue
                cols = [self.coords(j + 1, self.diff_apply(j, c)) for c in self.basis_columns(j)]
                diffs[j] = MatrixK.from_columns(self.field, cols, n1)
            self._complex = FiniteComplex(self.field, self.lo, self.hi, dims, diffs).validate()
        return self._complex


def _column_tools(A, n):
    """Vector <-> column (list of n A⁰-elements) conversions."""
    n0 = A.dim_of_degree(0)

    def to_vec(col):
        out = []
        for a in col:
            out.extend(A.coords(a, 0))
        return out

    def from_vec(v):
        return [A.from_coords(v[i * n0:(i + 1) * n0], 0) for i in range(n)]

    return to_vec, from_vec


def idempotent_image(A, e):
    """Subspace of ``(A⁰)^n`` spanned over k by the columns of ``e`` times A⁰."""
    n = len(e)
    to_vec, from_vec = _column_tools(A, n)
    vecs = []
    for c in range(n):
        col = [e[r][c] for r in range(n)]
        for s in A.degree_range(0):
            vecs.append(to_vec([A.mul(a, {s: A.field.one}) for a in col]))
    return Subspace(A.field, n * A.dim_of_degree(0), vecs), to_vec, from_vec


def degree_zero_complex(E) -> DegreeZeroComplex:
    A = E.algebra
    spaces = {}
    for j in E.degrees:
        spaces[j] = idempotent_image(A, E.e(j))
    zero_blocks = {}
    for (jt, js), W in E.omega.items():
        if jt == js + 1:
            W0 = am.homogeneous_part(A, W, 0)
            if not am.is_zero(W0):
                zero_blocks[js] = W0

    def diff_apply(j, col):
        W = zero_blocks.get(j)
        if W is None:
            return [{} for _ in range(E.size(j + 1))]
        return [r[0] for r in am.mmul(A, W, [[a] for a in col])]

    degs = E.degrees
    lo, hi = (min(degs), max(degs)) if degs else (0, -1)
    return DegreeZeroComplex(A.field, spaces, diff_apply, lo, hi)


@dataclass
class EquivalenceCertificate:
    verdict: bool
    induced_maps: dict = field(default_factory=dict)
    source_dims: dict = field(default_factory=dict)
    target_dims: dict = field(default_factory=dict)

    def __bool__(self):
        return self.verdict

    def to_dict(self):
        return {"verdict": self.verdict,
                "source_h": {str(k): v for k, v in sorted(self.source_dims.items())},
                "target_h": {str(k): v for k, v in sorted(self.target_dims.items())},
                "induced_ranks": {str(k): m.rank() for k, m in sorted(self.induced_maps.items())}}


def chain_map_on_degree_zero(src: DegreeZeroComplex, tgt: DegreeZeroComplex, apply_block, degrees):
    """Matrices of a degreewise map given by ``apply_block(j, column) -> column``."""
    out = {}
    for j in degrees:
        n, m = src.dim(j), tgt.dim(j)
        if n == 0:
            continue
        if m == 0:
            out[j] = MatrixK.zeros(src.field, 0, n)
            continue
        cols = [tgt.coords(j, apply_block(j, c)) for c in src.basis_columns(j)]
        out[j] = MatrixK.from_columns(src.field, cols, m)
    return out


def quasi_iso_verdict(src: DegreeZeroComplex, tgt: DegreeZeroComplex, maps):
    cs, ct = src.complex(), tgt.complex()
    lo, hi = min(cs.lo, ct.lo), max(cs.hi, ct.hi)
    cs = FiniteComplex(cs.field, lo, hi, cs.dims, cs.diffs)
    ct = FiniteComplex(ct.field, lo, hi, ct.dims, ct.diffs)
    induced, verdict = induced_cohomology_map(cs, ct, maps)
    return induced, verdict, cs, ct


def _hdims(c, induced):
    h = complex_cohomology(c, check=False)
    return {t: h[t].dim for t in h if h[t].dim}


def is_homotopy_equivalence(phi: Morphism) -> EquivalenceCertificate:
    """φ closed of degree 0 is a homotopy equivalence iff φ⁰ is a quasi-isomorphism."""
    if phi.degree != 0:
        raise ValueError("only degree-zero morphisms can be homotopy equivalences")
    E1, E2 = phi.source, phi.target
    A = E2.algebra
    z1, z2 = degree_zero_complex(E1), degree_zero_complex(E2)
    blocks0 = phi.form_degree_zero()

    def apply_block(j, col):
        M = blocks0.get((j, j))
        if M is None:
            return [{} for _ in range(E2.size(j))]
        return [r[0] for r in am.mmul(A, M, [[a] for a in col])]

    maps = chain_map_on_degree_zero(z1, z2, apply_block, E1.degrees)
    induced, verdict, cs, ct = quasi_iso_verdict(z1, z2, maps)
    return EquivalenceCertificate(verdict, induced, _hdims(cs, induced), _hdims(ct, induced))


@dataclass
class InverseCertificate:
    found: bool
    psi: object = None
    h_source: object = None
    h_target: object = None
    ranks: dict = field(default_factory=dict)

    def __bool__(self):
        return self.found


def h0_inverse_search(hom_xy, hom_yx, hom_xx, hom_yy, compose, phi, id_x, id_y):
    """Solve ``dψ = 0, ψφ - d h1 = id_x, φψ - d h2 = id_y`` exactly.

    ``hom_ab`` are hom-complex objects (``dim``, ``basis``, ``coords``,
    ``d_matrix``, ``element``); ``compose(g, f)`` composes elements.
    """
    fld = hom_xy.field
    npsi = hom_yx.dim(0)
    nh1 = hom_xx.dim(-1)
    nh2 = hom_yy.dim(-1)
    n1 = hom_yx.dim(1)
    nxx = hom_xx.dim(0)
    nyy = hom_yy.dim(0)
    ncols = npsi + nh1 + nh2
    zero = fld.zero
    rows = []
    rhs = []
    # closedness of ψ
    dpsi = hom_yx.d_matrix(0)
    for r in range(n1):
        rows.append(list(dpsi.entries[r]) + [zero] * (nh1 + nh2))
        rhs.append(zero)
    psi_basis = hom_yx.basis(0)
    left = [hom_xx.coords(0, compose(p, phi)) for p in psi_basis]
    right = [hom_yy.coords(0, compose(phi, p)) for p in psi_basis]
    dh1 = hom_xx.d_matrix(-1)
    dh2 = hom_yy.d_matrix(-1)
    idx = hom_xx.coords(0, id_x)
    idy = hom_yy.coords(0, id_y)
    for r in range(nxx):
        row = [left[i][r] for i in range(npsi)]
        row += [-x for x in dh1.entries[r]] if nh1 else []
        row += [zero] * nh2
        rows.append(row)
        rhs.append(idx[r])
    for r in range(nyy):
        row = [right[i][r] for i in range(npsi)]
        row += [zero] * nh1
        row += [-x for x in dh2.entries[r]] if nh2 else []
        rows.append(row)
        rhs.append(idy[r])
    ranks = {"unknowns": ncols, "equations": len(rows)}
    if ncols == 0:
        ok = not any(rhs)
        return InverseCertificate(ok, None, None, None, ranks)
    sol = solve(fld, rows, ncols, rhs)
    if sol is None:
        ranks["rank"] = rank(fld, rows, ncols)
        ranks["augmented_rank"] = rank(fld, [r + [b] for r, b in zip(rows, rhs)], ncols + 1)
        return InverseCertificate(False, None, None, None, ranks)
    psi = hom_yx.element(0, sol[:npsi])
    h1 = hom_xx.element(-1, sol[npsi:npsi + nh1])
    h2 = hom_yy.element(-1, sol[npsi + nh1:])
    return InverseCertificate(True, psi, h1, h2, ranks)


def cohesive_inverse_search(phi: Morphism) -> InverseCertificate:
    x, y = phi.source, phi.target
    return h0_inverse_search(HomComplexSpace(x, y), HomComplexSpace(y, x), HomComplexSpace(x, x),
                             HomComplexSpace(y, y), compose_hom, phi,
                             identity_morphism(x), identity_morphism(y))


def solve_rank_one_maurer_cartan(A):
    """Find ``u ∈ A^1`` with ``d u + u² = -c`` (connection ω¹ = u on a free rank-1 module in degree 0).

    The quadratic term is handled only when it vanishes identically on A¹
    (then the equation is linear).  Returns ``(u, info)``; ``u`` is None
    when no solution exists or the case is unsupported.
    """
    fld = A.field
    deg1 = list(A.degree_range(1))
    quad_zero = all(not _sym_product(A, i, j) for i in deg1 for j in deg1) and \
        all(not A.mul_basis(i, i) for i in deg1)
    info = {"quadratic_term_vanishes": quad_zero}
    if not quad_zero:
        info["reason"] = "quadratic term nonzero; only the linear case is solved"
        return None, info
    deg2 = list(A.degree_range(2))
    rows = [[A.derivation.get(i, {}).get(t, fld.zero) for i in deg1] for t in deg2]
    rhs = [-A.curvature.get(t, fld.zero) for t in deg2]
    if not deg1:
        ok = not any(rhs)
        info["reason"] = None if ok else "A^1 = 0 and c != 0"
        return ({} if ok else None), info
    sol = solve(fld, rows, len(deg1), rhs) if rows else [fld.zero] * len(deg1)
    if sol is None:
        info["reason"] = "linear system d u = -c is inconsistent"
        info["rank"] = rank(fld, rows, len(deg1))
        return None, info
    return {i: x for i, x in zip(deg1, sol) if x}, info


def _sym_product(A, i, j):
    a = A.mul_basis(i, j)
    b = A.mul_basis(j, i)
    out = dict(a)
    for t, x in b.items():
        s = out.get(t, A.field.zero) + x
        if s:
            out[t] = s
        else:
            out.pop(t, None)
    return out

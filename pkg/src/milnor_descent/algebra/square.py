"""Commuting squares of curved dgas and the checks descent needs."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..checks import ValidationReport
from ..linalg import MatrixK, Subspace, kernel_basis, rank
from .graded import GradedAlgebra
from .maps import CurvedDgaMap
from .validate import validate_cdga_map, validate_curved_dga

__all__ = [
    "DescentSquare",
    "FiberProductError",
    "build_degree_zero_fiber_product",
    "check_descent_assumptions",
    "evaluation_matrix",
]


class FiberProductError(ValueError):
    pass


@dataclass
class DescentSquare:
    """The square ``A -f-> B -g-> D`` and ``A -k-> C -l-> D`` with recorded bases.

    ``bases[name]`` lists basis indices of that algebra which form a basis
    over its degree-zero part.
    """

    A: GradedAlgebra
    B: GradedAlgebra
    C: GradedAlgebra
    D: GradedAlgebra
    f: CurvedDgaMap
    k: CurvedDgaMap
    g: CurvedDgaMap
    l: CurvedDgaMap
    bases: dict = field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        self._h = None
        self._validated = None

    @property
    def h(self):
        """The diagonal ``g∘f`` (equal to ``l∘k`` once validated)."""
        if self._h is None:
            self._h = self.g.compose(self.f)
        return self._h

    def algebra(self, name):
        return getattr(self, name)

    def validated(self):
        if self._validated is None:
            self._validated = check_descent_assumptions(self)
        return self._validated

    def require_valid(self):
        rep = self.validated()
        if not rep.ok:
            raise ValueError(f"descent square {self.name or '?'} fails: "
                             + ", ".join(c.name for c in rep.failed()))
        return self


def build_degree_zero_fiber_product(b0, c0, d0, g0: CurvedDgaMap, l0: CurvedDgaMap, name="P"):
    """Kernel of ``B0 + C0 -> D0, (b, c) -> g0(b) - l0(c)`` as an algebra.

    Returns ``(P, pB, pC)`` with the two projections; raises
    FiberProductError if the kernel is not closed under multiplication or
    the universal-property checks fail.
    """
    fld = b0.field
    nb, nc = b0.dim, c0.dim
    rows = []
    for t in range(d0.dim):
        row = [g0.images.get(i, {}).get(t, fld.zero) for i in range(nb)]
        row += [-l0.images.get(i, {}).get(t, fld.zero) for i in range(nc)]
        rows.append(row)
    if rows:
        ker = kernel_basis(fld, rows, nb + nc)
    else:
        ker = [[fld.one if i == j else fld.zero for j in range(nb + nc)] for i in range(nb + nc)]
    K = Subspace(fld, nb + nc, ker)
    basis = K.basis
    n = len(basis)

    def split(v):
        return b0.from_coords(v[:nb]), c0.from_coords(v[nb:])

    prods = {}
    for i in range(n):
        bi, ci = split(basis[i])
        for j in range(n):
            bj, cj = split(basis[j])
            v = b0.coords(b0.mul(bi, bj)) + c0.coords(c0.mul(ci, cj))
            try:
                co = K.coords(v)
            except ValueError:
                raise FiberProductError(f"product of kernel basis elements {i},{j} leaves the kernel") from None
            prods[(i, j)] = {t: x for t, x in enumerate(co) if x}
    try:
        unit = K.coords(b0.coords(b0.unit) + c0.coords(c0.unit))
    except ValueError:
        raise FiberProductError("(1, 1) is not in the kernel; maps are not unital") from None
    labels = [f"p{i}" for i in range(n)]
    P = GradedAlgebra(fld, [labels], prods, {t: x for t, x in enumerate(unit) if x}, name=name)
    pB = CurvedDgaMap(P, b0, {i: split(basis[i])[0] for i in range(n)}, name="pB")
    pC = CurvedDgaMap(P, c0, {i: split(basis[i])[1] for i in range(n)}, name="pC")
    # universal property on basis elements: the square commutes and (pB, pC) is injective
    for i in range(n):
        if g0(pB.images.get(i, {})) != l0(pC.images.get(i, {})):
            raise FiberProductError("projections do not form a commuting square")
    if rank(fld, basis, nb + nc) != n:
        raise FiberProductError("projections are not jointly injective")
    return P, pB, pC


def evaluation_matrix(X: GradedAlgebra, scalars: GradedAlgebra, act, elems):
    """Matrix of ``(s_1..s_m) -> sum act(s_i) * e_i`` from ``scalars^m`` to X.

    ``act`` maps an element of ``scalars`` into X (identity-like inclusion
    or a ring map); columns are ordered (i, basis of scalars).
    """
    fld = X.field
    cols = []
    for e in elems:
        for s in range(scalars.dim):
            img = X.mul(act({s: fld.one}), e)
            cols.append(X.coords(img))
    if not cols:
        return MatrixK.zeros(fld, X.dim, 0)
    return MatrixK.from_columns(fld, cols, X.dim)


def _inclusion0(X):
    return lambda a: dict(a)


def _bijective(m: MatrixK):
    r = m.rank()
    return m.rows == m.cols == r, {"rows": m.rows, "cols": m.cols, "rank": r}


def check_descent_assumptions(s: DescentSquare) -> ValidationReport:
    rep = ValidationReport(f"descent square {s.name or '?'}")
    for nm in "ABCD":
        sub = validate_curved_dga(s.algebra(nm))
        rep.add(f"algebra-{nm}-valid", sub.ok, [c.name for c in sub.failed()] or None)
    for nm in "fkgl":
        sub = validate_cdga_map(getattr(s, nm))
        rep.add(f"map-{nm}-valid", sub.ok, [c.name for c in sub.failed()] or None)

    gf = s.g.compose(s.f)
    lk = s.l.compose(s.k)
    same = gf.same_as(lk)
    rep.add("square-commutes", same, None if same else gf.difference_witnesses(lk))

    A, B, C = s.A, s.B, s.C
    fld = A.field
    n0 = {nm: s.algebra(nm).dim_of_degree(0) for nm in "ABCD"}

    # A0 -> B0 x_{D0} C0
    cols = []
    for i in range(n0["A"]):
        e = {i: fld.one}
        cols.append(B.coords(s.f(e), 0) + C.coords(s.k(e), 0))
    emb = MatrixK.from_columns(fld, cols, n0["B"] + n0["C"]) if cols else \
        MatrixK.zeros(fld, n0["B"] + n0["C"], 0)
    rows = []
    for t in range(n0["D"]):
        row = [s.g.images.get(i, {}).get(t, fld.zero) for i in range(n0["B"])]
        row += [-s.l.images.get(i, {}).get(t, fld.zero) for i in range(n0["C"])]
        rows.append(row)
    kdim = n0["B"] + n0["C"] - rank(fld, rows, n0["B"] + n0["C"])
    inj = emb.rank() == n0["A"]
    lands = all(not any(x for x in MatrixK.from_rows(fld, rows, n0["B"] + n0["C"]).apply(c))
                for c in cols) if rows else True
    fp_ok = inj and lands and kdim == n0["A"]
    rep.add("degree-zero-fiber-product", fp_ok, None if fp_ok else
            {"dimA0": n0["A"], "kernel_dim": kdim, "injective": inj, "lands_in_kernel": lands})

    l0 = s.l.matrix(0)
    r = l0.rank()
    rep.add("l0-surjective", r == n0["D"], None if r == n0["D"] else {"rank": r, "dimD0": n0["D"]})

    # freeness over degree zero on recorded bases
    free_ok = {}
    for nm in "ABCD":
        X = s.algebra(nm)
        idx = s.bases.get(nm)
        if idx is None:
            rep.add(f"{nm}-free-over-degree-zero", False, "no recorded basis")
            free_ok[nm] = False
            continue
        X0 = X.degree_zero()
        m = evaluation_matrix(X, X0, _inclusion0(X), [{i: fld.one} for i in idx])
        ok, info = _bijective(m)
        free_ok[nm] = ok
        rep.add(f"{nm}-free-over-degree-zero", ok, None if ok else info)

    def base_change(label, src, tgt, mp):
        idx = s.bases.get(src)
        if idx is None:
            rep.add(label, False, "no recorded basis")
            return
        X = s.algebra(tgt)
        X0 = X.degree_zero()
        elems = [mp({i: fld.one}) for i in idx]
        m = evaluation_matrix(X, X0, _inclusion0(X), elems)
        ok, info = _bijective(m)
        rep.add(label, ok, None if ok else info)

    base_change("base-change-B0-tensor-A", "A", "B", s.f)
    base_change("base-change-C0-tensor-A", "A", "C", s.k)
    base_change("base-change-D0-tensor-B", "B", "D", s.g)
    base_change("base-change-D0-tensor-C", "C", "D", s.l)
    return rep

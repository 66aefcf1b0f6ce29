"""Shipped example algebras and squares.

NODAL is the degree-zero square ``k[x,y]/(x^2,xy,y^2) -> k[x]/x^2, k[y]/y^2 -> k``.
SQ1 tensors it with an exterior algebra on one odd generator (d = 0, c = 0).
SQ2 tensors it with two odd generators and curves A and B by ``x d1 d2``.
"""

from __future__ import annotations

from itertools import combinations

from ..linalg import QQ, Field
from .graded import GradedAlgebra
from .maps import CurvedDgaMap
from .square import DescentSquare

__all__ = [
    "monomial_algebra",
    "exterior_extension",
    "extend_map",
    "ring_map",
    "nodal_rings",
    "nodal_square",
    "sq1_square",
    "sq2_square",
    "perturb_structure_constant",
]


def monomial_algebra(field, names, monomials, name=""):
    """Commutative algebra spanned by the given exponent tuples.

    A product of two monomials is their exponent sum if that is listed and
    zero otherwise, so ``monomials`` must be closed under division.
    """
    monomials = [tuple(m) for m in monomials]
    pos = {m: i for i, m in enumerate(monomials)}

    def label(m):
        parts = []
        for v, e in zip(names, m):
            if e == 1:
                parts.append(v)
            elif e > 1:
                parts.append(f"{v}^{e}")
        return "*".join(parts) or "1"

    prods = {}
    for i, a in enumerate(monomials):
        for j, b in enumerate(monomials):
            s = tuple(x + y for x, y in zip(a, b))
            if s in pos:
                prods[(i, j)] = {pos[s]: 1}
    unit = {pos[tuple(0 for _ in names)]: 1}
    return GradedAlgebra(field, [[label(m) for m in monomials]], prods, unit, name=name)


def _subsets(n):
    out = []
    for r in range(n + 1):
        out.extend(combinations(range(n), r))
    return out


def _merge_sign(s, t):
    if set(s) & set(t):
        return 0, None
    inv = sum(1 for a in s for b in t if a > b)
    return (-1) ** inv, tuple(sorted(s + t))


def exterior_extension(base: GradedAlgebra, ngens, curvature=None, name="", gen_names=None):
    """``base ⊗ Λ(δ_1..δ_n)`` with zero derivation.

    ``curvature`` is a list of ``(base label, tuple of generator indices, coeff)``.
    Returns the algebra; its basis index for ``(b, S)`` is recorded in
    ``algebra.ext_index[(b, S)]``.
    """
    gen_names = gen_names or [f"d{i + 1}" for i in range(ngens)]
    subs = _subsets(ngens)
    nb = base.dim
    labels = [[] for _ in range(ngens + 1)]
    keys = []
    for r in range(ngens + 1):
        for S in subs:
            if len(S) != r:
                continue
            for b in range(nb):
                keys.append((b, S))
                bl = base.flat_labels[b]
                if not S:
                    labels[r].append(bl)
                else:
                    g = "".join(gen_names[i] for i in S)
                    labels[r].append(g if bl == "1" else f"{bl}*{g}")
    index = {k: i for i, k in enumerate(keys)}
    prods = {}
    for (b1, S1), i in index.items():
        for (b2, S2), j in index.items():
            sg, S = _merge_sign(S1, S2)
            if not sg:
                continue
            p = base.mul_basis(b1, b2)
            if p:
                prods[(i, j)] = {index[(b, S)]: sg * x for b, x in p.items()}
    unit = {index[(b, ())]: x for b, x in base.unit.items()}
    curv = {}
    for bl, S, c in curvature or []:
        curv[index[(base.index(bl), tuple(S))]] = c
    A = GradedAlgebra(base.field, labels, prods, unit, None, curv, name=name)
    A.ext_index = index
    A.ext_base = base
    A.ext_ngens = ngens
    return A


def ring_map(src: GradedAlgebra, tgt: GradedAlgebra, assignment, name=""):
    """Map of degree-zero monomial algebras from label images ``{label: {label: coeff}}``."""
    imgs = {}
    for lab, img in assignment.items():
        imgs[src.index(lab)] = {tgt.index(t): c for t, c in img.items()}
    return CurvedDgaMap(src, tgt, imgs, None, name)


def extend_map(f0: CurvedDgaMap, src: GradedAlgebra, tgt: GradedAlgebra, omega=None, name=""):
    """``f0 ⊗ id`` between exterior extensions with the same generators."""
    imgs = {}
    for (b, S), i in src.ext_index.items():
        img = f0.images.get(b, {})
        imgs[i] = {tgt.ext_index[(t, S)]: x for t, x in img.items()}
    return CurvedDgaMap(src, tgt, imgs, omega, name)


def nodal_rings(field: Field = QQ):
    A0 = monomial_algebra(field, ["x", "y"], [(0, 0), (1, 0), (0, 1)], "A0")
    B0 = monomial_algebra(field, ["x"], [(0,), (1,)], "B0")
    C0 = monomial_algebra(field, ["y"], [(0,), (1,)], "C0")
    D0 = monomial_algebra(field, [], [()], "D0")
    f0 = ring_map(A0, B0, {"1": {"1": 1}, "x": {"x": 1}}, "f")
    k0 = ring_map(A0, C0, {"1": {"1": 1}, "y": {"y": 1}}, "k")
    g0 = ring_map(B0, D0, {"1": {"1": 1}}, "g")
    l0 = ring_map(C0, D0, {"1": {"1": 1}}, "l")
    return (A0, B0, C0, D0), (f0, k0, g0, l0)


def nodal_square(field: Field = QQ):
    (A0, B0, C0, D0), (f0, k0, g0, l0) = nodal_rings(field)
    bases = {nm: [0] for nm in "ABCD"}
    return DescentSquare(A0, B0, C0, D0, f0, k0, g0, l0, bases, "NODAL")


def _extended_square(field, ngens, curved, name):
    (A0, B0, C0, D0), (f0, k0, g0, l0) = nodal_rings(field)
    full = tuple(range(ngens))
    cA = [("x", full, 1)] if curved else None
    A = exterior_extension(A0, ngens, cA, name="A")
    B = exterior_extension(B0, ngens, cA, name="B")
    C = exterior_extension(C0, ngens, None, name="C")
    D = exterior_extension(D0, ngens, None, name="D")
    f = extend_map(f0, A, B, name="f")
    k = extend_map(k0, A, C, name="k")
    g = extend_map(g0, B, D, name="g")
    l = extend_map(l0, C, D, name="l")
    bases = {}
    for nm, X in zip("ABCD", (A, B, C, D)):
        one = X.ext_base.index("1")
        bases[nm] = [X.ext_index[(one, S)] for S in _subsets(ngens)]
    return DescentSquare(A, B, C, D, f, k, g, l, bases, name)


def sq1_square(field: Field = QQ):
    return _extended_square(field, 1, False, "SQ1")


def sq2_square(field: Field = QQ):
    return _extended_square(field, 2, True, "SQ2")


def perturb_structure_constant(A: GradedAlgebra, i, j, t, delta=1):
    """Copy of ``A`` with the coefficient of ``b_t`` in ``b_i b_j`` shifted by delta."""
    prods = {k: dict(v) for k, v in A.products.items()}
    entry = prods.setdefault((i, j), {})
    entry[t] = entry.get(t, A.field.zero) + A.field(delta)
    if not entry[t]:
        del entry[t]
    B = A.with_products(prods, name=f"{A.name}~({i},{j},{t})")
    for attr in ("ext_index", "ext_base", "ext_ngens"):
        if hasattr(A, attr):
            setattr(B, attr, getattr(A, attr))
    return B

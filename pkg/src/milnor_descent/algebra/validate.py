"""Axiom checks for curved dgas and curved dga maps.

Failures are report entries carrying the first witnessing basis labels.
"""

from __future__ import annotations

from ..checks import ValidationReport
from .graded import GradedAlgebra, add, sub
from .maps import CurvedDgaMap, graded_commutator_with

__all__ = ["validate_curved_dga", "validate_cdga_map"]


def _first(it):
    for w in it:
        return w
    return None


def validate_curved_dga(A: GradedAlgebra) -> ValidationReport:
    rep = ValidationReport(f"curved dga {A.name or '?'}")
    n = A.dim
    lab = A.flat_labels
    deg = A.deg
    basis = [{i: A.field.one} for i in range(n)]

    def degree_witness():
        for (i, j), v in sorted(A.products.items()):
            target = deg[i] + deg[j]
            for t in v:
                if deg[t] != target:
                    return (lab[i], lab[j])
        return None

    w = degree_witness()
    rep.add("products-respect-degree-and-truncation", w is None, w)

    unit_ok_deg = all(deg[i] == 0 for i in A.unit)
    w = None if unit_ok_deg else "unit"
    if w is None:
        w = _first(lab[i] for i in range(n)
                   if A.mul(A.unit, basis[i]) != basis[i] or A.mul(basis[i], A.unit) != basis[i])
    rep.add("unit", w is None, w)

    def assoc_witness():
        for i in range(n):
            for j in range(n):
                bij = A.mul_basis(i, j)
                for l in range(n):
                    left = A.mul(bij, basis[l])
                    right = A.mul(basis[i], A.mul_basis(j, l))
                    if left != right:
                        return (lab[i], lab[j], lab[l])
        return None

    w = assoc_witness()
    rep.add("associativity", w is None, w)

    n0 = A.dim_of_degree(0)
    w = _first((lab[i], lab[j]) for i in range(n0) for j in range(n)
               if A.mul_basis(i, j) != A.mul_basis(j, i))
    rep.add("degree-zero-commutative-and-central", w is None, w)

    w = _first(lab[i] for i in range(n) for t in A.derivation.get(i, {}) if deg[t] != deg[i] + 1)
    rep.add("derivation-raises-degree", w is None, w)

    def leibniz_witness():
        for i in range(n):
            di = A.d(basis[i])
            sign = A.field(-1) if deg[i] % 2 else A.field.one
            for j in range(n):
                lhs = A.d(A.mul_basis(i, j))
                rhs = add(A.mul(di, basis[j]),
                          {t: sign * x for t, x in A.mul(basis[i], A.d(basis[j])).items()})
                if lhs != rhs:
                    return (lab[i], lab[j])
        return None

    w = leibniz_witness()
    rep.add("graded-leibniz", w is None, w)

    w = _first(lab[t] for t in A.curvature if deg[t] != 2)
    rep.add("curvature-in-degree-two", w is None, w)

    c = A.curvature
    w = _first(lab[i] for i in range(n)
               if A.d(A.d(basis[i])) != sub(A.mul(c, basis[i]), A.mul(basis[i], c)))
    rep.add("d-squared-equals-curvature-commutator", w is None, w)

    dc = A.d(c)
    rep.add("bianchi-dc-zero", not dc, [lab[t] for t in sorted(dc)] or None)
    return rep


def validate_cdga_map(m: CurvedDgaMap) -> ValidationReport:
    A1, A2 = m.source, m.target
    rep = ValidationReport(f"curved dga map {m.name or '?'}")
    lab1 = A1.flat_labels
    w = _first(lab1[i] for i, v in m.images.items() for t in v if A2.deg[t] != A1.deg[i])
    rep.add("degree-preserving", w is None, w)

    w = _first(A2.flat_labels[t] for t in m.omega if A2.deg[t] != 1)
    rep.add("omega-in-degree-one", w is None, w)

    rep.add("unital", m(A1.unit) == A2.unit, None if m(A1.unit) == A2.unit else "unit")

    basis = [{i: A1.field.one} for i in range(A1.dim)]
    imgs = [m(b) for b in basis]
    w = _first((lab1[i], lab1[j]) for i in range(A1.dim) for j in range(A1.dim)
               if m(A1.mul_basis(i, j)) != A2.mul(imgs[i], imgs[j]))
    rep.add("multiplicative", w is None, w)

    def deriv_witness():
        for i in range(A1.dim):
            fa = imgs[i]
            lhs = m(A1.d(basis[i]))
            rhs = add(A2.d(fa), graded_commutator_with(A2, m.omega, fa) if fa else {})
            if lhs != rhs:
                return lab1[i]
        return None

    w = deriv_witness()
    rep.add("derivation-compatibility", w is None, w)

    om = m.omega
    lhs = m(A1.curvature)
    rhs = add(add(A2.curvature, A2.d(om)), A2.mul(om, om))
    diff = sub(lhs, rhs)
    rep.add("curvature-compatibility", not diff,
            [A2.flat_labels[t] for t in sorted(diff)] or None)
    return rep

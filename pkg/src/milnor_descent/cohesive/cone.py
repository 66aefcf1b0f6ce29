"""Mapping cones of closed degree-zero morphisms."""

from __future__ import annotations

from ..algebra import amatrix as am
from .hom import HomComplexSpace, Morphism
from .module import CohesiveModule, shift

__all__ = ["NotClosedError", "cone", "cone_triangle"]


class NotClosedError(ValueError):
    pass


def cone(phi: Morphism, check_closed=True, name=None) -> CohesiveModule:
    """``Cone(φ) = F ⊕ E[1]`` with connection ``[[F, φ], [0, -E]]``.

    In degree j the F-summand comes first.
    """
    if phi.degree != 0:
        raise ValueError("cone needs a degree-zero morphism")
    E, F = phi.source, phi.target
    A = F.algebra
    if check_closed and not HomComplexSpace(E, F).apply_d(phi).is_zero():
        raise NotClosedError("cone of a morphism that is not closed")
    Es = shift(E, 1)
    degs = sorted(set(F.degrees) | set(Es.degrees))
    idem = {}
    for j in degs:
        nf, ne = F.size(j), Es.size(j)
        M = am.zeros(nf + ne, nf + ne)
        for a, r in enumerate(F.e(j)):
            for b, x in enumerate(r):
                M[a][b] = dict(x)
        for a, r in enumerate(Es.e(j)):
            for b, x in enumerate(r):
                M[nf + a][nf + b] = dict(x)
        idem[j] = M

    omega = {}

    def put(jt, js, r0, c0, W):
        M = omega.get((jt, js))
        if M is None:
            n_t = F.size(jt) + Es.size(jt)
            n_s = F.size(js) + Es.size(js)
            M = omega[(jt, js)] = am.zeros(n_t, n_s)
        for a, r in enumerate(W):
            for b, x in enumerate(r):
                if x:
                    M[r0 + a][c0 + b] = dict(x)

    for (jt, js), W in F.omega.items():
        put(jt, js, 0, 0, W)
    for (jt, js), W in Es.omega.items():
        put(jt, js, F.size(jt), F.size(js), W)
    # φ block (jt, js) of E maps E^{js} = E[1]^{js-1} into F^{jt}
    for (jt, js), W in phi.blocks.items():
        put(jt, js - 1, 0, F.size(js - 1), W)
    nm = name if name is not None else f"Cone({E.name}->{F.name})"
    return CohesiveModule(A, idem, omega, nm, E.quasi or F.quasi)


def cone_triangle(phi: Morphism, C: CohesiveModule):
    """The maps ``F -> Cone(φ)`` (inclusion) and ``Cone(φ) -> E[1]`` (projection)."""
    E, F = phi.source, phi.target
    Es = shift(E, 1)
    inc, proj = {}, {}
    for j in F.degrees:
        nf = F.size(j)
        M = am.zeros(C.size(j), nf)
        for a in range(nf):
            for b in range(nf):
                M[a][b] = dict(F.e(j)[a][b])
        inc[(j, j)] = M
    for j in Es.degrees:
        nf, ne = F.size(j), Es.size(j)
        M = am.zeros(ne, C.size(j))
        for a in range(ne):
            for b in range(ne):
                M[a][nf + b] = dict(Es.e(j)[a][b])
        proj[(j, j)] = M
    return Morphism(F, C, 0, inc), Morphism(C, Es, 0, proj), Es

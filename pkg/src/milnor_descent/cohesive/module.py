"""Cohesive modules in canonical form and the constructions on them.

A module is given by idempotents ``e_j`` over ``A^0`` and correction blocks
``omega[(j2, j1)]`` (a map ``E^{j1} -> E^{j2} ⊗ A^{j1 - j2 + 1}``).  The
connection on a vector ``v`` of degree j is ``(-1)^j e_j d(v) + omega v``.
"""

from __future__ import annotations

from ..algebra import amatrix as am
from ..algebra.graded import GradedAlgebra
from ..algebra.maps import CurvedDgaMap
from ..checks import ValidationReport

__all__ = [
    "CohesiveModule",
    "CompressionError",
    "check_cohesive",
    "free_module",
    "shift",
    "direct_sum",
    "pullback",
    "PushforwardModule",
    "pushforward",
    "zero_module",
]


class CompressionError(ValueError):
    pass


def _sign(fld, n):
    return fld.one if n % 2 == 0 else -fld.one


class CohesiveModule:
    def __init__(self, algebra: GradedAlgebra, idem, omega=None, name="", quasi=False,
                 check=True):
        self.algebra = algebra
        self.idem = {j: [list(r) for r in e] for j, e in idem.items()}
        self.omega = {}
        for key, M in (omega or {}).items():
            if not am.is_zero(M):
                self.omega[key] = [list(r) for r in M]
        self.name = name
        self.quasi = quasi
        if check:
            self._check_shapes()

    # -- structure -----------------------------------------------------------

    @property
    def degrees(self):
        return sorted(j for j, e in self.idem.items() if e)

    def size(self, j):
        return len(self.idem.get(j, []))

    def e(self, j):
        return self.idem.get(j, [])

    def is_zero(self):
        return not self.degrees

    def omega_form_degree(self, key):
        jt, js = key
        return js - jt + 1

    def _check_shapes(self):
        A = self.algebra
        for j, e in self.idem.items():
            n = len(e)
            if any(len(r) != n for r in e):
                raise ValueError(f"idempotent in degree {j} is not square")
            for r in e:
                for a in r:
                    if any(A.deg[i] != 0 for i in a):
                        raise ValueError(f"idempotent in degree {j} has entries outside A^0")
        for (jt, js), M in self.omega.items():
            k = js - jt + 1
            if not 0 <= k <= A.max_degree:
                raise CompressionError(f"correction block {(jt, js)} has form degree {k}")
            if am.shape(M) != (self.size(jt), self.size(js)):
                raise CompressionError(f"correction block {(jt, js)} has shape {am.shape(M)}")
            if any(A.deg[i] != k for r in M for a in r for i in a):
                raise CompressionError(f"correction block {(jt, js)} mixes form degrees")
            comp = am.mmul(A, am.mmul(A, self.e(jt), M), self.e(js))
            if comp != M:
                raise CompressionError(f"correction block {(jt, js)} is not compressed by the idempotents")

    def idempotent_defects(self):
        A = self.algebra
        return [j for j, e in self.idem.items() if am.mmul(A, e, e) != e]

    # -- connection ------------------------------------------------------------

    def conn_apply(self, j, X):
        """Apply the connection to the columns of ``X`` (vectors in E^j ⊗ A).

        Returns ``{target degree: matrix}``.
        """
        A = self.algebra
        out = {}
        e = self.e(j)
        if not e or not X or not X[0]:
            return out
        dX = am.md(A, X)
        if not am.is_zero(dX):
            out[j] = am.mscale(_sign(A.field, j), am.mmul(A, e, dX))
        for (jt, js), W in self.omega.items():
            if js != j:
                continue
            WX = am.mmul(A, W, X)
            if jt in out:
                out[jt] = am.madd(out[jt], WX)
            else:
                out[jt] = WX
        return out

    def conn_on_generators(self, j):
        return self.conn_apply(j, self.e(j))

    def relative_curvature(self, j):
        """``F(e) = E(E(e)) + e c`` on the generators of degree j."""
        A = self.algebra
        out = {}
        for jm, Y in self.conn_on_generators(j).items():
            for jt, Z in self.conn_apply(jm, Y).items():
                out[jt] = am.madd(out[jt], Z) if jt in out else Z
        if A.curvature and self.e(j):
            ec = am.rmul(A, self.e(j), A.curvature)
            out[j] = am.madd(out[j], ec) if j in out else ec
        return {jt: M for jt, M in out.items() if not am.is_zero(M)}

    def with_omega(self, omega, name=None):
        return CohesiveModule(self.algebra, self.idem, omega, self.name if name is None else name,
                              self.quasi)

    @classmethod
    def from_connection_values(cls, algebra, idem, values, name=""):
        """Normalize raw generator values ``values[(jt, js)] = E(e_js)`` (component in E^jt).

        Subtracts the base part ``(-1)^j e d(e)`` and compresses.
        """
        A = algebra
        omega = {}
        for (jt, js), V in values.items():
            M = [list(r) for r in V]
            if jt == js:
                base = am.mscale(_sign(A.field, js), am.mmul(A, idem[js], am.md(A, idem[js])))
                M = am.msub(M, base)
            M = am.mmul(A, am.mmul(A, idem[jt], M), idem[js])
            # split by form degree; only the one matching total degree one survives
            k = js - jt + 1
            M = am.homogeneous_part(A, M, k)
            omega[(jt, js)] = M
        for j in idem:
            if (j, j) not in values:
                base = am.mmul(A, idem[j], am.md(A, idem[j]))
                if not am.is_zero(base):
                    omega[(j, j)] = am.mneg(am.mscale(_sign(A.field, j), base))
        return cls(A, idem, omega, name)

    def __repr__(self):
        sizes = {j: self.size(j) for j in self.degrees}
        return f"CohesiveModule({self.name or '?'} over {self.algebra.name}, sizes={sizes})"


def check_cohesive(E: CohesiveModule) -> ValidationReport:
    rep = ValidationReport(f"cohesive module {E.name or '?'}")
    bad = E.idempotent_defects()
    rep.add("idempotents", not bad, bad or None)
    wit = None
    for j in E.degrees:
        F = E.relative_curvature(j)
        if F:
            jt = min(F)
            A = E.algebra
            M = F[jt]
            for a, r in enumerate(M):
                for b, x in enumerate(r):
                    if x:
                        wit = {"source_degree": j, "target_degree": jt, "entry": [a, b],
                               "value": {A.flat_labels[i]: str(v) for i, v in sorted(x.items())}}
                        break
                if wit:
                    break
            break
    rep.add("relative-curvature-vanishes", wit is None, wit)
    return rep


def zero_module(A, name="0"):
    return CohesiveModule(A, {}, {}, name)


def free_module(A, rank=1, degree=0, name=""):
    return CohesiveModule(A, {degree: am.identity(A, rank)}, {}, name or f"A^{rank}[{-degree}]")


def shift(E: CohesiveModule, s=1):
    """``E[s]``: degree j holds E^{j+s}; the connection is multiplied by (-1)^s."""
    fld = E.algebra.field
    sg = _sign(fld, s)
    idem = {j - s: e for j, e in E.idem.items()}
    omega = {(jt - s, js - s): (W if s % 2 == 0 else am.mscale(sg, W)) for (jt, js), W in E.omega.items()}
    nm = f"{E.name}[{s}]" if E.name else ""
    return CohesiveModule(E.algebra, idem, omega, nm, E.quasi, check=False)


def direct_sum(*mods, name=""):
    """Block-diagonal sum; the summands are stacked in the given order."""
    A = mods[0].algebra
    degs = sorted({j for E in mods for j in E.idem})
    idem = {}
    offs = {}
    for j in degs:
        n = sum(E.size(j) for E in mods)
        M = am.zeros(n, n)
        pos = 0
        for t, E in enumerate(mods):
            offs[(t, j)] = pos
            for a, r in enumerate(E.e(j)):
                for b, x in enumerate(r):
                    M[pos + a][pos + b] = dict(x)
            pos += E.size(j)
        idem[j] = M
    omega = {}
    for t, E in enumerate(mods):
        for (jt, js), W in E.omega.items():
            tot_t = len(idem[jt])
            tot_s = len(idem[js])
            M = omega.setdefault((jt, js), am.zeros(tot_t, tot_s))
            r0, c0 = offs[(t, jt)], offs[(t, js)]
            for a, r in enumerate(W):
                for b, x in enumerate(r):
                    M[r0 + a][c0 + b] = dict(x)
    return CohesiveModule(A, idem, omega, name or "+".join(E.name for E in mods), any(E.quasi for E in mods))


def pullback(m: CurvedDgaMap, E: CohesiveModule, name=None) -> CohesiveModule:
    """``f^*E`` with idempotents ``f(e_j)`` and correction ``f(omega) + (-1)^j w f(e_j)``."""
    A2 = m.target
    fld = A2.field
    idem = {j: am.mmap(m, e) for j, e in E.idem.items()}
    omega = {key: am.mmap(m, W) for key, W in E.omega.items()}
    if m.omega:
        for j, e in idem.items():
            if not e:
                continue
            tw = am.mscale(_sign(fld, j), am.lmul(A2, m.omega, e))
            omega[(j, j)] = am.madd(omega[(j, j)], tw) if (j, j) in omega else tw
    nm = name if name is not None else (f"{m.name}*{E.name}" if E.name else "")
    return CohesiveModule(A2, idem, omega, nm, E.quasi)


class PushforwardModule:
    """``f_*N`` seen from the source algebra of ``f``.

    The data are N's matrices over the target; the connection is
    ``N(v) - (-1)^{j+p} v omega`` on a vector of module degree j and form degree p.
    Only ever used as the target of a hom complex.
    """

    quasi = True

    def __init__(self, m: CurvedDgaMap, N: CohesiveModule, name=None):
        if N.algebra is not m.target and N.algebra != m.target:
            raise ValueError("module does not live over the target of the map")
        self.map = m
        self.base = N
        self.algebra = N.algebra
        self.source_algebra = m.source
        self.name = name if name is not None else f"{m.name}_*{N.name}"

    @property
    def degrees(self):
        return self.base.degrees

    def size(self, j):
        return self.base.size(j)

    def e(self, j):
        return self.base.e(j)

    def conn_apply(self, j, X):
        out = dict(self.base.conn_apply(j, X))
        w = self.map.omega
        if not w:
            return out
        A = self.algebra
        fld = A.field
        for p in range(A.max_degree + 1):
            Xp = am.homogeneous_part(A, X, p)
            if am.is_zero(Xp):
                continue
            tw = am.mscale(-_sign(fld, j + p), am.rmul(A, Xp, w))
            out[j] = am.madd(out[j], tw) if j in out else tw
        return out


def pushforward(m: CurvedDgaMap, N: CohesiveModule, check_base_change=None):
    """Pushforward along ``m``; ``check_base_change`` is an optional callable
    returning a report that must be ok."""
    if check_base_change is not None:
        rep = check_base_change()
        if not rep.ok:
            raise ValueError("base-change condition fails for the pushforward")
    return PushforwardModule(m, N)

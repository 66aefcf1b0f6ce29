"""Quasi-cohesive modules assembled from pushforward pieces.

A ``PiecewiseModule`` over A is a finite list of pushforwards ``(h_p)_* X_p``
together with cross terms of the connection between pieces.  Only what the
hom complexes against cohesive sources need is implemented: applying the
connection to columns, hom spaces, and the degree-zero complex.
"""

from __future__ import annotations

from ..algebra import amatrix as am
from ..algebra.graded import add
from ..cohesive.equivalence import DegreeZeroComplex, idempotent_image
from ..cohesive.hom import HomComplexSpace, HomError, Morphism
from ..cohesive.module import PushforwardModule
from ..linalg import FiniteComplex, MatrixK, Subspace

__all__ = ["PiecewiseModule", "PiecewiseMorphism", "PiecewiseHom", "piecewise_degree_zero_complex"]


def _acc(out, key, M):
    if key in out:
        out[key] = am.madd(out[key], M)
    else:
        out[key] = M


class PiecewiseModule:
    """Pieces ``P_p = (h_p)_* X_p`` and cross terms ``(q, p, fn)``.

    ``fn(j, X)`` takes columns of piece p in degree j (entries in the ring of
    piece p) and returns ``{target degree: columns of piece q}``.  The total
    connection is the diagonal pushforward connections plus the cross terms.
    """

    quasi = True

    def __init__(self, algebra, pieces, cross=(), names=None, name=""):
        for P in pieces:
            if not isinstance(P, PushforwardModule) or P.source_algebra is not algebra:
                raise ValueError("pieces must be pushforwards from the base algebra")
        self.algebra = algebra
        self.pieces = list(pieces)
        self.cross = list(cross)
        self.names = list(names) if names else [P.name for P in pieces]
        self.name = name

    @property
    def degrees(self):
        return sorted({j for P in self.pieces for j in P.degrees})

    def is_zero(self):
        return not self.degrees

    def conn_apply(self, p, j, X):
        """Connection on columns of piece p: ``{q: {degree: columns}}``."""
        out = {p: dict(self.pieces[p].conn_apply(j, X))}
        for q, src, fn in self.cross:
            if src != p:
                continue
            for jt, Y in fn(j, X).items():
                _acc(out.setdefault(q, {}), jt, Y)
        return out


class PiecewiseMorphism:
    """A morphism ``S -> X`` from a cohesive module into a piecewise module."""

    def __init__(self, source, target: PiecewiseModule, degree, parts):
        if len(parts) != len(target.pieces):
            raise ValueError("one component per piece expected")
        self.source, self.target, self.degree = source, target, degree
        self.parts = [Morphism(source, P, degree, dict(m.blocks if isinstance(m, Morphism) else m))
                      for P, m in zip(target.pieces, parts)]

    def __add__(self, o):
        return PiecewiseMorphism(self.source, self.target, self.degree,
                                 [a + b for a, b in zip(self.parts, o.parts)])

    def __sub__(self, o):
        return PiecewiseMorphism(self.source, self.target, self.degree,
                                 [a - b for a, b in zip(self.parts, o.parts)])

    def scale(self, c):
        return PiecewiseMorphism(self.source, self.target, self.degree, [a.scale(c) for a in self.parts])

    def is_zero(self):
        return all(a.is_zero() for a in self.parts)

    def __eq__(self, o):
        return isinstance(o, PiecewiseMorphism) and self.degree == o.degree and (self - o).is_zero()

    def precompose(self, sigma: Morphism):
        """``self ∘ σ`` for ``σ : S' -> S``; each piece sees ``h_p(σ)``."""
        if sigma.target is not self.source:
            raise HomError("endpoint mismatch in composition")
        parts = []
        for P, m in zip(self.target.pieces, self.parts):
            R = P.algebra
            out = {}
            for (a, b), M in m.blocks.items():
                for (b2, j), S in sigma.blocks.items():
                    if b2 == b:
                        _acc(out, (a, j), am.mmul(R, M, am.mmap(P.map, S)))
            parts.append(out)
        return PiecewiseMorphism(sigma.source, self.target, self.degree + sigma.degree, parts)


class PiecewiseHom:
    """``Hom^•(S, X)`` for S cohesive over A and X piecewise over A.

    Coordinates are the concatenation of the per-piece hom coordinates.
    """

    def __init__(self, source, target: PiecewiseModule):
        self.source, self.target = source, target
        self.field = target.algebra.field
        self.spaces = [HomComplexSpace(source, P) for P in target.pieces]
        live = [h for h in self.spaces if h.lo <= h.hi]
        self.lo = min((h.lo for h in live), default=0)
        self.hi = max((h.hi for h in live), default=-1)
        self._dmat = {}

    def dims(self, t):
        return [h.dim(t) for h in self.spaces]

    def dim(self, t):
        return sum(self.dims(t))

    def coords(self, t, F: PiecewiseMorphism, check=True):
        out = []
        for h, m in zip(self.spaces, F.parts):
            out.extend(h.coords(t, m, check))
        return out

    def element(self, t, v):
        parts = []
        pos = 0
        for h in self.spaces:
            n = h.dim(t)
            parts.append(h.element(t, v[pos:pos + n]))
            pos += n
        return PiecewiseMorphism(self.source, self.target, t, parts)

    def basis(self, t):
        n = self.dim(t)
        z, o = self.field.zero, self.field.one
        out = []
        for i in range(n):
            v = [z] * n
            v[i] = o
            out.append(self.element(t, v))
        return out

    def apply_d(self, F: PiecewiseMorphism) -> PiecewiseMorphism:
        parts = [h.apply_d(m).blocks for h, m in zip(self.spaces, F.parts)]
        for q, p, fn in self.target.cross:
            for (jp, j), M in F.parts[p].blocks.items():
                for jt, Y in fn(jp, M).items():
                    _acc(parts[q], (jt, j), Y)
        return PiecewiseMorphism(self.source, self.target, F.degree + 1, parts)

    def d_matrix(self, t):
        m = self._dmat.get(t)
        if m is None:
            n, n1 = self.dim(t), self.dim(t + 1)
            if n == 0:
                m = MatrixK.zeros(self.field, n1, 0)
            else:
                cols = [self.coords(t + 1, self.apply_d(b)) for b in self.basis(t)]
                m = MatrixK.from_columns(self.field, cols, n1)
            self._dmat[t] = m
        return m

    def complex(self, lo=None, hi=None) -> FiniteComplex:
        lo = self.lo - 1 if lo is None else lo
        hi = self.hi + 1 if hi is None else hi
        dims = {t: self.dim(t) for t in range(lo, hi + 1)}
        diffs = {t: self.d_matrix(t) for t in range(lo, hi)}
        c = FiniteComplex(self.field, lo, hi, dims, diffs)
        try:
            return c.validate()
        except ValueError as exc:
            raise HomError(f"d∘d != 0 on Hom({self.source.name}, {self.target.name}): {exc}") from exc


def piecewise_degree_zero_complex(X: PiecewiseModule) -> DegreeZeroComplex:
    """``(X^j, 𝕏⁰)``: columns are tuples with one column per piece."""
    fld = X.algebra.field
    spaces = {}
    for j in X.degrees:
        parts = []
        for P in X.pieces:
            R = P.algebra
            if P.size(j):
                parts.append(idempotent_image(R, P.e(j)))
            else:
                parts.append(None)
        widths = [len(P.e(j)) * P.algebra.dim_of_degree(0) for P in X.pieces]
        total = sum(widths)
        vecs = []
        off = 0
        for w, sp in zip(widths, parts):
            if sp is not None:
                for b in sp[0].basis:
                    v = [fld.zero] * total
                    v[off:off + w] = b
                    vecs.append(v)
            off += w

        def to_vec(cols, parts=parts):
            out = []
            for c, sp in zip(cols, parts):
                out.extend(sp[1](c) if sp is not None else [])
            return out

        def from_vec(v, parts=parts, widths=widths):
            out = []
            pos = 0
            for sp, w in zip(parts, widths):
                out.append(sp[2](v[pos:pos + w]) if sp is not None else [])
                pos += w
            return out

        spaces[j] = (Subspace(fld, total, vecs), to_vec, from_vec)

    def diff_apply(j, cols):
        out = [[{} for _ in range(P.size(j + 1))] for P in X.pieces]
        for p, c in enumerate(cols):
            if not c:
                continue
            res = X.conn_apply(p, j, [[a] for a in c])
            for q, by_deg in res.items():
                Y = by_deg.get(j + 1)
                if Y is None:
                    continue
                Y0 = am.homogeneous_part(X.pieces[q].algebra, Y, 0)
                for r, row in enumerate(Y0):
                    out[q][r] = add(out[q][r], row[0])
        return out

    degs = X.degrees
    lo, hi = (min(degs), max(degs)) if degs else (0, -1)
    return DegreeZeroComplex(fld, spaces, diff_apply, lo, hi)


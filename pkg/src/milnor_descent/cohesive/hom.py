"""Hom complexes between cohesive modules and morphism arithmetic.

A morphism of total degree t is a dict ``{(j2, j1): M}`` where ``M`` maps
generators of E1^{j1} into E2^{j2} ⊗ A^{t - j2 + j1}.  Its differential is
``E2∘φ - (-1)^t φ∘E1``, evaluated on generators.

When the target is a pushforward ``f_*N`` the blocks are matrices over the
target algebra compressed on the right by ``f(e_j)``; the source
connection is transported by ``f`` before composing.
"""

from __future__ import annotations

from ..algebra import amatrix as am
from ..linalg import FiniteComplex, MatrixK
from .blocks import CompressedBlock
from .module import CohesiveModule, PushforwardModule

__all__ = [
    "HomError",
    "Morphism",
    "HomComplexSpace",
    "hom_complex",
    "compose_hom",
    "identity_morphism",
    "zero_morphism",
]


class HomError(ValueError):
    pass


def _acc(out, key, M):
    if key in out:
        out[key] = am.madd(out[key], M)
    else:
        out[key] = M


def _prune(blocks):
    return {k: M for k, M in blocks.items() if not am.is_zero(M)}


class Morphism:
    """A homogeneous morphism between modules over one algebra."""

    __slots__ = ("source", "target", "degree", "blocks")

    def __init__(self, source, target, degree, blocks):
        self.source = source
        self.target = target
        self.degree = degree
        self.blocks = _prune(blocks)

    def __add__(self, other):
        self._same(other)
        out = dict(self.blocks)
        for k, M in other.blocks.items():
            _acc(out, k, M)
        return Morphism(self.source, self.target, self.degree, out)

    def __neg__(self):
        return Morphism(self.source, self.target, self.degree,
                        {k: am.mneg(M) for k, M in self.blocks.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return Morphism(self.source, self.target, self.degree,
                        {k: am.mscale(c, M) for k, M in self.blocks.items()})

    def _same(self, other):
        if other.source is not self.source or other.target is not self.target or \
                other.degree != self.degree:
            raise HomError("morphisms have different endpoints or degrees")

    def is_zero(self):
        return not self.blocks

    def form_degree_zero(self):
        """Blocks with entries in A^0 (the k = 0 part)."""
        A = self.target.algebra
        out = {}
        for (jt, js), M in self.blocks.items():
            if self.degree - jt + js == 0:
                out[(jt, js)] = am.homogeneous_part(A, M, 0)
        return out

    def __eq__(self, other):
        return isinstance(other, Morphism) and other.degree == self.degree and \
            other.source is self.source and other.target is self.target and \
            other.blocks == self.blocks

    def __repr__(self):
        return f"Morphism(deg {self.degree}, {len(self.blocks)} blocks)"


def identity_morphism(E):
    return Morphism(E, E, 0, {(j, j): [list(r) for r in E.e(j)] for j in E.degrees})


def zero_morphism(E, F, t=0):
    return Morphism(E, F, t, {})


def compose_hom(g: Morphism, f: Morphism) -> Morphism:
    """``g ∘ f`` as a matrix product (no signs)."""
    if f.target is not g.source:
        raise HomError("endpoint mismatch in composition")
    A = g.target.algebra
    out = {}
    for (a, b), G in g.blocks.items():
        for (b2, j), F in f.blocks.items():
            if b2 == b:
                _acc(out, (a, j), am.mmul(A, G, F))
    return Morphism(f.source, g.target, f.degree + g.degree, out)


class HomComplexSpace:
    """``Hom^•(source, target)`` with explicit bases and differential matrices."""

    def __init__(self, source: CohesiveModule, target, hmap=None):
        if isinstance(target, PushforwardModule):
            if hmap is None:
                hmap = target.map
        elif source.algebra is not target.algebra and hmap is None:
            raise HomError("modules live over different algebras")
        self.source = source
        self.target = target
        self.hmap = hmap
        self.algebra = target.algebra
        self.field = self.algebra.field
        A = self.algebra
        sd, td = source.degrees, target.degrees
        if sd and td:
            self.lo = min(td) - max(sd)
            self.hi = max(td) - min(sd) + A.max_degree
        else:
            self.lo, self.hi = 0, -1
        h = hmap if hmap is not None else (lambda a: dict(a))
        self._h = h
        self._src_e = {j: am.mmap(h, source.e(j)) if hmap is not None else source.e(j) for j in sd}
        self._src_conn = {}
        for j in sd:
            conn = source.conn_on_generators(j)
            if hmap is not None:
                conn = {b: am.mmap(h, M) for b, M in conn.items()}
            self._src_conn[j] = conn
        self._blocks = {}
        self._dmat = {}
        self._complex = None

    # -- bases -------------------------------------------------------------

    def blocks(self, t):
        got = self._blocks.get(t)
        if got is not None:
            return got
        A = self.algebra
        out = []
        for jp in self.target.degrees:
            for j in self.source.degrees:
                k = t - jp + j
                if 0 <= k <= A.max_degree and A.dim_of_degree(k):
                    blk = CompressedBlock((jp, j), A, self.target.e(jp), self._src_e[j], k)
                    if blk.dim:
                        out.append(blk)
        self._blocks[t] = out
        return out

    def dim(self, t):
        return sum(b.dim for b in self.blocks(t))

    def coords(self, t, blocks, check=True):
        if isinstance(blocks, Morphism):
            blocks = blocks.blocks
        out = []
        seen = set()
        for blk in self.blocks(t):
            M = blocks.get(blk.key)
            seen.add(blk.key)
            if M is None:
                out.extend([self.field.zero] * blk.dim)
            else:
                out.extend(blk.coords(M, check))
        if check:
            for key, M in blocks.items():
                if key not in seen and not am.is_zero(am.homogeneous_part(
                        self.algebra, M, t - key[0] + key[1])):
                    raise HomError(f"block {key} is not part of Hom^{t}")
        return out

    def element(self, t, vec):
        out = {}
        pos = 0
        for blk in self.blocks(t):
            c = vec[pos:pos + blk.dim]
            pos += blk.dim
            if any(c):
                out[blk.key] = blk.element(c)
        return Morphism(self.source, self.target, t, out)

    def basis(self, t):
        out = []
        n = self.dim(t)
        z, o = self.field.zero, self.field.one
        for i in range(n):
            v = [z] * n
            v[i] = o
            out.append(self.element(t, v))
        return out

    # -- differential ------------------------------------------------------

    def apply_d(self, phi):
        """Differential of a morphism (or a raw block dict with ``phi.degree``)."""
        t = phi.degree
        A = self.algebra
        out = {}
        for (jp, j), M in phi.blocks.items():
            for a, Y in self.target.conn_apply(jp, M).items():
                _acc(out, (a, j), Y)
        sg = A.field.one if t % 2 else -A.field.one
        for j, conn in self._src_conn.items():
            for (a, b), M in phi.blocks.items():
                Sg = conn.get(b)
                if Sg is None:
                    continue
                _acc(out, (a, j), am.mscale(sg, am.mmul(A, M, Sg)))
        return Morphism(self.source, self.target, t + 1, out)

    def d_matrix(self, t):
        m = self._dmat.get(t)
        if m is not None:
            return m
        n, n1 = self.dim(t), self.dim(t + 1)
        if n == 0:
            m = MatrixK.zeros(self.field, n1, 0)
        else:
            cols = [self.coords(t + 1, self.apply_d(b)) for b in self.basis(t)]
            m = MatrixK.from_columns(self.field, cols, n1)
        self._dmat[t] = m
        return m

    def complex(self, lo=None, hi=None) -> FiniteComplex:
        """The finite complex on ``[lo, hi]`` (default: the natural window).

        Spaces outside the natural window are zero, so widening is harmless;
        narrowing truncates.
        """
        if lo is None:
            lo = self.lo
        if hi is None:
            hi = self.hi
        dims = {t: self.dim(t) for t in range(lo, hi + 1)}
        diffs = {t: self.d_matrix(t) for t in range(lo, hi)}
        c = FiniteComplex(self.field, lo, hi, dims, diffs)
        try:
            c.validate()
        except ValueError as exc:
            raise HomError(f"d∘d != 0 on Hom({self.source.name}, {self.target.name}): {exc}") from exc
        return c

    def full_complex(self):
        if self._complex is None:
            self._complex = self.complex()
        return self._complex

    def window_complex(self, lo, hi):
        """The complex on ``[min(lo, natural lo) - 1, max(hi, natural hi) + 1]``."""
        a = min(lo, self.lo) - 1
        b = max(hi, self.hi) + 1
        return self.complex(a, b)


def hom_complex(e1, e2, hmap=None) -> HomComplexSpace:
    return HomComplexSpace(e1, e2, hmap)

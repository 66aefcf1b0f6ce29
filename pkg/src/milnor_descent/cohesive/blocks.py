"""Vector-space bases for idempotent-compressed matrix blocks.

A block is the space ``{M : left M right = M}`` of ``r x c`` matrices whose
entries lie in ``A^k``.  Its basis is the reduced echelon basis of the image
of the compression projection; coordinates are read at pivot columns.
"""

from __future__ import annotations

from ..algebra import amatrix as am
from ..linalg import Subspace

__all__ = ["CompressedBlock", "block_space", "freeze"]

_CACHE = {}


def freeze(X):
    return tuple(tuple(tuple(sorted(a.items())) for a in r) for r in X)


class CompressedBlock:
    """Key plus the data defining one compressed block."""

    __slots__ = ("key", "algebra", "left", "right", "k", "rows", "cols", "_space")

    def __init__(self, key, algebra, left, right, k):
        self.key = key
        self.algebra = algebra
        self.left = left
        self.right = right
        self.k = k
        self.rows = len(left)
        self.cols = len(right)
        self._space = None

    @property
    def space(self) -> Subspace:
        if self._space is None:
            self._space = block_space(self.algebra, self.left, self.right, self.k)
        return self._space

    @property
    def dim(self):
        return len(self.space)

    def to_vector(self, M):
        return am.to_k_vector(self.algebra, M, self.k)

    def from_vector(self, v):
        return am.from_k_vector(self.algebra, v, self.rows, self.cols, self.k)

    def coords(self, M, check=True):
        return self.space.coords(self.to_vector(M), check)

    def element(self, c):
        return self.from_vector(self.space.combine(c))

    def basis_matrices(self):
        return [self.from_vector(b) for b in self.space.basis]


def block_space(A, left, right, k):
    key = (id(A), k, freeze(left), freeze(right))
    hit = _CACHE.get(key)
    if hit is not None and hit[0] is A:
        return hit[1]
    r, c = len(left), len(right)
    degk = list(A.degree_range(k))
    fld = A.field
    ambient = r * c * len(degk)
    if ambient == 0:
        sp = Subspace(fld, 0, [])
        _CACHE[key] = (A, sp)
        return sp
    vecs = []
    one = fld.one
    for a in range(r):
        for b in range(c):
            for s in degk:
                E = am.zeros(r, c)
                E[a][b] = {s: one}
                img = am.mmul(A, am.mmul(A, left, E, c), right, c)
                v = am.to_k_vector(A, img, k)
                if any(v):
                    vecs.append(v)
    sp = Subspace(fld, ambient, vecs)
    _CACHE[key] = (A, sp)
    return sp

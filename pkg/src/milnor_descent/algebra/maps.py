"""Curved dga maps ``(f, omega) : A1 -> A2``."""

from __future__ import annotations

from ..linalg import MatrixK
from .graded import GradedAlgebra, add, axpy, sub

__all__ = ["CurvedDgaMap"]


class CurvedDgaMap:
    """A degree-preserving linear map on basis images plus ``omega`` in A2^1.

    ``images[i]`` is ``f(b_i)`` as a sparse element of the target.
    """

    def __init__(self, source: GradedAlgebra, target: GradedAlgebra, images, omega=None, name=""):
        if source.field != target.field:
            raise ValueError("source and target algebras live over different fields")
        self.source = source
        self.target = target
        fld = target.field
        self.images = {i: {t: fld(x) for t, x in v.items() if x} for i, v in images.items()}
        self.images = {i: v for i, v in self.images.items() if v}
        self.omega = {t: fld(x) for t, x in (omega or {}).items() if x}
        self.name = name
        for i in self.images:
            if not 0 <= i < source.dim:
                raise ValueError(f"basis index {i} out of range for the source algebra")

    @classmethod
    def from_matrices(cls, source, target, mats, omega=None, name=""):
        """Build from per-degree MatrixK (target basis of degree k x source basis of degree k)."""
        images = {}
        for k, m in mats.items():
            src = source.degree_range(k)
            tgt = target.degree_range(k)
            if m.shape != (len(tgt), len(src)):
                raise ValueError(f"map matrix in degree {k} has shape {m.shape}, "
                                 f"expected {(len(tgt), len(src))}")
            for c, i in enumerate(src):
                images[i] = {t: m.entries[r][c] for r, t in enumerate(tgt) if m.entries[r][c]}
        return cls(source, target, images, omega, name)

    def __call__(self, a):
        out = {}
        for i, x in a.items():
            v = self.images.get(i)
            if v:
                axpy(out, x, v)
        return out

    def matrix(self, k):
        src = self.source.degree_range(k)
        tgt = self.target.degree_range(k)
        z = self.target.field.zero
        cols = [[self.images.get(i, {}).get(t, z) for t in tgt] for i in src]
        if not cols:
            return MatrixK.zeros(self.target.field, len(tgt), 0)
        return MatrixK.from_columns(self.target.field, cols, len(tgt))

    def degree_zero(self):
        """The underlying ring map A1^0 -> A2^0."""
        s0, t0 = self.source.degree_zero(), self.target.degree_zero()
        n0 = t0.dim
        imgs = {i: {t: x for t, x in self.images.get(i, {}).items() if t < n0}
                for i in range(s0.dim)}
        return CurvedDgaMap(s0, t0, imgs, None, self.name + "0" if self.name else "")

    def compose(self, first: "CurvedDgaMap") -> "CurvedDgaMap":
        """``self ∘ first`` with omega = self(omega_first) + omega_self."""
        if first.target is not self.source and first.target != self.source:
            raise ValueError("maps are not composable")
        imgs = {i: self(v) for i, v in first.images.items()}
        omega = add(self(first.omega), self.omega)
        return CurvedDgaMap(first.source, self.target, imgs, omega,
                            f"{self.name}{first.name}" if self.name and first.name else "")

    def same_as(self, other):
        if self.source != other.source or self.target != other.target:
            return False
        keys = set(self.images) | set(other.images)
        return all(self.images.get(i, {}) == other.images.get(i, {}) for i in keys) and \
            self.omega == other.omega

    def difference_witnesses(self, other):
        out = []
        for i in sorted(set(self.images) | set(other.images)):
            if self.images.get(i, {}) != other.images.get(i, {}):
                out.append(self.source.flat_labels[i])
        if self.omega != other.omega:
            out.append("omega")
        return out

    @classmethod
    def identity(cls, A):
        return cls(A, A, {i: {i: A.field.one} for i in range(A.dim)}, None, "id")

    def __repr__(self):
        return f"CurvedDgaMap({self.source.name}->{self.target.name}, omega={'0' if not self.omega else 'nonzero'})"


def graded_commutator_with(A, w, a):
    """``[w, a] = w a - (-1)^{|w||a|} a w`` for homogeneous a (w of degree 1)."""
    da = A.element_degree(a)
    if da is None:
        return {}
    wa = A.mul(w, a)
    aw = A.mul(a, w)
    return sub(wa, aw) if da % 2 == 0 else add(wa, aw)

"""Bounded cochain complexes of finite-dimensional vector spaces."""

from __future__ import annotations

from dataclasses import dataclass
from dataclasses import field as dc_field

from .matrix import MatrixK, Subspace, kernel_basis, rref, solve

__all__ = [
    "ComplexError",
    "FiniteComplex",
    "Cohomology",
    "complex_cohomology",
    "check_chain_map",
    "induced_cohomology_map",
]


class ComplexError(ValueError):
    """Raised when d∘d or a chain-map square fails; ``degree`` names the spot."""

    def __init__(self, msg, degree=None):
        super().__init__(msg)
        self.degree = degree


@dataclass(frozen=True)
class FiniteComplex:
    """Cochain complex ``C^lo -> ... -> C^hi``.

    ``diffs[t]`` is the matrix of ``d^t : C^t -> C^{t+1}`` (shape
    ``dims[t+1] x dims[t]``).  Missing entries mean zero spaces/maps.
    """

    field: object
    lo: int
    hi: int
    dims: dict
    diffs: dict = dc_field(default_factory=dict)

    def dim(self, t):
        return self.dims.get(t, 0) if self.lo <= t <= self.hi else 0

    def d(self, t):
        m = self.diffs.get(t)
        if m is None:
            return MatrixK.zeros(self.field, self.dim(t + 1), self.dim(t))
        return m

    @property
    def degrees(self):
        return range(self.lo, self.hi + 1)

    def validate(self):
        for t in self.degrees:
            m = self.diffs.get(t)
            if m is not None and m.shape != (self.dim(t + 1), self.dim(t)):
                raise ComplexError(f"differential in degree {t} has shape {m.shape}", t)
        for t in range(self.lo, self.hi):
            if self.dim(t) and self.dim(t + 2) and not (self.d(t + 1) @ self.d(t)).is_zero():
                raise ComplexError(f"d∘d is nonzero starting in degree {t}", t)
        return self

    def euler_characteristic(self):
        return sum((-1) ** (t % 2) * self.dim(t) for t in self.degrees)

    def shifted(self, s=1):
        """``C[s]`` with ``C[s]^t = C^{t+s}`` and differential ``(-1)^s d``."""
        sign = -1 if s % 2 else 1
        diffs = {t - s: (m if sign == 1 else -m) for t, m in self.diffs.items()}
        return FiniteComplex(self.field, self.lo - s, self.hi - s,
                             {t - s: n for t, n in self.dims.items()}, diffs)


class Cohomology:
    """Cohomology in one degree with fixed cocycle representatives."""

    def __init__(self, field, degree, ambient, cocycles, boundaries):
        self.field = field
        self.degree = degree
        self.ambient = ambient
        self.boundaries = boundaries
        # echelon completion of the boundary space inside the cocycles
        span = Subspace(field, ambient, boundaries)
        basis, pivots = [list(r) for r in span.basis], list(span.pivots)
        reps = []
        for z in cocycles:
            v = list(z)
            for row, p in zip(basis, pivots):
                if v[p]:
                    a = v[p]
                    v = [x - a * y for x, y in zip(v, row)]
            if any(v):
                reps.append(v)
                red, piv = rref(field, basis + [v], ambient)
                basis, pivots = red, piv
        self.representatives = reps
        self._cols = reps + [list(b) for b in span.basis]

    @property
    def dim(self):
        return len(self.representatives)

    def class_coords(self, v):
        """Coordinates of the class of cocycle ``v`` in the representative basis."""
        if not self._cols:
            if any(v):
                raise ValueError("vector is not a cocycle")
            return []
        rows = [[c[i] for c in self._cols] for i in range(self.ambient)]
        x = solve(self.field, rows, len(self._cols), list(v))
        if x is None:
            raise ValueError("vector is not a cocycle of this complex")
        return x[: self.dim]


def complex_cohomology(c: FiniteComplex, check=True):
    """Cohomology of every degree of ``c`` as ``{t: Cohomology}``."""
    if check:
        c.validate()
    out = {}
    for t in c.degrees:
        n = c.dim(t)
        z = kernel_basis(c.field, c.d(t).entries, n) if n else []
        prev = c.d(t - 1)
        b = [prev.column(j) for j in range(prev.cols)] if n else []
        out[t] = Cohomology(c.field, t, n, z, b)
    return out


def check_chain_map(src: FiniteComplex, tgt: FiniteComplex, f: dict):
    """Raise ComplexError unless ``f`` commutes with the differentials."""
    lo, hi = min(src.lo, tgt.lo), max(src.hi, tgt.hi)
    fld = src.field

    def fm(t):
        m = f.get(t)
        return m if m is not None else MatrixK.zeros(fld, tgt.dim(t), src.dim(t))

    for t in range(lo, hi + 1):
        m = fm(t)
        if m.shape != (tgt.dim(t), src.dim(t)):
            raise ComplexError(f"chain map component in degree {t} has shape {m.shape}", t)
    for t in range(lo - 1, hi + 1):
        left = fm(t + 1) @ src.d(t)
        right = tgt.d(t) @ fm(t)
        if left != right:
            raise ComplexError(f"chain-map square fails in degree {t}", t)
    return fm


def induced_cohomology_map(src: FiniteComplex, tgt: FiniteComplex, f: dict, degrees=None):
    """Induced maps on cohomology and the quasi-isomorphism verdict.

    Returns ``(maps, verdict)`` where ``maps[t]`` is a MatrixK from
    ``H^t(src)`` to ``H^t(tgt)`` in the representative bases.
    """
    fm = check_chain_map(src, tgt, f)
    hs = complex_cohomology(src, check=False)
    ht = complex_cohomology(tgt, check=False)
    if degrees is None:
        degrees = range(min(src.lo, tgt.lo), max(src.hi, tgt.hi) + 1)
    maps = {}
    verdict = True
    fld = src.field
    for t in degrees:
        s = hs.get(t)
        g = ht.get(t)
        ns = s.dim if s else 0
        nt = g.dim if g else 0
        cols = []
        for r in (s.representatives if s else []):
            img = fm(t).apply(r)
            cols.append(g.class_coords(img) if g else [])
        m = MatrixK.from_columns(fld, cols, nt) if cols else MatrixK.zeros(fld, nt, ns)
        maps[t] = m
        if ns != nt or (ns and m.rank() != ns):
            verdict = False
    return maps, verdict

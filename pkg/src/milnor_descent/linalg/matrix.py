"""Dense exact matrices over Q or F_p and the usual elimination routines."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm

from ._backend import rref_int, rref_modp
from .field import Field, ModP

__all__ = [
    "FieldMismatch",
    "MatrixK",
    "Subspace",
    "rref",
    "rank",
    "kernel_basis",
    "solve",
    "image_basis",
]


class FieldMismatch(ValueError):
    pass


_SMALL = {i: Fraction(i) for i in range(-256, 257)}


def _frac(x):
    f = _SMALL.get(x)
    return Fraction(x) if f is None else f


def rref(field: Field, rows, ncols):
    """Reduced row echelon form of ``rows`` (list of sequences of scalars).

    Returns ``(nonzero_rows, pivot_columns)`` with every pivot equal to one.
    """
    rows = [r for r in rows if any(r)]
    if not rows or ncols == 0:
        return [], []
    if field.p:
        p = field.p
        raw = [[x.v if isinstance(x, ModP) else int(x) % p for x in r] for r in rows]
        red, piv = rref_modp(raw, ncols, p)
        mk = ModP._raw
        return [[mk(x, p) for x in r] for r in red], piv
    raw = []
    for r in rows:
        den = 1
        for x in r:
            if x:
                d = x.denominator if isinstance(x, Fraction) else 1
                if d != 1:
                    den = lcm(den, d)
        if den == 1:
            raw.append([int(x) for x in r])
        else:
            raw.append([int(x * den) for x in r])
    red, piv = rref_int(raw, ncols)
    out = []
    for r, c in zip(red, piv):
        pv = r[c]
        if pv == 1:
            out.append([_frac(x) for x in r])
        else:
            out.append([Fraction(x, pv) if x else _SMALL[0] for x in r])
    return out, piv


def rank(field, rows, ncols):
    return len(rref(field, rows, ncols)[1])


def kernel_basis(field, rows, ncols):
    """Basis of ``{x : rows @ x = 0}`` as a list of coordinate lists."""
    red, piv = rref(field, rows, ncols)
    pivset = set(piv)
    zero, one = field.zero, field.one
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [zero] * ncols
        v[f] = one
        for r, c in zip(red, piv):
            if r[f]:
                v[c] = -r[f]
        basis.append(v)
    return basis


def image_basis(field, vectors, dim):
    """Reduced echelon basis of the span of ``vectors``."""
    return rref(field, vectors, dim)


def solve(field, rows, ncols, rhs):
    """One solution of ``rows @ x = rhs`` or ``None``.

    Free variables are set to zero, so the answer is deterministic.
    """
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, piv = rref(field, aug, ncols + 1)
    if piv and piv[-1] == ncols:
        return None
    x = [field.zero] * ncols
    for r, c in zip(red, piv):
        x[c] = r[ncols]
    return x


class Subspace:
    """A subspace of ``field**dim`` stored by its reduced echelon basis.

    Coordinates of a member vector are read off at the pivot columns.
    """

    __slots__ = ("field", "dim", "basis", "pivots")

    def __init__(self, field, dim, vectors=(), *, reduced=None):
        self.field = field
        self.dim = dim
        if reduced is None:
            reduced = rref(field, list(vectors), dim)
        self.basis, self.pivots = reduced

    @classmethod
    def full(cls, field, dim):
        one, zero = field.one, field.zero
        rows = [[one if i == j else zero for j in range(dim)] for i in range(dim)]
        return cls(field, dim, reduced=(rows, list(range(dim))))

    def __len__(self):
        return len(self.basis)

    def coords(self, v, check=True):
        c = [v[p] for p in self.pivots]
        if check:
            w = self.combine(c)
            if any(a != b for a, b in zip(w, v)):
                raise ValueError("vector is not in the subspace")
        return c

    def combine(self, c):
        out = [self.field.zero] * self.dim
        for a, row in zip(c, self.basis):
            if a:
                for i, x in enumerate(row):
                    if x:
                        out[i] = out[i] + a * x
        return out

    def contains(self, v):
        try:
            self.coords(v)
        except ValueError:
            return False
        return True


@dataclass(frozen=True)
class MatrixK:
    """An immutable ``rows x cols`` matrix over a single field."""

    field: Field
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("matrix entries do not match the declared shape")

    @classmethod
    def from_rows(cls, field, rows, cols=None):
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        ent = []
        for r in rows:
            line = []
            for x in r:
                if isinstance(x, (Fraction, ModP)):
                    if not field.contains(x):
                        raise FieldMismatch(f"entry {x!r} does not belong to {field.tag}")
                    line.append(x)
                else:
                    line.append(field(x))
            ent.append(tuple(line))
        return cls(field, len(ent), cols, tuple(ent))

    @classmethod
    def zeros(cls, field, rows, cols):
        z = field.zero
        return cls(field, rows, cols, tuple(tuple(z for _ in range(cols)) for _ in range(rows)))

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero, field.one
        return cls(field, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def from_columns(cls, field, columns, rows):
        cols = len(columns)
        ent = tuple(tuple(columns[j][i] for j in range(cols)) for i in range(rows))
        return cls(field, rows, cols, ent)

    def _check(self, other):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field.tag} vs {other.field.tag}")

    def __matmul__(self, other):
        if isinstance(other, MatrixK):
            self._check(other)
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            zero = self.field.zero
            ocols = list(zip(*other.entries)) if other.rows else [()] * other.cols
            out = []
            for r in self.entries:
                nz = [(k, x) for k, x in enumerate(r) if x]
                line = []
                for col in ocols:
                    s = zero
                    for k, x in nz:
                        y = col[k]
                        if y:
                            s = s + x * y
                    line.append(s)
                out.append(tuple(line))
            return MatrixK(self.field, self.rows, other.cols, tuple(out))
        return NotImplemented

    def apply(self, v):
        zero = self.field.zero
        out = []
        for r in self.entries:
            s = zero
            for x, y in zip(r, v):
                if x and y:
                    s = s + x * y
            out.append(s)
        return out

    def __add__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return MatrixK(
            self.field, self.rows, self.cols,
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)),
        )

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return MatrixK(self.field, self.rows, self.cols, tuple(tuple(-a for a in r) for r in self.entries))

    def scale(self, c):
        return MatrixK(self.field, self.rows, self.cols, tuple(tuple(c * a for a in r) for r in self.entries))

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def T(self):
        entries = tuple(zip(*self.entries)) if self.rows else tuple(() for _ in range(self.cols))
        return MatrixK(self.field, self.cols, self.rows, entries)

    def is_zero(self):
        return not any(x for r in self.entries for x in r)

    def column(self, j):
        return [r[j] for r in self.entries]

    def rank(self):
        return rank(self.field, self.entries, self.cols)

    def kernel_basis(self):
        return kernel_basis(self.field, self.entries, self.cols)

    def to_lists(self):
        return [list(r) for r in self.entries]

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.entries)
        return f"MatrixK[{self.field.tag}]({self.rows}x{self.cols}: {body})"

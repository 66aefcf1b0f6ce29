"""Finite-dimensional graded algebras with derivation and curvature.

Elements are sparse dicts ``{basis index: nonzero scalar}`` over a flat
basis ordered by degree.  Everything here is exact.
"""

from __future__ import annotations

from ..linalg import Field, MatrixK

__all__ = ["GradedAlgebra", "AlgebraElement", "add", "sub", "neg", "scale", "axpy"]


def add(a, b):
    out = dict(a)
    for i, x in b.items():
        y = out.get(i)
        if y is None:
            out[i] = x
        else:
            s = y + x
            if s:
                out[i] = s
            else:
                del out[i]
    return out


def axpy(out, c, b):
    """In place ``out += c * b``."""
    for i, x in b.items():
        v = out.get(i)
        s = c * x if v is None else v + c * x
        if s:
            out[i] = s
        elif v is not None:
            del out[i]
    return out


def neg(a):
    return {i: -x for i, x in a.items()}


def sub(a, b):
    return add(a, neg(b))


def scale(c, a):
    if not c:
        return {}
    return {i: c * x for i, x in a.items()}


class GradedAlgebra:
    """A truncated graded algebra ``A = A^0 + ... + A^maxdeg`` with d and c.

    ``products[(i, j)]`` is the sparse product of basis elements i and j
    (absent pairs multiply to zero); ``derivation[i]`` is ``d(b_i)``;
    ``curvature`` and ``unit`` are sparse elements.
    """

    def __init__(self, field: Field, labels, products, unit, derivation=None,
                 curvature=None, name=""):
        self.field = field
        self.name = name
        self.labels = [list(x) for x in labels]
        self.max_degree = len(self.labels) - 1
        self.offsets = []
        n = 0
        for lab in self.labels:
            self.offsets.append(n)
            n += len(lab)
        self.dim = n
        self.deg = [g for g, lab in enumerate(self.labels) for _ in lab]
        self.flat_labels = [x for lab in self.labels for x in lab]
        self.products = {k: {i: field(x) for i, x in v.items() if x} for k, v in products.items()}
        self.products = {k: v for k, v in self.products.items() if v}
        self.unit = {i: field(x) for i, x in unit.items() if x}
        self.derivation = {k: {i: field(x) for i, x in v.items() if x}
                           for k, v in (derivation or {}).items()}
        self.derivation = {k: v for k, v in self.derivation.items() if v}
        self.curvature = {i: field(x) for i, x in (curvature or {}).items() if x}
        # row-wise product table for fast multiplication
        self._left = {}
        for (i, j), v in self.products.items():
            self._left.setdefault(i, []).append((j, v))
        self._prod_cache = {}

    # -- basis bookkeeping -------------------------------------------------

    def degree_range(self, k):
        if k < 0 or k > self.max_degree:
            return range(0)
        return range(self.offsets[k], self.offsets[k] + len(self.labels[k]))

    def dim_of_degree(self, k):
        return len(self.labels[k]) if 0 <= k <= self.max_degree else 0

    def basis_element(self, i):
        return {i: self.field.one}

    def index(self, label):
        return self.flat_labels.index(label)

    def element_degree(self, a):
        """The degree of a nonzero homogeneous element, or None."""
        ds = {self.deg[i] for i in a}
        if len(ds) == 1:
            return ds.pop()
        return None

    def homogeneous_part(self, a, k):
        r = self.degree_range(k)
        return {i: x for i, x in a.items() if i in r}

    # -- arithmetic --------------------------------------------------------

    def mul_basis(self, i, j):
        return self.products.get((i, j), {})

    def mul(self, a, b):
        if not a or not b:
            return {}
        out = {}
        prods = self.products
        for i, x in a.items():
            if i not in self._left:
                continue
            for j, y in b.items():
                p = prods.get((i, j))
                if p:
                    axpy(out, x * y, p)
        return out

    def d(self, a):
        out = {}
        der = self.derivation
        for i, x in a.items():
            v = der.get(i)
            if v:
                axpy(out, x, v)
        return out

    def commutator(self, a, b):
        """Graded commutator ``ab - (-1)^{|a||b|} ba`` for homogeneous a, b."""
        da, db = self.element_degree(a), self.element_degree(b)
        if da is None or db is None:
            return {}
        ab = self.mul(a, b)
        ba = self.mul(b, a)
        return sub(ab, ba) if (da * db) % 2 == 0 else add(ab, ba)

    def coords(self, a, k=None):
        """Dense coordinate list (of degree k only when given)."""
        r = range(self.dim) if k is None else self.degree_range(k)
        z = self.field.zero
        return [a.get(i, z) for i in r]

    def from_coords(self, c, k=None):
        start = 0 if k is None else self.offsets[k]
        return {start + i: x for i, x in enumerate(c) if x}

    def element(self, coords=None, **by_label):
        """Build an element either from flat coordinates or from label=coeff."""
        if coords is not None:
            return {i: self.field(x) for i, x in enumerate(coords) if x}
        return {self.index(k): self.field(v) for k, v in by_label.items() if v}

    def derivation_matrix(self, k):
        """MatrixK of ``d : A^k -> A^{k+1}``."""
        src = self.degree_range(k)
        tgt = self.degree_range(k + 1)
        cols = []
        for i in src:
            v = self.derivation.get(i, {})
            cols.append([v.get(t, self.field.zero) for t in tgt])
        if not cols:
            return MatrixK.zeros(self.field, len(tgt), 0)
        return MatrixK.from_columns(self.field, cols, len(tgt))

    def degree_zero(self):
        """The degree-zero subalgebra as a GradedAlgebra concentrated in degree 0."""
        n0 = self.dim_of_degree(0)
        prods = {(i, j): {t: x for t, x in v.items() if t < n0}
                 for (i, j), v in self.products.items() if i < n0 and j < n0}
        return GradedAlgebra(self.field, [self.labels[0]], prods, self.unit,
                             name=(self.name + "0") if self.name else "")

    def structure_tensor(self):
        """Dense ``T[i][j][k]`` with ``b_i b_j = sum_k T[i][j][k] b_k``."""
        z = self.field.zero
        return [[[self.products.get((i, j), {}).get(k, z) for k in range(self.dim)]
                 for j in range(self.dim)] for i in range(self.dim)]

    def with_products(self, products, name=None):
        return GradedAlgebra(self.field, self.labels, products, self.unit, self.derivation,
                             self.curvature, self.name if name is None else name)

    def __eq__(self, other):
        return (isinstance(other, GradedAlgebra) and self.field == other.field
                and self.labels == other.labels and self.products == other.products
                and self.unit == other.unit and self.derivation == other.derivation
                and self.curvature == other.curvature)

    def __hash__(self):
        return hash((self.name, self.dim))

    def __repr__(self):
        dims = [len(x) for x in self.labels]
        return f"GradedAlgebra({self.name or '?'}, {self.field.tag}, dims={dims})"


class AlgebraElement:
    """An element with a reference to its algebra, for interactive use."""

    __slots__ = ("owner", "data")

    def __init__(self, owner: GradedAlgebra, data=None):
        self.owner = owner
        self.data = dict(data or {})

    def _wrap(self, d):
        return AlgebraElement(self.owner, d)

    def _other(self, o):
        if isinstance(o, AlgebraElement):
            if o.owner is not self.owner:
                raise ValueError("elements of different algebras")
            return o.data
        return scale(self.owner.field(o), self.owner.unit)

    def __add__(self, o):
        return self._wrap(add(self.data, self._other(o)))

    __radd__ = __add__

    def __sub__(self, o):
        return self._wrap(sub(self.data, self._other(o)))

    def __neg__(self):
        return self._wrap(neg(self.data))

    def __mul__(self, o):
        return self._wrap(self.owner.mul(self.data, self._other(o)))

    def __rmul__(self, o):
        return self._wrap(self.owner.mul(self._other(o), self.data))

    def d(self):
        return self._wrap(self.owner.d(self.data))

    def __eq__(self, o):
        return isinstance(o, AlgebraElement) and o.owner is self.owner and o.data == self.data

    def __hash__(self):
        return hash(tuple(sorted(self.data.items())))

    def coords(self):
        return self.owner.coords(self.data)

    def __repr__(self):
        if not self.data:
            return "0"
        terms = [f"{x}*{self.owner.flat_labels[i]}" for i, x in sorted(self.data.items())]
        return " + ".join(terms)

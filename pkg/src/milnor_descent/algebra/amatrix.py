"""Matrices with entries in a GradedAlgebra (lists of lists of sparse elements).

Entry multiplication is plain algebra multiplication; no Koszul signs are
inserted here.
"""

from .graded import add, axpy, neg, scale

__all__ = [
    "zeros", "identity", "shape", "madd", "msub", "mneg", "mscale", "mmul",
    "md", "mmap", "lmul", "rmul", "is_zero", "from_scalars", "hstack", "vstack",
    "block", "to_k_vector", "from_k_vector", "homogeneous_part",
]


def zeros(r, c):
    return [[{} for _ in range(c)] for _ in range(r)]


def identity(A, n):
    return [[dict(A.unit) if i == j else {} for j in range(n)] for i in range(n)]


def shape(X):
    return (len(X), len(X[0]) if X else 0)


def madd(X, Y):
    return [[add(a, b) for a, b in zip(r, s)] for r, s in zip(X, Y)]


def mneg(X):
    return [[neg(a) for a in r] for r in X]


def msub(X, Y):
    return madd(X, mneg(Y))


def mscale(c, X):
    return [[scale(c, a) for a in r] for r in X]


def mmul(A, X, Y, cols=None):
    """Matrix product XY over A (entry order: X entry times Y entry)."""
    if cols is None:
        cols = len(Y[0]) if Y else 0
    out = []
    mul = A.mul
    for r in X:
        nz = [(k, a) for k, a in enumerate(r) if a]
        line = []
        for j in range(cols):
            acc = {}
            for k, a in nz:
                b = Y[k][j]
                if b:
                    p = mul(a, b)
                    if p:
                        for i, x in p.items():
                            v = acc.get(i)
                            s = x if v is None else v + x
                            if s:
                                acc[i] = s
                            elif v is not None:
                                del acc[i]
            line.append(acc)
        out.append(line)
    return out


def md(A, X):
    """Entrywise derivation."""
    return [[A.d(a) for a in r] for r in X]


def mmap(fmap, X):
    """Entrywise application of a linear map given as ``fmap(element)``."""
    return [[fmap(a) for a in r] for r in X]


def lmul(A, a, X):
    """``a * X`` entrywise with ``a`` on the left."""
    return [[A.mul(a, b) for b in r] for r in X]


def rmul(A, X, a):
    """``X * a`` entrywise with ``a`` on the right."""
    return [[A.mul(b, a) for b in r] for r in X]


def is_zero(X):
    return not any(a for r in X for a in r)


def from_scalars(A, rows):
    """Matrix of scalar multiples of the unit."""
    return [[scale(A.field(x), A.unit) for x in r] for r in rows]


def hstack(*mats):
    rows = max((len(m) for m in mats), default=0)
    return [sum((list(m[i]) for m in mats), []) for i in range(rows)]


def vstack(*mats):
    out = []
    for m in mats:
        out.extend([list(r) for r in m])
    return out


def block(X, r0, r1, c0, c1):
    return [list(r[c0:c1]) for r in X[r0:r1]]


def homogeneous_part(A, X, k):
    return [[A.homogeneous_part(a, k) for a in r] for r in X]


def to_k_vector(A, X, k=None):
    """Flatten row-major; each entry contributes its (degree-k) coordinates."""
    out = []
    for r in X:
        for a in r:
            out.extend(A.coords(a, k))
    return out


def from_k_vector(A, v, rows, cols, k=None):
    n = A.dim if k is None else A.dim_of_degree(k)
    X = []
    pos = 0
    for _ in range(rows):
        line = []
        for _ in range(cols):
            line.append(A.from_coords(v[pos:pos + n], k))
            pos += n
        X.append(line)
    return X


def accumulate(A, acc, X):
    """In place ``acc += X``."""
    one = A.field.one
    for r, s in zip(acc, X):
        for j, b in enumerate(s):
            if b:
                axpy(r[j], one, b)
    return acc

"""Solving affine equations whose unknowns are matrices over a finite ring."""

from __future__ import annotations

from ..algebra import amatrix as am
from ..linalg import rank, solve

__all__ = ["solve_affine", "matrix_unknowns", "module_isomorphism_inverse", "SolveFailure"]


class SolveFailure(ValueError):
    def __init__(self, msg, ranks):
        super().__init__(f"{msg} (ranks: {ranks})")
        self.ranks = ranks


def solve_affine(field, n, fun):
    """Find x in k^n with ``fun(x) = 0`` where ``fun`` is affine in x.

    ``fun`` returns a flat list of scalars.  Returns ``(x, info)``; x is
    None when the system is inconsistent.
    """
    z, o = field.zero, field.one
    b = fun([z] * n)
    m = len(b)
    cols = []
    for i in range(n):
        v = [z] * n
        v[i] = o
        r = fun(v)
        cols.append([p - q for p, q in zip(r, b)])
    rows = [[cols[i][r] for i in range(n)] for r in range(m)]
    rhs = [-x for x in b]
    info = {"unknowns": n, "equations": m}
    if n == 0:
        ok = not any(b)
        return ([] if ok else None), info
    x = solve(field, rows, n, rhs)
    if x is None:
        info["rank"] = rank(field, rows, n)
        info["augmented_rank"] = rank(field, [r + [c] for r, c in zip(rows, rhs)], n + 1)
    return x, info


def matrix_unknowns(R, shapes, k=0):
    """Helpers to pack/unpack several matrices with entries in ``R^k``.

    Returns ``(count, unpack)`` where ``unpack(x)`` gives the list of matrices.
    """
    dk = R.dim_of_degree(k)
    sizes = [r * c * dk for r, c in shapes]

    def unpack(x):
        out = []
        pos = 0
        for (r, c), s in zip(shapes, sizes):
            out.append(am.from_k_vector(R, x[pos:pos + s], r, c, k))
            pos += s
        return out

    return sum(sizes), unpack


def _flat(R, *mats):
    out = []
    for M in mats:
        out.extend(am.to_k_vector(R, M))
    return out


def module_isomorphism_inverse(R, e1, e2, U):
    """Inverse of ``U : im(e1) -> im(e2)`` over the degree-zero ring of R.

    Solves ``e1 V e2 = V, U V = e2, V U = e1``; returns V or None.
    """
    n1, n2 = len(e1), len(e2)
    cnt, unpack = matrix_unknowns(R, [(n1, n2)])

    def fun(x):
        (V,) = unpack(x)
        return _flat(R,
                     am.msub(am.mmul(R, am.mmul(R, e1, V, n2), e2, n2), V) if n1 and n2 else [],
                     am.msub(am.mmul(R, U, V, n2), e2) if n2 else [],
                     am.msub(am.mmul(R, V, U, n1), e1) if n1 else [])

    x, info = solve_affine(R.field, cnt, fun)
    if x is None:
        return None, info
    return unpack(x)[0], info

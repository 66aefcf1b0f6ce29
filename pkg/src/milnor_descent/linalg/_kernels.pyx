# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled row-reduction kernels (same contract as ``_kernels_py``)."""

from math import gcd

import numpy as np
cimport numpy as cnp

BACKEND = "cython"


def rref_modp(rows, Py_ssize_t ncols, long long p):
    cdef Py_ssize_t nrows = len(rows)
    if nrows == 0 or ncols == 0:
        return [], []
    arr = np.array(rows, dtype=np.int64).reshape(nrows, ncols) % p
    cdef long long[:, ::1] a = arr
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef long long inv, b, t
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if a[i, c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            for j in range(ncols):
                t = a[r, j]
                a[r, j] = a[piv, j]
                a[piv, j] = t
        inv = pow(int(a[r, c]), -1, int(p))
        if inv != 1:
            for j in range(ncols):
                a[r, j] = (a[r, j] * inv) % p
        for i in range(nrows):
            if i == r:
                continue
            b = a[i, c]
            if b != 0:
                for j in range(ncols):
                    if a[r, j] != 0:
                        a[i, j] = (a[i, j] - b * a[r, j]) % p
                        if a[i, j] < 0:
                            a[i, j] += p
        pivots.append(c)
        r += 1
    return arr[:r].tolist(), pivots


def rref_int(rows, Py_ssize_t ncols):
    cdef list a = [list(x) for x in rows]
    cdef Py_ssize_t nrows = len(a)
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef list pr, row, new
    cdef object pv, b, g, s, t, v, best, av
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        best = 0
        for i in range(r, nrows):
            v = (<list>a[i])[c]
            if v:
                av = -v if v < 0 else v
                if piv < 0 or av < best:
                    piv = i
                    best = av
                    if av == 1:
                        break
        if piv < 0:
            continue
        a[r], a[piv] = a[piv], a[r]
        pr = <list>a[r]
        if pr[c] < 0:
            pr = [-x for x in pr]
            a[r] = pr
        pv = pr[c]
        for i in range(nrows):
            if i == r:
                continue
            row = <list>a[i]
            b = row[c]
            if b:
                g = gcd(pv, b)
                s = pv // g
                t = b // g
                new = [None] * ncols
                for j in range(ncols):
                    new[j] = s * row[j] - t * pr[j]
                g = gcd(*new)
                if g > 1:
                    for j in range(ncols):
                        new[j] = new[j] // g
                a[i] = new
        pivots.append(c)
        r += 1
    return a[:r], pivots

"""Pure-Python row-reduction kernels.

Both kernels perform full Gauss-Jordan reduction and return ``(rows, pivots)``
where ``rows`` holds only the nonzero rows.  They must stay behaviourally
identical to the compiled versions in ``_kernels.pyx``.
"""

from math import gcd

BACKEND = "python"


def rref_modp(rows, ncols, p):
    """Reduced row echelon form over F_p; entries are plain ints."""
    a = [[x % p for x in r] for r in rows]
    nrows = len(a)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if a[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        a[r], a[piv] = a[piv], a[r]
        pr = a[r]
        inv = pow(pr[c], -1, p)
        if inv != 1:
            pr = [(x * inv) % p for x in pr]
            a[r] = pr
        for i in range(nrows):
            if i == r:
                continue
            row = a[i]
            b = row[c]
            if b:
                a[i] = [(x - b * y) % p for x, y in zip(row, pr)]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rref_int(rows, ncols):
    """Fraction-free Gauss-Jordan over the integers.

    Each returned row is primitive (content 1, pivot positive) and vanishes
    in every other row's pivot column.  Dividing a row by its pivot entry
    gives the rational reduced echelon form.
    """
    a = [list(r) for r in rows]
    nrows = len(a)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        best = 0
        for i in range(r, nrows):
            v = a[i][c]
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
        pr = a[r]
        if pr[c] < 0:
            pr = [-x for x in pr]
            a[r] = pr
        pv = pr[c]
        for i in range(nrows):
            if i == r:
                continue
            row = a[i]
            b = row[c]
            if b:
                g = gcd(pv, b)
                s, t = pv // g, b // g
                new = [s * x - t * y for x, y in zip(row, pr)]
                g = gcd(*new)
                if g > 1:
                    new = [x // g for x in new]
                a[i] = new
        pivots.append(c)
        r += 1
    return a[:r], pivots

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from milnor_descent.linalg import (
    GF,
    QQ,
    ComplexError,
    Field,
    FiniteComplex,
    MatrixK,
    ModP,
    Subspace,
    complex_cohomology,
    induced_cohomology_map,
    kernel_basis,
    rank,
    solve,
)

F5 = GF(5)


def mat(field, rows):
    return MatrixK.from_rows(field, [[field(x) for x in r] for r in rows])


def test_scalars_are_reduced_and_exact():
    assert QQ("6/4") == Fraction(3, 2)
    x = F5(7)
    assert isinstance(x, ModP) and int(x) == 2
    assert int(F5(-1)) == 4
    assert F5(2) * F5(3) == F5(1)
    assert F5(1) / F5(3) == F5(2)
    assert Field.from_tag("F5") == F5 and Field.from_tag("Q") == QQ
    with pytest.raises(ValueError):
        Field(6)


def test_kernel_identity_is_empty(field):
    assert kernel_basis(field, [[field(1), field(0)], [field(0), field(1)]], 2) == []


@pytest.mark.parametrize("fld", [QQ, F5], ids=["Q", "F5"])
def test_kernel_of_rank_one(fld):
    ker = kernel_basis(fld, [[fld(1), fld(2)], [fld(2), fld(4)]], 2)
    assert len(ker) == 1
    v = ker[0]
    # proportional to (2, -1)
    assert v[0] * fld(-1) == v[1] * fld(2)


def test_solve_and_inconsistency():
    rows = [[QQ(1), QQ(1)], [QQ(1), QQ(-1)]]
    assert solve(QQ, rows, 2, [QQ(3), QQ(1)]) == [2, 1]
    assert solve(QQ, [[QQ(1), QQ(1)], [QQ(2), QQ(2)]], 2, [QQ(1), QQ(3)]) is None


def test_subspace_coordinates():
    S = Subspace(QQ, 3, [[QQ(1), QQ(1), QQ(0)], [QQ(0), QQ(1), QQ(1)]])
    assert len(S) == 2
    assert S.contains([QQ(1), QQ(2), QQ(1)])
    assert not S.contains([QQ(1), QQ(0), QQ(0)])


small = st.integers(-4, 4)


@st.composite
def int_matrices(draw, max_side=6):
    r = draw(st.integers(0, max_side))
    c = draw(st.integers(1, max_side))
    return r, c, [[draw(small) for _ in range(c)] for _ in range(r)]


@given(int_matrices(), st.sampled_from([QQ, F5, GF(7)]))
def test_rank_nullity(m, fld):
    r, c, rows = m
    rows = [[fld(x) for x in row] for row in rows]
    ker = kernel_basis(fld, rows, c)
    assert rank(fld, rows, c) + len(ker) == c
    for v in ker:
        assert all(sum((a * b for a, b in zip(row, v)), fld.zero) == 0 for row in rows)


@given(int_matrices(5))
def test_rank_over_q_bounds_rank_mod_p(m):
    r, c, rows = m
    assert rank(F5, [[F5(x) for x in row] for row in rows], c) <= rank(QQ, [[QQ(x) for x in row] for row in rows], c)


def two_term(field, a):
    return FiniteComplex(field, 0, 1, {0: 1, 1: 1}, {0: mat(field, [[a]])}).validate()


def test_cohomology_examples(field):
    z = FiniteComplex(field, 0, 2, {}, {})
    assert all(h.dim == 0 for h in complex_cohomology(z).values())
    acyclic = complex_cohomology(two_term(field, 1))
    assert acyclic[0].dim == acyclic[1].dim == 0
    zero = complex_cohomology(two_term(field, 0))
    assert zero[0].dim == zero[1].dim == 1


def test_d_squared_nonzero_is_reported():
    c = FiniteComplex(QQ, 0, 2, {0: 1, 1: 1, 2: 1},
                      {0: mat(QQ, [[1]]), 1: mat(QQ, [[1]])})
    with pytest.raises(ComplexError) as e:
        c.validate()
    assert e.value.degree == 0


def test_induced_maps():
    c = two_term(QQ, 0)
    ident = {0: MatrixK.identity(QQ, 1), 1: MatrixK.identity(QQ, 1)}
    maps, ok = induced_cohomology_map(c, c, ident)
    assert ok and maps[0] == MatrixK.identity(QQ, 1)
    zero = FiniteComplex(QQ, 0, 1, {}, {})
    _, ok = induced_cohomology_map(zero, c, {0: MatrixK.zeros(QQ, 1, 0), 1: MatrixK.zeros(QQ, 1, 0)})
    assert not ok


def test_chain_map_condition_checked():
    c = two_term(QQ, 1)
    bad = {0: MatrixK.identity(QQ, 1), 1: MatrixK.zeros(QQ, 1, 1)}
    with pytest.raises(ComplexError):
        induced_cohomology_map(c, c, bad)


@st.composite
def random_complexes(draw, fld):
    """Random d^0, and d^1 built from vectors annihilating the image of d^0."""
    n0, n1 = draw(st.integers(0, 4)), draw(st.integers(1, 5))
    d0 = [[fld(draw(small)) for _ in range(n0)] for _ in range(n1)]
    img = [[d0[i][j] for i in range(n1)] for j in range(n0)]
    ann = kernel_basis(fld, img, n1) if img else [[fld.one if i == j else fld.zero for i in range(n1)]
                                                  for j in range(n1)]
    k = draw(st.integers(0, len(ann)))
    d1 = []
    for _ in range(k):
        coeffs = [fld(draw(small)) for _ in ann]
        d1.append([sum((c * a[i] for c, a in zip(coeffs, ann)), fld.zero) for i in range(n1)])
    dims = {0: n0, 1: n1, 2: len(d1)}
    diffs = {0: MatrixK.from_rows(fld, d0, n0)}
    if d1:
        diffs[1] = MatrixK.from_rows(fld, d1, n1)
    return FiniteComplex(fld, 0, 2, dims, diffs).validate()


@given(st.data())
def test_euler_characteristic(data):
    fld = data.draw(st.sampled_from([QQ, F5]))
    c = data.draw(random_complexes(fld))
    h = complex_cohomology(c)
    assert c.euler_characteristic() == sum((-1) ** t * h[t].dim for t in range(0, 3))
    for t in range(3):
        for v in h[t].representatives:
            assert not any(c.d(t).apply(v))


def test_pure_env_selects_python_backend():
    import os
    import subprocess
    import sys
    env = dict(os.environ, MILNOR_DESCENT_PURE="1")
    code = "import milnor_descent.linalg as L; print(L.BACKEND)"
    r = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env, check=True)
    assert r.stdout.strip() == "python"

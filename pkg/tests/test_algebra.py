import numpy as np
import pytest

from milnor_descent.algebra import (
    CurvedDgaMap,
    DescentSquare,
    GradedAlgebra,
    build_degree_zero_fiber_product,
    check_descent_assumptions,
    monomial_algebra,
    nodal_rings,
    perturb_structure_constant,
    ring_map,
    validate_cdga_map,
    validate_curved_dga,
)
from milnor_descent.algebra.square import FiberProductError
from milnor_descent.linalg import QQ
from milnor_descent.samples import make_rng


def structure_tensor(A):
    """Integer structure tensor read straight from the product table."""
    T = np.zeros((A.dim, A.dim, A.dim), dtype=np.int64)
    for (i, j), v in A.products.items():
        for k, x in v.items():
            T[i, j, k] = int(x)
    return T


def einsum_axioms(A):
    """Associativity and unit via tensor contraction, independent of the validator loops."""
    T = structure_tensor(A)
    left = np.einsum("ijm,mkn->ijkn", T, T)
    right = np.einsum("jkm,imn->ijkn", T, T)
    u = np.zeros(A.dim, dtype=np.int64)
    for i, x in A.unit.items():
        u[i] = int(x)
    eye = np.eye(A.dim, dtype=np.int64)
    unit_ok = (np.einsum("i,ijk->jk", u, T) == eye).all() and (np.einsum("j,ijk->ik", u, T) == eye).all()
    return bool((left == right).all()), bool(unit_ok)


def test_fixture_algebras_validate(sq1, sq2, nodal):
    for sq in (sq1, sq2, nodal):
        for nm in "ABCD":
            rep = validate_curved_dga(sq.algebra(nm))
            assert rep.ok, rep
        for nm in "fkgl":
            assert validate_cdga_map(getattr(sq, nm)).ok


def test_einsum_oracle_agrees_on_fixtures(sq2, sq1, nodal):
    for sq in (sq1, sq2, nodal):
        for nm in "ABCD":
            assert einsum_axioms(sq.algebra(nm)) == (True, True)


def test_sq2_curvature_is_central(sq2):
    A = sq2.A
    assert A.curvature == {A.index("x*d1d2"): 1}
    for i in range(A.dim):
        b = {i: QQ(1)}
        assert A.mul(A.curvature, b) == A.mul(b, A.curvature)


def test_perturbation_is_rejected_with_witness(sq2):
    A = sq2.A
    B = perturb_structure_constant(A, A.index("x"), A.index("x"), A.index("1"))
    rep = validate_curved_dga(B)
    assert not rep.ok
    assert rep.get("associativity").witness is not None
    assert einsum_axioms(B)[0] is False


def test_perturbations_agree_with_einsum_oracle(sq2):
    """Seeded single-entry perturbations: validator and tensor oracle agree on associativity."""
    A = sq2.A
    rng = make_rng(2024, 8)
    for _ in range(30):
        i, j, t = (int(v) for v in rng.integers(0, A.dim, size=3))
        B = perturb_structure_constant(A, i, j, t)
        assoc, unit = einsum_axioms(B)
        rep = validate_curved_dga(B)
        assert rep.get("associativity").passed == assoc
        assert rep.get("unit").passed == unit


def test_exactly_eight_perturbations_stay_valid(sq2):
    """Exhaustive scan: adding a top-degree term to an odd-odd product keeps every axiom."""
    A = sq2.A
    lab = A.flat_labels
    survivors = []
    for i in range(A.dim):
        for j in range(A.dim):
            for t in range(A.dim):
                if validate_curved_dga(perturb_structure_constant(A, i, j, t)).ok:
                    survivors.append((lab[i], lab[j], lab[t]))
    expect = [(a, b, c) for a in ("d1", "d2") for b in ("d1", "d2") for c in ("x*d1d2", "y*d1d2")]
    assert sorted(survivors) == sorted(expect)


def test_identity_map_and_quotient_map():
    A = monomial_algebra(QQ, ["x"], [(0,), (1,)], "B0")
    k = monomial_algebra(QQ, [], [()], "k")
    assert validate_cdga_map(CurvedDgaMap.identity(A)).ok
    q = ring_map(A, k, {"1": {"1": 1}}, "q")
    assert validate_cdga_map(q).ok


def test_curvature_mismatch_is_caught(sq2):
    A = sq2.A
    flat = GradedAlgebra(A.field, A.labels, A.products, A.unit, A.derivation, None, "A-flat")
    m = CurvedDgaMap(A, flat, {i: {i: 1} for i in range(A.dim)}, {A.index("d1"): 1}, "id+d1")
    rep = validate_cdga_map(m)
    assert not rep.get("curvature-compatibility").passed
    assert rep.get("derivation-compatibility").passed


def test_degree_zero_fiber_product_nodal():
    (A0, B0, C0, D0), (f0, k0, g0, l0) = nodal_rings(QQ)
    P, pB, pC = build_degree_zero_fiber_product(B0, C0, D0, g0, l0)
    assert P.dim == B0.dim + C0.dim - D0.dim == 3
    assert validate_curved_dga(P).ok
    # P is local with square-zero maximal ideal: every product of two non-unit
    # kernel elements vanishes
    nil = [i for i in range(P.dim) if not pB.images.get(i, {}).get(0) and not pC.images.get(i, {}).get(0)]
    assert len(nil) == 2
    assert all(not P.mul_basis(i, j) for i in nil for j in nil)


def test_degree_zero_fiber_product_trivial_cases():
    k = monomial_algebra(QQ, [], [()], "k")
    idk = CurvedDgaMap.identity(k)
    P, _, _ = build_degree_zero_fiber_product(k, k, k, idk, idk)
    assert P.dim == 1
    C0 = monomial_algebra(QQ, ["y"], [(0,), (1,)], "C0")
    l0 = ring_map(C0, k, {"1": {"1": 1}})
    P, pB, pC = build_degree_zero_fiber_product(k, C0, k, idk, l0)
    assert P.dim == 2
    assert pC.matrix(0).rank() == 2


def test_fiber_product_rejects_non_unital():
    k = monomial_algebra(QQ, [], [()], "k")
    zero = CurvedDgaMap(k, k, {}, None, "0")
    idk = CurvedDgaMap.identity(k)
    with pytest.raises(FiberProductError):
        build_degree_zero_fiber_product(k, k, k, idk, zero)


def test_descent_assumptions_on_fixtures(sq1, sq2, nodal):
    for sq in (sq1, sq2, nodal):
        rep = check_descent_assumptions(sq)
        assert rep.ok, rep
        A, B, C, D = (sq.algebra(n) for n in "ABCD")
        assert A.dim_of_degree(0) == B.dim_of_degree(0) + C.dim_of_degree(0) - D.dim_of_degree(0)


def test_descent_assumptions_idempotent(sq1):
    a = check_descent_assumptions(sq1).to_dict()
    b = check_descent_assumptions(sq1).to_dict()
    assert a == b


def test_non_surjective_l0_fails(nodal):
    sq = nodal
    l_bad = CurvedDgaMap(sq.C, sq.D, {}, None, "zero")
    bad = DescentSquare(sq.A, sq.B, sq.C, sq.D, sq.f, sq.k, sq.g, l_bad, sq.bases, "bad")
    rep = check_descent_assumptions(bad)
    assert not rep.get("l0-surjective").passed
    assert not rep.get("map-l-valid").passed

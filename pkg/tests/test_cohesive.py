from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from milnor_descent.algebra import CurvedDgaMap
from milnor_descent.algebra import amatrix as am
from milnor_descent.cohesive import (
    CohesiveModule,
    HomComplexSpace,
    Morphism,
    NotClosedError,
    check_cohesive,
    cohesive_inverse_search,
    compose_hom,
    cone,
    cone_triangle,
    direct_sum,
    free_module,
    identity_morphism,
    is_homotopy_equivalence,
    pullback,
    pushforward,
    shift,
    solve_rank_one_maurer_cartan,
    zero_morphism,
)
from milnor_descent.linalg import complex_cohomology, solve
from milnor_descent.samples import make_rng, object_set, two_step


def hdims(H, lo=None, hi=None):
    c = H.complex(H.lo - 1 if lo is None else lo, H.hi + 1 if hi is None else hi)
    return {t: h.dim for t, h in complex_cohomology(c).items()}


def el(A, label, c=1):
    return {A.index(label): A.field(c)}


# -- cohesive modules ------------------------------------------------------------


def test_free_module_is_cohesive(sq1):
    assert check_cohesive(free_module(sq1.A)).ok


def test_curved_free_module_needs_a_connection(sq2):
    A = sq2.A
    rep = check_cohesive(free_module(A))
    assert not rep.ok
    w = rep.get("relative-curvature-vanishes").witness
    assert w["value"] == {"x*d1d2": "1"}


def test_rank_one_maurer_cartan_is_infeasible_over_sq2(sq2):
    u, info = solve_rank_one_maurer_cartan(sq2.A)
    assert u is None
    assert info["quadratic_term_vanishes"]
    assert "inconsistent" in info["reason"]


def test_rank_one_maurer_cartan_solves_when_c_is_exact():
    # A = k<1, e, f> with d e = f and c = -f: u = e solves d u + u^2 = -c
    from milnor_descent.algebra import GradedAlgebra
    from milnor_descent.linalg import QQ
    A = GradedAlgebra(QQ, [["1"], ["e"], ["f"]],
                      {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (0, 2): {2: 1}, (2, 0): {2: 1}},
                      {0: 1}, {1: {2: 1}}, {2: -1})
    u, info = solve_rank_one_maurer_cartan(A)
    assert u == {1: 1}
    E = CohesiveModule(A, {0: am.identity(A, 1)}, {(0, 0): [[u]]})
    assert check_cohesive(E).ok


def test_matrix_factorizations_are_cohesive(sq2):
    for E in object_set(sq2):
        assert check_cohesive(E).ok, E.name


# -- hom complexes ------------------------------------------------------------------


def test_hom_of_free_over_degree_zero_ring(nodal):
    H = HomComplexSpace(free_module(nodal.A), free_module(nodal.A))
    assert H.dim(0) == nodal.A.dim
    assert all(H.dim(t) == 0 for t in (-2, -1, 1, 2))


def test_hom_of_free_over_sq1(sq1):
    A = sq1.A
    H = HomComplexSpace(free_module(A), free_module(A))
    assert H.dim(0) == A.dim_of_degree(0) == 3
    assert H.dim(1) == A.dim_of_degree(1) == 3
    assert H.d_matrix(0).is_zero()


def brute_force_h0_two_step(A, a, p):
    """Count chain maps and null-homotopic ones for ``A --a--> A`` by enumeration over F_p."""
    n = A.dim
    vecs = list(product(range(p), repeat=n))

    def el_of(v):
        return {i: A.field(c) for i, c in enumerate(v) if c}

    mul = {v: A.mul(el_of(v), a) for v in vecs}
    chain = sum(1 for u in vecs for w in vecs if A.mul(a, el_of(u)) == mul[w])
    null = {(tuple(A.coords(mul[h])), tuple(A.coords(A.mul(a, el_of(h))))) for h in vecs}
    # dim H0 = log_p(#chain maps) - log_p(#null-homotopic)
    import math
    return round(math.log(chain, p)) - round(math.log(len(null), p))


def test_two_step_h0_matches_brute_force(nodal_f5):
    A = nodal_f5.A
    E = two_step(A, el(A, "x"), "xA")
    H = HomComplexSpace(E, E)
    assert hdims(H)[0] == brute_force_h0_two_step(A, el(A, "x"), 5) == 4


def test_d_squared_zero_on_all_object_pairs(sq1, sq2, nodal):
    for sq in (sq1, sq2, nodal):
        objs = object_set(sq)
        for a in objs:
            for b in objs:
                HomComplexSpace(a, b).complex()  # raises on d∘d != 0


# -- composition ---------------------------------------------------------------------


def random_element(H, t, rng):
    n = H.dim(t)
    return H.element(t, [H.field(int(x)) for x in rng.integers(-2, 3, size=n)])


def test_identity_is_a_unit(sq1):
    objs = object_set(sq1)
    rng = make_rng(1)
    for a in objs[:4]:
        for b in objs[:4]:
            H = HomComplexSpace(a, b)
            for t in (-1, 0, 1):
                f = random_element(H, t, rng)
                assert compose_hom(identity_morphism(b), f) == f
                assert compose_hom(f, identity_morphism(a)) == f


@settings(max_examples=25)
@given(st.integers(0, 5), st.integers(0, 5), st.integers(0, 5), st.integers(-1, 1), st.integers(-1, 1),
       st.integers(0, 10**6))
def test_leibniz_and_associativity(ia, ib, ic, s, t, seed):
    objs = _objs()
    a, b, c = objs[ia], objs[ib], objs[ic]
    rng = make_rng(seed)
    Hab, Hbc, Hac = HomComplexSpace(a, b), HomComplexSpace(b, c), HomComplexSpace(a, c)
    f, g = random_element(Hab, s, rng), random_element(Hbc, t, rng)
    lhs = Hac.apply_d(compose_hom(g, f))
    sign = Hac.field(-1 if t % 2 else 1)
    rhs = compose_hom(Hbc.apply_d(g), f) + compose_hom(g, Hab.apply_d(f)).scale(sign)
    assert lhs == rhs
    h = random_element(HomComplexSpace(c, a), 0, rng)
    assert compose_hom(h, compose_hom(g, f)) == compose_hom(compose_hom(h, g), f)


_CACHE = {}


def _objs():
    if "sq1" not in _CACHE:
        from milnor_descent.algebra import sq1_square
        _CACHE["sq1"] = object_set(sq1_square())
    return _CACHE["sq1"]


def closed_degree_zero(H, rng):
    dm = H.d_matrix(0)
    from milnor_descent.linalg import kernel_basis
    n = H.dim(0)
    basis = kernel_basis(H.field, [list(r) for r in dm.entries], n) if dm.rows else \
        [[H.field(int(i == j)) for i in range(n)] for j in range(n)]
    v = [H.field(0)] * n
    for b in basis:
        c = H.field(int(rng.integers(-2, 3)))
        v = [x + c * y for x, y in zip(v, b)]
    return H.element(0, v)


def test_composition_of_closed_is_closed(sq1):
    objs = object_set(sq1)
    rng = make_rng(3)
    for a, b, c in [(objs[0], objs[3], objs[3]), (objs[2], objs[0], objs[2]), (objs[5], objs[5], objs[0])]:
        f = closed_degree_zero(HomComplexSpace(a, b), rng)
        g = closed_degree_zero(HomComplexSpace(b, c), rng)
        assert HomComplexSpace(a, c).apply_d(compose_hom(g, f)).is_zero()


def test_composition_endpoint_mismatch(sq1):
    a, b = free_module(sq1.A), free_module(sq1.A)
    with pytest.raises(ValueError):
        compose_hom(identity_morphism(a), identity_morphism(b))


# -- shift ------------------------------------------------------------------------------


def test_shift_examples(sq1):
    E = free_module(sq1.A)
    assert shift(E).degrees == [-1]
    C = object_set(sq1)[5]
    CC = shift(shift(C))
    assert CC.degrees == [j - 2 for j in C.degrees]
    assert CC.omega == {(jt - 2, js - 2): W for (jt, js), W in C.omega.items()}
    assert check_cohesive(shift(C)).ok


def test_shift_moves_cohomology(sq1):
    objs = object_set(sq1)
    for e in objs[:4]:
        for f in objs[:4]:
            h = hdims(HomComplexSpace(e, f), -5, 6)
            hs = hdims(HomComplexSpace(e, shift(f)), -6, 5)
            assert all(hs.get(t, 0) == h.get(t + 1, 0) for t in range(-5, 5))


# -- cone -------------------------------------------------------------------------------


def test_cone_of_identity_is_acyclic(sq1):
    objs = object_set(sq1)
    for E in objs:
        C = cone(identity_morphism(E))
        assert check_cohesive(C).ok
        for P in objs:
            assert all(v == 0 for v in hdims(HomComplexSpace(P, C)).values()), (E.name, P.name)


def test_cone_of_zero_is_block_diagonal(sq1):
    E, F = object_set(sq1)[3], object_set(sq1)[5]
    C = cone(zero_morphism(E, F))
    S = direct_sum(F, shift(E))
    assert C.idem == S.idem and C.omega == S.omega


def test_cone_of_x_matches_two_step_homology(nodal):
    A = nodal.A
    E = free_module(A)
    C = cone(Morphism(E, E, 0, {(0, 0): [[el(A, "x")]]}))
    h = hdims(HomComplexSpace(free_module(A), C))
    # A --x--> A: kernel <x, y>, cokernel A/(x) = <1, y>
    assert h[-1] == 2 and h[0] == 2


def test_cone_requires_closed(sq1):
    A = sq1.A
    E = free_module(A)
    F = object_set(sq1)[3]  # xA
    bad = Morphism(E, F, 0, {(0, 0): [[A.unit]]})
    with pytest.raises(NotClosedError):
        cone(bad)


def null_homotopy(H, phi):
    """Solve d h = phi for h in Hom^{-1}; None if phi is not a boundary."""
    dm = H.d_matrix(-1)
    rhs = H.coords(0, phi)
    if H.dim(-1) == 0:
        return [] if not any(rhs) else None
    return solve(H.field, [list(r) for r in dm.entries], H.dim(-1), rhs)


def test_cone_triangle(sq1):
    objs = object_set(sq1)
    rng = make_rng(9)
    E, F = objs[3], objs[0]
    phi = closed_degree_zero(HomComplexSpace(E, F), rng)
    C = cone(phi)
    inc, proj, Es = cone_triangle(phi, C)
    assert HomComplexSpace(F, C).apply_d(inc).is_zero()
    assert HomComplexSpace(C, Es).apply_d(proj).is_zero()
    assert compose_hom(proj, inc).is_zero()
    assert null_homotopy(HomComplexSpace(E, C), compose_hom(inc, phi)) is not None


# -- pullback and pushforward ----------------------------------------------------------------


def test_pullback_identity(sq2):
    E = object_set(sq2)[3]
    P = pullback(CurvedDgaMap.identity(sq2.A), E)
    assert P.idem == E.idem and P.omega == E.omega


def test_pullback_free_and_cohesive(sq1, sq2):
    P = pullback(sq1.f, free_module(sq1.A))
    assert P.algebra is sq1.B and P.e(0) == am.identity(sq1.B, 1)
    for E in object_set(sq2):
        assert check_cohesive(pullback(sq2.f, E)).ok
        assert check_cohesive(pullback(sq2.k, E)).ok


def test_pullback_functorial(sq1, sq2):
    for sq in (sq1, sq2):
        for E in object_set(sq):
            a = pullback(sq.h, E)
            b = pullback(sq.g, pullback(sq.f, E))
            c = pullback(sq.l, pullback(sq.k, E))
            assert a.idem == b.idem == c.idem
            assert a.omega == b.omega == c.omega


def test_pushforward_identity(sq1):
    E = object_set(sq1)[3]
    P = pushforward(CurvedDgaMap.identity(sq1.A), E)
    for S in object_set(sq1)[:4]:
        a, b = HomComplexSpace(S, E), HomComplexSpace(S, P)
        assert all(a.dim(t) == b.dim(t) for t in range(-3, 4))


def test_pushforward_dimension_count(nodal):
    N = free_module(nodal.B)
    H = HomComplexSpace(free_module(nodal.A), pushforward(nodal.f, N))
    assert H.dim(0) == 2


def test_pushforward_adjunction_dims(sq1):
    objs = object_set(sq1)
    targets = [free_module(sq1.B), pullback(sq1.f, objs[3]), shift(free_module(sq1.B))]
    for S in objs:
        for N in targets:
            a = HomComplexSpace(pullback(sq1.f, S), N)
            b = HomComplexSpace(S, pushforward(sq1.f, N))
            assert all(a.dim(t) == b.dim(t) for t in range(-4, 5))
            assert hdims(a, -4, 5) == hdims(b, -4, 5)


# -- homotopy equivalences ---------------------------------------------------------------------


def test_identity_is_equivalence(sq1):
    for E in object_set(sq1):
        assert is_homotopy_equivalence(identity_morphism(E)).verdict


def test_zero_map_is_not_equivalence(sq1):
    E = free_module(sq1.A)
    assert not is_homotopy_equivalence(zero_morphism(E, E)).verdict


def test_inclusion_into_acyclic_sum(sq1):
    E = object_set(sq1)[3]
    C = cone(identity_morphism(E))
    S = direct_sum(C, E)
    inc = Morphism(E, S, 0, {(j, j): am.vstack(am.zeros(C.size(j), E.size(j)), E.e(j)) if C.size(j)
                              else E.e(j) for j in E.degrees})
    assert HomComplexSpace(E, S).apply_d(inc).is_zero()
    assert is_homotopy_equivalence(inc).verdict
    assert cohesive_inverse_search(inc).found


def test_criterion_agrees_with_inverse_search(sq1, nodal):
    rng = make_rng(17)
    for sq in (sq1, nodal):
        objs = object_set(sq)
        for a in objs:
            for b in objs:
                phi = closed_degree_zero(HomComplexSpace(a, b), rng)
                assert is_homotopy_equivalence(phi).verdict == cohesive_inverse_search(phi).found

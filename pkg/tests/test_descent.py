import pytest

from milnor_descent.algebra import amatrix as am
from milnor_descent.cohesive import (
    HomComplexSpace,
    check_cohesive,
    degree_zero_complex,
    direct_sum,
    free_module,
    shift,
    zero_module,
)
from milnor_descent.descent import Descent, StrictDescentDatum, milnor_psi, psi_complexes
from milnor_descent.linalg import QQ, complex_cohomology
from milnor_descent.samples import make_rng, object_set, random_strict_datum, two_step


def hd(c):
    return {t: h.dim for t, h in complex_cohomology(c).items() if h.dim}


def el(A, label, c=1):
    return {A.index(label): A.field(c)}


@pytest.fixture(scope="module")
def D1(sq1):
    return Descent(sq1)


@pytest.fixture(scope="module")
def DN(nodal):
    return Descent(nodal)


# -- restriction ---------------------------------------------------------------

def test_restrict_free(D1, sq1):
    x = D1.restrict(free_module(sq1.A, name="A"))
    assert x.m.algebra is sq1.B and x.n.algebra is sq1.C
    assert x.m.degrees == [0] and x.n.size(0) == 1
    assert x.phi.blocks[(0, 0)] == am.identity(sq1.D, 1)
    assert x.certificate.found


def test_restrict_commutes_with_shift(D1, sq1):
    for s in object_set(sq1):
        a, b = D1.restrict(shift(s)), D1.restrict(s)
        assert a.m.idem == shift(b.m).idem and a.m.omega == shift(b.m).omega
        assert a.n.idem == shift(b.n).idem and a.n.omega == shift(b.n).omega


def test_restrict_two_step_nodal(DN, nodal):
    x = DN.restrict(two_step(nodal.A, el(nodal.A, "x"), "xA"))
    assert x.m.omega[(1, 0)] == [[el(nodal.B, "x")]]
    assert am.is_zero(x.n.omega.get((1, 0), [[{}]]))


# -- λ and Ã -----------------------------------------------------------------------

def test_lambda_on_free(D1, sq1):
    x = D1.restrict(free_module(sq1.A))
    lam = D1.build_lambda(x.m, x.n, x.phi)
    one = sq1.D.unit
    assert lam.degree_zero(0) == [[one, am.mneg([[one]])[0][0]]]
    assert lam.closedness_defect() == []


def test_lambda_without_phi_keeps_c_side(D1, sq1):
    x = D1.restrict(free_module(sq1.A))
    lam = D1.build_lambda(x.m, x.n, None)
    row = lam.degree_zero(0)[0]
    assert row[0] == {} and row[1] == am.mneg([[sq1.D.unit]])[0][0]


def test_a_tilde_of_free_has_a0_cohomology(D1, sq1):
    x = D1.restrict(free_module(sq1.A))
    c = D1.a_tilde_degree_zero(x)
    assert hd(c) == {0: sq1.A.dim_of_degree(0)}
    # underlying pieces B⁰ ⊕ C⁰ in degree 0 and D⁰ in degree 1
    assert c.dim(0) == sq1.B.dim_of_degree(0) + sq1.C.dim_of_degree(0)
    assert c.dim(1) == sq1.D.dim_of_degree(0)


def test_a_tilde_of_zero(D1, sq1):
    x = D1.restrict(zero_module(sq1.A))
    assert D1.a_tilde(x).is_zero()


def test_a_tilde_identity(D1, sq1):
    for s in object_set(sq1)[:4]:
        x = D1.restrict(s)
        eta = D1.unit_eta(s)
        assert D1.a_tilde_mor(x.identity()).apply(eta) == eta


# -- adjunction ----------------------------------------------------------------------

def test_adjunction_free(D1, sq1):
    s = free_module(sq1.A)
    assert D1.adjunction_check(s, D1.restrict(s)).ok


def test_adjunction_with_zero(D1, sq1):
    z = zero_module(sq1.A)
    s = free_module(sq1.A)
    for a, b in ((z, D1.restrict(s)), (s, D1.restrict(z))):
        rep = D1.adjunction_check(a, b)
        assert rep.ok
        assert all(v == [0, 0] for v in rep.get("dimensions-agree").details["dims"].values())


def test_adjunction_seeded_pairs(D1, sq1):
    objs = object_set(sq1)
    rng = make_rng(7)
    for i in range(4):
        s = objs[int(rng.integers(len(objs)))]
        x = D1.restrict(objs[int(rng.integers(len(objs)))])
        assert D1.adjunction_check(s, x, make_rng(7, i)).ok


# -- Milnor patching -------------------------------------------------------------------

def test_milnor_psi_free(nodal):
    B, C, D = nodal.B, nodal.C, nodal.D
    r = milnor_psi(nodal, am.identity(B, 1), am.identity(C, 1), am.identity(D, 1))
    assert r.rank == 1 and r.P == am.identity(nodal.A, 1)


def test_milnor_psi_unit(nodal):
    B, C, D = nodal.B, nodal.C, nodal.D
    r = milnor_psi(nodal, am.identity(B, 1), am.identity(C, 1), [[{D.index("1"): QQ(3)}]])
    assert r.rank == 1 and r.VM is not None and r.VN is not None


def test_milnor_psi_rank_two(nodal):
    B, C, D = nodal.B, nodal.C, nodal.D
    u = D.index("1")
    phi = [[{u: QQ(1)}, {u: QQ(2)}], [{u: QQ(3)}, {u: QQ(5)}]]
    r = milnor_psi(nodal, am.identity(B, 2), am.identity(C, 2), phi)
    assert r.rank == 2
    # base change back: U V = id on both sides
    assert am.mmul(B, r.UM, r.VM) == am.identity(B, 2)
    assert am.mmul(C, r.UN, r.VN) == am.identity(C, 2)


def test_psi_of_restricted_two_step(DN, nodal):
    s = two_step(nodal.A, el(nodal.A, "x"), "xA")
    x = DN.restrict(s)
    d = StrictDescentDatum(x.m, x.n, {j: x.Gm.e(j) for j in x.m.degrees},
                           {j: x.Ln.e(j) for j in x.n.degrees}, "R(xA)")
    pc = psi_complexes(nodal, d)
    assert hd(pc.finite_complex()) == hd(degree_zero_complex(s).complex())
    assert DN.unglue_round_trip(s)[1]


def test_psi_of_zero(nodal):
    d = StrictDescentDatum(zero_module(nodal.B), zero_module(nodal.C), {}, {}, "0")
    assert psi_complexes(nodal, d).module.degrees == []


def _sum_datum(a, b):
    m, n = direct_sum(a.m, b.m), direct_sum(a.n, b.n)

    def bd(x, y, j, inv):
        xs = x.get(j, am.zeros(*(_sz(a, j)[::-1] if inv else _sz(a, j))))
        ys = y.get(j, am.zeros(*(_sz(b, j)[::-1] if inv else _sz(b, j))))
        top = am.hstack(xs, am.zeros(len(xs), len(ys[0]) if ys else 0)) if xs else []
        bot = am.hstack(am.zeros(len(ys), len(xs[0]) if xs else 0), ys) if ys else []
        return top + bot

    degs = sorted(set(m.degrees))
    return StrictDescentDatum(m, n, {j: bd(a.phi0, b.phi0, j, False) for j in degs},
                              {j: bd(a.phi0_inv, b.phi0_inv, j, True) for j in degs}, "sum")


def _sz(d, j):
    return d.n.size(j), d.m.size(j)


def test_psi_commutes_with_sums(nodal, DN):
    for seed in (1, 2):
        a = random_strict_datum(nodal, make_rng(seed, 0), 2)
        b = random_strict_datum(nodal, make_rng(seed, 1), 2)
        s = _sum_datum(a, b)
        assert s.check(DN.ctx).ok
        ra, rb, rs = (psi_complexes(nodal, t).psi for t in (a, b, s))
        for j in rs:
            want = (ra[j].rank if j in ra else 0) + (rb[j].rank if j in rb else 0)
            assert rs[j].rank == want


# -- ψ̃ and T ------------------------------------------------------------------------

def test_psi_tilde_and_T_rank_one(DN, nodal):
    D = nodal.D
    d = StrictDescentDatum(free_module(nodal.B), free_module(nodal.C), {0: am.identity(D, 1)},
                           {0: am.identity(D, 1)}, "1")
    cs, ct, maps, verdict = DN.transformation_T(d)
    assert verdict
    assert hd(DN.psi_tilde(d.to_object(DN.ctx))) == {0: nodal.A.dim_of_degree(0)}


def test_psi_tilde_zero(DN, nodal):
    x = DN.restrict(zero_module(nodal.A))
    assert all(DN.psi_tilde(x).dim(i) == 0 for i in range(-2, 3))


def test_psi_tilde_non_strict_phi(sq1):
    D1 = Descent(sq1)
    seen = 0
    # the unit two-step complex has nonzero exact degree-0 maps
    for s in object_set(sq1) + [two_step(sq1.A, sq1.A.unit, "1A")]:
        x = D1.restrict(s)
        H = HomComplexSpace(x.Gm, x.Ln)
        for h in H.basis(-1):
            dh = H.apply_d(h)
            if dh.is_zero():
                continue
            blocks = dict(x.phi.blocks)
            for k, M in dh.blocks.items():
                blocks[k] = am.madd(blocks[k], M) if k in blocks else M
            y = D1.ctx.make_object(x.m, x.n, blocks, "perturbed")
            assert hd(D1.psi_tilde(y)) == hd(D1.psi_tilde(x))
            seen += 1
    assert seen


# -- gluing ----------------------------------------------------------------------------

def test_unglue_free_sq1(D1, sq1):
    u, ok, det = D1.unglue_round_trip(free_module(sq1.A))
    assert ok and det["closed"]


def test_glue_unit_datum_sq1(D1, sq1):
    D = sq1.D
    u = [[{D.index("1"): QQ(-2)}]]
    ui = [[{D.index("1"): QQ("-1/2")}]]
    d = StrictDescentDatum(free_module(sq1.B), free_module(sq1.C), {0: u}, {0: ui}, "u")
    g = D1.glue_strict(d)
    assert g.module.size(0) == 1 and check_cohesive(g.module).ok
    assert D1.glue_round_trip(d, g)[1]


def test_glue_curved_sq2(sq2):
    D2 = Descent(sq2)
    mf = object_set(sq2)[0]
    u, ok, det = D2.unglue_round_trip(mf)
    assert ok
    assert check_cohesive(u.target).ok


def test_random_strict_round_trips(DN, nodal):
    for i in range(5):
        d = random_strict_datum(nodal, make_rng(40, i), 3, f"r{i}")
        g = DN.glue_strict(d)
        assert DN.glue_round_trip(d, g)[1]


# -- unit η ----------------------------------------------------------------------------

def test_eta_free_sq1(D1, sq1):
    assert D1.eta_report(free_module(sq1.A)).ok


def test_eta_zero(D1, sq1):
    assert D1.eta_report(zero_module(sq1.A)).ok


def test_eta_two_step_nodal(DN, nodal):
    assert DN.eta_report(two_step(nodal.A, el(nodal.A, "x"))).ok


def test_eta_all_objects(D1, sq1):
    for s in object_set(sq1):
        assert D1.eta_report(s).ok, s.name


# -- full faithfulness -----------------------------------------------------------------

def test_fully_faithful_free_pair(D1, sq1):
    s = free_module(sq1.A)
    assert D1.verify_fully_faithful([s], (-3, 3)).ok


def test_fully_faithful_shift_pair(D1, sq1):
    s = free_module(sq1.A)
    t = shift(s)
    rep = D1.verify_fully_faithful([s, t], (-3, 3))
    assert rep.ok
    d01 = rep.get("pair-0-1").details["dims"]
    d00 = rep.get("pair-0-0").details["dims"]
    assert d01["-1"]["H_A"] == d00["0"]["H_A"]


def test_fully_faithful_curved(sq2):
    objs = object_set(sq2)
    assert Descent(sq2).verify_fully_faithful(objs[:2], (-2, 2)).ok


def test_restriction_detects_wrong_algebra(D1, sq1):
    with pytest.raises(ValueError):
        D1.restrict(free_module(sq1.B))

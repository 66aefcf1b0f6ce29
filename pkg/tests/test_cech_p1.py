import pytest
from hypothesis import given
from hypothesis import strategies as st

from milnor_descent.cech_p1 import (
    TruncationTooSmall,
    build_q_complex,
    min_truncation,
    monomial_oracle,
    p1_les_check,
    q_cohomology,
    stabilization_check,
)
from milnor_descent.linalg import GF, QQ


def test_dimensions_two_zero():
    q = build_q_complex(2, 0, 4)
    assert q.complex.dim(0) == 10
    # the Laurent side holds z^-6 .. z^4, every exponent the differential can reach
    assert (q.window.lo, q.window.hi) == (-6, 4)
    assert q.complex.dim(1) == 11


@pytest.mark.parametrize("N", [4, 6])
def test_two_zero_generator(N):
    h = q_cohomology(build_q_complex(2, 0, N))
    assert (h["H0"], h["H1"], h["H1_generators"]) == (0, 1, [-1])


def test_untwisted_differential():
    N = 3
    q = build_q_complex(0, 0, N)
    d = q.complex.d(0)
    W = q.window
    # μ = z^a goes to +z^a, ν = z^-b to -z^-b
    for a in range(N + 1):
        assert d.column(a) == W.monomial(a)
    for b in range(N + 1):
        assert d.column(N + 1 + b) == [-v for v in W.monomial(-b)]
    h = q_cohomology(q)
    assert h["H0"] == 1 and h["H0_generators"] == [([0], [0])]


def test_negative_twist_has_sections():
    # Hom(A(-1), A) is the space of sections of O(1): two of them, z^0 and z^1
    h = q_cohomology(build_q_complex(-1, 0, 3))
    assert h["H0"] == 2 and h["H1"] == 0


@pytest.mark.parametrize("j", range(0, 5))
def test_sections_of_twists(j):
    h = q_cohomology(build_q_complex(0, j, 10))
    assert h["H0"] == j + 1 == monomial_oracle(0, j, 10)["H0"]
    assert h["H1"] == 0


@pytest.mark.parametrize("j", range(2, 6))
def test_first_cohomology_of_twists(j):
    h = q_cohomology(build_q_complex(j, 0, 10))
    o = monomial_oracle(j, 0, 10)
    assert h["H1"] == j - 1 == o["H1"]
    assert h["H1_generators"] == o["H1_generators"] == list(range(-(j - 1), 0))


def test_truncation_too_small():
    with pytest.raises(TruncationTooSmall) as e:
        build_q_complex(2, 1, 3)
    assert e.value.needed == 4 == min_truncation(2, 1)


@pytest.mark.parametrize("args", [(2, 0, 4), (0, 0, 2), (5, 0, 6)])
def test_stabilization(args):
    assert stabilization_check(*args)


def test_stabilization_five_zero_dim():
    assert q_cohomology(build_q_complex(5, 0, 6))["H1"] == 4


@given(st.integers(-4, 4), st.integers(-4, 4), st.integers(0, 4))
def test_matches_oracle(j1, j2, extra):
    N = min_truncation(j1, j2) + extra
    h = q_cohomology(build_q_complex(j1, j2, N))
    o = monomial_oracle(j1, j2, N)
    assert (h["H0"], h["H1"], h["H1_generators"]) == (o["H0"], o["H1"], o["H1_generators"])


@given(st.integers(-4, 4), st.integers(-4, 4))
def test_only_the_difference_matters(j1, j2):
    N = 10
    a = q_cohomology(build_q_complex(j1, j2, N))
    b = q_cohomology(build_q_complex(j1 - j2, 0, N))
    assert (a["H0"], a["H1"]) == (b["H0"], b["H1"])


def test_field_independent():
    for j1, j2 in [(2, 0), (0, 3), (4, 0)]:
        a = q_cohomology(build_q_complex(j1, j2, 8, QQ))
        b = q_cohomology(build_q_complex(j1, j2, 8, GF(5)))
        assert (a["H0"], a["H1"], a["H1_generators"]) == (b["H0"], b["H1"], b["H1_generators"])


def test_les():
    rep = p1_les_check(2, 0, 4, degrees=[-1, 0, 1])
    assert rep.ok
    assert rep.get("long-exact-sequence").details["spots"] == 9

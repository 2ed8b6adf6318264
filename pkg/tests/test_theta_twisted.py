import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from coxflat import coxeter as cx
from coxflat.deform import ZElement
from coxflat.exact import random_rational
from coxflat.flatness import (ThetaPoint, build_twisted_algebra, check_global_membership, eta, same_z_orbit,
                              sample_theta, spin_residuals, theta_membership, triangle_product,
                              verify_spin_numeric)

H = cx.triangle_matrix(2, 3, 5)  # m12 = 2, m23 = 3, m13 = 5


def _random_theta(M, rng):
    return ThetaPoint.from_dict({e: random_rational(rng, 4) for e in M.edges(finite_only=True)})


def test_theta_examples():
    for name in ["A3", "B3", "H3", "A4", "A~2", "I2(4)xA1"]:
        M = cx.named_matrix(name)
        assert theta_membership(ThetaPoint.ones(M), M)
    t = ThetaPoint.from_dict({(1, 2): 4, (2, 3): Fraction(1, 8), (1, 3): 1})
    assert triangle_product(H, t, (1, 2, 3)) == 1
    assert theta_membership(t, H)
    t = ThetaPoint.from_dict({(1, 2): 2, (2, 3): 1, (1, 3): 1})
    assert not theta_membership(t, H)


def test_theta_point_basics():
    t = ThetaPoint.from_dict({(1, 2): Fraction(2, 3), (2, 3): -1})
    assert t.t(2, 1) == Fraction(3, 2)
    assert ThetaPoint.from_json(t.to_json()) == t
    with pytest.raises(ValueError):
        ThetaPoint.from_dict({(1, 2): 0})
    with pytest.raises(ValueError):
        theta_membership(t, cx.named_matrix("A3"))


@pytest.mark.parametrize("name", ["A3", "B3", "H3", "A4"])
def test_theta_agrees_with_global_membership(name):
    # on Theta the edge polynomials are z^m + (-1)^m t, i.e. e^(k) = 0 for k < m
    M = cx.named_matrix(name)
    rng = random.Random(11)
    for seed in range(4):
        for t in (sample_theta(M, seed), _random_theta(M, rng)):
            assert check_global_membership(M, t.to_symmetric(M)).member == theta_membership(t, M)
        assert theta_membership(sample_theta(M, seed), M)


def test_z_action_preserves_theta_and_orbits():
    M = cx.named_matrix("B3")
    rng = random.Random(5)
    for seed in range(5):
        t = sample_theta(M, seed)
        z = ZElement.from_dict({v: random_rational(rng, 3) for v in M.vertices})
        s = t.apply_Z(M, z)
        assert theta_membership(s, M)
        assert same_z_orbit(M, t, s)
    # rescaling one edge of a triangle by a non-power leaves the orbit
    t = ThetaPoint.ones(cx.named_matrix("A1xA1xA1"))
    assert same_z_orbit(cx.named_matrix("A1xA1xA1"), t, t)
    A2 = cx.named_matrix("A2")
    assert same_z_orbit(A2, ThetaPoint.ones(A2), ThetaPoint.from_dict({(1, 2): 8}))


def test_twisted_rejects_bad_input():
    with pytest.raises(ValueError):
        build_twisted_algebra(H, ThetaPoint.from_dict({(1, 2): 2, (2, 3): 1, (1, 3): 1}))
    M = cx.named_matrix("A~2")
    with pytest.raises(ValueError):
        build_twisted_algebra(M, ThetaPoint.ones(M))


@pytest.mark.parametrize("name", ["A2", "A3", "I2(4)xA1", "A1xA1xA1"])
def test_spin_class_at_ones(name):
    M = cx.named_matrix(name)
    T = build_twisted_algebra(M, ThetaPoint.ones(M))
    assert T.dimension == cx.group_order(M) // 2
    assert T.check_unit()
    assert T.check_cocycle()
    assert T.check_power_relations()
    # (s_i s_j)^m = (-1)^(m+1) directly
    for i, j in M.edges():
        m = M.m(i, j)
        assert T.scalar_part(T.power(T.s_product((i, j)), m)) == (-1) ** (m + 1)


@pytest.mark.parametrize("name", ["A3", "B3"])
def test_sampled_theta_points(name):
    M = cx.named_matrix(name)
    for seed in range(3):
        t = sample_theta(M, seed)
        T = build_twisted_algebra(M, t)
        assert T.check_cocycle() and T.check_power_relations()
        assert same_z_orbit(M, eta(T), t)


@pytest.mark.parametrize("seed", range(3))
def test_confluence_fuzz(seed):
    # braid paths chosen by random walks give the same cocycle
    M = cx.named_matrix("B3")
    t = sample_theta(M, seed + 10)
    T = build_twisted_algebra(M, t)
    R = build_twisted_algebra(M, t, rng=random.Random(seed))
    assert R.table == T.table
    assert R.psi == T.psi


def test_eta_base_vertex():
    M = cx.named_matrix("A3")
    t = sample_theta(M, 2)
    T = build_twisted_algebra(M, t)
    assert same_z_orbit(M, eta(T, base=1), eta(T, base=3))
    assert same_z_orbit(M, eta(T), ThetaPoint.ones(M)) == same_z_orbit(M, t, ThetaPoint.ones(M))


@settings(max_examples=10, deadline=None)
@given(st.integers(2, 6), st.fractions(min_value=-5, max_value=5, max_denominator=5).filter(bool))
def test_eta_rank2_exact(m, x):
    M = cx.named_matrix(f"I2({m})")
    t = ThetaPoint.from_dict({(1, 2): x})
    assert eta(build_twisted_algebra(M, t)) == t


@pytest.mark.parametrize("m", [2, 3, 4, 5, 6])
def test_spin_numeric_rank2(m):
    M = cx.named_matrix(f"I2({m})")
    r = spin_residuals(M)
    assert r[(1, 2)] < 1e-9
    assert verify_spin_numeric(M)


@pytest.mark.parametrize("name", ["A3", "B3", "H3", "A1xA1xA1", "I2(6)xA1"])
def test_spin_numeric_rank3(name):
    assert verify_spin_numeric(cx.named_matrix(name))


def test_spin_numeric_indefinite_form():
    # the cosine form of an affine or hyperbolic triangle is degenerate or indefinite
    assert verify_spin_numeric(cx.triangle_matrix(3, 3, 3))
    assert verify_spin_numeric(cx.triangle_matrix(2, 3, 7))
    with pytest.raises(ValueError):
        spin_residuals(cx.named_matrix("I2(inf)"))

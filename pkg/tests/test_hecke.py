import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from coxflat import coxeter as cx
from coxflat.deform import SymmetricPoint
from coxflat.hecke import (HeckeConstraintError, HeckeParams, braid_poly, build_hecke, f_range,
                           hecke_point, random_params, satisfies_edge_conditions, verify_freeness)
from coxflat.ncalg import NcPoly

x, y = NcPoly.gen(0), NcPoly.gen(1)


def test_braid_poly():
    assert braid_poly(0, x, y).is_zero()
    assert braid_poly(1, x, y) == x - y
    assert braid_poly(2, x, y) == x * y - y * x
    assert braid_poly(3, x, y) == x * y * x - y * x * y
    assert braid_poly(4, x, y) == x * y * x * y - y * x * y * x
    with pytest.raises(ValueError):
        braid_poly(-1, x, y)
    assert list(f_range(2)) == [] and list(f_range(5)) == [1, 2] and list(f_range(6)) == [1, 2]


def test_relations_shape():
    M = cx.named_matrix("A2")
    P = build_hecke(M, HeckeParams({1: 1, 2: 1}, {1: 2, 2: 2}))
    assert P.relations[-1] == x * y * x - y * x * y
    assert P.relations[0] == x * x - x + 2
    M = cx.named_matrix("B3")
    # the order-4 edge is (1, 2)
    p = HeckeParams({1: 0, 2: 1, 3: 1}, {1: 1, 2: 1, 3: 1}, {((1, 2), 1): Fraction(1, 3)})
    P = build_hecke(M, p)
    assert braid_poly(4, x, y) + braid_poly(2, x, y) * Fraction(1, 3) in P.relations


def test_constraints():
    M = cx.named_matrix("A2")
    with pytest.raises(HeckeConstraintError):
        build_hecke(M, HeckeParams({1: 1, 2: 2}, {1: 1, 2: 1}))
    with pytest.raises(ValueError):
        HeckeParams({1: 1}, {1: 1}).check(M)
    M = cx.named_matrix("A3")
    p = random_params(M, random.Random(0), violate=True)
    assert any("condition (2)" in s for s in p.violations(M))
    with pytest.raises(HeckeConstraintError):
        verify_freeness(M, p)
    # the even edge of B2 imposes nothing on (u, v)
    assert HeckeParams({1: 1, 2: 3}, {1: 1, 2: 5}).violations(cx.named_matrix("I2(4)")) == []


@pytest.mark.parametrize("name", ["A2", "A3", "B3", "I2(5)xA1", "I2(6)"])
def test_random_admissible_draws_are_free(name):
    M = cx.named_matrix(name)
    for seed in range(3):
        for zero_f in (False, True):
            p = random_params(M, random.Random(seed), zero_f=zero_f)
            assert p.violations(M) == []
            r = verify_freeness(M, p)
            assert r.free, (seed, zero_f, r)
            assert r.dimension == cx.group_order(M)


def test_violation_collapses():
    M = cx.named_matrix("A3")
    for seed in range(3):
        r = verify_freeness(M, random_params(M, random.Random(seed), violate=True), check=False)
        assert r.complete and r.dimension < 24 and not r.free


def test_classical_hecke_b3():
    M = cx.named_matrix("B3")
    p = HeckeParams({1: -1, 2: 2, 3: 2}, {1: 5, 2: 3, 3: 3})
    assert verify_freeness(M, p).dimension == 48


def test_edge_conditions():
    M = cx.named_matrix("B3")
    e = hecke_point(M, {(1, 2): [Fraction(2, 3)]})
    assert satisfies_edge_conditions(e)
    assert e.e(1, 2) == (Fraction(2, 3), 0, Fraction(-2, 3), -1)
    assert e.e(2, 3) == (0, 0, 1)
    d = e.as_dict()
    d[(1, 2)] = (1, 0, 1, -1)
    assert not satisfies_edge_conditions(SymmetricPoint.from_dict(d))
    with pytest.raises(ValueError):
        hecke_point(M, {(1, 2): [1, 2]})


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 8), st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=4), max_size=4))
def test_hecke_point_property(m, vals):
    M = cx.named_matrix(f"I2({m})")
    n = len(f_range(m))
    vals = (vals + [Fraction(0)] * n)[:n]
    e = hecke_point(M, {(1, 2): vals})
    assert satisfies_edge_conditions(e)
    es = e.e(1, 2)
    assert es[-1] == (-1) ** (m - 1)
    if m % 2 == 0:
        assert es[m // 2 - 1] == 0


def test_params_json(tmp_path):
    M = cx.named_matrix("B3")
    p = random_params(M, random.Random(4))
    q = HeckeParams.from_json(json.loads(json.dumps(p.to_json())), M)
    assert q == p
    f = tmp_path / "p.json"
    f.write_text(json.dumps(p.to_json()))
    assert HeckeParams.load(f, M) == p

import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from coxflat.exact import (LaurentPoly, MonomialSystem, TruncatedSeries, all_elementary_symmetric,
                           elementary_symmetric, format_rational, gf2_kernel, integer_kernel,
                           series_div_one_plus_z, to_rational)

t1, t2, t = LaurentPoly.var("t1"), LaurentPoly.var("t2"), LaurentPoly.var("t")


def test_rationals():
    assert to_rational("3/6") == Fraction(1, 2)
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-3, 9)) == "-1/3"
    with pytest.raises(TypeError):
        to_rational(0.5)


def test_elementary_symmetric_examples():
    assert elementary_symmetric([t1, t2], 2) == t1 * t2
    assert elementary_symmetric([1, 1, 1], 2) == 3
    assert elementary_symmetric([t, 1 / t], 1) == t + t ** -1
    assert elementary_symmetric([t1, t2], 0) == 1
    with pytest.raises(ValueError):
        elementary_symmetric([1, 2], 3)
    assert all_elementary_symmetric([1, 2, 3]) == [6, 11, 6]


def test_series_division_examples():
    h = TruncatedSeries.from_list([1, 2, 2, 1])
    assert series_div_one_plus_z(h).trimmed() == [1, 1, 1]
    h = TruncatedSeries.from_list([1, 3, 5, 6, 5, 3, 1])
    assert series_div_one_plus_z(h).trimmed() == [1, 2, 3, 3, 2, 1]
    assert series_div_one_plus_z(TruncatedSeries.from_list([1])).trimmed() == [1]


@given(st.lists(st.integers(-20, 20), min_size=1, max_size=12))
def test_series_division_inverts(coeffs):
    h = TruncatedSeries.from_list(coeffs)
    c = series_div_one_plus_z(h)
    assert c * TruncatedSeries.from_list([1, 1], h.order) == h


small = st.fractions(min_value=-5, max_value=5, max_denominator=5)


@st.composite
def laurent(draw):
    names = ("x", "y")
    n = draw(st.integers(0, 4))
    terms = {}
    for _ in range(n):
        e = (draw(st.integers(-2, 2)), draw(st.integers(-2, 2)))
        terms[e] = draw(small)
    return LaurentPoly(names, terms)


nonzero = st.fractions(min_value=-4, max_value=4, max_denominator=4).filter(bool)


@settings(max_examples=80)
@given(laurent(), laurent(), laurent(), nonzero, nonzero)
def test_laurent_ring_axioms_and_evaluation(a, b, c, x, y):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert a - a == 0
    pt = {"x": x, "y": y}
    assert (a * b + c).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt) + c.evaluate(pt)


@pytest.mark.parametrize("m", [1, 2, 3, 4, 5])
def test_root_identity(m):
    xs = [LaurentPoly.var(f"x{k}") for k in range(m)]
    for j in range(m):
        total = LaurentPoly.constant(0)
        for k in range(m + 1):
            total = total + (-1) ** k * elementary_symmetric(xs, k) * xs[j] ** (m - k)
        assert total.is_zero()


def test_laurent_misc():
    p = (t + 1) ** 2
    assert p == t ** 2 + 2 * t + 1
    assert (t1 / t2).evaluate({"t1": 3, "t2": 6}) == Fraction(1, 2)
    with pytest.raises(ZeroDivisionError):
        t / (t + 1)
    assert hash(LaurentPoly(("a", "b"), {(1, 0): 2})) == hash(LaurentPoly(("b", "a"), {(0, 1): 2}))
    assert p.substitute({"t": t1 * t2}) == (t1 * t2 + 1) ** 2


def test_integer_kernel():
    rows = [[2, 3, 0], [0, 1, -1]]
    K = integer_kernel(rows, 3)
    assert len(K) == 1
    v = K[0]
    assert all(sum(r[i] * v[i] for i in range(3)) == 0 for r in rows)
    assert abs(v[0]) == 3


@settings(max_examples=50)
@given(st.lists(st.lists(st.integers(-4, 4), min_size=4, max_size=4), min_size=1, max_size=3))
def test_integer_kernel_property(rows):
    K = integer_kernel(rows, 4)
    for v in K:
        assert all(sum(r[i] * v[i] for i in range(4)) == 0 for r in rows)
    # the lattice has full rank in the kernel
    rk = np.linalg.matrix_rank(np.array(rows, dtype=float))
    assert len(K) == 4 - rk


def test_gf2_kernel():
    B = gf2_kernel([[1, 1, 0], [0, 1, 1]], 3)
    assert B == [[1, 1, 1]]


def test_monomial_system():
    S = MonomialSystem(["a", "b", "c"], [{"a": 2, "b": 1}, {"c": 1, "b": -1}])
    assert S.dimension == 1
    rng = random.Random(3)
    for _ in range(10):
        p = S.sample(rng)
        assert S.satisfied_by(p)
    par = S.parametrization()
    assert (par["a"] ** 2 * par["b"]) == 1
    assert len(S.sign_vectors()) == 2

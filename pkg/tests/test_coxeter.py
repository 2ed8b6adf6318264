import itertools
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from coxflat import coxeter as cx
from coxflat.coxeter import INF, Element, MatrixParseError

CONFIGS = Path(__file__).resolve().parents[1] / "configs"

A2 = cx.named_matrix("A2")
A3 = cx.named_matrix("A3")
B3 = cx.named_matrix("B3")
H3 = cx.named_matrix("H3")


# permutation model of S_4 = W(A_3): s_i swaps positions i, i+1
def _perm(word, n=4):
    p = list(range(n))
    for a in word:
        p[a - 1], p[a] = p[a], p[a - 1]
    return tuple(p)


def _inversions(p):
    return sum(1 for i, j in itertools.combinations(range(len(p)), 2) if p[i] > p[j])


def test_reduced_examples():
    assert not cx.is_reduced(A2, [1, 2, 1, 2])
    assert cx.is_reduced(A2, [1, 2, 1])
    assert cx.is_reduced(A2, [])
    assert cx.is_reduced(H3, [])


def test_unknown_letter():
    with pytest.raises(KeyError):
        cx.is_reduced(A2, [1, 4])


def test_normal_form_examples():
    assert cx.normal_form(A2, [2, 1, 2]) == Element((1, 2, 1))
    assert cx.normal_form(A3, [1, 1]) == Element(())
    M = cx.named_matrix("I2(4)xA1")
    assert cx.normal_form(M, [3, 1]) == Element((1, 3))


def test_multiply_examples():
    one = Element(())
    assert cx.multiply(A2, Element((1,)), Element((1,))) == one
    assert cx.multiply(A2, Element((1, 2)), Element((1, 2))) == Element((2, 1))
    y = Element((2, 1, 2))
    assert cx.multiply(A2, one, cx.normal_form(A2, y.word)) == Element((1, 2, 1))


def test_counts():
    assert cx.growth_counts(cx.named_matrix("A1xA1")).counts == (1, 2, 1)
    assert cx.growth_counts(A3).counts == (1, 3, 5, 6, 5, 3, 1)
    assert cx.group_order(B3) == 48
    assert cx.group_order(H3) == 120
    for n in range(2, 7):
        assert cx.group_order(cx.named_matrix(f"I2({n})xA1")) == 4 * n


def test_affine_truncated_growth():
    M = cx.named_matrix("A~2")
    els, g = cx.enumerate_elements(M, 4)
    # affine A2 grows linearly: 1, 3, 6, 9, 12
    assert g.counts == (1, 3, 6, 9, 12)
    assert len(els) == sum(g.counts)
    with pytest.raises(ValueError):
        cx.enumerate_elements(M)


def test_even_elements():
    assert len(cx.even_elements(A3)) == 12
    assert len(cx.even_elements(cx.named_matrix("I2(5)"))) == 5
    assert len(cx.even_elements(cx.named_matrix("A1xA1"))) == 2


@pytest.mark.parametrize("name", ["A3", "B3", "H3", "I2(5)xA1", "A1xA1xA1"])
def test_growth_palindromic(name):
    c = cx.growth_counts(cx.named_matrix(name)).counts
    assert c == c[::-1]


def test_enumeration_against_permutations():
    els, _ = cx.enumerate_elements(A3)
    perms = {_perm(x.word) for x in els}
    assert len(perms) == 24
    for x in els:
        assert _inversions(_perm(x.word)) == x.length


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 3), max_size=10))
def test_reduced_matches_inversions(w):
    assert cx.is_reduced(A3, w) == (_inversions(_perm(w)) == len(w))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 3), max_size=10))
def test_normal_form_idempotent_and_faithful(w):
    x = cx.normal_form(B3, w)
    assert cx.normal_form(B3, x.word) == x
    assert cx.is_reduced(B3, x.word)
    y = cx.normal_form(A3, w)
    assert _perm(y.word) == _perm(w)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 3), max_size=6), st.lists(st.integers(1, 3), max_size=6),
       st.lists(st.integers(1, 3), max_size=6))
def test_multiply_associative(a, b, c):
    x, y, z = (cx.normal_form(H3, w) for w in (a, b, c))
    assert cx.multiply(H3, cx.multiply(H3, x, y), z) == cx.multiply(H3, x, cx.multiply(H3, y, z))
    assert cx.multiply(H3, x, cx.inverse(H3, x)) == Element(())


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=2, max_size=10), st.data())
def test_braid_class_invariance(w, data):
    # applying one braid move does not change the normal form
    G = cx.group(A3)
    idx = G.to_idx(w)
    moves = list(G.braid_neighbours(idx))
    if moves:
        _, v = data.draw(st.sampled_from(moves))
        assert cx.normal_form(A3, G.to_labels(v)) == cx.normal_form(A3, w)


def test_triangle_types():
    assert cx.classify_orders(2, 3, 5).kind == "E235"
    assert cx.classify_orders(5, 3, 2).kind == "E235"
    assert cx.classify_orders(2, 3, 6).kind == "infinite"
    t = cx.classify_orders(2, 7, 2)
    assert t.kind == "dihedral" and t.n == 7
    assert cx.classify_orders(2, 2, INF).kind == "infinite"
    with pytest.raises(ValueError):
        cx.triangle_type(A3, (1, 1, 2))


def test_rank3_orders_against_enumeration():
    assert cx.finite_rank3_order(2, 3, 5) == 120
    assert cx.finite_rank3_order(2, 3, 4) == 48
    for p, q, r in [(2, 2, 2), (2, 2, 3), (2, 2, 4), (2, 2, 5), (2, 2, 6), (2, 3, 3), (2, 3, 4), (2, 3, 5)]:
        M = cx.triangle_matrix(p, q, r)
        assert cx.group_order(M) == cx.finite_rank3_order(p, q, r)
    with pytest.raises(ValueError):
        cx.finite_rank3_order(2, 3, 6)


def test_parabolic_index():
    M = cx.triangle_matrix(2, 3, 5)
    assert cx.parabolic_index(M, (1, 2, 3), (1, 2)) == 30
    assert cx.parabolic_index(M, (1, 2, 3), (2, 3)) == 20
    assert cx.parabolic_index(M, (1, 2, 3), (1, 3)) == 12
    M = cx.triangle_matrix(2, 3, 4)
    assert cx.parabolic_index(M, (1, 2, 3), (2, 3)) == 8
    M = cx.triangle_matrix(2, 2, 7)
    assert cx.parabolic_index(M, (1, 2, 3), (1, 3)) == 2
    with pytest.raises(ValueError):
        cx.parabolic_index(cx.triangle_matrix(2, 3, 6), (1, 2, 3), (1, 2))


def test_is_finite():
    assert cx.is_finite(H3)
    assert not cx.is_finite(cx.named_matrix("A~2"))
    assert cx.is_finite(cx.named_matrix("A1"))
    for name in ["D4", "F4", "E6", "H4", "B4", "I2(9)xA2"]:
        assert cx.is_finite(cx.named_matrix(name)), name
    assert not cx.is_finite(cx.triangle_matrix(2, 4, 4))
    assert not cx.is_finite(cx.triangle_matrix(3, 3, 3))


def test_config_roundtrip():
    M = cx.load_matrix(CONFIGS / "A3.txt")
    assert M == A3
    assert cx.parse_matrix_text(M.to_text()) == M
    aff = cx.load_matrix(CONFIGS / "affine_A2.txt")
    assert not cx.is_finite(aff)


def test_config_errors():
    with pytest.raises(MatrixParseError) as err:
        cx.load_matrix(CONFIGS / "bad_order.txt")
    assert err.value.line == 3
    with pytest.raises(MatrixParseError):
        cx.parse_matrix_text("vertices: a b c\na b 3\n")
    M = cx.parse_matrix_text("default = 2\nvertices: a b c\na b 3\n")
    assert M.m("a", "c") == 2
    M = cx.parse_matrix_text("vertices: 1 2\n1 2 inf\n")
    assert M.m(1, 2) == INF

import pytest

from coxflat import coxeter as cx
from coxflat.additive import (SignedWordAlgebra, b_decomposition, b_words_rank, build_A0plus, expected_hilbert,
                              hilbert_A0plus, lemma_addmult_mult, phi0_check, spanning_b_words)
from coxflat.exact import TruncatedSeries, series_div_one_plus_z


def test_signed_words_a1():
    A = SignedWordAlgebra(cx.named_matrix("A1"))
    s = A.generator(1)
    assert len(A) == 2
    assert A.mul(s, s) == {}
    assert A.mul(A.one(), s) == s


def test_signed_words_commuting_pair():
    # s1 s2 = s2 s1 with m = 2: one braid move, sign (-1)^(2+1)
    A = SignedWordAlgebra(cx.named_matrix("I2(2)"))
    s1, s2 = A.generator(1), A.generator(2)
    p, q = A.mul(s1, s2), A.mul(s2, s1)
    assert len(p) == 1 and p.keys() == q.keys()
    k = next(iter(p))
    assert A.elements[k] == (0, 1)
    assert p[k] == 1 and q[k] == -1


def test_signed_words_odd_edge_sign():
    # m = 3: braid move sign is +1, so s1 s2 s1 = s2 s1 s2 in Abar_1
    A = SignedWordAlgebra(cx.named_matrix("A2"))
    s1, s2 = A.generator(1), A.generator(2)
    assert A.mul(A.mul(s1, s2), s1) == A.mul(A.mul(s2, s1), s2)
    assert A.mul(A.mul(s1, s2), s2) == {}


@pytest.mark.parametrize("name", ["A2", "I2(4)", "A3", "A1xA1xA1"])
def test_associative(name):
    assert SignedWordAlgebra(cx.named_matrix(name)).check_associative()


def test_truncated_associative():
    A = SignedWordAlgebra(cx.named_matrix("A~2"), 4)
    assert A.truncated and A.check_associative()
    with pytest.raises(ValueError):
        SignedWordAlgebra(cx.named_matrix("A~2"))


def test_build_A0plus():
    P = build_A0plus(cx.named_matrix("A2"))
    assert len(P.gens) == 1
    assert len(build_A0plus(cx.named_matrix("A3")).gens) == 2


# growth series h_W(z), frozen from the product formula prod (1 + z + ... + z^(d_i - 1))
GROWTH = {
    "A2": [1, 2, 2, 1],
    "A3": [1, 3, 5, 6, 5, 3, 1],
    "B3": [1, 3, 5, 7, 8, 8, 7, 5, 3, 1],
}


def _poly_product(degrees):
    out = [1]
    for d in degrees:
        new = [0] * (len(out) + d - 1)
        for i, c in enumerate(out):
            for j in range(d):
                new[i + j] += c
        out = new
    return out


def test_growth_oracle():
    assert _poly_product([2, 3]) == GROWTH["A2"]
    assert _poly_product([2, 3, 4]) == GROWTH["A3"]
    assert _poly_product([2, 4, 6]) == GROWTH["B3"]


@pytest.mark.parametrize("name,degrees,top", [("A2", [2, 3], 2), ("A3", [2, 3, 4], 5), ("B3", [2, 4, 6], 8),
                                              ("H3", [2, 6, 10], 14)])
def test_hilbert_finite(name, degrees, top):
    M = cx.named_matrix(name)
    got = hilbert_A0plus(M)
    # h(z)/(1+z) = prod over d_i > 2 of (1 + ... + z^(d_i - 1))
    want = _poly_product([d for d in degrees if d != 2])
    assert got == want
    assert len(got) == top + 1
    assert got == expected_hilbert(M, top)
    assert got == series_div_one_plus_z(TruncatedSeries.from_list(_poly_product(degrees))).trimmed()


def test_hilbert_examples():
    assert hilbert_A0plus(cx.named_matrix("A2")) == [1, 1, 1]
    assert hilbert_A0plus(cx.named_matrix("A3")) == [1, 2, 3, 3, 2, 1]


def test_hilbert_infinite_truncated():
    M = cx.named_matrix("A~2")
    # affine A2 grows as 1, 3, 6, 9, 12, ...
    assert hilbert_A0plus(M, 6) == [1, 2, 4, 5, 7, 8, 10] == expected_hilbert(M, 6)
    M = cx.triangle_matrix(2, 3, 7)
    assert hilbert_A0plus(M, 6) == expected_hilbert(M, 6) == [1, 2, 3, 4, 5, 7, 9]
    with pytest.raises(ValueError):
        hilbert_A0plus(M)


def test_rank_one_and_zero():
    assert hilbert_A0plus(cx.named_matrix("A1")) == [1]


@pytest.mark.parametrize("name", ["A2", "A3", "B3", "I2(5)"])
def test_spanning_b_words(name):
    M = cx.named_matrix(name)
    assert len(spanning_b_words(M)) == cx.group_order(M) // 2
    ranks = b_words_rank(M)
    assert [c for c, _ in ranks] == [r for _, r in ranks] == hilbert_A0plus(M)


@pytest.mark.parametrize("name", ["A2", "A3", "B3", "H3", "A1xA1xA1"])
def test_phi0(name):
    assert phi0_check(cx.named_matrix(name))


def test_phi0_truncation():
    M = cx.named_matrix("A~2")
    assert phi0_check(M, 4)
    with pytest.raises(ValueError):
        phi0_check(M, 2)


@pytest.mark.parametrize("name,n", [("A3", 12), ("B3", 24), ("A1xA1", 2), ("A2", 3), ("H3", 60)])
def test_b_decomposition(name, n):
    d = b_decomposition(cx.named_matrix(name))
    assert d.dim_B == d.dim_s0B == n
    assert d.dim_total == 2 * n
    assert d.direct_sum


@pytest.mark.parametrize("name,n", [("A2", 6), ("I2(4)", 8), ("A1", 2), ("B3", 48), ("A3", 24)])
def test_addmult(name, n):
    r = lemma_addmult_mult(cx.named_matrix(name))
    assert r.dim_additive == r.dim_multiplicative == r.expected == n
    assert r.agree
    with pytest.raises(ValueError):
        lemma_addmult_mult(cx.named_matrix("A~2"))

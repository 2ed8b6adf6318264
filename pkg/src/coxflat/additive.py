"""The graded algebra Abar_1, the additive algebra A_0+ and their Hilbert series.

Abar_1 has basis T_x (x in W) with T_x T_y = +-T_xy when lengths add and 0
otherwise; the sign collects (-1)^(m+1) per braid move.  A_0+ is generated
by alpha_ij = -alpha_ji with alpha_ij + alpha_jk + alpha_ki = 0 and
alpha_ij^m_ij = 0; we present it on the generators alpha_0j for a base
vertex 0, so that alpha_ij = alpha_0j - alpha_0i.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from . import coxeter as cx
from .coxeter import INF, CoxeterMatrix
from .deform import default_cap
from .exact import TruncatedSeries, series_div_one_plus_z, to_rational
from .flatness.twisted import Rewriter
from .ncalg import NcPoly, Presentation, buchberger, dimension, hilbert_function, rank


# ---------------------------------------------------------------------------
# Abar_1


class SignedWordAlgebra:
    """Abar_1 truncated to lengths <= N (all of W when N is None)."""

    def __init__(self, M: CoxeterMatrix, N: int | None = None):
        if N is None and not cx.is_finite(M):
            raise ValueError("infinite group: give a length bound N")
        self.M = M
        self.N = N
        self.truncated = N is not None and not (cx.is_finite(M) and N >= cx.longest_length(M))
        elements, _ = cx.enumerate_elements(M, "all" if N is None else N)
        self.rw = Rewriter(M)
        self.elements = [self.rw.G.to_idx(x.word) for x in elements]
        self.index = {x: k for k, x in enumerate(self.elements)}
        self._table: dict = {}

    def __len__(self):
        return len(self.elements)

    def degree(self, k: int) -> int:
        return len(self.elements[k])

    def product(self, a: int, b: int):
        """(sign, index) with T_a T_b = sign T_c, or None when the product is 0 (or beyond N)."""
        key = (a, b)
        if key in self._table:
            return self._table[key]
        x, y = self.elements[a], self.elements[b]
        out = None
        if self.N is None or len(x) + len(y) <= self.N:
            sign = 1
            for c in y:
                s, z = self.rw.mu(x, c)
                if len(z) < len(x):
                    sign = 0
                    break
                sign *= s.sign
                x = z
            if sign:
                out = (sign, self.index[x])
        self._table[key] = out
        return out

    def generator(self, v) -> dict:
        return {self.index[(self.M.index(v),)]: Fraction(1)}

    def one(self) -> dict:
        return {self.index[()]: Fraction(1)}

    def mul(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for a, p in u.items():
            for b, q in v.items():
                r = self.product(a, b)
                if r is not None:
                    s, c = r
                    out[c] = out.get(c, 0) + s * p * q
        return {k: c for k, c in out.items() if c}

    def add(self, u: dict, v: dict, c=1) -> dict:
        out = dict(u)
        for k, x in v.items():
            out[k] = out.get(k, 0) + c * x
        return {k: x for k, x in out.items() if x}

    def check_associative(self) -> bool:
        n = len(self)
        for a in range(n):
            for b in range(n):
                ab = self.product(a, b)
                for c in range(n):
                    bc = self.product(b, c)
                    lhs = None if ab is None else self.product(ab[1], c)
                    rhs = None if bc is None else self.product(a, bc[1])
                    if (lhs is None) != (rhs is None):
                        if self.N is None:
                            return False
                        continue
                    if lhs is not None and lhs[0] * ab[0] != rhs[0] * bc[0]:
                        return False
        return True


def build_abar1(M: CoxeterMatrix, N: int | None = None) -> SignedWordAlgebra:
    return SignedWordAlgebra(M, N)


# ---------------------------------------------------------------------------
# A_0+


def default_base(M: CoxeterMatrix):
    return M.vertices[0]


def alpha_name(i, j) -> str:
    return f"alpha_{i}_{j}"


def alpha(M: CoxeterMatrix, i, j, base=None) -> NcPoly:
    """alpha_ij = alpha_0j - alpha_0i in the generators alpha_0k (k != base)."""
    base = default_base(M) if base is None else base
    others = [v for v in M.vertices if v != base]
    g = lambda v: NcPoly.const(0) if v == base else NcPoly.gen(others.index(v))
    return g(j) - g(i)


def build_A0plus(M: CoxeterMatrix, base=None) -> Presentation:
    base = default_base(M) if base is None else base
    others = [v for v in M.vertices if v != base]
    rels = []
    for i, j in M.edges(finite_only=True):
        rels.append(alpha(M, i, j, base) ** M.m(i, j))
    return Presentation([alpha_name(base, v) for v in others], rels)


def build_A_plus_additive(M: CoxeterMatrix, tau: Mapping, base=None) -> Presentation:
    """Fiber of the additive algebra at tau: prod_k (alpha_ij - tau_ijk) = 0 for i before j."""
    base = default_base(M) if base is None else base
    others = [v for v in M.vertices if v != base]
    one = NcPoly.const(1)
    rels = []
    for i, j in M.edges(finite_only=True):
        ts = [to_rational(x) for x in tau.get((i, j), [0] * M.m(i, j))]
        if len(ts) != M.m(i, j):
            raise ValueError(f"edge ({i}, {j}) needs {M.m(i, j)} tau values")
        r = one
        a = alpha(M, i, j, base)
        for x in ts:
            r = r * (a - one * x)
        rels.append(r)
    return Presentation([alpha_name(base, v) for v in others], rels)


def tau_filtered_counts(M: CoxeterMatrix, tau: Mapping, N: int, base=None, cap: int | None = None):
    """Standard-word counts by length for the fiber at tau (exploratory; None if truncated)."""
    P = build_A_plus_additive(M, tau, base)
    if not P.gens:
        return [1] + [0] * N
    if cap is None:
        cap = default_cap(M) if cx.is_finite(M) else N + 2
    res = buchberger(P, max(cap, P.max_degree()))
    if not res.complete:
        return None
    return res.standard_counts(N)


def expected_hilbert(M: CoxeterMatrix, N: int) -> list:
    """Coefficients of h(z)/(1+z) up to degree N, from the BFS growth counts."""
    if cx.is_finite(M):
        counts = list(cx.growth_counts(M).counts)
    else:
        counts = list(cx.growth_counts(M, N + 1).counts)
    h = TruncatedSeries.from_list(counts[:N + 1] + [0] * max(0, N + 1 - len(counts)), N)
    return series_div_one_plus_z(h).as_ints()


def full_degree(M: CoxeterMatrix) -> int:
    return max(cx.longest_length(M) - 1, 0)


def hilbert_A0plus(M: CoxeterMatrix, N: int | None = None, base=None) -> list:
    """Graded dimensions 0..N (N defaults to the top degree l(w0) - 1 for finite W)."""
    if N is None:
        if not cx.is_finite(M):
            raise ValueError("infinite group: give a degree bound N")
        N = full_degree(M)
    P = build_A0plus(M, base)
    if not P.gens:
        return [1] + [0] * N
    return hilbert_function(P, N)


def b_word(M: CoxeterMatrix, word, base=None) -> NcPoly:
    """alpha_{0 i1} alpha_{i1 i2} ... alpha_{i(n-1) in}."""
    base = default_base(M) if base is None else base
    out = NcPoly.const(1)
    prev = base
    for v in word:
        out = out * alpha(M, prev, v, base)
        prev = v
    return out


def spanning_b_words(M: CoxeterMatrix, N: int | None = None, base=None) -> list:
    """(x, b_x) for every x with l(s_0 x) > l(x), up to length N."""
    base = default_base(M) if base is None else base
    if N is None and not cx.is_finite(M):
        raise ValueError("infinite group: give a length bound N")
    elements, _ = cx.enumerate_elements(M, "all" if N is None else N)
    G = cx.group(M)
    b0 = M.index(base)
    out = []
    for x in elements:
        idx = G.to_idx(x.word)
        if not G.left_descent(idx, b0):
            out.append((x, b_word(M, x.word, base)))
    return out


def b_words_rank(M: CoxeterMatrix, N: int | None = None, base=None) -> list:
    """Per degree: (number of b_x, rank of their normal forms in A_0+)."""
    if N is None:
        N = full_degree(M)
    words = spanning_b_words(M, N, base)
    P = build_A0plus(M, base)
    counts = [0] * (N + 1)
    vecs: list = [[] for _ in range(N + 1)]
    res = buchberger(P, max(N, P.max_degree())) if P.gens else None
    for x, b in words:
        d = x.length
        counts[d] += 1
        vecs[d].append(res.reduce(b) if res is not None else b)
    return [(counts[d], rank(vecs[d])) for d in range(N + 1)]


def phi0_images(A: SignedWordAlgebra, M: CoxeterMatrix, base=None) -> list:
    """phi_0(alpha_0j) = s_0 - s_j for the generators of build_A0plus."""
    base = default_base(M) if base is None else base
    return [A.add(A.generator(base), A.generator(v), -1) for v in M.vertices if v != base]


def evaluate(A: SignedWordAlgebra, p: NcPoly, images: list) -> dict:
    out: dict = {}
    for word, c in p.items():
        term = A.one()
        for g in word:
            term = A.mul(term, images[g])
        out = A.add(out, term, c)
    return out


def phi0_check(M: CoxeterMatrix, N: int | None = None, base=None) -> bool:
    """Every defining relation of A_0+ maps to 0 in Abar_1 under alpha_ij -> s_i - s_j."""
    P = build_A0plus(M, base)
    need = P.max_degree() if P.relations else 0
    if N is not None and N < need:
        raise ValueError(f"truncation N={N} below the relation degree {need}")
    if N is None and not cx.is_finite(M):
        N = need
    A = build_abar1(M, N)
    images = phi0_images(A, M, base)
    return all(not evaluate(A, r, images) for r in P.relations)


@dataclass
class BDecomposition:
    dim_total: int
    dim_B: int
    dim_s0B: int
    direct_sum: bool


def b_decomposition(M: CoxeterMatrix, base=None) -> BDecomposition:
    """B = subalgebra of Abar_1 generated by the s_i - s_j; compare B + s_0 B with Abar_1."""
    if not cx.is_finite(M):
        raise ValueError("b_decomposition needs a finite group")
    base = default_base(M) if base is None else base
    A = build_abar1(M)
    gens = phi0_images(A, M, base)
    basis = [A.one()]
    layer = [A.one()]
    top = cx.longest_length(M)
    for _ in range(top):
        cand = [A.mul(u, g) for u in layer for g in gens]
        cand = [c for c in cand if c]
        layer = _independent(cand)
        if not layer:
            break
        basis += layer
    s0 = A.generator(base)
    shifted = [A.mul(s0, u) for u in basis]
    dB = rank(basis)
    dS = rank(shifted)
    both = rank(basis + shifted)
    return BDecomposition(len(A), dB, dS, both == dB + dS and both == len(A))


def _independent(vectors: list) -> list:
    out: list = []
    r = 0
    for v in vectors:
        if rank(out + [v]) > r:
            out.append(v)
            r += 1
    return out


# ---------------------------------------------------------------------------
# two presentations of A_1


def addmult_presentations(M: CoxeterMatrix):
    """<s | s_i^2 = 1, (s_i - s_j)^m = 0> and <s | s_i^2 = 1, (s_i s_j - 1)^m = 0>."""
    s = [NcPoly.gen(k) for k in range(M.rank)]
    one = NcPoly.const(1)
    base = [x * x - one for x in s]
    add, mult = list(base), list(base)
    for i, j in M.edges(finite_only=True):
        a, b = M.index(i), M.index(j)
        m = M.m(i, j)
        add.append((s[a] - s[b]) ** m)
        mult.append((s[a] * s[b] - one) ** m)
    names = [f"s_{v}" for v in M.vertices]
    return Presentation(names, add), Presentation(names, mult)


@dataclass
class AddMultReport:
    dim_additive: object
    dim_multiplicative: object
    expected: int

    @property
    def agree(self):
        if self.dim_additive is None or self.dim_multiplicative is None:
            return None
        return self.dim_additive == self.dim_multiplicative == self.expected


def lemma_addmult_mult(M: CoxeterMatrix, cap: int | None = None) -> AddMultReport:
    if not cx.is_finite(M):
        raise ValueError("needs a finite group")
    dims = []
    for P in addmult_presentations(M):
        c = max(default_cap(M), 2 * P.max_degree()) if cap is None else cap
        dims.append(dimension(buchberger(P, max(c, P.max_degree()))))
    return AddMultReport(dims[0], dims[1], cx.group_order(M))

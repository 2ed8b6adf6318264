"""Deformed even-subgroup algebras at rational parameter points.

A point is given either in the t-chart (the roots t_ijk of each edge
polynomial) or in the e-chart (its elementary symmetric coefficients).
Only finite edges carry parameters.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from . import coxeter as cx
from .coxeter import INF, CoxeterMatrix
from .exact import all_elementary_symmetric, format_rational, to_rational
from .ncalg import NcPoly, Presentation, buchberger, dimension, rank


def _edge_key(M: CoxeterMatrix | None, i, j):
    if M is None:
        return (i, j)
    return (i, j) if M.index(i) < M.index(j) else (j, i)


@dataclass(frozen=True)
class ParameterPoint:
    """t-chart point: for each finite edge (i, j), i before j, the roots t_ij1..t_ijm."""

    values: tuple  # ((i, j), (t_1, ..., t_m)) pairs

    @classmethod
    def from_dict(cls, values: Mapping) -> "ParameterPoint":
        out = []
        for (i, j), ts in values.items():
            ts = tuple(to_rational(t) for t in ts)
            if any(t == 0 for t in ts):
                raise ValueError(f"t-values on edge ({i}, {j}) must be nonzero")
            out.append(((i, j), ts))
        return cls(tuple(out))

    @classmethod
    def ones(cls, M: CoxeterMatrix) -> "ParameterPoint":
        return cls.from_dict({e: [1] * M.m(*e) for e in M.edges(finite_only=True)})

    def as_dict(self) -> dict:
        return dict(self.values)

    def t(self, i, j) -> tuple:
        """Roots for the ordered pair (i, j); t_{ji,k} = 1/t_{ij,-k}, index m standing for 0."""
        d = self.as_dict()
        if (i, j) in d:
            return d[(i, j)]
        ts = d[(j, i)]
        m = len(ts)
        return tuple(1 / ts[(m - k) % m - 1] if (m - k) % m else 1 / ts[m - 1] for k in range(1, m + 1))

    def edges(self) -> list:
        return [e for e, _ in self.values]

    def check(self, M: CoxeterMatrix) -> None:
        want = {frozenset(e): M.m(*e) for e in M.edges(finite_only=True)}
        have = {frozenset(e): len(ts) for e, ts in self.values}
        if want != have:
            raise ValueError("parameter point does not match the finite edges of the matrix")

    def restrict(self, M: CoxeterMatrix, subset) -> "ParameterPoint":
        sub = set(subset)
        out = {}
        for e in M.restrict(subset).edges(finite_only=True):
            out[e] = self.t(*e)
        assert all(v in sub for e in out for v in e)
        return ParameterPoint.from_dict(out)

    def permuted(self, edge, perm: Sequence[int]) -> "ParameterPoint":
        d = self.as_dict()
        ts = d[edge]
        d[edge] = tuple(ts[p] for p in perm)
        return ParameterPoint.from_dict(d)

    def to_json(self) -> list:
        return [{"edge": list(e), "m": len(ts), "t": [format_rational(t) for t in ts]} for e, ts in self.values]

    @classmethod
    def from_json(cls, data: Sequence[Mapping]) -> "ParameterPoint":
        values = {}
        for item in data:
            i, j = item["edge"]
            ts = item["t"]
            if "m" in item and int(item["m"]) != len(ts):
                raise ValueError(f"edge ({i}, {j}): m={item['m']} but {len(ts)} values")
            values[(i, j)] = ts
        return cls.from_dict(values)


@dataclass(frozen=True)
class SymmetricPoint:
    """e-chart point: for each finite edge (i, j), i before j, the values e^(1)..e^(m)."""

    values: tuple

    @classmethod
    def from_dict(cls, values: Mapping) -> "SymmetricPoint":
        out = []
        for (i, j), es in values.items():
            es = tuple(to_rational(e) for e in es)
            if es[-1] == 0:
                raise ValueError(f"e^(m) on edge ({i}, {j}) must be invertible")
            out.append(((i, j), es))
        return cls(tuple(out))

    def as_dict(self) -> dict:
        return dict(self.values)

    def e(self, i, j) -> tuple:
        """(e^(1), ..., e^(m)) for the ordered pair; e^(k)_ji = e^(m-k)_ij / e^(m)_ij."""
        d = self.as_dict()
        if (i, j) in d:
            return d[(i, j)]
        es = d[(j, i)]
        full = (Fraction(1),) + es
        m = len(es)
        return tuple(full[m - k] / es[-1] for k in range(1, m + 1))

    def edges(self) -> list:
        return [e for e, _ in self.values]

    def check(self, M: CoxeterMatrix) -> None:
        want = {frozenset(e): M.m(*e) for e in M.edges(finite_only=True)}
        have = {frozenset(e): len(es) for e, es in self.values}
        if want != have:
            raise ValueError("symmetric point does not match the finite edges of the matrix")

    def to_json(self) -> list:
        return [{"edge": list(e), "m": len(es), "e": [format_rational(x) for x in es]} for e, es in self.values]

    @classmethod
    def from_json(cls, data: Sequence[Mapping]) -> "SymmetricPoint":
        values = {}
        for item in data:
            i, j = item["edge"]
            values[(i, j)] = item["e"]
        return cls.from_dict(values)


def load_point(path):
    """Read a t-chart or e-chart point from JSON (decided by the per-edge key)."""
    with open(path) as fh:
        data = json.load(fh)
    if isinstance(data, Mapping):
        data = data["edges"]
    if data and "e" in data[0]:
        return SymmetricPoint.from_json(data)
    return ParameterPoint.from_json(data)


@dataclass(frozen=True)
class ZElement:
    """Torus rescaling with z_ij = zeta_i / zeta_j."""

    zeta: tuple  # (vertex, value) pairs

    @classmethod
    def from_dict(cls, zeta: Mapping) -> "ZElement":
        out = tuple((v, to_rational(x)) for v, x in zeta.items())
        if any(x == 0 for _, x in out):
            raise ValueError("zeta values must be nonzero")
        return cls(out)

    def z(self, i, j) -> Fraction:
        d = dict(self.zeta)
        return d.get(i, Fraction(1)) / d.get(j, Fraction(1))

    def inverse(self) -> "ZElement":
        return ZElement(tuple((v, 1 / x) for v, x in self.zeta))

    def __mul__(self, other: "ZElement") -> "ZElement":
        a, b = dict(self.zeta), dict(other.zeta)
        keys = list(dict.fromkeys(list(a) + list(b)))
        return ZElement(tuple((k, a.get(k, Fraction(1)) * b.get(k, Fraction(1))) for k in keys))


def to_symmetric(u: ParameterPoint) -> SymmetricPoint:
    return SymmetricPoint(tuple((e, tuple(all_elementary_symmetric(list(ts)))) for e, ts in u.values))


def apply_Z(u, z: ZElement):
    """Rescale a t-chart point (t -> z t) or an e-chart point (e^(k) -> z^k e^(k))."""
    if isinstance(u, SymmetricPoint):
        return SymmetricPoint(tuple((e, tuple(x * z.z(*e) ** (k + 1) for k, x in enumerate(es)))
                                    for e, es in u.values))
    return ParameterPoint(tuple((e, tuple(t * z.z(*e) for t in ts)) for e, ts in u.values))


def is_z2_invariant(e: SymmetricPoint) -> bool:
    """True iff e_ji = e_ij on every edge."""
    return all(e.e(i, j) == e.e(j, i) for i, j in e.edges())


# ---------------------------------------------------------------------------
# presentations

def gen_name(i, j) -> str:
    return f"a_{i}_{j}"


def generator_pairs(M: CoxeterMatrix) -> list:
    """Ordered pairs (i, j), i != j: forward pairs first, then reversed ones."""
    fwd = [(i, j) for i, j in M.edges()]
    return fwd + [(j, i) for i, j in fwd]


def edge_relation(x: NcPoly, es: Sequence) -> NcPoly:
    """x^m + sum_k (-1)^k e^(k) x^(m-k)."""
    m = len(es)
    out = x ** m
    for k, e in enumerate(es, start=1):
        out = out + (x ** (m - k)) * ((-1) ** k * e)
    return out


def build_A_plus(M: CoxeterMatrix, u) -> Presentation:
    """Presentation of the even algebra at a t-chart or e-chart point."""
    e = u if isinstance(u, SymmetricPoint) else to_symmetric(u)
    e.check(M)
    pairs = generator_pairs(M)
    idx = {p: k for k, p in enumerate(pairs)}
    g = {p: NcPoly.gen(k) for p, k in idx.items()}
    one = NcPoly.const(1)
    rels = []
    for i, j in M.edges():
        rels.append(g[(i, j)] * g[(j, i)] - one)
        rels.append(g[(j, i)] * g[(i, j)] - one)
    V = M.vertices
    for i in V:
        for j in V:
            for p in V:
                if len({i, j, p}) == 3:
                    rels.append(g[(i, j)] * g[(j, p)] * g[(p, i)] - one)
    for i, j in M.edges(finite_only=True):
        rels.append(edge_relation(g[(i, j)], e.e(i, j)))
        rels.append(edge_relation(g[(j, i)], e.e(j, i)))
    return Presentation([gen_name(i, j) for i, j in pairs], rels)


def default_cap(M: CoxeterMatrix) -> int:
    return 2 * cx.longest_length(M) + 2


def a_plus_groebner(M: CoxeterMatrix, u, cap: int | None = None):
    if not cx.is_finite(M):
        raise ValueError("dimension checks need a finite Coxeter group")
    P = build_A_plus(M, u)
    if cap is None:
        cap = default_cap(M)
    return P, buchberger(P, max(cap, P.max_degree()))


def dim_A_plus(M: CoxeterMatrix, u, cap: int | None = None):
    """Dimension of the even algebra at u: an int, or None when the completion was truncated."""
    if M.rank <= 1:
        return 1
    _, res = a_plus_groebner(M, u, cap)
    return dimension(res)


def basis_word(M: CoxeterMatrix, word: Sequence) -> tuple:
    """Pair an even reduced word s_i1 s_i2 ... into generator indices of a_{i1 i2} a_{i3 i4} ..."""
    idx = {p: k for k, p in enumerate(generator_pairs(M))}
    return tuple(idx[(word[2 * k], word[2 * k + 1])] for k in range(len(word) // 2))


def reduce_basis_words(M: CoxeterMatrix, u, cap: int | None = None):
    """True iff the images of the words T_w(x), x even, are linearly independent (None if truncated)."""
    evens = cx.even_elements(M)
    if M.rank <= 1:
        return True
    _, res = a_plus_groebner(M, u, cap)
    if not res.complete:
        return None
    vecs = [res.reduce(NcPoly.word(basis_word(M, x.word))) for x in evens]
    return rank(vecs) == len(evens)


def build_A_full(M: CoxeterMatrix, e: SymmetricPoint) -> Presentation:
    """s-generator presentation of the full algebra at a Z2-invariant e-chart point."""
    e.check(M)
    if not is_z2_invariant(e):
        raise ValueError("the full algebra needs a Z2-invariant point (e_ji = e_ij)")
    V = M.vertices
    s = {v: NcPoly.gen(k) for k, v in enumerate(V)}
    one = NcPoly.const(1)
    rels = [s[v] * s[v] - one for v in V]
    for i, j in M.edges(finite_only=True):
        rels.append(edge_relation(s[i] * s[j], e.e(i, j)))
        rels.append(edge_relation(s[j] * s[i], e.e(j, i)))
    return Presentation([f"s_{v}" for v in V], rels)


def dim_A_full(M: CoxeterMatrix, e: SymmetricPoint, cap: int | None = None):
    P = build_A_full(M, e)
    if cap is None:
        # s-words are twice as long as a-words
        cap = max(default_cap(M), 2 * P.max_degree())
    return dimension(buchberger(P, max(cap, P.max_degree())))

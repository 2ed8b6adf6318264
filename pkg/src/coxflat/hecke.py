"""Generalized Iwahori-Hecke algebras with deformed braid relations.

Generators T_i with T_i^2 - u_i T_i + v_i = 0 and, for each finite edge,
B_m(T_i, T_j) + sum_l f^(l)_ij B_{m-2l}(T_i, T_j) = 0.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from . import coxeter as cx
from .coxeter import CoxeterMatrix
from .deform import SymmetricPoint, default_cap
from .exact import format_rational, random_rational, to_rational
from .ncalg import NcPoly, Presentation, buchberger, dimension, rank


class HeckeConstraintError(ValueError):
    pass


def braid_poly(k: int, x: NcPoly, y: NcPoly) -> NcPoly:
    """B_2k = (xy)^k - (yx)^k, B_2k+1 = (xy)^k x - (yx)^k y, B_0 = 0."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    h = k // 2
    if k % 2 == 0:
        return (x * y) ** h - (y * x) ** h
    return (x * y) ** h * x - (y * x) ** h * y


def f_range(m: int) -> range:
    """l with 1 <= l < m/2."""
    return range(1, (m + 1) // 2)


@dataclass
class HeckeParams:
    u: dict
    v: dict
    f: dict = field(default_factory=dict)  # ((i, j), l) -> value

    def __post_init__(self):
        self.u = {k: to_rational(x) for k, x in self.u.items()}
        self.v = {k: to_rational(x) for k, x in self.v.items()}
        self.f = {k: to_rational(x) for k, x in self.f.items()}

    def fval(self, i, j, l) -> Fraction:
        return self.f.get(((i, j), l), self.f.get(((j, i), l), Fraction(0)))

    def violations(self, M: CoxeterMatrix) -> list:
        """Human-readable list of violated conditions (empty when admissible)."""
        out = []
        for i, j in M.edges(finite_only=True):
            m = M.m(i, j)
            if m % 2 and (self.u[i] != self.u[j] or self.v[i] != self.v[j]):
                out.append(f"condition (1): m_{i}{j}={m} is odd but (u, v) differ at {i} and {j}")
        V = M.vertices
        for j in V:
            for i in V:
                for k in V:
                    if len({i, j, k}) < 3 or M.index(i) > M.index(k):
                        continue
                    if M.m(i, j) == 3 and M.m(j, k) == 3 and M.m(i, k) == 2:
                        if self.fval(i, j, 1) != self.fval(j, k, 1):
                            out.append(f"condition (2): f1_{i}{j} != f1_{j}{k} although "
                                       f"m_{i}{j}=m_{j}{k}=3, m_{i}{k}=2")
        return out

    def check(self, M: CoxeterMatrix) -> None:
        missing = [v for v in M.vertices if v not in self.u or v not in self.v]
        if missing:
            raise ValueError(f"u and v needed at vertices {missing}")
        bad = self.violations(M)
        if bad:
            raise HeckeConstraintError("; ".join(bad))

    def to_json(self) -> dict:
        return {
            "u": {str(k): format_rational(x) for k, x in self.u.items()},
            "v": {str(k): format_rational(x) for k, x in self.v.items()},
            "f": [{"edge": list(e), "l": l, "value": format_rational(x)} for (e, l), x in self.f.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping, M: CoxeterMatrix) -> "HeckeParams":
        label = {str(v): v for v in M.vertices}
        u = {label[k]: x for k, x in data["u"].items()}
        v = {label[k]: x for k, x in data["v"].items()}
        f = {}
        for item in data.get("f", []):
            i, j = (label[str(x)] for x in item["edge"])
            f[((i, j), int(item["l"]))] = item["value"]
        return cls(u, v, f)

    @classmethod
    def load(cls, path, M: CoxeterMatrix) -> "HeckeParams":
        with open(path) as fh:
            return cls.from_json(json.load(fh), M)


def random_params(M: CoxeterMatrix, rng: random.Random, height: int = 5, zero_f: bool = False,
                  violate: bool = False) -> HeckeParams:
    """Random admissible parameters (u, v constant on odd-edge components, f shared on (3,3,2) pairs).

    ``violate`` perturbs one f^(1) on a (3,3,2) configuration to break condition (2).
    """
    # union-find over odd edges
    parent = {v: v for v in M.vertices}

    def root(v):
        while parent[v] != v:
            v = parent[v]
        return v

    for i, j in M.edges(finite_only=True):
        if M.m(i, j) % 2:
            parent[root(i)] = root(j)
    uv = {}
    u, v = {}, {}
    for x in M.vertices:
        r = root(x)
        if r not in uv:
            uv[r] = (random_rational(rng, height, nonzero=False), random_rational(rng, height))
        u[x], v[x] = uv[r]
    f = {}
    if not zero_f:
        # f1 on m=3 edges: shared along (3,3,2) configurations
        edges3 = [e for e in M.edges(finite_only=True) if M.m(*e) == 3]
        cls = {e: e for e in edges3}

        def croot(e):
            while cls[e] != e:
                e = cls[e]
            return e

        for a in edges3:
            for b in edges3:
                shared = set(a) & set(b)
                if a != b and len(shared) == 1:
                    i, k = (set(a) | set(b)) - shared
                    if M.m(i, k) == 2:
                        cls[croot(a)] = croot(b)
        vals = {}
        for e in M.edges(finite_only=True):
            m = M.m(*e)
            for l in f_range(m):
                if m == 3:
                    r = croot(e)
                    if r not in vals:
                        vals[r] = random_rational(rng, height, nonzero=False)
                    f[(e, l)] = vals[r]
                else:
                    f[(e, l)] = random_rational(rng, height, nonzero=False)
    p = HeckeParams(u, v, f)
    if violate:
        for j in M.vertices:
            for i in M.vertices:
                for k in M.vertices:
                    if len({i, j, k}) == 3 and M.m(i, j) == 3 and M.m(j, k) == 3 and M.m(i, k) == 2:
                        e = (i, j) if M.index(i) < M.index(j) else (j, i)
                        p.f[(e, 1)] = p.fval(j, k, 1) + 1
                        return p
        raise ValueError("no (3,3,2) configuration to violate")
    return p


def build_hecke(M: CoxeterMatrix, p: HeckeParams, check: bool = True) -> Presentation:
    if check:
        p.check(M)
    T = {x: NcPoly.gen(k) for k, x in enumerate(M.vertices)}
    one = NcPoly.const(1)
    rels = [T[x] * T[x] - T[x] * p.u[x] + one * p.v[x] for x in M.vertices]
    for i, j in M.edges(finite_only=True):
        m = M.m(i, j)
        r = braid_poly(m, T[i], T[j])
        for l in f_range(m):
            c = p.fval(i, j, l)
            if c:
                r = r + braid_poly(m - 2 * l, T[i], T[j]) * c
        rels.append(r)
    return Presentation([f"T_{x}" for x in M.vertices], rels)


@dataclass
class FreenessReport:
    dimension: object
    expected: int
    independent: object
    complete: bool

    @property
    def free(self):
        if not self.complete:
            return None
        return self.dimension == self.expected and bool(self.independent)


def verify_freeness(M: CoxeterMatrix, p: HeckeParams, cap: int | None = None, check: bool = True) -> FreenessReport:
    """Groebner dimension vs |W| plus independence of the ShortLex products T_w."""
    if not cx.is_finite(M):
        raise ValueError("freeness is checked for finite groups only")
    P = build_hecke(M, p, check=check)
    cap = default_cap(M) if cap is None else cap
    res = buchberger(P, max(cap, P.max_degree()))
    n = cx.group_order(M)
    if not res.complete:
        return FreenessReport(None, n, None, False)
    d = dimension(res)
    idx = {v: k for k, v in enumerate(M.vertices)}
    vecs = [res.reduce(NcPoly.word(tuple(idx[a] for a in x.word))) for x in cx.enumerate_elements(M)[0]]
    return FreenessReport(d, n, rank(vecs) == n, True)


# ---------------------------------------------------------------------------
# the torus picture


def satisfies_edge_conditions(e: SymmetricPoint) -> bool:
    """(e^(m))^2 = 1 and e^(k) = e^(m) e^(m-k) on every edge."""
    for _, es in e.values:
        m = len(es)
        full = (Fraction(1),) + tuple(es)
        if es[-1] ** 2 != 1:
            return False
        if any(full[k] != es[-1] * full[m - k] for k in range(1, m)):
            return False
    return True


def hecke_point(M: CoxeterMatrix, free: Mapping | None = None) -> SymmetricPoint:
    """e^(m) = (-1)^(m-1), e^(m/2) = 0, e^(m-k) = e^(m) e^(k); free[(edge)] lists e^(k), k < m/2."""
    free = free or {}
    out = {}
    for i, j in M.edges(finite_only=True):
        m = M.m(i, j)
        top = Fraction((-1) ** (m - 1))
        low = [to_rational(x) for x in free.get((i, j), [0] * len(f_range(m)))]
        if len(low) != len(f_range(m)):
            raise ValueError(f"edge ({i}, {j}) needs {len(f_range(m))} free values")
        es = [Fraction(0)] * m
        es[m - 1] = top
        for k, x in enumerate(low, start=1):
            es[k - 1] = x
            es[m - k - 1] = top * x
        out[(i, j)] = es
    return SymmetricPoint.from_dict(out)

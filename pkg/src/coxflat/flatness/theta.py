"""Theta: the points t with every edge polynomial of the form z^m + (-1)^m t_ij."""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .. import coxeter as cx
from ..coxeter import CoxeterMatrix
from ..deform import SymmetricPoint, ZElement
from ..exact import MonomialSystem, format_rational, integer_kernel, to_rational


@dataclass(frozen=True)
class ThetaPoint:
    """One nonzero rational t_ij per finite edge (i before j); t_ji = 1/t_ij."""

    values: tuple  # ((i, j), t) pairs

    @classmethod
    def from_dict(cls, values: Mapping) -> "ThetaPoint":
        out = []
        for (i, j), t in values.items():
            t = to_rational(t)
            if t == 0:
                raise ValueError(f"t_({i},{j}) must be nonzero")
            out.append(((i, j), t))
        return cls(tuple(out))

    @classmethod
    def ones(cls, M: CoxeterMatrix) -> "ThetaPoint":
        return cls.from_dict({e: 1 for e in M.edges(finite_only=True)})

    def as_dict(self) -> dict:
        return dict(self.values)

    def t(self, i, j) -> Fraction:
        d = self.as_dict()
        if (i, j) in d:
            return d[(i, j)]
        return 1 / d[(j, i)]

    def edges(self) -> list:
        return [e for e, _ in self.values]

    def check(self, M: CoxeterMatrix) -> None:
        want = {frozenset(e) for e in M.edges(finite_only=True)}
        if {frozenset(e) for e in self.edges()} != want:
            raise ValueError("theta point does not match the finite edges of the matrix")

    def to_symmetric(self, M: CoxeterMatrix) -> SymmetricPoint:
        """e-chart with e^(k) = 0 for k < m and e^(m) = t_ij."""
        return SymmetricPoint.from_dict(
            {(i, j): [0] * (M.m(i, j) - 1) + [t] for (i, j), t in self.values})

    def apply_Z(self, M: CoxeterMatrix, z: ZElement) -> "ThetaPoint":
        return ThetaPoint(tuple((e, t * z.z(*e) ** M.m(*e)) for e, t in self.values))

    def to_json(self) -> list:
        return [{"edge": list(e), "t": format_rational(t)} for e, t in self.values]

    @classmethod
    def from_json(cls, data) -> "ThetaPoint":
        return cls.from_dict({tuple(item["edge"]): item["t"] for item in data})


def finite_triangles(M: CoxeterMatrix) -> list:
    return [d for d in cx.triangles(M) if cx.triangle_type(M, d).finite]


def triangle_product(M: CoxeterMatrix, t: ThetaPoint, delta) -> Fraction:
    """t_ij^[W_ijk:W_ij] t_jk^[W_ijk:W_jk] t_ki^[W_ijk:W_ki]."""
    i, j, k = delta
    out = Fraction(1)
    for a, b in ((i, j), (j, k), (k, i)):
        out *= t.t(a, b) ** cx.parabolic_index(M, delta, (a, b))
    return out


def theta_membership(t: ThetaPoint, M: CoxeterMatrix) -> bool:
    t.check(M)
    return all(triangle_product(M, t, d) == 1 for d in finite_triangles(M))


def theta_system(M: CoxeterMatrix) -> MonomialSystem:
    edges = M.edges(finite_only=True)
    names = {e: f"t_{e[0]}_{e[1]}" for e in edges}
    eqs = []
    for delta in finite_triangles(M):
        i, j, k = delta
        eq: dict = {}
        for a, b in ((i, j), (j, k), (k, i)):
            idx = cx.parabolic_index(M, delta, (a, b))
            e, s = ((a, b), 1) if (a, b) in names else ((b, a), -1)
            eq[names[e]] = eq.get(names[e], 0) + s * idx
        eqs.append(eq)
    return MonomialSystem([names[e] for e in edges], eqs)


def sample_theta(M: CoxeterMatrix, seed: int, height: int = 4) -> ThetaPoint:
    """A random rational point of Theta (any sign class)."""
    S = theta_system(M)
    vals = S.sample(random.Random(seed), height)
    return ThetaPoint.from_dict({e: vals[f"t_{e[0]}_{e[1]}"] for e in M.edges(finite_only=True)})


def z_orbit_characters(M: CoxeterMatrix) -> list:
    """Integer vectors v (over finite edges) with prod r_e^v_e = 1 on every Z-orbit ratio."""
    edges = M.edges(finite_only=True)
    rows = []
    for v in M.vertices:
        row = []
        for i, j in edges:
            m = M.m(i, j)
            row.append(m if v == i else -m if v == j else 0)
        rows.append(row)
    return integer_kernel(rows, len(edges))


def same_z_orbit(M: CoxeterMatrix, t1: ThetaPoint, t2: ThetaPoint) -> bool:
    """True iff t1 = z.t2 for some complex rescaling z_ij = zeta_i/zeta_j.

    The image of the torus map zeta -> ((zeta_i/zeta_j)^m_ij) is a subtorus,
    so membership is tested by the characters vanishing on it.
    """
    edges = M.edges(finite_only=True)
    for v in z_orbit_characters(M):
        x = Fraction(1)
        for (i, j), a in zip(edges, v):
            if a:
                x *= (t1.t(i, j) / t2.t(i, j)) ** a
        if x != 1:
            return False
    return True

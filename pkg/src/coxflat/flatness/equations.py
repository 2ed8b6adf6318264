"""Flatness-locus equations for finite rank-3 parabolics.

Two descriptions are kept side by side:

* the permutation-invariant ("tilde") equations on the e-chart coefficients
  alpha_k, beta_k, gamma_k of the three edge polynomials, and
* the lemma tori: monomial equations on the t-chart roots whose solutions
  are flat points (one torus for the group-algebra component, one for the
  spin component).

Labelling convention for a triangle with orders (2, q, n): vertices v1, v2,
v3 are chosen so that a = a_{v1 v2} has order 2, b = a_{v2 v3} has order q
and c = a_{v3 v1} has order n, so that abc = 1.  alpha, beta, gamma are the
elementary symmetric functions of the roots of a, b, c.  In the lemma tori
t12k, t23k, t13k are the roots of a_{v1 v2}, a_{v2 v3} and a_{v1 v3} = (ab),
so gamma_k = e_k(1/t13l).
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .. import coxeter as cx
from ..coxeter import CoxeterMatrix, TriangleType
from ..deform import ParameterPoint, SymmetricPoint, to_symmetric
from ..exact import LaurentPoly, MonomialSystem, all_elementary_symmetric, to_rational

# ---------------------------------------------------------------------------
# tilde equations


@dataclass(frozen=True)
class TildeEquation:
    """left == right with both sides monomials in alpha/beta/gamma symbols."""

    id: str
    left: tuple  # ((symbol, exponent), ...)
    right: tuple

    @staticmethod
    def make(id: str, left: Mapping[str, int], right: Mapping[str, int]) -> "TildeEquation":
        clean = lambda d: tuple(sorted((k, v) for k, v in d.items() if v))
        return TildeEquation(id, clean(left), clean(right))

    def symbols(self) -> set:
        return {s for s, _ in self.left} | {s for s, _ in self.right}

    @staticmethod
    def _side(mono, values) -> object:
        out = 1
        for s, e in mono:
            out = out * values[s] ** e
        return out

    def holds(self, values: Mapping[str, object]) -> bool:
        lhs = self._side(self.left, values)
        rhs = self._side(self.right, values)
        return lhs == rhs

    def middle_degrees(self, constants: set) -> tuple:
        """Total degree of each side in the non-constant coefficients."""
        f = lambda mono: sum(e for s, e in mono if s not in constants)
        return f(self.left), f(self.right)

    def __str__(self):
        fmt = lambda mono: "*".join(s if e == 1 else f"{s}^{e}" for s, e in mono) or "1"
        return f"{fmt(self.left)} = {fmt(self.right)}"


def _sym(letter: str, k: int) -> str:
    return f"{letter}{k}"


def tilde_equations(t: TriangleType) -> list:
    """The equations cutting out the flat locus of the permutation-invariant algebra."""
    if not t.finite:
        raise ValueError("tilde equations exist only for finite triangles")
    p, q, n = t.orders
    a, b, g = (lambda k: _sym("alpha", k)), (lambda k: _sym("beta", k)), (lambda k: _sym("gamma", k))
    tag = t.tag
    E = TildeEquation.make
    eqs = []
    if (p, q) == (2, 2):
        eqs.append(E(f"{tag}.const", {a(2): n, b(2): n, g(n): 2}, {}))
        for k in range(1, n):
            eqs.append(E(f"{tag}.gamma{k}", {a(2): k, b(2): k, g(n): 1, g(k): 1}, {g(n - k): 1}))
        if n % 2 == 0:
            eqs.append(E(f"{tag}.alpha1", {a(2): n // 2, b(2): n // 2, g(n): 1, a(1): 1}, {a(1): 1}))
            eqs.append(E(f"{tag}.beta1", {a(2): n // 2, b(2): n // 2, g(n): 1, b(1): 1}, {b(1): 1}))
        else:
            eqs.append(E(f"{tag}.alpha1", {a(2): (n - 1) // 2, b(2): (n + 1) // 2, g(n): 1, a(1): 1}, {b(1): 1}))
    elif n == 3:
        eqs += [
            E("233.const", {a(2): 6, b(3): 4, g(3): 4}, {}),
            E("233.alpha1", {a(2): 3, b(3): 2, g(3): 2, a(1): 1}, {a(1): 1}),
            E("233.beta1", {a(2): 2, b(3): 1, g(3): 2, b(1): 1}, {g(2): 1}),
            E("233.gamma1", {a(2): 2, b(3): 2, g(3): 1, g(1): 1}, {b(2): 1}),
        ]
    elif n == 4:
        eqs += [
            E("234.const", {a(2): 12, b(3): 8, g(4): 6}, {}),
            E("234.alpha1", {a(2): 6, b(3): 4, g(4): 3, a(1): 1}, {a(1): 1}),
            E("234.gamma2", {a(2): 6, b(3): 4, g(4): 3, g(2): 1}, {g(2): 1}),
            E("234.beta1", {a(2): 4, b(3): 3, g(4): 2, b(1): 1}, {b(2): 1}),
            E("234.gamma1", {a(2): 3, b(3): 2, g(4): 2, g(1): 1}, {g(3): 1}),
        ]
    elif n == 5:
        eqs += [
            E("235.const", {a(2): 30, b(3): 20, g(5): 12}, {}),
            E("235.alpha1", {a(2): 15, b(3): 10, g(5): 6, a(1): 1}, {a(1): 1}),
            E("235.beta1", {a(2): 10, b(3): 7, g(5): 4, b(1): 1}, {b(2): 1}),
            E("235.gamma1", {a(2): 6, b(3): 4, g(5): 3, g(1): 1}, {g(4): 1}),
            E("235.gamma2", {a(2): 12, b(3): 8, g(5): 5, g(2): 1}, {g(3): 1}),
        ]
    else:  # pragma: no cover - classify_orders only yields the cases above
        raise ValueError(f"unexpected triangle {t.orders}")
    return eqs


def constant_symbols(t: TriangleType) -> set:
    p, q, n = t.orders
    return {_sym("alpha", p), _sym("beta", q), _sym("gamma", n)}


# ---------------------------------------------------------------------------
# labelling a triangle inside a bigger matrix


@dataclass(frozen=True)
class TriangleLabels:
    """Vertices v1, v2, v3 with m(v1,v2)=2, m(v2,v3)=q, m(v1,v3)=n."""

    v1: object
    v2: object
    v3: object
    type: TriangleType


def label_triangle(M: CoxeterMatrix, delta: Sequence) -> TriangleLabels:
    t = cx.triangle_type(M, delta)
    if not t.finite:
        raise ValueError(f"triangle {tuple(delta)} is infinite")
    p, q, n = t.orders
    key = lambda e: tuple(sorted(M.index(v) for v in e))
    edges = sorted(itertools.combinations(delta, 2), key=key)
    alpha = next(e for e in edges if M.m(*e) == p)
    rest = [e for e in edges if e != alpha]
    beta = next(e for e in rest if M.m(*e) == q)
    v2 = (set(alpha) & set(beta)).pop()
    v1 = (set(alpha) - {v2}).pop()
    v3 = (set(beta) - {v2}).pop()
    return TriangleLabels(v1, v2, v3, t)


def tilde_values(labels: TriangleLabels, e: SymmetricPoint) -> dict:
    """alpha_k, beta_k, gamma_k read off an e-chart point."""
    vals = {}
    for letter, (i, j) in (("alpha", (labels.v1, labels.v2)), ("beta", (labels.v2, labels.v3)),
                           ("gamma", (labels.v3, labels.v1))):
        for k, x in enumerate(e.e(i, j), start=1):
            vals[_sym(letter, k)] = x
    return vals


@dataclass
class TriangleVerdict:
    triangle: tuple
    type: str
    member: bool
    failed: list = field(default_factory=list)
    skipped: bool = False

    def to_json(self) -> dict:
        return {"triangle": list(self.triangle), "type": self.type, "member": self.member,
                "failed": list(self.failed), "skipped": self.skipped}


def _as_symmetric(u) -> SymmetricPoint:
    return u if isinstance(u, SymmetricPoint) else to_symmetric(u)


def check_tilde_membership(M: CoxeterMatrix, delta: Sequence, u) -> TriangleVerdict:
    """Evaluate the tilde equations of a finite triangle at a point (either chart)."""
    labels = label_triangle(M, delta)
    vals = tilde_values(labels, _as_symmetric(u))
    for s in constant_symbols(labels.type):
        if vals[s] == 0:
            raise ValueError(f"constant coefficient {s} vanishes")
    failed = [eq.id for eq in tilde_equations(labels.type) if not eq.holds(vals)]
    return TriangleVerdict(tuple(delta), labels.type.tag, not failed, failed)


@dataclass
class GlobalVerdict:
    member: bool
    triangles: list

    def failing(self) -> list:
        return [v.triangle for v in self.triangles if not v.member]

    def to_json(self) -> dict:
        return {"member": self.member, "triangles": [v.to_json() for v in self.triangles]}


def check_global_membership(M: CoxeterMatrix, u) -> GlobalVerdict:
    """Membership in the intersection over all finite triangles; infinite ones pass."""
    e = _as_symmetric(u)
    e.check(M)
    out = []
    for delta in cx.triangles(M):
        t = cx.triangle_type(M, delta)
        if not t.finite:
            out.append(TriangleVerdict(delta, t.tag, True, [], skipped=True))
        else:
            out.append(check_tilde_membership(M, delta, e))
    return GlobalVerdict(all(v.member for v in out), out)


# ---------------------------------------------------------------------------
# lemma tori


def _mono(src: str) -> dict:
    out: dict = {}
    for f in src.split("*"):
        v, _, e = f.strip().partition("^")
        out[v] = out.get(v, 0) + int(e or 1)
    return out


def _eq(src: str) -> dict:
    lhs, rhs = src.split("=")
    d = _mono(lhs)
    for v, e in _mono(rhs).items():
        d[v] = d.get(v, 0) - e
    return {v: e for v, e in d.items() if e}


_EXCEPTIONAL = {
    ("group", 3): [
        "t122*t233 = t133", "t122*t231 = t131", "t122*t232 = t132",
        "t121^2*t122*t231*t232*t233 = t131*t132*t133",
    ],
    ("group", 4): [
        "t122*t233 = t134", "t121*t233 = t132", "t121*t122*t231*t232 = t132*t134",
        "t121*t122^2*t231*t232*t233 = t131*t132*t133",
        "t121^2*t122*t231*t232*t233 = t131*t133*t134",
    ],
    # one determinant condition per irreducible representation of the even
    # subgroup (dimensions 1, 3, 3, 4, 5); t121 carries the eigenvalue -1 of a
    ("group", 5): [
        "t122*t233 = t135",
        "t121^2*t122*t231*t232*t233 = t131*t134*t135",
        "t121^2*t122*t231*t232*t233 = t132*t133*t135",
        "t121^2*t122^2*t231*t232*t233^2 = t131*t132*t133*t134",
        "t121^2*t122^3*t231^2*t232^2*t233 = t131*t132*t133*t134*t135",
    ],
    ("spin", 3): [
        "t121*t122*t231*t232 = t131*t132", "t121*t122*t231*t233 = t131*t133",
        "t121*t122*t232*t233 = t132*t133",
    ],
    ("spin", 4): [
        "t121*t122*t231*t233 = t131*t134", "t121*t122*t231*t233 = t132*t133",
        "t121^2*t122^2*t231*t232^2*t233 = t131*t132*t133*t134",
    ],
    # spin representations of dimensions 2, 2, 4, 6
    ("spin", 5): [
        "t121*t122*t231*t232 = t131*t134",
        "t121*t122*t231*t232 = t132*t133",
        "t121^2*t122^2*t231*t232*t233^2 = t131*t132*t133*t134",
        "t121^3*t122^3*t231^2*t232^2*t233^2 = t131*t132*t133*t134*t135^2",
    ],
}


def lemma_equation_strings(kind: str, t: TriangleType) -> list:
    p, q, n = t.orders
    if (p, q) == (2, 2):
        if kind == "group":
            eqs = ["t122*t232 = t13%d" % n, "t121*t231 = t13%d" % n]
            if n % 2 == 0:
                eqs += ["t122*t231 = t13%d" % (n // 2), "t121*t232 = t13%d" % (n // 2)]
            eqs += ["t121*t122*t231*t232 = t13%d*t13%d" % (i, n - i) for i in range(1, (n + 1) // 2)]
            return eqs
        if n % 2:
            raise ValueError("no spin component for (2,2,n) with n odd")
        return ["t121*t122*t231*t232 = t13%d*t13%d" % (i, n + 1 - i) for i in range(1, n // 2 + 1)]
    return list(_EXCEPTIONAL[(kind, n)])


def lemma_variables(t: TriangleType) -> list:
    p, q, n = t.orders
    return [f"t12{k}" for k in range(1, p + 1)] + [f"t23{k}" for k in range(1, q + 1)] + \
        [f"t13{k}" for k in range(1, n + 1)]


@dataclass
class LocusComponent:
    kind: str  # "group" or "spin"
    type: TriangleType
    equations: list  # strings "lhs = rhs"

    @property
    def name(self) -> str:
        return f"{self.type.tag}.{self.kind}"

    @property
    def variables(self) -> list:
        return lemma_variables(self.type)

    def system(self) -> MonomialSystem:
        return MonomialSystem(self.variables, [_eq(s) for s in self.equations])

    def holds(self, values: Mapping[str, object]) -> bool:
        return self.system().satisfied_by(values)

    def parametrization(self, signs=None) -> dict:
        return self.system().parametrization(signs)

    def sample_values(self, rng: random.Random, height: int = 6) -> dict:
        return self.system().sample(rng, height)


def lemma_components(t: TriangleType) -> list:
    if not t.finite:
        raise ValueError("lemma tori exist only for finite triangles")
    kinds = ["group"] if (t.orders[:2] == (2, 2) and t.n % 2) else ["group", "spin"]
    return [LocusComponent(k, t, lemma_equation_strings(k, t)) for k in kinds]


def values_to_point(values: Mapping[str, object], t: TriangleType, labels: TriangleLabels | None = None,
                    M: CoxeterMatrix | None = None) -> ParameterPoint:
    """Place lemma variables t12k, t23k, t13k on the triangle's edges."""
    p, q, n = t.orders
    if labels is None:
        labels = TriangleLabels(1, 2, 3, t)
    v1, v2, v3 = labels.v1, labels.v2, labels.v3
    roots = {
        (v1, v2): [values[f"t12{k}"] for k in range(1, p + 1)],
        (v2, v3): [values[f"t23{k}"] for k in range(1, q + 1)],
        (v1, v3): [values[f"t13{k}"] for k in range(1, n + 1)],
    }
    out = {}
    for (i, j), ts in roots.items():
        if M is not None and M.index(i) > M.index(j):
            # stored orientation: t_{ji,k} = 1/t_{ij,-k}
            m = len(ts)
            ts = [1 / to_rational(ts[(m - k) % m - 1]) for k in range(1, m + 1)]
            i, j = j, i
        out[(i, j)] = ts
    return ParameterPoint.from_dict(out)


def sample_point(component: LocusComponent, seed: int, height: int = 6) -> ParameterPoint:
    """A random rational point of the component on triangle_matrix(2, q, n)."""
    rng = random.Random(seed)
    for _ in range(100):
        vals = component.sample_values(rng, height)
        if all(v != 0 for v in vals.values()):
            return values_to_point(vals, component.type)
    raise RuntimeError("could not draw a nondegenerate point")  # pragma: no cover


def lemma_matrix(t: TriangleType) -> CoxeterMatrix:
    p, q, n = t.orders
    return cx.triangle_matrix(p, q, n)


# ---------------------------------------------------------------------------
# symbolic containment


def symbolic_tilde_values(component: LocusComponent, signs=None) -> dict:
    """alpha/beta/gamma as Laurent polynomials in the torus parameters."""
    par = component.parametrization(signs)
    p, q, n = component.type.orders
    t12 = [par[f"t12{k}"] for k in range(1, p + 1)]
    t23 = [par[f"t23{k}"] for k in range(1, q + 1)]
    inv13 = [1 / par[f"t13{k}"] for k in range(1, n + 1)]
    vals = {}
    for letter, roots in (("alpha", t12), ("beta", t23), ("gamma", inv13)):
        for k, e in enumerate(all_elementary_symmetric(roots), start=1):
            vals[_sym(letter, k)] = e
    return vals


def symbolic_containment(component: LocusComponent) -> dict:
    """Equation id -> True iff it holds identically on every sign class of the torus."""
    out = {}
    eqs = tilde_equations(component.type)
    for signs in component.system().sign_vectors():
        vals = symbolic_tilde_values(component, signs)
        for eq in eqs:
            lhs = TildeEquation._side(eq.left, vals)
            rhs = TildeEquation._side(eq.right, vals)
            ok = LaurentPoly._coerce(lhs) == LaurentPoly._coerce(rhs)
            out[eq.id] = out.get(eq.id, True) and ok
    return out


# ---------------------------------------------------------------------------
# off-locus sampling


def random_point(M: CoxeterMatrix, rng: random.Random, height: int = 5) -> ParameterPoint:
    vals = {}
    for e in M.edges(finite_only=True):
        vals[e] = [Fraction(rng.choice([-1, 1]) * rng.randint(1, height), rng.randint(1, height))
                   for _ in range(M.m(*e))]
    return ParameterPoint.from_dict(vals)


def perturbed_point(u: ParameterPoint, rng: random.Random, height: int = 5, edges=None) -> ParameterPoint:
    """Rescale one randomly chosen root by a random rational factor other than 1.

    ``edges`` restricts the choice of edge.
    """
    d = {e: list(ts) for e, ts in u.values}
    e = rng.choice(sorted(edges if edges is not None else d, key=str))
    k = rng.randrange(len(d[e]))
    while True:
        f = Fraction(rng.choice([-1, 1]) * rng.randint(1, height), rng.randint(1, height))
        if f != 1:
            break
    d[e][k] *= f
    return ParameterPoint.from_dict(d)


def off_locus_point(M: CoxeterMatrix, seed: int, near: ParameterPoint | None = None, height: int = 5,
                    tries: int = 1000, edges=None) -> ParameterPoint:
    """Rejection-sample a point failing the global membership test.

    With ``near`` given, candidates are one-root perturbations of that point
    (points close to the locus), optionally only on the given edges;
    otherwise they are uniformly random.
    """
    rng = random.Random(seed)
    for _ in range(tries):
        u = perturbed_point(near, rng, height, edges) if near is not None else random_point(M, rng, height)
        if not check_global_membership(M, u).member:
            return u
    raise RuntimeError("no off-locus point found")  # pragma: no cover


def sample_point_on(M: CoxeterMatrix, delta: Sequence, kind: str, seed: int, height: int = 6) -> ParameterPoint:
    """A lemma-torus point placed on the triangle delta of M (kind "group" or "spin")."""
    labels = label_triangle(M, delta)
    comp = next((c for c in lemma_components(labels.type) if c.kind == kind), None)
    if comp is None:
        raise ValueError(f"type {labels.type.tag} has no {kind} component")
    rng = random.Random(seed)
    vals = comp.sample_values(rng, height)
    return values_to_point(vals, labels.type, labels, M)

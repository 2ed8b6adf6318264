"""Twisted group algebras C_psi[W+] attached to points of Theta.

Elements of W+ are represented by the even products [x] = s_{i1} ... s_{ik}
over the ShortLex normal form of x.  Scalars live on the far left; passing
a letter s_p swaps t_ij and t_ji = 1/t_ij.  A braid move on an alternating
segment starting with s_i (partner s_j, length m) at word position p costs
(-1)^(m+1) t_ij when p is even and (-1)^(m+1) t_ji when p is odd, which is
the relation (s_i s_j)^m = (-1)^(m+1) t_ij read as
s_i s_j ... = (-1)^(m+1) t_ij s_j s_i ... .  Deleting s_i s_i is free.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .. import coxeter as cx
from ..coxeter import INF, CoxeterMatrix
from .theta import ThetaPoint, theta_membership


class Scalar:
    """sign * prod t_e^n_e over canonical finite edges."""

    __slots__ = ("sign", "exps")

    def __init__(self, sign: int = 1, exps: tuple = ()):
        self.sign = sign
        self.exps = exps

    def __mul__(self, other: "Scalar") -> "Scalar":
        n = max(len(self.exps), len(other.exps))
        a = self.exps + (0,) * (n - len(self.exps))
        b = other.exps + (0,) * (n - len(other.exps))
        return Scalar(self.sign * other.sign, tuple(x + y for x, y in zip(a, b)))

    def evaluate(self, values: list) -> Fraction:
        out = Fraction(self.sign)
        for v, e in zip(values, self.exps):
            if e:
                out *= v ** e
        return out

    def __eq__(self, other):
        return isinstance(other, Scalar) and self.sign == other.sign and \
            self.exps + (0,) * max(0, len(other.exps) - len(self.exps)) == \
            other.exps + (0,) * max(0, len(self.exps) - len(other.exps))

    def __repr__(self):
        return f"Scalar({self.sign}, {self.exps})"


class Rewriter:
    """Symbolic right multiplication by generators in the s-letter algebra."""

    def __init__(self, M: CoxeterMatrix, rng: random.Random | None = None, walk_steps: int = 200):
        self.M = M
        self.G = cx.group(M)
        self.edges = M.edges(finite_only=True)
        self.edge_index = {}
        for k, (i, j) in enumerate(self.edges):
            a, b = M.index(i), M.index(j)
            self.edge_index[(a, b)] = (k, 1)
            self.edge_index[(b, a)] = (k, -1)
        self.rng = rng
        self.walk_steps = walk_steps
        self._mu: dict = {}

    def move_cost(self, word: tuple, p: int) -> Scalar:
        i, j = word[p], word[p + 1]
        m = self.G.mm[i][j]
        k, s = self.edge_index[(i, j)]
        if p % 2:
            s = -s
        exps = [0] * len(self.edges)
        exps[k] = s
        return Scalar(1 if (m + 1) % 2 == 0 else -1, tuple(exps))

    def _path(self, start: tuple, pred):
        """Braid moves from start to a word satisfying pred: shortest path, or a random walk."""
        if self.rng is not None:
            w, moves = start, []
            for _ in range(self.walk_steps):
                if pred(w):
                    return w, moves
                nbrs = list(self.G.braid_neighbours(w))
                if not nbrs:
                    break
                p, v = self.rng.choice(nbrs)
                moves.append((p, w))
                w = v
            found = self.G.braid_search(w, pred)
            return found[0], moves + found[1]
        return self.G.braid_search(start, pred)

    def _cost(self, moves) -> Scalar:
        out = Scalar(1, (0,) * len(self.edges))
        for p, w in moves:
            out = out * self.move_cost(w, p)
        return out

    def mu(self, x: tuple, a: int):
        """[x] s_a = c [x s_a]; returns (c, normal form of x s_a)."""
        key = (x, a)
        if self.rng is None and key in self._mu:
            return self._mu[key]
        target = self.G.mul_gen(x, a)
        if len(target) < len(x):
            w, moves = self._path(x, lambda v: v[-1] == a)
            c = self._cost(moves)
            w2, moves2 = self._path(w[:-1], lambda v: v == target)
            c = c * self._cost(moves2)
        else:
            w, moves = self._path(x + (a,), lambda v: v == target)
            c = self._cost(moves)
        out = (c, target)
        if self.rng is None:
            self._mu[key] = out
        return out

    def word_product(self, x: tuple, word) -> tuple:
        c = Scalar(1, (0,) * len(self.edges))
        for a in word:
            c2, x = self.mu(x, a)
            c = c * c2
        return c, x


@dataclass
class TwistedAlgebra:
    M: CoxeterMatrix
    t: ThetaPoint
    elements: list  # normal forms (vertex positions) of W+
    table: list  # table[x][y] = index of xy
    psi: list  # psi[x][y], Fractions
    psi_symbolic: list = field(repr=False, default_factory=list)

    def __post_init__(self):
        self.index = {x: k for k, x in enumerate(self.elements)}

    @property
    def dimension(self) -> int:
        return len(self.elements)

    def basis(self, x: tuple) -> dict:
        return {self.index[x]: Fraction(1)}

    def one(self) -> dict:
        return self.basis(())

    def mul(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for x, a in u.items():
            for y, b in v.items():
                z = self.table[x][y]
                out[z] = out.get(z, 0) + a * b * self.psi[x][y]
        return {k: c for k, c in out.items() if c}

    def power(self, u: dict, n: int) -> dict:
        out = self.one()
        for _ in range(n):
            out = self.mul(out, u)
        return out

    def inverse_basis(self, x: int) -> dict:
        """[x]^-1 = psi(x, x^-1)^-1 [x^-1]."""
        e = self.index[()]
        y = next(y for y in range(self.dimension) if self.table[x][y] == e)
        return {y: 1 / self.psi[x][y]}

    def s_product(self, word) -> dict:
        """The even s-word s_{w1} s_{w2} ... as an element (vertex labels)."""
        rw = Rewriter(self.M)
        vals = [self.t.t(*e) for e in rw.edges]
        c, x = rw.word_product((), rw.G.to_idx(word))
        return {self.index[x]: c.evaluate(vals)}

    def scalar_part(self, u: dict):
        """The coefficient of [1] if u is a multiple of the identity, else None."""
        e = self.index[()]
        if any(k != e for k in u):
            return None
        return u.get(e, Fraction(0))

    def check_unit(self) -> bool:
        e = self.index[()]
        return all(self.psi[e][y] == 1 and self.psi[y][e] == 1 for y in range(self.dimension))

    def check_cocycle(self) -> bool:
        """psi(x,y) psi(xy,z) = psi(y,z) psi(x,yz) for every triple."""
        n = self.dimension
        T, P = self.table, self.psi
        for x in range(n):
            for y in range(n):
                xy = T[x][y]
                pxy = P[x][y]
                for z in range(n):
                    if pxy * P[xy][z] != P[y][z] * P[x][T[y][z]]:
                        return False
        return True

    def check_power_relations(self) -> bool:
        """(s_i s_j)^m_ij = (-1)^(m+1) t_ij for every finite edge, both orientations."""
        for i, j in self.M.edges(finite_only=True):
            m = self.M.m(i, j)
            for a, b in ((i, j), (j, i)):
                x = self.s_product((a, b))
                if self.scalar_part(self.power(x, m)) != (-1) ** (m + 1) * self.t.t(a, b):
                    return False
        return True


def build_twisted_algebra(M: CoxeterMatrix, t: ThetaPoint, rng: random.Random | None = None,
                          check: bool = True) -> TwistedAlgebra:
    """psi_t on W+ by rewriting w(x) w(y) to w(xy).

    ``rng`` switches the braid paths to random walks (for confluence fuzzing).
    """
    if not cx.is_finite(M):
        raise ValueError("twisted algebras need a finite Coxeter group")
    if check and not theta_membership(t, M):
        raise ValueError("t is not in Theta; the rewriting is not confluent there")
    rw = Rewriter(M, rng)
    vals = [t.t(*e) for e in rw.edges]
    elements = [rw.G.to_idx(x.word) for x in cx.even_elements(M)]
    index = {x: k for k, x in enumerate(elements)}
    n = len(elements)
    table = [[0] * n for _ in range(n)]
    psi = [[Fraction(1)] * n for _ in range(n)]
    sym = [[None] * n for _ in range(n)]
    for a, x in enumerate(elements):
        for b, y in enumerate(elements):
            c, z = rw.word_product(x, y)
            table[a][b] = index[z]
            sym[a][b] = c
            psi[a][b] = c.evaluate(vals)
    return TwistedAlgebra(M, t, elements, table, psi, sym)


def eta(T: TwistedAlgebra, base=None) -> ThetaPoint:
    """Read t back from the twisted algebra: a_0j = [s_0 s_j], a_ij = a_0i^-1 a_0j."""
    M = T.M
    base = M.vertices[0] if base is None else base
    a0 = {j: T.s_product((base, j)) for j in M.vertices if j != base}

    def a(i, j):
        if i == base:
            return a0[j]
        (x, c), = a0[i].items()
        inv = {k: v / c for k, v in T.inverse_basis(x).items()}
        if j == base:
            return inv
        return T.mul(inv, a0[j])

    out = {}
    for i, j in M.edges(finite_only=True):
        m = M.m(i, j)
        s = T.scalar_part(T.power(a(i, j), m))
        if s is None:
            raise ValueError(f"a_({i},{j})^{m} is not a scalar")
        out[(i, j)] = (-1) ** (m + 1) * s
    return ThetaPoint.from_dict(out)


# ---------------------------------------------------------------------------
# numeric spin check


def _clifford_generators(n: int) -> list:
    """n anticommuting complex matrices squaring to 1 (Jordan-Wigner)."""
    X = np.array([[0, 1], [1, 0]], dtype=complex)
    Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
    Z = np.diag([1, -1]).astype(complex)
    I = np.eye(2, dtype=complex)
    q = max(1, (n + 1) // 2)
    out = []
    for k in range(n):
        site, which = divmod(k, 2)
        factors = [Z] * site + [X if which == 0 else Y] + [I] * (q - site - 1)
        mat = factors[0]
        for f in factors[1:]:
            mat = np.kron(mat, f)
        out.append(mat)
    return out


def gram_matrix(M: CoxeterMatrix) -> np.ndarray:
    r = M.rank
    G = np.eye(r)
    for a, i in enumerate(M.vertices):
        for b, j in enumerate(M.vertices):
            if a != b:
                G[a, b] = -np.cos(np.pi / M.m(i, j))
    return G


def spin_residuals(M: CoxeterMatrix) -> dict:
    """max |(e_i e_j)^m - (-1)^(m+1)| per edge in the Clifford algebra of the cosine form."""
    if any(M.m(i, j) == INF for i, j in M.edges()):
        raise ValueError("all orders must be finite")
    G = gram_matrix(M)
    w, Q = np.linalg.eigh(G)
    L = Q * np.sqrt(w.astype(complex))  # L L^T = G, no conjugation
    f = _clifford_generators(M.rank)
    e = [sum(L[a, k] * f[k] for k in range(M.rank)) for a in range(M.rank)]
    d = f[0].shape[0]
    out = {}
    for i, j in M.edges():
        a, b = M.index(i), M.index(j)
        m = M.m(i, j)
        P = np.linalg.matrix_power(e[a] @ e[b], m)
        out[(i, j)] = float(np.max(np.abs(P - (-1) ** (m + 1) * np.eye(d))))
    return out


def verify_spin_numeric(M: CoxeterMatrix, tolerance: float = 1e-9) -> bool:
    return all(r <= tolerance for r in spin_residuals(M).values())

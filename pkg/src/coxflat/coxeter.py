"""Coxeter matrices, the word problem, enumeration and rank-3 classification.

Group elements are represented by their ShortLex-least reduced word, using
the vertex order of the matrix. The word problem is solved by closing a word
under braid moves (Tits): a word is reduced iff no braid-equivalent word has
two equal adjacent letters, and all reduced words of an element are
braid-equivalent.
"""
from __future__ import annotations

import itertools
import math
import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Hashable, Iterable, Sequence

from .exact import TruncatedSeries

INF = math.inf

DEFAULT_CLASS_CAP = 10**6


class InconclusiveError(RuntimeError):
    """Braid-class exploration hit its resource cap; no answer is given."""


class MatrixParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class CoxeterMatrix:
    """Symmetric Coxeter matrix over an ordered vertex set.

    ``orders`` is a tuple of ((i, j), m) pairs with i before j in the vertex
    order; m is an int >= 2 or ``INF``.
    """

    vertices: tuple
    orders: tuple

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("vertex labels must be distinct")
        pos = {v: k for k, v in enumerate(self.vertices)}
        seen = {}
        for (i, j), m in self.orders:
            if i not in pos or j not in pos or i == j:
                raise ValueError(f"bad edge ({i}, {j})")
            if m != INF and (int(m) != m or m < 2):
                raise ValueError(f"order m_{i}{j}={m} must be an integer >= 2 or inf")
            key = frozenset((i, j))
            if key in seen and seen[key] != m:
                raise ValueError(f"m_{i}{j} is not symmetric")
            seen[key] = m
        need = {frozenset(p) for p in itertools.combinations(self.vertices, 2)}
        if set(seen) != need:
            raise ValueError("every pair of distinct vertices needs an order")
        canon = []
        for i, j in itertools.combinations(self.vertices, 2):
            m = seen[frozenset((i, j))]
            canon.append(((i, j), m if m == INF else int(m)))
        object.__setattr__(self, "orders", tuple(canon))

    @classmethod
    def from_dict(cls, vertices: Sequence[Hashable], orders: dict, default=None) -> "CoxeterMatrix":
        vertices = tuple(vertices)
        table = {}
        for (i, j), m in orders.items():
            table[frozenset((i, j))] = m
        full = []
        for i, j in itertools.combinations(vertices, 2):
            key = frozenset((i, j))
            if key in table:
                full.append(((i, j), table[key]))
            elif default is not None:
                full.append(((i, j), default))
            else:
                raise ValueError(f"missing order for pair ({i}, {j})")
        return cls(vertices, tuple(full))

    @property
    def rank(self) -> int:
        return len(self.vertices)

    def m(self, i, j):
        if i == j:
            return 1
        for (a, b), m in self.orders:
            if (a, b) == (i, j) or (a, b) == (j, i):
                return m
        raise KeyError((i, j))

    def index(self, v) -> int:
        return self.vertices.index(v)

    def edges(self, finite_only: bool = False) -> list:
        """Pairs (i, j), i before j, optionally only those with finite order."""
        return [e for e, m in self.orders if not finite_only or m != INF]

    def restrict(self, subset: Iterable) -> "CoxeterMatrix":
        sub = [v for v in self.vertices if v in set(subset)]
        return CoxeterMatrix(tuple(sub), tuple(((i, j), self.m(i, j)) for i, j in itertools.combinations(sub, 2)))

    def to_text(self) -> str:
        lines = ["vertices: " + " ".join(str(v) for v in self.vertices)]
        for (i, j), m in self.orders:
            lines.append(f"{i} {j} {'inf' if m == INF else m}")
        return "\n".join(lines) + "\n"


Word = tuple


@dataclass(frozen=True, order=True)
class Element:
    """A group element stored as its ShortLex-least reduced word (vertex labels)."""

    word: tuple = ()

    @property
    def length(self) -> int:
        return len(self.word)

    @property
    def sign(self) -> int:
        return -1 if len(self.word) % 2 else 1

    @property
    def is_even(self) -> bool:
        return len(self.word) % 2 == 0

    def __repr__(self):
        return "Element(" + ",".join(map(str, self.word)) + ")" if self.word else "Element(1)"


@dataclass(frozen=True)
class GrowthCounts:
    counts: tuple

    def series(self) -> TruncatedSeries:
        return TruncatedSeries.from_list(self.counts)

    @property
    def total(self) -> int:
        return sum(self.counts)


@dataclass(frozen=True)
class TriangleType:
    """Rank-3 classification after sorting the pairwise orders p <= q <= r."""

    kind: str  # "infinite", "dihedral", "E233", "E234", "E235"
    orders: tuple

    @property
    def finite(self) -> bool:
        return self.kind != "infinite"

    @property
    def n(self) -> int:
        return self.orders[2]

    @property
    def tag(self) -> str:
        """Short identifier such as "224" or "235"."""
        return "".join("i" if m == INF else str(m) for m in self.orders)

    @property
    def order(self) -> int:
        return finite_rank3_order(*self.orders)


# ---------------------------------------------------------------------------
# config files

def parse_matrix_text(text: str) -> CoxeterMatrix:
    """Parse the matrix config format.

    Lines: optional ``default = 2`` header, one ``vertices: a b c`` line, then
    ``i j m`` entries with m an integer >= 2 or ``inf``. ``#`` starts a comment.
    Omitted pairs are an error unless the default flag is set.
    """
    vertices = None
    default = None
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if re.match(r"^default\s*=", line):
            if vertices is not None or entries:
                raise MatrixParseError("default flag must precede vertices and entries", lineno)
            value = line.split("=", 1)[1].strip()
            if value != "2":
                raise MatrixParseError(f"only 'default = 2' is supported, got {value!r}", lineno)
            default = 2
            continue
        if line.startswith("vertices"):
            if vertices is not None:
                raise MatrixParseError("duplicate vertices line", lineno)
            names = line.split(":", 1)[1].split() if ":" in line else []
            if not names:
                raise MatrixParseError("empty vertex list", lineno)
            if len(set(names)) != len(names):
                raise MatrixParseError("repeated vertex name", lineno)
            vertices = tuple(_label(n) for n in names)
            continue
        if vertices is None:
            raise MatrixParseError("entries before the vertices line", lineno)
        parts = line.split()
        if len(parts) != 3:
            raise MatrixParseError(f"expected 'i j m', got {line!r}", lineno)
        i, j = _label(parts[0]), _label(parts[1])
        for v in (i, j):
            if v not in vertices:
                raise MatrixParseError(f"unknown vertex {v!r}", lineno)
        if i == j:
            raise MatrixParseError("diagonal entries are not allowed", lineno)
        if parts[2].lower() in ("inf", "infinity", "oo"):
            m = INF
        else:
            try:
                m = int(parts[2])
            except ValueError:
                raise MatrixParseError(f"bad order {parts[2]!r}", lineno) from None
            if m < 2:
                raise MatrixParseError(f"order must be >= 2, got {m}", lineno)
        key = frozenset((i, j))
        if key in entries and entries[key] != m:
            raise MatrixParseError(f"conflicting orders for ({i}, {j})", lineno)
        entries[key] = m
    if vertices is None:
        raise MatrixParseError("missing vertices line")
    orders = {}
    for i, j in itertools.combinations(vertices, 2):
        key = frozenset((i, j))
        if key in entries:
            orders[(i, j)] = entries[key]
        elif default is not None:
            orders[(i, j)] = default
        else:
            raise MatrixParseError(f"missing order for pair ({i}, {j}) and no default flag")
    return CoxeterMatrix.from_dict(vertices, orders)


def _label(s: str):
    return int(s) if re.fullmatch(r"-?\d+", s) else s


def load_matrix(path) -> CoxeterMatrix:
    with open(path) as fh:
        return parse_matrix_text(fh.read())


def named_matrix(name: str) -> CoxeterMatrix:
    """Standard matrices on vertices 1..r: A3, B3, H3, F4, D4, I2(5), A1xA1, I2(4)xA1, A~2, ..."""
    name = name.strip()
    factors = name.split("x")
    pieces = []
    for f in factors:
        pieces.append(_named_component(f))
    vertices, orders, offset = [], {}, 0
    for comp_rank, comp_orders in pieces:
        for k in range(comp_rank):
            vertices.append(offset + k + 1)
        for (i, j), m in comp_orders.items():
            orders[(offset + i, offset + j)] = m
        offset += comp_rank
    return CoxeterMatrix.from_dict(vertices, orders, default=2)


def _named_component(name: str):
    m = re.fullmatch(r"I2\((\d+|inf)\)", name)
    if m:
        order = INF if m.group(1) == "inf" else int(m.group(1))
        return 2, {(1, 2): order}
    m = re.fullmatch(r"([A-Z])(~?)(\d+)", name)
    if not m:
        raise ValueError(f"unknown Coxeter type {name!r}")
    letter, affine, n = m.group(1), m.group(2), int(m.group(3))
    path = lambda k: {(i, i + 1): 3 for i in range(1, k)}
    if affine:
        if letter == "A" and n == 1:
            return 2, {(1, 2): INF}
        if letter == "A":
            d = path(n + 1)
            d[(1, n + 1)] = 3
            return n + 1, d
        raise ValueError(f"unsupported affine type {name!r}")
    if letter == "A":
        return n, path(n)
    if letter == "B" and n >= 2:
        d = path(n)
        d[(1, 2)] = 4
        return n, d
    if letter == "D" and n >= 4:
        d = path(n - 1)
        d[(n - 2, n)] = 3
        return n, d
    if letter == "E" and n in (6, 7, 8):
        d = path(n - 1)
        d[(3, n)] = 3
        return n, d
    if letter == "F" and n == 4:
        return 4, {(1, 2): 3, (2, 3): 4, (3, 4): 3}
    if letter == "H" and n in (3, 4):
        d = path(n)
        d[(1, 2)] = 5
        return n, d
    if letter == "G" and n == 2:
        return 2, {(1, 2): 6}
    raise ValueError(f"unknown Coxeter type {name!r}")


def triangle_matrix(p, q, r, vertices=(1, 2, 3)) -> CoxeterMatrix:
    """Rank-3 matrix with m_12 = p, m_23 = q, m_13 = r."""
    a, b, c = vertices
    return CoxeterMatrix.from_dict(vertices, {(a, b): p, (b, c): q, (a, c): r})


# ---------------------------------------------------------------------------
# the word problem

class CoxeterGroup:
    """Word-problem engine for one matrix; caches braid classes per element.

    Internally words are tuples of vertex positions 0..r-1.
    """

    def __init__(self, M: CoxeterMatrix, class_cap: int = DEFAULT_CLASS_CAP):
        self.M = M
        self.class_cap = class_cap
        r = M.rank
        self.r = r
        self.mm = [[1] * r for _ in range(r)]
        for (i, j), m in M.orders:
            a, b = M.index(i), M.index(j)
            self.mm[a][b] = self.mm[b][a] = m
        self._classes: dict = {}
        self._mul: dict = {}

    # conversions
    def to_idx(self, word: Iterable) -> tuple:
        out = []
        for v in word:
            try:
                out.append(self.M.vertices.index(v))
            except ValueError:
                raise KeyError(f"unknown vertex {v!r}") from None
        return tuple(out)

    def to_labels(self, word: tuple) -> tuple:
        return tuple(self.M.vertices[k] for k in word)

    def element(self, nf: tuple) -> Element:
        return Element(self.to_labels(nf))

    # braid moves
    def braid_neighbours(self, w: tuple):
        """Yield (position, new_word) for every braid move applicable to w, leftmost first."""
        n = len(w)
        for p in range(n - 1):
            i, j = w[p], w[p + 1]
            if i == j:
                continue
            m = self.mm[i][j]
            if m == INF or p + m > n:
                continue
            ok = True
            for q in range(p + 2, p + m):
                if w[q] != w[q - 2]:
                    ok = False
                    break
            if ok:
                seg = tuple(j if k % 2 == 0 else i for k in range(m))
                yield p, w[:p] + seg + w[p + m:]

    @staticmethod
    def _repeat_at(w: tuple):
        for p in range(len(w) - 1):
            if w[p] == w[p + 1]:
                return p
        return None

    def braid_closure(self, w: tuple, stop_on_repeat: bool = True):
        """All words braid-equivalent to w. Returns (set, word_with_repeat_or_None)."""
        seen = {w}
        if stop_on_repeat and self._repeat_at(w) is not None:
            return seen, w
        queue = deque([w])
        while queue:
            u = queue.popleft()
            for _, v in self.braid_neighbours(u):
                if v in seen:
                    continue
                seen.add(v)
                if len(seen) > self.class_cap:
                    raise InconclusiveError(
                        f"braid class exceeded {self.class_cap} words; verdict inconclusive")
                if stop_on_repeat and self._repeat_at(v) is not None:
                    return seen, v
                queue.append(v)
        return seen, None

    def braid_search(self, start: tuple, predicate):
        """Breadth-first braid moves from ``start`` to the first word satisfying predicate.

        Returns (word, moves) with moves a list of (position, word_before); None if
        no word in the class qualifies.
        """
        if predicate(start):
            return start, []
        parent = {start: None}
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for p, v in self.braid_neighbours(u):
                if v in parent:
                    continue
                parent[v] = (u, p)
                if len(parent) > self.class_cap:
                    raise InconclusiveError(f"braid class exceeded {self.class_cap} words")
                if predicate(v):
                    moves = []
                    x = v
                    while parent[x] is not None:
                        prev, pos = parent[x]
                        moves.append((pos, prev))
                        x = prev
                    moves.reverse()
                    return v, moves
                queue.append(v)
        return None

    def is_reduced_idx(self, w: tuple) -> bool:
        _, rep = self.braid_closure(w)
        return rep is None

    def reduced_class(self, nf: tuple) -> frozenset:
        """All reduced words of the element with normal form ``nf``."""
        cls = self._classes.get(nf)
        if cls is None:
            words, rep = self.braid_closure(nf)
            if rep is not None:
                raise ValueError(f"{nf} is not reduced")
            cls = frozenset(words)
            self._classes[nf] = cls
        return cls

    def _nf_of_reduced(self, w: tuple) -> tuple:
        words, rep = self.braid_closure(w)
        assert rep is None
        nf = min(words)
        self._classes.setdefault(nf, frozenset(words))
        return nf

    def mul_gen(self, nf: tuple, a: int) -> tuple:
        """Normal form of x * s_a where x has normal form nf."""
        key = (nf, a)
        out = self._mul.get(key)
        if out is not None:
            return out
        cls = self.reduced_class(nf)
        ending = [v for v in cls if v and v[-1] == a]
        if ending:
            out = self._nf_of_reduced(min(ending)[:-1])
        else:
            out = self._nf_of_reduced(nf + (a,))
        self._mul[key] = out
        return out

    def nf_idx(self, w: Iterable[int]) -> tuple:
        x = ()
        for a in w:
            x = self.mul_gen(x, a)
        return x

    def right_descent(self, nf: tuple, a: int) -> bool:
        return len(self.mul_gen(nf, a)) < len(nf)

    def left_descent(self, nf: tuple, a: int) -> bool:
        return len(self.nf_idx((a,) + nf)) < len(nf)

    def inverse_idx(self, nf: tuple) -> tuple:
        return self._nf_of_reduced(tuple(reversed(nf))) if nf else ()

    def multiply_idx(self, x: tuple, y: tuple) -> tuple:
        for a in y:
            x = self.mul_gen(x, a)
        return x

    def levels(self, max_length=None):
        """Yield lists of normal forms by length (BFS). Stops when a level is empty."""
        level = [()]
        n = 0
        while level:
            yield level
            if max_length is not None and n >= max_length:
                return
            nxt = set()
            for x in level:
                for a in range(self.r):
                    y = self.mul_gen(x, a)
                    if len(y) == n + 1:
                        nxt.add(y)
            level = sorted(nxt)
            n += 1


@lru_cache(maxsize=64)
def group(M: CoxeterMatrix) -> CoxeterGroup:
    """Shared engine per matrix (caches are only ever extended)."""
    return CoxeterGroup(M)


# ---------------------------------------------------------------------------
# public operations

def is_reduced(M: CoxeterMatrix, w: Sequence) -> bool:
    G = group(M)
    return G.is_reduced_idx(G.to_idx(w))


def normal_form(M: CoxeterMatrix, w: Sequence) -> Element:
    G = group(M)
    return G.element(G.nf_idx(G.to_idx(w)))


def multiply(M: CoxeterMatrix, x: Element, y: Element) -> Element:
    G = group(M)
    return G.element(G.multiply_idx(G.nf_idx(G.to_idx(x.word)), G.to_idx(y.word)))


def inverse(M: CoxeterMatrix, x: Element) -> Element:
    G = group(M)
    return G.element(G.inverse_idx(G.to_idx(x.word)))


def enumerate_elements(M: CoxeterMatrix, max_length="all"):
    """All elements of length <= max_length ("all" for finite groups) and their growth counts."""
    if max_length == "all":
        if not is_finite(M):
            raise ValueError("'all' requested for an infinite Coxeter group")
        bound = None
    else:
        bound = int(max_length)
    G = group(M)
    elements, counts = [], []
    for level in G.levels(bound):
        counts.append(len(level))
        elements.extend(G.element(x) for x in level)
    if bound is not None:
        counts += [0] * (bound + 1 - len(counts))
    return elements, GrowthCounts(tuple(counts))


def growth_counts(M: CoxeterMatrix, max_length="all") -> GrowthCounts:
    return enumerate_elements(M, max_length)[1]


def even_elements(M: CoxeterMatrix, max_length="all") -> list:
    return [x for x in enumerate_elements(M, max_length)[0] if x.is_even]


def group_order(M: CoxeterMatrix) -> int:
    return growth_counts(M).total


def longest_length(M: CoxeterMatrix) -> int:
    return len(growth_counts(M).counts) - 1


def is_finite(M: CoxeterMatrix) -> bool:
    """True iff every connected component of the diagram is of finite type."""
    verts = list(M.vertices)
    adj = {v: [] for v in verts}
    for (i, j), m in M.orders:
        if m == INF:
            return False
        if m >= 3:
            adj[i].append((j, m))
            adj[j].append((i, m))
    seen = set()
    for v in verts:
        if v in seen:
            continue
        comp, stack = [], [v]
        seen.add(v)
        while stack:
            x = stack.pop()
            comp.append(x)
            for y, _ in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        if not _component_finite(comp, adj):
            return False
    return True


def _component_finite(comp, adj) -> bool:
    n = len(comp)
    edges = {(min(x, y, key=str), max(x, y, key=str)): m for x in comp for y, m in adj[x]}
    if n <= 2:
        return True
    if len(edges) != n - 1:
        return False  # contains a cycle
    degree = {x: len(adj[x]) for x in comp}
    branch = [x for x in comp if degree[x] >= 3]
    big = [m for m in edges.values() if m > 3]
    if branch:
        if len(branch) > 1 or degree[branch[0]] > 3 or big:
            return False
        centre = branch[0]
        legs = []
        for y, _ in adj[centre]:
            length, prev, cur = 1, centre, y
            while degree[cur] == 2:
                nxt = [z for z, _ in adj[cur] if z != prev][0]
                prev, cur = cur, nxt
                length += 1
            legs.append(length)
        a, b, c = sorted(legs)
        return Fraction(1, a + 1) + Fraction(1, b + 1) + Fraction(1, c + 1) > 1
    # a path
    if not big:
        return True
    if len(big) > 1:
        return False
    m = big[0]
    ends = [x for x in comp if degree[x] == 1]
    (e, m_e), = [(k, v) for k, v in edges.items() if v > 3]
    at_end = e[0] in ends or e[1] in ends
    if m == 4:
        return at_end or n == 4
    if m == 5:
        return at_end and n in (3, 4)
    return False


def triangle_type(M: CoxeterMatrix, delta: Sequence) -> TriangleType:
    delta = tuple(delta)
    if len(delta) != 3 or len(set(delta)) != 3:
        raise ValueError("a triangle needs three distinct vertices")
    i, j, k = delta
    orders = tuple(sorted((M.m(i, j), M.m(j, k), M.m(i, k))))
    return classify_orders(*orders)


def classify_orders(p, q, r) -> TriangleType:
    orders = tuple(sorted((p, q, r)))
    p, q, r = orders
    if r == INF or Fraction(1, p) + Fraction(1, q) + Fraction(1, r) <= 1:
        return TriangleType("infinite", orders)
    if (p, q) == (2, 2):
        return TriangleType("dihedral", orders)
    return TriangleType(f"E{p}{q}{r}", orders)


def finite_rank3_order(p, q, r) -> int:
    if INF in (p, q, r):
        raise ValueError("infinite triangle group")
    s = Fraction(1, p) + Fraction(1, q) + Fraction(1, r) - 1
    if s <= 0:
        raise ValueError(f"triangle ({p},{q},{r}) is infinite")
    order = 4 / s
    assert order.denominator == 1
    return int(order)


def parabolic_index(M: CoxeterMatrix, delta: Sequence, edge: Sequence) -> int:
    """[W_delta : W_edge] = |W_delta| / (2 m_edge)."""
    t = triangle_type(M, delta)
    i, j = edge
    if i not in delta or j not in delta or i == j:
        raise ValueError("edge must join two vertices of the triangle")
    m = M.m(i, j)
    if not t.finite or m == INF:
        raise ValueError("parabolic index needs a finite triangle and a finite edge")
    return t.order // (2 * m)


def triangles(M: CoxeterMatrix) -> list:
    return list(itertools.combinations(M.vertices, 3))

"""Finitely presented associative algebras over Q.

Noncommutative Buchberger completion under deglex (length first, then
lexicographic in generator declaration order), dimension via standard words,
and Hilbert functions of homogeneous presentations.

Words are stored internally as strings with ``chr(k)`` standing for
generator k, so slicing, hashing and deglex comparison are cheap; the public
API speaks tuples of generator indices.
"""
from __future__ import annotations

import heapq
import itertools
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from gmpy2 import mpq

from .exact import format_rational, to_rational

INFINITE = math.inf

ONE = mpq(1)


def _w(word) -> str:
    if isinstance(word, str):
        return word
    return "".join(map(chr, word))


def _t(word: str) -> tuple:
    return tuple(map(ord, word))


def _key(word: str):
    return (len(word), word)


def _q(c) -> mpq:
    if isinstance(c, type(ONE)):
        return c
    c = to_rational(c)
    return mpq(c.numerator, c.denominator)


class NcPoly:
    """Noncommutative polynomial: map from words to nonzero rationals."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping | None = None):
        clean = {}
        for w, c in (terms or {}).items():
            c = _q(c)
            if c:
                w = _w(w)
                s = clean.get(w, 0) + c
                if s:
                    clean[w] = s
                else:
                    clean.pop(w, None)
        self.terms = clean

    @classmethod
    def _raw(cls, terms: dict) -> "NcPoly":
        p = cls.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def gen(cls, k: int) -> "NcPoly":
        return cls._raw({chr(k): ONE})

    @classmethod
    def const(cls, c) -> "NcPoly":
        c = _q(c)
        return cls._raw({"": c} if c else {})

    @classmethod
    def word(cls, word: Sequence[int], coeff=1) -> "NcPoly":
        return cls({_w(word): coeff})

    @staticmethod
    def _coerce(x) -> "NcPoly":
        return x if isinstance(x, NcPoly) else NcPoly.const(x)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        _axpy(out, other.terms, ONE)
        return NcPoly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return NcPoly._raw({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        _axpy(out, other.terms, -ONE)
        return NcPoly._raw(out)

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, NcPoly):
            c = _q(other)
            return NcPoly._raw({w: v * c for w, v in self.terms.items()} if c else {})
        out: dict = {}
        for u, a in self.terms.items():
            for v, b in other.terms.items():
                w = u + v
                s = out.get(w, 0) + a * b
                if s:
                    out[w] = s
                else:
                    del out[w]
        return NcPoly._raw(out)

    def __rmul__(self, other):
        c = _q(other)
        return NcPoly._raw({w: v * c for w, v in self.terms.items()} if c else {})

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined")
        out = NcPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, NcPoly):
            other = NcPoly.const(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def lead(self) -> tuple:
        return _t(max(self.terms, key=_key))

    def lead_coefficient(self) -> Fraction:
        return to_rational(self.terms[max(self.terms, key=_key)])

    def degree(self) -> int:
        return max(map(len, self.terms)) if self.terms else -1

    def is_homogeneous(self) -> bool:
        return len({len(w) for w in self.terms}) <= 1

    def monic(self) -> "NcPoly":
        lc = self.terms[max(self.terms, key=_key)]
        return NcPoly._raw({w: c / lc for w, c in self.terms.items()})

    def items(self):
        """(word tuple, Fraction) pairs in decreasing deglex order."""
        for w in sorted(self.terms, key=_key, reverse=True):
            yield _t(w), to_rational(self.terms[w])

    def format(self, gens: Sequence[str]) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in self.items():
            mono = "*".join(gens[k] for k in w)
            if not mono:
                parts.append(format_rational(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{format_rational(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return "NcPoly(" + self.format([f"x{k}" for k in range(_max_gen(self) + 1)]) + ")"


def _max_gen(p: NcPoly) -> int:
    return max((ord(ch) for w in p.terms for ch in w), default=-1)


def _axpy(acc: dict, terms: Mapping, c) -> None:
    """acc += c * terms, in place, dropping zeros."""
    for w, v in terms.items():
        s = acc.get(w, 0) + c * v
        if s:
            acc[w] = s
        else:
            acc.pop(w, None)


@dataclass
class Presentation:
    gens: tuple
    relations: list

    def __post_init__(self):
        self.gens = tuple(self.gens)
        if len(set(self.gens)) != len(self.gens):
            raise ValueError("generator names must be distinct")
        rels = []
        for r in self.relations:
            r = NcPoly._coerce(r)
            if r.is_zero():
                raise ValueError("relations must be nonzero")
            if _max_gen(r) >= len(self.gens):
                raise ValueError("relation uses an undeclared generator")
            rels.append(r)
        self.relations = rels

    def gen(self, name: str) -> NcPoly:
        return NcPoly.gen(self.gens.index(name))

    def max_degree(self) -> int:
        return max((r.degree() for r in self.relations), default=0)

    def is_homogeneous(self) -> bool:
        return all(r.is_homogeneous() for r in self.relations)

    def to_dsl(self) -> str:
        lines = ["gens: " + ", ".join(self.gens) + ";"]
        for r in self.relations:
            lines.append("rel: " + r.format(self.gens) + ";")
        return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# DSL parser

_TOKEN = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


class DslError(ValueError):
    pass


def parse_presentation(text: str) -> Presentation:
    """Parse ``gens: a, b; rel: a*b - 1; rel: (a - 3/2)^2;``."""
    gens = None
    rel_sources = []
    for stmt in text.split(";"):
        stmt = stmt.strip()
        if not stmt:
            continue
        head, _, body = stmt.partition(":")
        head = head.strip()
        if head == "gens":
            if gens is not None:
                raise DslError("duplicate gens statement")
            gens = tuple(g.strip() for g in body.split(",") if g.strip())
            for g in gens:
                if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", g):
                    raise DslError(f"bad generator name {g!r}")
        elif head == "rel":
            rel_sources.append(body)
        else:
            raise DslError(f"unknown statement {head!r}")
    if gens is None:
        raise DslError("missing gens statement")
    rels = [parse_polynomial(src, gens) for src in rel_sources]
    return Presentation(gens, rels)


def parse_polynomial(src: str, gens: Sequence[str]) -> NcPoly:
    tokens = []
    pos = 0
    src = src.strip()
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m or m.end() == pos:
            break
        tokens.append(m.groups())
        pos = m.end()
    if src[pos:].strip():
        raise DslError(f"cannot tokenize {src[pos:]!r}")
    parser = _Parser(tokens, list(gens))
    poly = parser.expr()
    if parser.i != len(tokens):
        raise DslError(f"unexpected trailing input in {src!r}")
    return poly


class _Parser:
    def __init__(self, tokens, gens):
        self.tokens = tokens
        self.gens = gens
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, None)

    def op(self, ch) -> bool:
        if self.peek()[2] == ch:
            self.i += 1
            return True
        return False

    def expr(self) -> NcPoly:
        out = self.term()
        while True:
            if self.op("+"):
                out = out + self.term()
            elif self.op("-"):
                out = out - self.term()
            else:
                return out

    def term(self) -> NcPoly:
        out = self.factor()
        while self.op("*"):
            out = out * self.factor()
        return out

    def factor(self) -> NcPoly:
        if self.op("-"):
            return -self.factor()
        if self.op("+"):
            return self.factor()
        base = self.atom()
        if self.op("^"):
            num = self.peek()[0]
            if num is None or "/" in num:
                raise DslError("exponent must be a nonnegative integer")
            self.i += 1
            base = base ** int(num)
        return base

    def atom(self) -> NcPoly:
        num, name, op = self.peek()
        if num is not None:
            self.i += 1
            return NcPoly.const(Fraction(num))
        if name is not None:
            self.i += 1
            if name not in self.gens:
                raise DslError(f"undeclared generator {name!r}")
            return NcPoly.gen(self.gens.index(name))
        if self.op("("):
            inner = self.expr()
            if not self.op(")"):
                raise DslError("missing ')'")
            return inner
        raise DslError(f"unexpected token {op!r}")


# ---------------------------------------------------------------------------
# reduction

class Reducer:
    """Leftmost rewriting by monic rules lead -> tail (the rule says lead = tail).

    A rule may carry a deficit: it then stands for the homogeneous element
    h^deficit * lead - (padded tail) with h central, and may only rewrite a
    term whose own h-slack is at least that deficit.  Without deficits this is
    ordinary reduction.  Normal forms of single words are memoized until the
    rule set changes.
    """

    def __init__(self, rules: Mapping[str, dict] | None = None, deficits: Mapping[str, int] | None = None):
        self.rules: dict = dict(rules or {})
        self.deficit: dict = dict(deficits or {})
        self.changed()

    def changed(self) -> None:
        self._lens = sorted({len(k) for k in self.rules})
        self._maxdef = max(self.deficit.values(), default=0)
        self._cache = {}

    def find(self, w: str, slack=None):
        rules, lens, deficit = self.rules, self._lens, self.deficit
        n = len(w)
        for p in range(n + 1):
            for L in lens:
                if p + L > n:
                    break
                f = w[p:p + L]
                if f in rules and (slack is None or deficit.get(f, 0) <= slack):
                    return p, f
        return None

    def is_standard(self, w: str) -> bool:
        return self.find(w) is None

    def nf_word(self, w: str, slack=None) -> dict:
        if slack is not None and slack >= self._maxdef:
            slack = None
        cache = self._cache
        key = (w, slack)
        r = cache.get(key)
        if r is not None:
            return r
        stack = [key]
        rules = self.rules
        maxdef = self._maxdef
        while stack:
            x, s = k = stack[-1]
            if k in cache:
                stack.pop()
                continue
            hit = self.find(x, s)
            if hit is None:
                cache[k] = {x: ONE}
                stack.pop()
                continue
            p, lead = hit
            pre, suf = x[:p], x[p + len(lead):]
            children = []
            for v, c in rules[lead].items():
                y = pre + v + suf
                sy = None if s is None else s + len(x) - len(y)
                if sy is not None and sy >= maxdef:
                    sy = None
                children.append(((y, sy), c))
            missing = [y for y, _ in children if y not in cache]
            if missing:
                stack.extend(missing)
                continue
            if len(children) == 1:
                y, c = children[0]
                ny = cache[y]
                res = ny if c == 1 else {u: c * d for u, d in ny.items()}
            else:
                res = {}
                for y, c in children:
                    _axpy(res, cache[y], c)
            cache[k] = res
            stack.pop()
        return cache[key]

    def reduce_terms(self, terms: Mapping, label: int | None = None) -> dict:
        """Normal form of a polynomial; with a label D each term w has slack D - |w|."""
        out: dict = {}
        for w, c in terms.items():
            _axpy(out, self.nf_word(w, None if label is None else label - len(w)), c)
        return out

    def reduce(self, p: NcPoly) -> NcPoly:
        return NcPoly._raw(self.reduce_terms(p.terms))


def reduce(p: NcPoly, basis: Iterable[NcPoly]) -> NcPoly:
    """Reduce p by the (monic) basis until no word contains a leading word."""
    rules = {}
    for g in basis:
        g = NcPoly._coerce(g)
        if g.is_zero():
            continue
        lw = max(g.terms, key=_key)
        lc = g.terms[lw]
        rules[lw] = {w: -c / lc for w, c in g.terms.items() if w != lw}
    return Reducer(rules).reduce(p)


# ---------------------------------------------------------------------------
# Buchberger completion

@dataclass
class GroebnerResult:
    gens: tuple
    basis: list
    standard_words: list
    complete: bool
    truncated_at: int | None
    finite: bool | None
    reducer: Reducer = field(repr=False)

    @property
    def status(self) -> str:
        return "complete" if self.complete else f"truncated_at({self.truncated_at})"

    def reduce(self, p: NcPoly) -> NcPoly:
        return self.reducer.reduce(p)

    def leading_words(self) -> list:
        return [g.lead() for g in self.basis]

    @property
    def lower_bound(self) -> int:
        """Number of standard words found (a lower bound when truncated)."""
        return len(self.standard_words)

    def standard_counts(self, N: int) -> list:
        counts = [0] * (N + 1)
        for w in self.standard_words:
            if len(w) <= N:
                counts[len(w)] += 1
        return counts


def _overlaps(u: str, v: str):
    """k with suffix of u of length k equal to prefix of v, 0 < k < min(|u|,|v|)."""
    top = min(len(u), len(v))
    for k in range(1, top):
        if u.endswith(v[:k]):
            yield k


def _inclusions(u: str, v: str):
    """Positions p with v occurring inside u at p (v a proper factor of u)."""
    if len(v) >= len(u):
        return
    p = u.find(v)
    while p >= 0:
        yield p
        p = u.find(v, p + 1)


def _spoly(rules: Mapping, u: str, v: str, k: int) -> dict:
    """tail_u * v[k:] - u[:-k] * tail_v for the overlap u[:-k] + v = u + v[k:].

    A negative k = -(p + 1) encodes v sitting inside u at position p; the
    result is then tail_u - u[:p] * tail_v * u[p + |v|:].
    """
    terms: dict = {}
    if k < 0:
        p = -k - 1
        pre, after = u[:p], u[p + len(v):]
        terms = dict(rules[u])
        for w, c in rules[v].items():
            x = pre + w + after
            s = terms.get(x, 0) - c
            if s:
                terms[x] = s
            else:
                del terms[x]
        return terms
    suf = v[k:]
    pre = u[:-k]
    for w, c in rules[u].items():
        x = w + suf
        s = terms.get(x, 0) + c
        if s:
            terms[x] = s
        else:
            del terms[x]
    for w, c in rules[v].items():
        x = pre + w
        s = terms.get(x, 0) - c
        if s:
            terms[x] = s
        else:
            del terms[x]
    return terms


class _Completion:
    """Completion of the homogenized ideal (central h kept implicit).

    Every rule carries a label D, its homogeneous degree.  Obstructions are
    resolved in order of label and reductions respect the h-slack, so the
    rules of label <= D are the reduced basis of the homogenized ideal in
    degrees <= D.  This keeps intermediate coefficients canonical (small) even
    when the inhomogeneous ideal collapses.  After each degree the
    dehomogenized rules are tested for being a Groebner basis outright.
    """

    def __init__(self):
        self.red = Reducer()
        self.label: dict = {}
        self.queue: list = []
        self.counter = itertools.count()

    @property
    def rules(self):
        return self.red.rules

    def push_pairs(self, lead: str) -> None:
        label = self.label
        D = label[lead]
        n = len(lead)
        for u in list(self.rules):
            Du = label[u]
            for k in _overlaps(u, lead):
                lab = max(Du + n - k, len(u) - k + D)
                heapq.heappush(self.queue, (lab, next(self.counter), u, lead, k))
            if u != lead:
                for k in _overlaps(lead, u):
                    lab = max(D + len(u) - k, n - k + Du)
                    heapq.heappush(self.queue, (lab, next(self.counter), lead, u, k))
                # rules whose leads nest survive when the inner one lacks the h-slack
                for p in _inclusions(u, lead):
                    heapq.heappush(self.queue, (max(Du, D + len(u) - n), next(self.counter), u, lead, -p - 1))
                for p in _inclusions(lead, u):
                    heapq.heappush(self.queue, (max(D, Du + n - len(u)), next(self.counter), lead, u, -p - 1))

    def add(self, terms: dict, D: int) -> None:
        """Insert an element of label D, interreducing the basis."""
        pending = [(terms, D)]
        red = self.red
        rules, deficit, label = red.rules, red.deficit, self.label
        while pending:
            t, D = pending.pop()
            t = red.reduce_terms(t, D)
            if not t:
                continue
            lw = max(t, key=_key)
            lc = t[lw]
            tail = {w: -c / lc for w, c in t.items() if w != lw}
            dlw = D - len(lw)
            for u in [u for u in rules if lw in u and dlw <= deficit[u]]:
                old = rules.pop(u)
                poly = {w: -c for w, c in old.items()}
                poly[u] = ONE
                pending.append((poly, label.pop(u)))
                del deficit[u]
            rules[lw] = tail
            deficit[lw] = dlw
            label[lw] = D
            red.changed()
            find = red.find
            for u in list(rules):
                Du = label[u]
                if any(find(w, Du - len(w)) for w in rules[u]):
                    rules[u] = red.reduce_terms(rules[u], Du)
            self.push_pairs(lw)

    def dehomogenized(self) -> Reducer:
        """Unrestricted reducer on the rules with inclusion-minimal leading words."""
        rules = self.rules
        minimal = {}
        for L in rules:
            if not any(M != L and M in L for M in rules):
                minimal[L] = rules[L]
        red = Reducer(minimal)
        for L in list(minimal):
            if any(red.find(w) for w in minimal[L]):
                minimal[L] = red.reduce_terms(minimal[L])
        red.changed()
        return red

    def is_groebner(self, red: Reducer) -> bool:
        """Diamond-lemma check of the dehomogenized basis.

        Rules dropped for having a non-minimal leading word must reduce to
        zero too, so the ideal of the returned basis is the full ideal.
        """
        for L, tail in self.rules.items():
            if L not in red.rules:
                poly = {w: -c for w, c in tail.items()}
                poly[L] = ONE
                if red.reduce_terms(poly):
                    return False
        rules = red.rules
        for u in rules:
            for v in rules:
                for k in _overlaps(u, v):
                    if red.reduce_terms(_spoly(rules, u, v, k)):
                        return False
        return True

    def run(self, relations: Sequence[dict], cap: int):
        """Return (complete, dehomogenized reducer)."""
        for r in sorted(relations, key=lambda t: _key(max(t, key=_key))):
            self.add(dict(r), max(map(len, r)))
        level = max((self.label[L] for L in self.rules), default=0)
        while True:
            while self.queue and self.queue[0][0] <= level:
                lab, _, u, v, k = heapq.heappop(self.queue)
                if u not in self.rules or v not in self.rules:
                    continue
                s = _spoly(self.rules, u, v, k)
                if s:
                    self.add(s, lab)
            red = self.dehomogenized()
            # verification pass: every overlap of the dehomogenized basis must resolve
            if self.is_groebner(red):
                return True, red
            if not self.queue:
                raise AssertionError("homogeneous completion finished but its dehomogenization is not a basis")
            level = self.queue[0][0]
            if level > cap:
                return False, red


def buchberger(P: Presentation, degree_cap: int) -> GroebnerResult:
    """Complete the relations of P under deglex, resolving obstructions up to degree_cap.

    For inhomogeneous relations the degree of an obstruction is measured in the
    homogenized algebra.
    """
    if degree_cap < P.max_degree():
        raise ValueError(f"degree_cap {degree_cap} is below the largest relation degree {P.max_degree()}")
    comp = _Completion()
    complete, red = comp.run([r.terms for r in P.relations], degree_cap)
    basis = []
    for lead in sorted(red.rules, key=_key):
        terms = {w: -c for w, c in red.rules[lead].items()}
        terms[lead] = ONE
        basis.append(NcPoly._raw(terms))
    finite = _standard_set_finite(red.rules, len(P.gens))
    limit = None if (complete and finite) else degree_cap
    words = [_t(w) for w in _standard_words(red, len(P.gens), limit)]
    return GroebnerResult(P.gens, basis, words, complete, None if complete else degree_cap, finite, red)


def _standard_words(red: Reducer, ngens: int, limit: int | None) -> list:
    rules = red.rules
    if "" in rules:
        return []
    maxlen = max(map(len, rules), default=0)
    out = [""]
    level = [""]
    n = 0
    while level and (limit is None or n < limit):
        nxt = []
        for w in level:
            for a in range(ngens):
                x = w + chr(a)
                if not any(x[len(x) - L:] in rules for L in range(1, min(maxlen, len(x)) + 1)):
                    nxt.append(x)
        out.extend(nxt)
        level = nxt
        n += 1
    return out


def _standard_set_finite(rules: Mapping[str, dict], ngens: int) -> bool:
    """Ufnarovski graph test: the standard words are finite iff the graph is acyclic."""
    if "" in rules:
        return True
    if ngens == 0:
        return True
    maxlen = max(map(len, rules), default=0)
    d = max(maxlen - 1, 1)

    def standard_ext(x: str) -> bool:
        return not any(x[len(x) - L:] in rules for L in range(1, min(maxlen, len(x)) + 1))

    level = [""]
    for _ in range(d):
        level = [w + chr(a) for w in level for a in range(ngens) if standard_ext(w + chr(a))]
    nodes = set(level)
    succ = {u: [u[1:] + chr(b) for b in range(ngens) if standard_ext(u + chr(b))] for u in nodes}
    color = dict.fromkeys(nodes, 0)
    for root in nodes:
        if color[root]:
            continue
        stack = [(root, iter(succ[root]))]
        color[root] = 1
        while stack:
            u, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                color[u] = 2
                stack.pop()
                continue
            if color[nxt] == 1:
                return False
            if color[nxt] == 0:
                color[nxt] = 1
                stack.append((nxt, iter(succ[nxt])))
    return True


def dimension(result: GroebnerResult):
    """int when complete and finite, INFINITE when complete and infinite, None when truncated."""
    if not result.complete:
        return None
    if not result.finite:
        return INFINITE
    return len(result.standard_words)


def hilbert_function(P: Presentation, N: int) -> list:
    """Dimensions of the graded components 0..N of a homogeneous presentation."""
    if not P.is_homogeneous():
        raise ValueError("hilbert_function needs homogeneous relations")
    cap = max(N, P.max_degree())
    res = buchberger(P, cap)
    if res.complete and res.finite:
        return res.standard_counts(N)
    counts = [0] * (N + 1)
    for w in _standard_words(res.reducer, len(P.gens), N):
        counts[len(w)] += 1
    return counts


# ---------------------------------------------------------------------------
# linear algebra over Q on sparse vectors

def rank(vectors: Iterable) -> int:
    """Rank over Q of sparse vectors (NcPoly or dicts key -> rational)."""
    pivots: dict = {}
    r = 0
    for v in vectors:
        terms = v.terms if isinstance(v, NcPoly) else {k: _q(c) for k, c in v.items()}
        row = {k: c for k, c in terms.items() if c}
        while row:
            k = max(row, key=_sort_key)
            if k in pivots:
                prow = pivots[k]
                f = row[k]
                for kk, cc in prow.items():
                    s = row.get(kk, 0) - f * cc
                    if s:
                        row[kk] = s
                    else:
                        row.pop(kk, None)
            else:
                lc = row[k]
                pivots[k] = {kk: cc / lc for kk, cc in row.items()}
                r += 1
                break
    return r


def _sort_key(k):
    if isinstance(k, str):
        return (len(k), k)
    return (0, k) if not isinstance(k, tuple) else (len(k), k)


def linearly_independent(vectors: Sequence) -> bool:
    vectors = list(vectors)
    return rank(vectors) == len(vectors)

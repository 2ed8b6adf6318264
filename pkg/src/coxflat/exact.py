"""Exact scalars, Laurent polynomials, truncated series and integer lattices.

Everything here is exact: rationals are :class:`fractions.Fraction`, and
Laurent polynomials carry rational coefficients over named variables.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

Rational = Fraction


def to_rational(x) -> Fraction:
    """Coerce ints, Fractions, mpq and "p/q" strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if hasattr(x, "numerator") and hasattr(x, "denominator"):
        return Fraction(int(x.numerator), int(x.denominator))
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def format_rational(x) -> str:
    q = to_rational(x)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def random_rational(rng: random.Random, height: int = 5, nonzero: bool = True) -> Fraction:
    """A small-height random rational p/q with |p|, q <= height."""
    while True:
        p = rng.randint(-height, height)
        q = rng.randint(1, height)
        if p or not nonzero:
            return Fraction(p, q)


class LaurentPoly:
    """Laurent polynomial with rational coefficients over named variables.

    Terms map exponent tuples (aligned with ``variables``) to nonzero
    Fractions. Polynomials over different variable sets are merged on the
    fly by taking the union of names.
    """

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str] = (), terms: Mapping[tuple, object] | None = None):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError("variable names must be unique")
        self.variables = variables
        clean = {}
        for exps, c in (terms or {}).items():
            c = to_rational(c)
            if c:
                exps = tuple(int(e) for e in exps)
                if len(exps) != len(variables):
                    raise ValueError("exponent vector length does not match variables")
                clean[exps] = clean.get(exps, 0) + c
                if not clean[exps]:
                    del clean[exps]
        self.terms = clean

    @classmethod
    def constant(cls, c, variables: Sequence[str] = ()) -> "LaurentPoly":
        return cls(variables, {(0,) * len(variables): c})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "LaurentPoly":
        return cls((name,), {(power,): 1})

    @classmethod
    def monomial(cls, exponents: Mapping[str, int], coeff=1) -> "LaurentPoly":
        names = tuple(exponents)
        return cls(names, {tuple(exponents[n] for n in names): coeff})

    def _lift(self, variables: tuple) -> dict:
        if variables == self.variables:
            return self.terms
        pos = [variables.index(v) for v in self.variables]
        out = {}
        for exps, c in self.terms.items():
            e = [0] * len(variables)
            for p, x in zip(pos, exps):
                e[p] = x
            out[tuple(e)] = c
        return out

    @staticmethod
    def _coerce(other) -> "LaurentPoly":
        if isinstance(other, LaurentPoly):
            return other
        return LaurentPoly.constant(to_rational(other))

    def _common(self, other: "LaurentPoly") -> tuple:
        if other.variables == self.variables:
            return self.variables
        return self.variables + tuple(v for v in other.variables if v not in self.variables)

    def __add__(self, other):
        other = self._coerce(other)
        names = self._common(other)
        out = dict(self._lift(names))
        for e, c in other._lift(names).items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPoly(names, out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly(self.variables, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        names = self._common(other)
        a, b = self._lift(names), other._lift(names)
        out: dict = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(e, 0) + ca * cb
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return LaurentPoly(names, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self.terms) != 1:
                raise ValueError("only monomials can be raised to negative powers")
            (e, c), = self.terms.items()
            return LaurentPoly(self.variables, {tuple(x * n for x in e): c ** n})
        result = LaurentPoly.constant(1, self.variables)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        other = self._coerce(other)
        if len(other.terms) != 1:
            raise ZeroDivisionError("division is only defined by nonzero monomials")
        return self * other ** -1

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        try:
            diff = self - self._coerce(other)
        except TypeError:
            return NotImplemented
        return diff.is_zero()

    def canonical(self) -> frozenset:
        """Representation independent of variable order and unused variables."""
        return frozenset(
            (tuple(sorted((v, e) for v, e in zip(self.variables, exps) if e)), c)
            for exps, c in self.terms.items())

    def __hash__(self):
        return hash(self.canonical())

    def evaluate(self, point: Mapping[str, object]) -> Fraction:
        """Substitute rationals for every variable."""
        total = Fraction(0)
        values = [to_rational(point[v]) for v in self.variables]
        for exps, c in self.terms.items():
            term = c
            for v, e in zip(values, exps):
                if e:
                    term *= v ** e
            total += term
        return total

    def substitute(self, images: Mapping[str, "LaurentPoly"]) -> "LaurentPoly":
        """Replace variables by Laurent polynomials (monomials if negative powers occur)."""
        result = LaurentPoly.constant(0)
        for exps, c in self.terms.items():
            term = LaurentPoly.constant(c)
            for v, e in zip(self.variables, exps):
                if e:
                    img = images.get(v, LaurentPoly.var(v))
                    term = term * LaurentPoly._coerce(img) ** e
            result = result + term
        return result

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for exps, c in sorted(self.terms.items(), reverse=True):
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in zip(self.variables, exps) if e)
            if not mono:
                parts.append(format_rational(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{format_rational(c)}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def elementary_symmetric(values: Sequence, k: int):
    """The k-th elementary symmetric function of ``values`` (e_0 = 1).

    Works for anything supporting + and * (Fractions, LaurentPolys).
    """
    n = len(values)
    if not 0 <= k <= n:
        raise ValueError(f"k={k} out of range for {n} values")
    # e_j of the first i values, updated in place (Newton-free recurrence)
    e = [1] + [0] * k
    for x in values:
        for j in range(k, 0, -1):
            e[j] = e[j] + e[j - 1] * x
    return e[k]


def all_elementary_symmetric(values: Sequence) -> list:
    """[e_1, ..., e_n] of ``values``."""
    n = len(values)
    e = [1] + [0] * n
    for x in values:
        for j in range(n, 0, -1):
            e[j] = e[j] + e[j - 1] * x
    return e[1:]


@dataclass(frozen=True)
class TruncatedSeries:
    """Power series c_0 + c_1 z + ... known up to z^N; arithmetic drops higher terms."""

    coefficients: tuple
    order: int

    @classmethod
    def from_list(cls, coeffs: Iterable, order: int | None = None) -> "TruncatedSeries":
        coeffs = [to_rational(c) for c in coeffs]
        if order is None:
            order = len(coeffs) - 1
        coeffs = (coeffs + [Fraction(0)] * (order + 1))[: order + 1]
        return cls(tuple(coeffs), order)

    def __getitem__(self, n: int) -> Fraction:
        return self.coefficients[n] if 0 <= n <= self.order else Fraction(0)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        N = min(self.order, other.order)
        return TruncatedSeries.from_list([self[n] + other[n] for n in range(N + 1)], N)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        N = min(self.order, other.order)
        return TruncatedSeries.from_list(
            [sum((self[i] * other[n - i] for i in range(n + 1)), Fraction(0)) for n in range(N + 1)], N)

    def as_ints(self) -> list:
        out = []
        for c in self.coefficients:
            if c.denominator != 1:
                raise ValueError("series has non-integral coefficients")
            out.append(int(c))
        return out

    def trimmed(self) -> list:
        """Integer coefficients with trailing zeros removed (at least one entry)."""
        out = self.as_ints()
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return out


def series_div_one_plus_z(h: TruncatedSeries) -> TruncatedSeries:
    """h(z)/(1+z) to the same order: c_0 = b_0, c_n = b_n - c_{n-1}."""
    c = []
    for n in range(h.order + 1):
        c.append(h[n] - (c[-1] if c else 0))
    return TruncatedSeries.from_list(c, h.order)


# ---------------------------------------------------------------------------
# integer lattices

def integer_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Z-basis of {x in Z^ncols : R x = 0} for an integer matrix R.

    Column-style unimodular elimination: reduce R by integer column operations
    tracked in U; columns of U that end up over zero columns of R span the
    kernel lattice.
    """
    R = [list(map(int, r)) for r in rows]
    U = [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    pivot_col = 0
    for r in range(len(R)):
        if pivot_col >= ncols:
            break
        while True:
            nz = [c for c in range(pivot_col, ncols) if R[r][c]]
            if not nz:
                break
            c0 = min(nz, key=lambda c: abs(R[r][c]))
            _swap_cols(R, U, pivot_col, c0)
            done = True
            for c in range(pivot_col + 1, ncols):
                if R[r][c]:
                    q = R[r][c] // R[r][pivot_col]
                    _add_col(R, U, c, pivot_col, -q)
                    if R[r][c]:
                        done = False
            if done:
                pivot_col += 1
                break
    return [[U[i][c] for i in range(ncols)] for c in range(pivot_col, ncols)]


def _swap_cols(R, U, a, b):
    if a == b:
        return
    for M in (R, U):
        for row in M:
            row[a], row[b] = row[b], row[a]


def _add_col(R, U, dst, src, q):
    for M in (R, U):
        for row in M:
            row[dst] += q * row[src]


def gf2_kernel(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Basis of {x in GF(2)^ncols : R x = 0 mod 2}."""
    M = [[v & 1 for v in r] for r in rows]
    pivots = []
    rank = 0
    for c in range(ncols):
        pr = next((i for i in range(rank, len(M)) if M[i][c]), None)
        if pr is None:
            continue
        M[rank], M[pr] = M[pr], M[rank]
        for i in range(len(M)):
            if i != rank and M[i][c]:
                M[i] = [x ^ y for x, y in zip(M[i], M[rank])]
        pivots.append(c)
        rank += 1
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        x = [0] * ncols
        x[f] = 1
        for i, p in enumerate(pivots):
            x[p] = M[i][f]
        basis.append(x)
    return basis


class MonomialSystem:
    """Rational solutions of monomial equations prod_v x_v^{a_v} = 1.

    Over Q* = {+-1} x (free abelian group on primes), a point solves the
    system iff its valuation vector at every prime lies in the integer
    kernel lattice and its sign vector lies in the GF(2) kernel. So
    x = sign * prod_k s_k^{B_k} with s_k positive rationals and B a Z-basis
    of the lattice parametrizes every rational solution.
    """

    def __init__(self, variables: Sequence[str], equations: Sequence[Mapping[str, int]]):
        self.variables = tuple(variables)
        idx = {v: i for i, v in enumerate(self.variables)}
        self.rows = []
        for eq in equations:
            row = [0] * len(self.variables)
            for v, a in eq.items():
                row[idx[v]] += a
            self.rows.append(row)
        self.lattice = integer_kernel(self.rows, len(self.variables))
        self.sign_space = gf2_kernel(self.rows, len(self.variables))

    @property
    def dimension(self) -> int:
        return len(self.lattice)

    def sign_vectors(self) -> list[tuple]:
        """All sign patterns (as 0/1 tuples) allowed by the system."""
        out = set()
        for coeffs in itertools.product((0, 1), repeat=len(self.sign_space)):
            x = [0] * len(self.variables)
            for c, b in zip(coeffs, self.sign_space):
                if c:
                    x = [p ^ q for p, q in zip(x, b)]
            out.add(tuple(x))
        return sorted(out)

    def parametrization(self, signs: Sequence[int] | None = None, prefix: str = "s") -> dict:
        """Each variable as a Laurent monomial in free parameters s_0, s_1, ..."""
        signs = signs or [0] * len(self.variables)
        params = [f"{prefix}{k}" for k in range(len(self.lattice))]
        out = {}
        for i, v in enumerate(self.variables):
            exps = {p: b[i] for p, b in zip(params, self.lattice)}
            out[v] = LaurentPoly.monomial(exps, -1 if signs[i] else 1) if params else \
                LaurentPoly.constant(-1 if signs[i] else 1)
        return out

    def sample(self, rng: random.Random, height: int = 4, signs: Sequence[int] | None = None) -> dict:
        """A random rational solution; ``signs`` fixes the sign pattern."""
        if signs is None:
            choices = self.sign_vectors()
            signs = choices[rng.randrange(len(choices))]
        s = [Fraction(rng.randint(1, height), rng.randint(1, height)) for _ in self.lattice]
        out = {}
        for i, v in enumerate(self.variables):
            x = Fraction(-1 if signs[i] else 1)
            for sk, b in zip(s, self.lattice):
                if b[i]:
                    x *= sk ** b[i]
            out[v] = x
        return out

    def satisfied_by(self, point: Mapping[str, object]) -> bool:
        for row in self.rows:
            x = Fraction(1)
            for v, a in zip(self.variables, row):
                if a:
                    x *= to_rational(point[v]) ** a
            if x != 1:
                return False
        return True

"""Formal trace series and the density series q, J, and their square roots.

A TraceSeries is a finite rational combination of products of block-trace
words tr_s((ad X)^(2n)) with s in {p, k, g}; the key of a term is the sorted
tuple of its (space, power) factors, so the empty key is the constant term.
Series are truncated by total order (the sum of all powers in a term).

The density family is pinned by the exact order-4 calculus on sl(2): with
a_n the Taylor coefficients of log(sinh z / z),

    log J(X) = sum_n 4^(1-n) a_n tr_p (ad X)^(2n)
    log q(X) = sum_n 4^(1-2n) a_n tr_g (ad X)^(2n)

which gives J^(1/2) = 1 + (1/12) tr_p(ad X)^2 + (1/360) tr_p(ad X)^4 + ...
on sl(2), the identity q^(1/2)(X) = J(X/2) for X in p, and the standard
(1/48) tr_g(ad X)^2 leading term of q^(1/2).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import OrderTooHigh
from .liealg import SymmetricPair
from .poly import Poly
from .util import frac

DEFAULT_MAX_ORDER = 8

#: Taylor coefficients a_n of log(sinh z / z) = sum a_n z^(2n).
LOG_SINHC = {
    1: Fraction(1, 6),
    2: Fraction(-1, 180),
    3: Fraction(1, 2835),
    4: Fraction(-1, 37800),
}


class TraceSeries:
    def __init__(self, truncation_order: int, terms: dict | None = None):
        self.truncation_order = truncation_order
        self.terms: dict[tuple, Fraction] = {}
        if terms:
            for key, c in terms.items():
                c = frac(c)
                key = tuple(sorted(tuple(key)))
                if c and self._key_order(key) <= truncation_order:
                    self.terms[key] = self.terms.get(key, Fraction(0)) + c
            self.terms = {k: v for k, v in self.terms.items() if v}

    @staticmethod
    def _key_order(key) -> int:
        return sum(p for _, p in key)

    @classmethod
    def constant(cls, order: int, c=1) -> "TraceSeries":
        return cls(order, {(): frac(c)})

    @classmethod
    def word(cls, order: int, space: str, power: int, c=1) -> "TraceSeries":
        return cls(order, {((space, power),): frac(c)})

    def __add__(self, other: "TraceSeries") -> "TraceSeries":
        order = min(self.truncation_order, other.truncation_order)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, Fraction(0)) + c
        return TraceSeries(order, out)

    def __sub__(self, other: "TraceSeries") -> "TraceSeries":
        return self + other.scale(-1)

    def scale(self, c) -> "TraceSeries":
        c = frac(c)
        return TraceSeries(self.truncation_order, {k: c * v for k, v in self.terms.items()})

    def __mul__(self, other: "TraceSeries") -> "TraceSeries":
        order = min(self.truncation_order, other.truncation_order)
        out: dict[tuple, Fraction] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key = tuple(sorted(k1 + k2))
                if self._key_order(key) > order:
                    continue
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return TraceSeries(order, out)

    def without_constant(self) -> "TraceSeries":
        return TraceSeries(self.truncation_order, {k: v for k, v in self.terms.items() if k})

    def exp(self) -> "TraceSeries":
        if self.terms.get((), Fraction(0)) != 0:
            raise ValueError("exp needs zero constant term")
        out = TraceSeries.constant(self.truncation_order, 1)
        term = TraceSeries.constant(self.truncation_order, 1)
        k = 1
        while True:
            term = (term * self).scale(Fraction(1, k))
            if not term.terms:
                break
            out = out + term
            k += 1
        return out

    def log(self) -> "TraceSeries":
        if self.terms.get((), Fraction(0)) != 1:
            raise ValueError("log needs constant term 1")
        u = self.without_constant()
        out = TraceSeries(self.truncation_order)
        power = TraceSeries.constant(self.truncation_order, 1)
        k = 1
        while True:
            power = power * u
            if not power.terms:
                break
            out = out + power.scale(Fraction((-1) ** (k + 1), k))
            k += 1
        return out

    def inverse(self) -> "TraceSeries":
        """Multiplicative inverse of a series with constant term 1."""
        return self.log().scale(-1).exp()

    def sqrt(self) -> "TraceSeries":
        return self.log().scale(Fraction(1, 2)).exp()

    def __eq__(self, other):
        return (
            isinstance(other, TraceSeries)
            and self.truncation_order == other.truncation_order
            and self.terms == other.terms
        )

    def coefficient(self, key) -> Fraction:
        return self.terms.get(tuple(sorted(tuple(key))), Fraction(0))

    def as_polynomial(self, pair: SymmetricPair, over: str) -> Poly:
        """Polynomial in the coordinates of X over the `over` block.

        Every trace word is expanded on a symbolic X through exact
        polynomial-matrix powers, then the term products are multiplied out.
        """
        nv = len(pair.block_indices(over))
        word_cache: dict[tuple[str, int], Poly] = {}
        sym = pair.symbolic_vector(over, nv)
        admat = pair.ad_poly(sym)

        def word_poly(space: str, power: int) -> Poly:
            if (space, power) not in word_cache:
                M = admat
                for _ in range(power - 1):
                    M = _poly_mat_mul(M, admat)
                tr = Poly.zero(nv)
                for i in pair.block_indices(space):
                    tr = tr + M[i][i]
                word_cache[(space, power)] = tr
            return word_cache[(space, power)]

        out = Poly.zero(nv)
        for key, c in self.terms.items():
            term = Poly.const(nv, c)
            for space, power in key:
                term = term.mul(word_poly(space, power))
            out = out + term
        return out

    def __repr__(self):
        return f"TraceSeries(order={self.truncation_order}, {self.terms!r})"


def _poly_mat_mul(A, B):
    n = len(A)
    nv = A[0][0].nvars
    out = [[Poly.zero(nv) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for t in range(n):
            a = A[i][t]
            if a.is_zero():
                continue
            for j in range(n):
                if not B[t][j].is_zero():
                    out[i][j] = out[i][j] + a.mul(B[t][j])
    return out


def log_density(kind: str, order: int) -> TraceSeries:
    """log of q, J, q_half, or J_half as an abstract trace series."""
    terms = {}
    for n, a_n in LOG_SINHC.items():
        if 2 * n > order:
            continue
        if kind in ("J", "J_half"):
            terms[(("p", 2 * n),)] = a_n * Fraction(4) ** (1 - n)
        elif kind in ("q", "q_half"):
            terms[(("g", 2 * n),)] = a_n * Fraction(4) ** (1 - 2 * n)
        else:
            raise ValueError(f"unknown density kind {kind!r}")
    series = TraceSeries(order, terms)
    if kind.endswith("_half"):
        series = series.scale(Fraction(1, 2))
    return series


def density_series(pair: SymmetricPair, kind: str, order: int, max_order: int = DEFAULT_MAX_ORDER) -> TraceSeries:
    """The density series of the pair, as a formal trace series.

    `pair` fixes nothing here beyond intent (the series is universal), but
    the argument keeps call sites honest about which pair the traces will
    later be expanded on.  Abelian pairs still get the constant series 1
    after expansion since every trace word vanishes.
    """
    if order % 2 != 0:
        raise OrderTooHigh("density order must be even")
    if order > max_order:
        raise OrderTooHigh(f"order {order} exceeds configured maximum {max_order}")
    if 2 * (max(LOG_SINHC) ) < order:
        raise OrderTooHigh(f"no universal coefficients beyond order {2 * max(LOG_SINHC)}")
    return log_density(kind, order).exp()

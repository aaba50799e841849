"""Sparse multivariate polynomials over exact rationals.

A Poly is a mapping {exponent tuple: Fraction} together with the number of
variables.  Exponent tuples are dense (length == nvars) which keeps hashing
and arithmetic simple; every algebra in this package has dimension <= 8 and
degrees stay <= 8, so density costs nothing.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .util import frac


class Poly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict | None = None):
        self.nvars = nvars
        self.terms: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for mono, c in terms.items():
                c = frac(c)
                if c:
                    self.terms[tuple(mono)] = c

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, c) -> "Poly":
        c = frac(c)
        if not c:
            return cls(nvars)
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int, c=1) -> "Poly":
        mono = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(nvars, {mono: frac(c)})

    @classmethod
    def monomial(cls, nvars: int, exps, c=1) -> "Poly":
        return cls(nvars, {tuple(exps): frac(c)})

    def copy(self) -> "Poly":
        p = Poly(self.nvars)
        p.terms = dict(self.terms)
        return p

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == Poly.const(self.nvars, other)
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __add__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.nvars, other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, Fraction(0)) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        p = Poly(self.nvars)
        p.terms = out
        return p

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        p = Poly(self.nvars)
        p.terms = {m: -c for m, c in self.terms.items()}
        return p

    def __sub__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def scale(self, c) -> "Poly":
        c = frac(c)
        p = Poly(self.nvars)
        if c:
            p.terms = {m: c * v for m, v in self.terms.items()}
        return p

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return self.mul(other)

    __rmul__ = __mul__

    def mul(self, other: "Poly", max_degree: int | None = None) -> "Poly":
        assert self.nvars == other.nvars
        out: dict[tuple[int, ...], Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                if max_degree is not None and sum(m) > max_degree:
                    continue
                s = out.get(m, Fraction(0)) + c1 * c2
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
        p = Poly(self.nvars)
        p.terms = out
        return p

    def pow(self, k: int, max_degree: int | None = None) -> "Poly":
        out = Poly.const(self.nvars, 1)
        for _ in range(k):
            out = out.mul(self, max_degree)
        return out

    def diff(self, i: int) -> "Poly":
        out: dict[tuple[int, ...], Fraction] = {}
        for m, c in self.terms.items():
            if m[i]:
                m2 = list(m)
                m2[i] -= 1
                out[tuple(m2)] = c * m[i]
        p = Poly(self.nvars)
        p.terms = out
        return p

    def diff_mono(self, exps) -> "Poly":
        out = self
        for i, k in enumerate(exps):
            for _ in range(k):
                if out.is_zero():
                    return out
                out = out.diff(i)
        return out

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def truncate(self, max_degree: int) -> "Poly":
        p = Poly(self.nvars)
        p.terms = {m: c for m, c in self.terms.items() if sum(m) <= max_degree}
        return p

    def evaluate(self, values) -> Fraction:
        """Evaluate at a point given by one Fraction per variable."""
        total = Fraction(0)
        for m, c in self.terms.items():
            term = c
            for i, k in enumerate(m):
                for _ in range(k):
                    term *= values[i]
            total += term
        return total

    def subs(self, images: list["Poly"], max_degree: int | None = None) -> "Poly":
        """Substitute variable i -> images[i] (all in a common target ring)."""
        tgt = images[0].nvars if images else 0
        out = Poly.zero(tgt)
        for m, c in self.terms.items():
            term = Poly.const(tgt, c)
            for i, k in enumerate(m):
                for _ in range(k):
                    term = term.mul(images[i], max_degree)
            out = out + term
        return out

    def map_vars(self, target_nvars: int, mapping: dict[int, int]) -> "Poly":
        """Reindex variables into a larger ring (injective index map)."""
        out = Poly(target_nvars)
        for m, c in self.terms.items():
            m2 = [0] * target_nvars
            for i, k in enumerate(m):
                if k:
                    m2[mapping[i]] += k
            out.terms[tuple(m2)] = out.terms.get(tuple(m2), Fraction(0)) + c
        out.terms = {m: c for m, c in out.terms.items() if c}
        return out

    def coefficient(self, exps) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    def constant(self) -> Fraction:
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def homogeneous_part(self, d: int) -> "Poly":
        p = Poly(self.nvars)
        p.terms = {m: c for m, c in self.terms.items() if sum(m) == d}
        return p

    def __repr__(self):
        return f"Poly({self.nvars}, {self.terms!r})"


def poly_exp(a: Poly, max_degree: int) -> Poly:
    """exp of a polynomial with zero constant term, truncated by total degree."""
    if a.constant() != 0:
        raise ValueError("poly_exp needs a zero constant term")
    out = Poly.const(a.nvars, 1)
    term = Poly.const(a.nvars, 1)
    k = 1
    while True:
        term = term.mul(a, max_degree).scale(Fraction(1, k))
        if term.is_zero():
            break
        out = out + term
        k += 1
        if k > max_degree + 1:
            break
    return out.truncate(max_degree)


def monomials_of_degree(nvars: int, d: int):
    """All exponent tuples of total degree exactly d, lexicographic order."""
    if nvars == 0:
        if d == 0:
            yield ()
        return
    for c in itertools.combinations_with_replacement(range(nvars), d):
        m = [0] * nvars
        for i in c:
            m[i] += 1
        yield tuple(m)


def monomials_up_to_degree(nvars: int, d: int):
    for k in range(d + 1):
        yield from monomials_of_degree(nvars, k)

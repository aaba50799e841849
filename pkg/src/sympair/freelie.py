"""Truncated free Lie and associative series on the alphabet {X, Y}.

Words are tuples over {0, 1} with 0 = X and 1 = Y.  Lie series live on the
Lyndon basis: a Lyndon word stands for its standard bracketing (bracket of
the standard factorization), which is triangular with respect to the
lexicographic leading word and therefore supports exact extraction of Lie
coordinates from any associative expansion.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import OrderTooHigh
from .util import frac

DEFAULT_MAX_ORDER = 8

X, Y = 0, 1
LETTERS = ("X", "Y")


class FreeAssocSeries:
    """Finite rational combination of words, truncated by word length."""

    def __init__(self, order: int, terms: dict | None = None):
        self.order = order
        self.terms: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for w, c in terms.items():
                c = frac(c)
                if c and len(w) <= order:
                    self.terms[tuple(w)] = self.terms.get(tuple(w), Fraction(0)) + c
            self.terms = {w: c for w, c in self.terms.items() if c}

    @classmethod
    def unit(cls, order: int, c=1) -> "FreeAssocSeries":
        return cls(order, {(): frac(c)})

    @classmethod
    def letter(cls, order: int, i: int, c=1) -> "FreeAssocSeries":
        return cls(order, {(i,): frac(c)})

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, Fraction(0)) + c
        return FreeAssocSeries(min(self.order, other.order), out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = frac(c)
        return FreeAssocSeries(self.order, {w: c * v for w, v in self.terms.items()})

    def __mul__(self, other):
        order = min(self.order, other.order)
        out: dict[tuple[int, ...], Fraction] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                if len(w1) + len(w2) > order:
                    continue
                w = w1 + w2
                out[w] = out.get(w, Fraction(0)) + c1 * c2
        return FreeAssocSeries(order, out)

    def constant(self) -> Fraction:
        return self.terms.get((), Fraction(0))

    def without_constant(self):
        return FreeAssocSeries(self.order, {w: c for w, c in self.terms.items() if w})

    def exp(self):
        if self.constant() != 0:
            raise ValueError("exp needs zero constant term")
        out = FreeAssocSeries.unit(self.order)
        term = FreeAssocSeries.unit(self.order)
        k = 1
        while True:
            term = (term * self).scale(Fraction(1, k))
            if not term.terms:
                break
            out = out + term
            k += 1
        return out

    def log(self):
        if self.constant() != 1:
            raise ValueError("log needs constant term 1")
        u = self.without_constant()
        out = FreeAssocSeries(self.order)
        power = FreeAssocSeries.unit(self.order)
        for k in range(1, self.order + 1):
            power = power * u
            if not power.terms:
                break
            out = out + power.scale(Fraction((-1) ** (k + 1), k))
        return out

    def homogeneous_part(self, n: int):
        return FreeAssocSeries(self.order, {w: c for w, c in self.terms.items() if len(w) == n})

    def substitute_letter(self, i: int, series: "FreeAssocSeries"):
        """Replace letter i by an associative series (e.g. zero or 2*letter)."""
        out = FreeAssocSeries(self.order)
        for w, c in self.terms.items():
            term = FreeAssocSeries.unit(self.order, c)
            for a in w:
                term = term * (series if a == i else FreeAssocSeries.letter(self.order, a))
            out = out + term
        return out

    def __eq__(self, other):
        return isinstance(other, FreeAssocSeries) and self.terms == other.terms

    def is_zero(self):
        return not self.terms

    def __repr__(self):
        return f"FreeAssocSeries(order={self.order}, {len(self.terms)} terms)"


# -- Lyndon machinery -------------------------------------------------------

def lyndon_words(max_len: int) -> list[tuple[int, ...]]:
    """All Lyndon words over {0,1} of length 1..max_len (Duval's algorithm)."""
    out = []
    w = [-1]
    while w:
        w[-1] += 1
        m = len(w)
        if w[-1] < 2:
            out.append(tuple(w))
            while len(w) < max_len:
                w.append(w[len(w) - m])
            while w and w[-1] == 1:
                w.pop()
        else:
            w.pop()
    return sorted(out, key=lambda u: (len(u), u))


def standard_factorization(w: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Split a Lyndon word w = uv with v its longest proper Lyndon suffix."""
    assert len(w) >= 2
    for i in range(1, len(w)):
        v = w[i:]
        if is_lyndon(v):
            return w[:i], v
    raise ValueError(f"not a Lyndon word: {w}")


def is_lyndon(w) -> bool:
    return len(w) > 0 and all(w < w[i:] for i in range(1, len(w)))


def bracket_of_word(w: tuple[int, ...]):
    """Nested-pair bracketing of a Lyndon word (letters as 'X'/'Y')."""
    if len(w) == 1:
        return LETTERS[w[0]]
    u, v = standard_factorization(w)
    return (bracket_of_word(u), bracket_of_word(v))


_EXPAND_CACHE: dict = {}


def expand_bracket(b, order: int) -> FreeAssocSeries:
    """Expand a nested bracket (pairs of 'X'/'Y') into the tensor algebra."""
    key = (b, order)
    if key in _EXPAND_CACHE:
        return _EXPAND_CACHE[key]
    if b == "X":
        out = FreeAssocSeries.letter(order, X)
    elif b == "Y":
        out = FreeAssocSeries.letter(order, Y)
    else:
        u, v = b
        eu, ev = expand_bracket(u, order), expand_bracket(v, order)
        out = eu * ev - ev * eu
    _EXPAND_CACHE[key] = out
    return out


class FreeLieSeries:
    """Rational combination of standard Lyndon bracketings, graded by length."""

    def __init__(self, order: int, terms: dict | None = None):
        self.order = order
        self.terms: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for w, c in terms.items():
                c = frac(c)
                if c and len(w) <= order:
                    self.terms[tuple(w)] = self.terms.get(tuple(w), Fraction(0)) + c
            self.terms = {w: c for w, c in self.terms.items() if c}

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, Fraction(0)) + c
        return FreeLieSeries(min(self.order, other.order), out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = frac(c)
        return FreeLieSeries(self.order, {w: c * v for w, v in self.terms.items()})

    def homogeneous_part(self, n: int):
        return FreeLieSeries(self.order, {w: c for w, c in self.terms.items() if len(w) == n})

    def degrees(self):
        return sorted({len(w) for w in self.terms})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, FreeLieSeries) and self.terms == other.terms

    def to_assoc(self) -> FreeAssocSeries:
        out = FreeAssocSeries(self.order)
        for w, c in self.terms.items():
            out = out + expand_bracket(bracket_of_word(w), self.order).scale(c)
        return out

    def swap_letters(self) -> "FreeLieSeries":
        """The series with X and Y exchanged (recomputed on the Lyndon basis)."""
        swapped = FreeAssocSeries(self.order)
        for w, c in self.to_assoc().terms.items():
            swapped = swapped + FreeAssocSeries(self.order, {tuple(1 - a for a in w): c})
        return lie_from_assoc(swapped)

    def evaluate(self, pair, Xv, Yv):
        """Substitute adapted-coordinate vectors for the letters."""
        from .liealg import eval_lie_word
        from .util import vec_add, vec_scale, zero_vec
        out = zero_vec(pair.dim)
        for w, c in self.terms.items():
            out = vec_add(out, vec_scale(c, eval_lie_word(pair, bracket_of_word(w), Xv, Yv)))
        return out

    def evaluate_poly(self, pair, Xp, Yp, max_degree=None):
        """Substitute polynomial-coefficient vectors for the letters."""
        word_vals = {}

        def walk(b):
            if b == "X":
                return Xp
            if b == "Y":
                return Yp
            if b not in word_vals:
                u, v = b
                word_vals[b] = pair.bracket_poly(walk(u), walk(v))
            return word_vals[b]

        from .poly import Poly
        nv = Xp[0].nvars
        out = [Poly.zero(nv) for _ in range(pair.dim)]
        for w, c in self.terms.items():
            val = walk(bracket_of_word(w))
            for i in range(pair.dim):
                if not val[i].is_zero():
                    out[i] = out[i] + val[i].scale(c)
        if max_degree is not None:
            out = [q.truncate(max_degree) for q in out]
        return out

    def __repr__(self):
        return f"FreeLieSeries(order={self.order}, {self.terms!r})"


def lie_from_assoc(series: FreeAssocSeries) -> FreeLieSeries:
    """Lyndon coordinates of a Lie element given by its word expansion.

    Peels the lexicographically smallest remaining word degree by degree;
    for a genuine Lie element that word is Lyndon and carries the
    coefficient of its standard bracketing.  A non-Lie input is detected
    and rejected.
    """
    out: dict[tuple[int, ...], Fraction] = {}
    for n in range(1, series.order + 1):
        comp = series.homogeneous_part(n)
        guard = 0
        while comp.terms:
            w = min(comp.terms)
            c = comp.terms[w]
            if not is_lyndon(w):
                raise ValueError(f"not a Lie element: leading word {w} is not Lyndon")
            out[w] = c
            comp = comp - expand_bracket(bracket_of_word(w), series.order).scale(c)
            comp = comp.homogeneous_part(n)
            guard += 1
            if guard > 4 ** n:
                raise RuntimeError("Lyndon peeling failed to terminate")
    return FreeLieSeries(series.order, out)


def dynkin_map(series: FreeAssocSeries) -> FreeAssocSeries:
    """Right-normed bracketing map D(w) = [w_1,[w_2,[...,w_n]]], word by word."""
    out = FreeAssocSeries(series.order)
    cache: dict[tuple[int, ...], FreeAssocSeries] = {}

    def bracket_word(w):
        if w not in cache:
            if len(w) == 1:
                cache[w] = FreeAssocSeries.letter(series.order, w[0])
            else:
                head = FreeAssocSeries.letter(series.order, w[0])
                tail = bracket_word(w[1:])
                cache[w] = head * tail - tail * head
        return cache[w]

    for w, c in series.terms.items():
        if w:
            out = out + bracket_word(w).scale(c)
    return out


def _check_order(order: int, max_order: int):
    if order < 1:
        raise OrderTooHigh("order must be >= 1")
    if order > max_order:
        raise OrderTooHigh(f"order {order} exceeds configured maximum {max_order}")


def bch(order: int, max_order: int = DEFAULT_MAX_ORDER) -> FreeLieSeries:
    """log(e^X e^Y) in Lyndon coordinates, truncated at the given order."""
    _check_order(order, max_order)
    ex = FreeAssocSeries.letter(order, X).exp()
    ey = FreeAssocSeries.letter(order, Y).exp()
    return lie_from_assoc((ex * ey).log())


def bch_dynkin(order: int, max_order: int = DEFAULT_MAX_ORDER) -> FreeAssocSeries:
    """Dynkin's explicit BCH formula, as an associative expansion.

    Z = sum over m >= 1 of (-1)^(m-1)/m times the right-normed bracketing of
    X^(p_1) Y^(q_1) ... X^(p_m) Y^(q_m), divided by n * prod(p_i! q_i!) with
    n the word length.  Independent of the log/exp route above.
    """
    _check_order(order, max_order)
    out = FreeAssocSeries(order)
    cache: dict[tuple[int, ...], FreeAssocSeries] = {}

    def bracket_word(w):
        if w not in cache:
            if len(w) == 1:
                cache[w] = FreeAssocSeries.letter(order, w[0])
            else:
                head = FreeAssocSeries.letter(order, w[0])
                tail = bracket_word(w[1:])
                cache[w] = head * tail - tail * head
        return cache[w]

    def factorial(k):
        f = 1
        for i in range(2, k + 1):
            f *= i
        return f

    def block_lists(m, budget):
        """All length-m lists of (p, q) != (0, 0) with total p+q <= budget."""
        if m == 0:
            yield []
            return
        for p in range(budget + 1):
            for q in range(budget - p + 1):
                if p == 0 and q == 0:
                    continue
                if p + q > budget - (m - 1):
                    continue
                for rest in block_lists(m - 1, budget - p - q):
                    yield [(p, q)] + rest

    for m in range(1, order + 1):
        for pairs in block_lists(m, order):
            w = ()
            denom = 1
            for p, q in pairs:
                w = w + (X,) * p + (Y,) * q
                denom *= factorial(p) * factorial(q)
            n = len(w)
            coeff = Fraction((-1) ** (len(pairs) - 1), len(pairs)) / Fraction(n * denom)
            out = out + bracket_word(w).scale(coeff)
    return out


def sym_factorize(order: int, max_order: int = DEFAULT_MAX_ORDER):
    """Solve e^X e^Y = e^P e^K with P odd-graded and K even-graded.

    With sigma(X) = -X, sigma(Y) = -Y, a bracket of length n is p-type for
    odd n and k-type for even n; each degree of the defect log(e^X e^Y) -
    log(e^P e^K) is homogeneous, so the correction is assigned wholesale.
    """
    _check_order(order, max_order)
    target = bch(order, max_order)
    P = FreeLieSeries(order)
    K = FreeLieSeries(order)
    for n in range(1, order + 1):
        current = lie_from_assoc((P.to_assoc().exp() * K.to_assoc().exp()).log())
        defect = (target - current).homogeneous_part(n)
        if n % 2 == 1:
            P = P + defect
        else:
            K = K + defect
    return P, K


def z_sym(order: int, max_order: int = DEFAULT_MAX_ORDER) -> FreeLieSeries:
    """(1/2) log(e^X e^(2Y) e^X), the symmetric-space BCH series."""
    _check_order(order, max_order)
    ex = FreeAssocSeries.letter(order, X).exp()
    e2y = FreeAssocSeries.letter(order, Y, 2).exp()
    return lie_from_assoc((ex * e2y * ex).log().scale(Fraction(1, 2)))

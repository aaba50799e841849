"""Universal enveloping algebra with PBW normal form over an ordered basis.

A PBWContext fixes an ordered basis of g (given by vectors in the pair's
adapted coordinates) and straightens words by the rewriting
e_j e_i -> e_i e_j + [e_j, e_i] whenever j comes after i in the order.
The default context is the adapted basis itself, whose order puts every
p symbol before every k symbol; that order realizes the decomposition
U(g) = U(g).k + beta(S(p)) used by the quotient operations.
"""

from __future__ import annotations

import random
from fractions import Fraction

from . import util
from .liealg import Character, SymmetricPair
from .poly import Poly, monomials_of_degree
from .polyops import BlockPolynomial, apply_series_operator, require_invariant
from .series import TraceSeries, density_series


class PBWContext:
    """Ordered basis plus straightening memo.

    The memo is the only mutable state; entries are pure functions of the
    word, so concurrent readers can at worst duplicate work, never disagree.
    """

    def __init__(self, pair: SymmetricPair, vectors=None, k_start: int | None = None):
        self.pair = pair
        if vectors is None:
            vectors = [util.unit_vec(pair.dim, i) for i in range(pair.dim)]
            k_start = pair.dim_p
        self.vectors = [util.vec(v) for v in vectors]
        if len(self.vectors) != pair.dim:
            raise ValueError("context basis must have dim(g) vectors")
        self.dim = pair.dim
        self.k_start = pair.dim_p if k_start is None else k_start
        cols = util.mat_from_cols(self.vectors)
        self._cols = cols
        self._table: dict[tuple[int, int], util.Vec] = {}
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                w = pair.bracket_vec(self.vectors[i], self.vectors[j])
                x = util.solve(cols, w)
                if x is None:
                    raise ValueError("context basis is singular")
                self._table[(i, j)] = x
        self._memo: dict[tuple[int, ...], dict[tuple[int, ...], Fraction]] = {}

    def bracket_coeffs(self, i: int, j: int) -> util.Vec:
        if i == j:
            return util.zero_vec(self.dim)
        if i < j:
            return self._table[(i, j)]
        return util.vec_scale(-1, self._table[(j, i)])

    def straighten(self, word: tuple[int, ...]) -> dict[tuple[int, ...], Fraction]:
        """Canonical PBW form of a basis word, as {sorted word: coefficient}."""
        if word in self._memo:
            return self._memo[word]
        inv = next((i for i in range(len(word) - 1) if word[i] > word[i + 1]), None)
        if inv is None:
            result = {word: Fraction(1)}
        else:
            i = inv
            swapped = word[:i] + (word[i + 1], word[i]) + word[i + 2 :]
            result = dict(self.straighten(swapped))
            w = self.bracket_coeffs(word[i], word[i + 1])
            for t in range(self.dim):
                if w[t]:
                    for mono, c in self.straighten(word[:i] + (t,) + word[i + 2 :]).items():
                        result[mono] = result.get(mono, Fraction(0)) + w[t] * c
            result = {m: c for m, c in result.items() if c}
        self._memo[word] = result
        return result

    def straighten_random(self, word: tuple[int, ...], rng: random.Random) -> dict[tuple[int, ...], Fraction]:
        """Straighten by resolving a random inversion at each step (no memo)."""
        invs = [i for i in range(len(word) - 1) if word[i] > word[i + 1]]
        if not invs:
            return {word: Fraction(1)}
        i = rng.choice(invs)
        swapped = word[:i] + (word[i + 1], word[i]) + word[i + 2 :]
        result = dict(self.straighten_random(swapped, rng))
        w = self.bracket_coeffs(word[i], word[i + 1])
        for t in range(self.dim):
            if w[t]:
                for mono, c in self.straighten_random(word[:i] + (t,) + word[i + 2 :], rng).items():
                    result[mono] = result.get(mono, Fraction(0)) + w[t] * c
        return {m: c for m, c in result.items() if c}

    def convert_vector(self, v_adapted: util.Vec) -> util.Vec:
        """Adapted coordinates -> context coordinates."""
        x = util.solve(self._cols, v_adapted)
        if x is None:
            raise ValueError("vector outside context span")
        return x


class UEAElement:
    """Exact combination of PBW monomials (non-decreasing index words)."""

    def __init__(self, ctx: PBWContext, terms: dict | None = None):
        self.ctx = ctx
        self.terms: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for w, c in terms.items():
                c = util.frac(c)
                if c:
                    w = tuple(w)
                    assert all(w[i] <= w[i + 1] for i in range(len(w) - 1)), "not a PBW monomial"
                    self.terms[w] = self.terms.get(w, Fraction(0)) + c
            self.terms = {w: c for w, c in self.terms.items() if c}

    @classmethod
    def unit(cls, ctx, c=1):
        return cls(ctx, {(): util.frac(c)})

    @classmethod
    def generator(cls, ctx, i, c=1):
        return cls(ctx, {(i,): util.frac(c)})

    @classmethod
    def from_vector(cls, ctx, v_ctx):
        return cls(ctx, {(i,): c for i, c in enumerate(v_ctx) if c})

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, Fraction(0)) + c
        return UEAElement(self.ctx, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = util.frac(c)
        return UEAElement(self.ctx, {w: c * v for w, v in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, UEAElement) and self.terms == other.terms

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((len(w) for w in self.terms), default=0)

    def top_part(self):
        d = self.degree()
        return {w: c for w, c in self.terms.items() if len(w) == d}

    def __repr__(self):
        return f"UEAElement({len(self.terms)} terms, degree {self.degree()})"


def pbw_multiply(a: UEAElement, b: UEAElement) -> UEAElement:
    assert a.ctx is b.ctx, "same context required"
    ctx = a.ctx
    out: dict[tuple[int, ...], Fraction] = {}
    for w1, c1 in a.terms.items():
        for w2, c2 in b.terms.items():
            for mono, c in ctx.straighten(w1 + w2).items():
                s = out.get(mono, Fraction(0)) + c1 * c2 * c
                if s:
                    out[mono] = s
                else:
                    out.pop(mono, None)
    return UEAElement(ctx, out)


def ad_action(ctx: PBWContext, i: int, u: UEAElement) -> UEAElement:
    g = UEAElement.generator(ctx, i)
    return pbw_multiply(g, u) - pbw_multiply(u, g)


def _distinct_permutations(word):
    """Distinct permutations of a multiset word, depth-first."""
    counts = {}
    for a in word:
        counts[a] = counts.get(a, 0) + 1
    symbols = sorted(counts)
    n = len(word)
    out = []
    cur = []

    def rec():
        if len(cur) == n:
            out.append(tuple(cur))
            return
        for s in symbols:
            if counts[s]:
                counts[s] -= 1
                cur.append(s)
                rec()
                cur.pop()
                counts[s] += 1

    rec()
    return out


def _mono_to_word(pair: SymmetricPair, space: str, mono) -> tuple[int, ...]:
    """Exponent tuple over a block -> sorted index word in the default context."""
    idx = list(pair.block_indices(space))
    word = []
    for t, e in enumerate(mono):
        word.extend([idx[t]] * e)
    return tuple(word)


def _word_to_mono(pair: SymmetricPair, space: str, word) -> tuple[int, ...]:
    idx = {i: t for t, i in enumerate(pair.block_indices(space))}
    mono = [0] * len(idx)
    for i in word:
        mono[idx[i]] += 1
    return tuple(mono)


def beta(ctx: PBWContext, f: BlockPolynomial) -> UEAElement:
    """Symmetrization of a polynomial: average of all factor orderings."""
    pair = ctx.pair
    out: dict[tuple[int, ...], Fraction] = {}
    for mono, coeff in f.poly.terms.items():
        word = _mono_to_word(pair, f.space, mono)
        n = len(word)
        if n == 0:
            out[()] = out.get((), Fraction(0)) + coeff
            continue
        perms = _distinct_permutations(word)
        weight = coeff / Fraction(len(perms))
        for perm in perms:
            for m, c in ctx.straighten(perm).items():
                s = out.get(m, Fraction(0)) + weight * c
                if s:
                    out[m] = s
                else:
                    out.pop(m, None)
    return UEAElement(ctx, out)


def beta_inverse(ctx: PBWContext, u: UEAElement) -> BlockPolynomial:
    """Full inverse of the symmetrization, by degree-descending elimination."""
    pair = ctx.pair
    rem = u
    acc = Poly.zero(pair.dim)
    guard = u.degree() + 1
    while not rem.is_zero():
        d = rem.degree()
        top = Poly(pair.dim, {_word_to_mono(pair, "g", w): c for w, c in rem.top_part().items()})
        acc = acc + top
        rem = rem - beta(ctx, BlockPolynomial(pair, "g", top))
        if rem.degree() >= d and not rem.is_zero():
            raise RuntimeError("beta_inverse failed to reduce degree")  # pragma: no cover
        guard -= 1
        if guard < 0:
            raise RuntimeError("beta_inverse diverged")  # pragma: no cover
    return BlockPolynomial(pair, "g", acc)


def reduce_mod_k_lambda(u: UEAElement, lam: Character) -> UEAElement:
    """Rewrite mod U(g).k^lambda: a trailing k symbol K becomes -lambda(K).

    Requires the default context (k symbols at the end of the order), where
    every monomial containing a k symbol ends in one.
    """
    ctx = u.ctx
    ks = ctx.k_start
    terms = dict(u.terms)
    while True:
        dirty = [w for w in terms if w and w[-1] >= ks]
        if not dirty:
            break
        for w in dirty:
            c = terms.pop(w, None)
            if c is None:
                continue
            lam_val = lam.of_k_vector(ctx.vectors[w[-1]])
            if lam_val:
                w2 = w[:-1]
                s = terms.get(w2, Fraction(0)) - lam_val * c
                if s:
                    terms[w2] = s
                else:
                    terms.pop(w2, None)
    return UEAElement(ctx, terms)


def project_mod_k_lambda_dressed(ctx: PBWContext, u: UEAElement, lam: Character,
                                 series: TraceSeries) -> BlockPolynomial:
    """The unique S with u = beta(series-operator applied to S) mod U(g).k^lambda.

    The plain projection uses the splitting along beta(S(p)); this variant
    splits along the series-dressed copy.  The two differ below the top
    degree whenever the series has nonconstant terms.
    """
    plain = project_mod_k_lambda(ctx, u, lam)
    return apply_series_operator(ctx.pair, series.inverse(), plain)


def project_mod_k_lambda(ctx: PBWContext, u: UEAElement, lam: Character) -> BlockPolynomial:
    """The unique S in S(p) with u = beta(S) mod U(g).k^lambda."""
    pair = ctx.pair
    if ctx.k_start != pair.dim_p:
        raise ValueError("projection needs the adapted context")
    rem = reduce_mod_k_lambda(u, lam)
    acc = Poly.zero(pair.dim_p)
    guard = u.degree() + 1
    while not rem.is_zero():
        top = Poly(pair.dim_p, {_word_to_mono(pair, "p", w): c for w, c in rem.top_part().items()})
        acc = acc + top
        rem = reduce_mod_k_lambda(rem - beta(ctx, BlockPolynomial(pair, "p", top)), lam)
        guard -= 1
        if guard < 0:
            raise RuntimeError("projection diverged")  # pragma: no cover
    return BlockPolynomial(pair, "p", acc)


# -- transported star products ----------------------------------------------

def star_dk(pair: SymmetricPair, f: BlockPolynomial, g: BlockPolynomial,
            ctx: PBWContext | None = None, order: int | None = None) -> BlockPolynomial:
    """Duflo-Kontsevich product on S(g), transported from U(g).

    beta(d_{q^(1/2)}(f * g)) = beta(d_{q^(1/2)} f) . beta(d_{q^(1/2)} g),
    solved for f * g through the full (unquotiented) inverse of beta.
    """
    ctx = ctx or PBWContext(pair)
    f, g = f.to_g(), g.to_g()
    if order is None:
        order = 2 * ((f.degree() + g.degree() + 1) // 2)
    qh = density_series(pair, "q_half", order)
    u = beta(ctx, apply_series_operator(pair, qh, f))
    v = beta(ctx, apply_series_operator(pair, qh, g))
    prod = beta_inverse(ctx, pbw_multiply(u, v))
    return apply_series_operator(pair, qh.inverse(), prod)


def rouviere_sharp(pair: SymmetricPair, P: BlockPolynomial, Q: BlockPolynomial,
                   lam: Character | None = None, ctx: PBWContext | None = None,
                   order: int | None = None) -> BlockPolynomial:
    """Rouviere product on S(p)^k at character lambda.

    beta(d_{J^(1/2)} R) = beta(d_{J^(1/2)} P) . beta(d_{J^(1/2)} Q)
    modulo U(g).k^(-lambda), then R = d_{J^(-1/2)} of the projection.
    """
    ctx = ctx or PBWContext(pair)
    lam = lam or pair.zero_character()
    if P.space != "p" or Q.space != "p":
        raise ValueError("rouviere_sharp needs p-polynomials")
    require_invariant(pair, P, "P")
    require_invariant(pair, Q, "Q")
    if order is None:
        order = 2 * ((P.degree() + Q.degree() + 1) // 2)
    Jh = density_series(pair, "J_half", order)
    u = beta(ctx, apply_series_operator(pair, Jh, P).to_g())
    v = beta(ctx, apply_series_operator(pair, Jh, Q).to_g())
    S = project_mod_k_lambda(ctx, pbw_multiply(u, v), lam.scale(-1))
    return apply_series_operator(pair, Jh.inverse(), S)


# -- Duflo relation on filtered subspaces -------------------------------------

def _uea_basis(pair: SymmetricPair, degree: int):
    """PBW monomials of the default context up to a total degree."""
    monos = []
    for d in range(degree + 1):
        monos.extend(monomials_of_degree(pair.dim, d))
    words = [_mono_to_word(pair, "g", m) for m in monos]
    index = {w: t for t, w in enumerate(words)}
    return words, index


def _coords(index, u: UEAElement):
    v = [Fraction(0)] * len(index)
    for w, c in u.terms.items():
        v[index[w]] = c
    return tuple(v)


def invariant_uea_subspace(pair: SymmetricPair, ctx: PBWContext, degree: int):
    """Basis (as coefficient vectors) of U(g)^k truncated at a degree."""
    words, index = _uea_basis(pair, degree)
    rows = []
    for a in range(pair.dim_k):
        cols = []
        for w in words:
            img = ad_action(ctx, pair.dim_p + a, UEAElement(ctx, {w: 1}))
            cols.append(_coords(index, img))
        rows.extend(util.mat_from_cols(cols))
    return util.nullspace(rows, len(words)), words, index


def duflo_relation_check(pair: SymmetricPair, lam: Character, degree: int,
                         ctx: PBWContext | None = None) -> bool:
    """Exact test of k^(-lam).U âˆ© U^k == U^k âˆ© U.k^(-lam + tr_k) at a degree."""
    ctx = ctx or PBWContext(pair)
    inv_basis, words, index = invariant_uea_subspace(pair, ctx, degree)
    trk = pair.trk_character()
    lam_left = lam.scale(-1)
    lam_right = Character(pair, [(-lam.values[i]) + trk.values[i] for i in range(pair.dim_k)])

    lower_words = [w for w in words if len(w) <= degree - 1]
    left, right = [], []
    for a in range(pair.dim_k):
        kgen = UEAElement.generator(ctx, pair.dim_p + a)
        for w in lower_words:
            m = UEAElement(ctx, {w: 1})
            lelt = pbw_multiply(kgen, m) + m.scale(lam_left.values[a])
            relt = pbw_multiply(m, kgen) + m.scale(lam_right.values[a])
            left.append(_coords(index, lelt))
            right.append(_coords(index, relt))
    lhs = util.span_intersect(left, list(inv_basis))
    rhs = util.span_intersect(right, list(inv_basis))
    return util.span_eq(lhs, rhs)


# -- Harish-Chandra projection through the enveloping algebra ----------------

def hc_projection_uea(pair: SymmetricPair, class_poly: BlockPolynomial, iwasawa,
                      ctx: PBWContext | None = None) -> Poly:
    """Project a class beta(S) mod U(g).k onto the small-pair coordinates.

    Straightens a representative in the order (n+, p0, k0, r), drops the
    k-tail, keeps the empty-n+ component, and inverts the g0-symmetrization
    modulo U(g0).k0.  Returns a polynomial in the p0 symbols.
    """
    ctx = ctx or PBWContext(pair)
    vectors = list(iwasawa.n_plus) + list(iwasawa.p0) + list(iwasawa.k0) + list(iwasawa.r)
    hc_ctx = PBWContext(pair, vectors, k_start=len(iwasawa.n_plus) + len(iwasawa.p0))
    nn = len(iwasawa.n_plus)
    np0 = len(iwasawa.p0)
    nk0 = len(iwasawa.k0)

    u = beta(ctx, class_poly.to_g())
    # re-express each default-context monomial in the Iwasawa context
    images = [UEAElement.from_vector(hc_ctx, hc_ctx.convert_vector(util.unit_vec(pair.dim, i)))
              for i in range(pair.dim)]
    out = UEAElement(hc_ctx)
    for w, c in u.terms.items():
        term = UEAElement.unit(hc_ctx, c)
        for i in w:
            term = pbw_multiply(term, images[i])
        out = out + term
    # mod U(g).k : drop monomials containing a k0 or r symbol
    kept = {w: c for w, c in out.terms.items() if all(i < nn + np0 for i in w)}
    # empty n+ component
    kept = {w: c for w, c in kept.items() if all(i >= nn for i in w)}
    # invert the g0 symmetrization mod U(g0).k0 by triangular peeling
    def mono_of(w):
        m = [0] * np0
        for i in w:
            m[i - nn] += 1
        return tuple(m)

    def beta_g0_reduced(poly: Poly) -> dict:
        # beta over g0 followed by reduction mod U(g0).k0, inside the big algebra
        acc: dict[tuple[int, ...], Fraction] = {}
        for mono, coeff in poly.terms.items():
            word = []
            for t, e in enumerate(mono):
                word.extend([nn + t] * e)
            perms = _distinct_permutations(tuple(word)) or [()]
            weight = coeff / Fraction(len(perms))
            for perm in perms:
                for m, c in hc_ctx.straighten(perm).items():
                    # g0 is a subalgebra: straightening stays in p0/k0 symbols
                    if any(i >= nn + np0 + nk0 or i < nn for i in m):
                        raise RuntimeError("g0 is not closed in the Iwasawa context")
                    if any(nn + np0 <= i < nn + np0 + nk0 for i in m):
                        continue  # mod U(g0).k0
                    s = acc.get(m, Fraction(0)) + weight * c
                    if s:
                        acc[m] = s
                    else:
                        acc.pop(m, None)
        return acc

    rem = dict(kept)
    result = Poly.zero(np0)
    guard = max((len(w) for w in rem), default=0) + 1
    while rem:
        d = max(len(w) for w in rem)
        top = Poly(np0, {mono_of(w): c for w, c in rem.items() if len(w) == d})
        result = result + top
        img = beta_g0_reduced(top)
        for m, c in img.items():
            s = rem.get(m, Fraction(0)) - c
            if s:
                rem[m] = s
            else:
                rem.pop(m, None)
        guard -= 1
        if guard < 0:
            raise RuntimeError("hc projection diverged")  # pragma: no cover
    return result

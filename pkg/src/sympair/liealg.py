"""Lie algebras with exact-rational structure constants and symmetric pairs.

A LieAlgebraDef stores brackets only for ordered basis pairs i < j;
antisymmetry is implicit and the Jacobi identity is verified on
construction.  A SymmetricPair adds an involutive automorphism sigma and
derives an adapted basis (the -1 eigenvectors first, then the +1 ones) in
which every higher module of the package works.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from . import util
from .errors import (
    JacobiViolation,
    NilradicalUndecidable,
    NotAutomorphism,
    NotCartanSplit,
    NotInvolution,
)
from .poly import Poly
from .util import Vec, frac, is_zero_vec, vec_add, vec_scale, zero_vec


class LieAlgebraDef:
    """Basis names plus exact bracket structure constants (i < j only)."""

    def __init__(self, name: str, basis: list[str], brackets: dict, validate: bool = True):
        self.name = name
        self.basis = list(basis)
        self.dim = len(self.basis)
        if self.dim < 1:
            raise ValueError("dimension must be >= 1")
        self._table: dict[tuple[int, int], Vec] = {}
        for (i, j), coeffs in brackets.items():
            if not (0 <= i < j < self.dim):
                raise ValueError(f"bracket key {(i, j)} must satisfy 0 <= i < j < dim")
            v = list(zero_vec(self.dim))
            for k, c in coeffs.items():
                v[int(k)] = frac(c)
            if not is_zero_vec(v):
                self._table[(i, j)] = tuple(v)
        if validate:
            self._check_jacobi()

    def bracket_basis(self, i: int, j: int) -> Vec:
        if i == j:
            return zero_vec(self.dim)
        if i < j:
            return self._table.get((i, j), zero_vec(self.dim))
        return vec_scale(-1, self._table.get((j, i), zero_vec(self.dim)))

    def bracket(self, u: Vec, v: Vec) -> Vec:
        out = zero_vec(self.dim)
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b or i == j:
                    continue
                out = vec_add(out, vec_scale(a * b, self.bracket_basis(i, j)))
        return out

    def ad(self, u: Vec) -> list[list[Fraction]]:
        """Matrix of ad(u) acting on column coordinate vectors."""
        cols = [self.bracket(u, util.unit_vec(self.dim, j)) for j in range(self.dim)]
        return util.mat_from_cols(cols)

    def _check_jacobi(self):
        for i, j, k in itertools.combinations(range(self.dim), 3):
            ei, ej, ek = (util.unit_vec(self.dim, t) for t in (i, j, k))
            d = vec_add(
                vec_add(self.bracket(ei, self.bracket(ej, ek)), self.bracket(ej, self.bracket(ek, ei))),
                self.bracket(ek, self.bracket(ei, ej)),
            )
            if not is_zero_vec(d):
                raise JacobiViolation(self.basis[i], self.basis[j], self.basis[k], d)

    def killing(self, u: Vec, v: Vec) -> Fraction:
        return util.mat_trace(util.mat_mul(self.ad(u), self.ad(v)))

    def is_abelian(self) -> bool:
        return not self._table

    def __repr__(self):
        return f"LieAlgebraDef({self.name!r}, dim={self.dim})"


def combo_name(basis: list[str], v: Vec) -> str:
    """Readable name for a linear combination of basis symbols."""
    parts = []
    for i, c in enumerate(v):
        if not c:
            continue
        sym = basis[i]
        if c == 1:
            term = sym
        elif c == -1:
            term = f"-{sym}"
        else:
            term = f"{util.fmt(c)}*{sym}"
        if parts and not term.startswith("-"):
            parts.append("+" + term)
        else:
            parts.append(term)
    return "".join(parts) if parts else "0"


class Character:
    """Linear form on the k block of an adapted basis, vanishing on [k,k]."""

    def __init__(self, pair: "SymmetricPair", values_on_k) -> None:
        self.pair = pair
        self.values = tuple(frac(c) for c in values_on_k)
        if len(self.values) != pair.dim_k:
            raise ValueError("character needs one value per k-basis vector")
        for a in range(pair.dim_k):
            for b in range(a + 1, pair.dim_k):
                w = pair.bracket_adapted(pair.dim_p + a, pair.dim_p + b)
                val = sum(
                    (self.values[t - pair.dim_p] * w[t] for t in range(pair.dim_p, pair.dim)),
                    Fraction(0),
                )
                if val != 0:
                    raise ValueError("character does not vanish on [k,k]")

    def of_k_vector(self, kv: Vec) -> Fraction:
        """Value on a vector given in adapted coordinates (p part must be 0)."""
        if any(kv[i] for i in range(self.pair.dim_p)):
            raise ValueError("character applied to a non-k vector")
        return sum(
            (self.values[i - self.pair.dim_p] * kv[i] for i in range(self.pair.dim_p, self.pair.dim)),
            Fraction(0),
        )

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.values)

    def scale(self, c) -> "Character":
        c = frac(c)
        return Character(self.pair, [c * v for v in self.values])


def _sign_normalize(v: Vec) -> Vec:
    first = next((c for c in v if c), None)
    if first is not None and first < 0:
        return vec_scale(-1, v)
    return v


class SymmetricPair:
    """A Lie algebra with involution sigma and its Cartan split g = k + p.

    Adapted coordinates put the p eigenvectors first (indices 0..dim_p-1)
    and the k eigenvectors after them.  All bracket/trace computations of
    the higher modules run in these coordinates.
    """

    def __init__(self, algebra: LieAlgebraDef, sigma: list[list], adapted=None):
        self.algebra = algebra
        self.dim = algebra.dim
        self.sigma = [[frac(c) for c in row] for row in sigma]
        if len(self.sigma) != self.dim or any(len(r) != self.dim for r in self.sigma):
            raise ValueError("sigma has wrong dimensions")
        self._validate_sigma()
        if adapted is None:
            p_vecs, k_vecs = self._eigen_split()
        else:
            p_vecs, k_vecs = adapted
            p_vecs = [util.vec(v) for v in p_vecs]
            k_vecs = [util.vec(v) for v in k_vecs]
            self._validate_adapted(p_vecs, k_vecs)
        self.p_vectors = p_vecs
        self.k_vectors = k_vecs
        self.dim_p = len(p_vecs)
        self.dim_k = len(k_vecs)
        self.adapted_vectors = list(p_vecs) + list(k_vecs)
        self.adapted_names = [combo_name(algebra.basis, v) for v in self.adapted_vectors]
        self._to_adapted_matrix = self._inverse_basis_matrix()
        self._table = self._adapted_table()
        self._check_cartan_inclusions()
        self._ad_cache: dict[int, list[list[Fraction]]] = {}

    # -- construction internals -------------------------------------------

    def _validate_sigma(self):
        n = self.dim
        sq = util.mat_mul(self.sigma, self.sigma)
        if not util.mat_eq(sq, util.mat_identity(n)):
            raise NotInvolution("sigma^2 != identity")
        for i in range(n):
            for j in range(i + 1, n):
                si = util.mat_apply(self.sigma, util.unit_vec(n, i))
                sj = util.mat_apply(self.sigma, util.unit_vec(n, j))
                lhs = util.mat_apply(self.sigma, self.algebra.bracket_basis(i, j))
                rhs = self.algebra.bracket(si, sj)
                if lhs != rhs:
                    raise NotAutomorphism(self.algebra.basis[i], self.algebra.basis[j], util.vec_sub(lhs, rhs))

    def _eigen_split(self):
        n = self.dim
        plus = [[self.sigma[i][j] + (1 if i == j else 0) for j in range(n)] for i in range(n)]
        minus = [[self.sigma[i][j] - (1 if i == j else 0) for j in range(n)] for i in range(n)]
        p_vecs = [_sign_normalize(v) for v in util.nullspace(plus, n)]   # sigma v = -v
        k_vecs = [_sign_normalize(v) for v in util.nullspace(minus, n)]  # sigma v = +v
        if len(p_vecs) + len(k_vecs) != n:
            raise NotInvolution("eigenspaces of sigma do not span")
        return p_vecs, k_vecs

    def _validate_adapted(self, p_vecs, k_vecs):
        n = self.dim
        for v in p_vecs:
            if util.mat_apply(self.sigma, v) != vec_scale(-1, v):
                raise NotCartanSplit(f"not a -1 eigenvector: {v}")
        for v in k_vecs:
            if util.mat_apply(self.sigma, v) != v:
                raise NotCartanSplit(f"not a +1 eigenvector: {v}")
        if not util.direct_sum_check([list(p_vecs), list(k_vecs)], n):
            raise NotCartanSplit("adapted basis is not a basis")

    def _inverse_basis_matrix(self):
        cols = util.mat_from_cols(self.adapted_vectors)
        n = self.dim
        inv_cols = []
        for i in range(n):
            x = util.solve(cols, util.unit_vec(n, i))
            if x is None:
                raise NotCartanSplit("adapted basis is singular")
            inv_cols.append(x)
        return util.mat_from_cols(inv_cols)

    def to_adapted(self, v: Vec) -> Vec:
        """Original coordinates -> adapted coordinates."""
        return util.mat_apply(self._to_adapted_matrix, util.vec(v))

    def from_adapted(self, v: Vec) -> Vec:
        out = zero_vec(self.dim)
        for i, c in enumerate(v):
            if c:
                out = vec_add(out, vec_scale(c, self.adapted_vectors[i]))
        return out

    def _adapted_table(self):
        table = {}
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                w = self.algebra.bracket(self.adapted_vectors[i], self.adapted_vectors[j])
                table[(i, j)] = self.to_adapted(w)
        return table

    def _check_cartan_inclusions(self):
        dp = self.dim_p
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                w = self._table[(i, j)]
                in_p = i < dp
                jn_p = j < dp
                if in_p and jn_p:
                    bad = any(w[t] for t in range(dp))            # [p,p] subset k
                elif not in_p and not jn_p:
                    bad = any(w[t] for t in range(dp))            # [k,k] subset k
                else:
                    bad = any(w[t] for t in range(dp, self.dim))  # [k,p] subset p
                if bad:
                    raise NotCartanSplit(
                        f"bracket [{self.adapted_names[i]}, {self.adapted_names[j]}] "
                        "violates the Cartan inclusions"
                    )

    # -- adapted-coordinate operations -------------------------------------

    def bracket_adapted(self, i: int, j: int) -> Vec:
        if i == j:
            return zero_vec(self.dim)
        if i < j:
            return self._table[(i, j)]
        return vec_scale(-1, self._table[(j, i)])

    def bracket_vec(self, u: Vec, v: Vec) -> Vec:
        out = zero_vec(self.dim)
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b or i == j:
                    continue
                out = vec_add(out, vec_scale(a * b, self.bracket_adapted(i, j)))
        return out

    def ad_adapted(self, u: Vec) -> list[list[Fraction]]:
        cols = [self.bracket_vec(u, util.unit_vec(self.dim, j)) for j in range(self.dim)]
        return util.mat_from_cols(cols)

    def ad_basis(self, i: int) -> list[list[Fraction]]:
        if i not in self._ad_cache:
            self._ad_cache[i] = self.ad_adapted(util.unit_vec(self.dim, i))
        return self._ad_cache[i]

    def block_indices(self, space: str) -> range:
        if space == "p":
            return range(self.dim_p)
        if space == "k":
            return range(self.dim_p, self.dim)
        if space == "g":
            return range(self.dim)
        raise ValueError(f"unknown space {space!r}")

    def block_trace(self, M, space: str) -> Fraction:
        return sum((M[i][i] for i in self.block_indices(space)), Fraction(0))

    def p_part(self, v: Vec) -> Vec:
        return tuple(v[i] if i < self.dim_p else Fraction(0) for i in range(self.dim))

    def k_part(self, v: Vec) -> Vec:
        return tuple(v[i] if i >= self.dim_p else Fraction(0) for i in range(self.dim))

    def killing_g(self, u: Vec, v: Vec) -> Fraction:
        return util.mat_trace(util.mat_mul(self.ad_adapted(u), self.ad_adapted(v)))

    def killing_k(self, u: Vec, v: Vec) -> Fraction:
        """Killing form of the subalgebra k (adjoint action restricted to k)."""
        if any(u[i] for i in range(self.dim_p)) or any(v[i] for i in range(self.dim_p)):
            raise ValueError("killing_k needs k-vectors")
        M = util.mat_mul(self.ad_adapted(u), self.ad_adapted(v))
        return self.block_trace(M, "k")

    def trk_character(self) -> Character:
        """The character K |-> tr_k(ad K restricted to k)."""
        vals = []
        for a in range(self.dim_k):
            M = self.ad_basis(self.dim_p + a)
            vals.append(self.block_trace(M, "k"))
        return Character(self, vals)

    def zero_character(self) -> Character:
        return Character(self, [0] * self.dim_k)

    def symbolic_vector(self, space: str, poly_nvars: int, var_offset: int = 0) -> list[Poly]:
        """Adapted-coordinate vector whose `space` block holds fresh variables.

        Entry i is a Poly in poly_nvars variables; block coordinate t gets
        variable var_offset + t.
        """
        idx = list(self.block_indices(space))
        out = [Poly.zero(poly_nvars) for _ in range(self.dim)]
        for t, i in enumerate(idx):
            out[i] = Poly.var(poly_nvars, var_offset + t)
        return out

    def bracket_poly(self, u: list[Poly], v: list[Poly]) -> list[Poly]:
        """Bracket of vectors with polynomial coefficients."""
        nv = next((q.nvars for q in u + v if q is not None), 0)
        out = [Poly.zero(nv) for _ in range(self.dim)]
        for i in range(self.dim):
            if u[i].is_zero():
                continue
            for j in range(self.dim):
                if i == j or v[j].is_zero():
                    continue
                w = self.bracket_adapted(i, j)
                c = u[i].mul(v[j])
                for t in range(self.dim):
                    if w[t]:
                        out[t] = out[t] + c.scale(w[t])
        return out

    def ad_poly(self, u: list[Poly]) -> list[list[Poly]]:
        """Matrix of ad(u) for a polynomial-coefficient vector u."""
        nv = u[0].nvars
        M = [[Poly.zero(nv) for _ in range(self.dim)] for _ in range(self.dim)]
        for j in range(self.dim):
            col = [Poly.zero(nv) for _ in range(self.dim)]
            for i in range(self.dim):
                if u[i].is_zero() or i == j:
                    continue
                w = self.bracket_adapted(i, j)
                for t in range(self.dim):
                    if w[t]:
                        col[t] = col[t] + u[i].scale(w[t])
            for t in range(self.dim):
                M[t][j] = col[t]
        return M

    def __repr__(self):
        return (
            f"SymmetricPair({self.algebra.name!r}, p={self.adapted_names[:self.dim_p]}, "
            f"k={self.adapted_names[self.dim_p:]})"
        )


def build_symmetric_pair(algebra: LieAlgebraDef, sigma, adapted=None) -> SymmetricPair:
    return SymmetricPair(algebra, sigma, adapted=adapted)


# -- trace words and alternation sums --------------------------------------

def trace_word(pair: SymmetricPair, space: str, word: list[Vec]) -> Fraction:
    """Block trace of ad(w_1) o ... o ad(w_n) on p, k, or all of g.

    Vectors are in adapted coordinates.  The empty word gives the block
    dimension (trace of the identity).
    """
    if not word:
        return Fraction(len(pair.block_indices(space)))
    M = pair.ad_adapted(word[0])
    for w in word[1:]:
        M = util.mat_mul(M, pair.ad_adapted(w))
    return pair.block_trace(M, space)


def eval_lie_word(pair: SymmetricPair, word, X: Vec, Y: Vec) -> Vec:
    """Evaluate a nested bracket word; 'X'/'Y' are leaves, pairs are brackets."""
    if word == "X":
        return X
    if word == "Y":
        return Y
    a, b = word
    return pair.bracket_vec(eval_lie_word(pair, a, X, Y), eval_lie_word(pair, b, X, Y))


def trace_alternation(pair: SymmetricPair, words, X: Vec, Y: Vec) -> Fraction:
    """tr_p(x_1...x_n) + (-1)^(n-1) tr_k(x_n...x_1) with x_i = ad(word_i(X,Y))."""
    if any(X[i] for i in range(pair.dim_p, pair.dim)) or any(Y[i] for i in range(pair.dim_p, pair.dim)):
        raise ValueError("trace_alternation arguments must lie in p")
    mats = [pair.ad_adapted(eval_lie_word(pair, w, X, Y)) for w in words]
    fwd = mats[0]
    for M in mats[1:]:
        fwd = util.mat_mul(fwd, M)
    rev = mats[-1]
    for M in reversed(mats[:-1]):
        rev = util.mat_mul(rev, M)
    n = len(mats)
    sign = Fraction(1) if (n - 1) % 2 == 0 else Fraction(-1)
    return pair.block_trace(fwd, "p") + sign * pair.block_trace(rev, "k")


# -- polarizations ----------------------------------------------------------

class PolarizationCandidate:
    """A linear form f on g and a candidate subspace b, in original coordinates."""

    def __init__(self, f, b_basis):
        self.f = util.vec(f)
        self.b_basis = [util.vec(v) for v in b_basis]


class PolarizationReport:
    def __init__(self, is_subalgebra, is_isotropic, is_maximal_isotropic, pukanszky, detail=""):
        self.is_subalgebra = is_subalgebra
        self.is_isotropic = is_isotropic
        self.is_maximal_isotropic = is_maximal_isotropic
        self.pukanszky = pukanszky  # True / False / None (undecidable)
        self.detail = detail

    @property
    def is_polarization(self):
        return self.is_subalgebra and self.is_isotropic and self.is_maximal_isotropic

    def __repr__(self):
        return (
            f"PolarizationReport(subalgebra={self.is_subalgebra}, isotropic={self.is_isotropic}, "
            f"maximal={self.is_maximal_isotropic}, pukanszky={self.pukanszky})"
        )


def form_on_bracket(algebra: LieAlgebraDef, f: Vec, u: Vec, v: Vec) -> Fraction:
    return util.vec_dot(f, algebra.bracket(u, v))


def stabilizer(algebra: LieAlgebraDef, f: Vec) -> list[Vec]:
    """g(f) = radical of the form B_f(u, v) = f([u, v])."""
    n = algebra.dim
    rows = []
    for j in range(n):
        rows.append([form_on_bracket(algebra, f, util.unit_vec(n, i), util.unit_vec(n, j)) for i in range(n)])
    return util.nullspace(rows, n)


def subalgebra_closed(algebra: LieAlgebraDef, basis: list[Vec]) -> bool:
    span = util.span_rref(list(basis))
    for a in range(len(basis)):
        for b in range(a + 1, len(basis)):
            if not util.span_contains(span, algebra.bracket(basis[a], basis[b])):
                return False
    return True


def restricted_ad_matrices(algebra: LieAlgebraDef, basis: list[Vec]):
    """Matrices of ad(b_i) restricted to span(basis), in basis coordinates."""
    cols_matrix = util.mat_from_cols(list(basis))
    mats = []
    for u in basis:
        cols = []
        for v in basis:
            w = algebra.bracket(u, v)
            x = util.solve(cols_matrix, w)
            if x is None:
                raise ValueError("basis does not span a subalgebra")
            cols.append(x)
        mats.append(util.mat_from_cols(cols))
    return mats


def _is_solvable(algebra: LieAlgebraDef, basis: list[Vec]) -> bool:
    current = util.span_rref(list(basis))
    for _ in range(len(basis) + 1):
        if not current:
            return True
        derived = []
        for a in range(len(current)):
            for b in range(a + 1, len(current)):
                derived.append(algebra.bracket(current[a], current[b]))
        nxt = util.span_rref(derived)
        if len(nxt) == len(current):
            return False
        current = nxt
    return not current


def nilradical_solvable(algebra: LieAlgebraDef, basis: list[Vec]) -> list[Vec]:
    """Nilradical of a solvable subalgebra, by the weight-trace criterion.

    For solvable b in characteristic zero the nilradical equals
    {v : tr(ad e_{i_1} ... ad e_{i_a} ad v) = 0 for every word of length
    a <= dim b - 1}: in a simultaneous triangularization the trace of any
    such product is the corresponding symmetric function of weights, and v
    is ad-nilpotent exactly when every weight vanishes on it.
    """
    if not _is_solvable(algebra, basis):
        raise NilradicalUndecidable("candidate subalgebra is not solvable")
    mats = restricted_ad_matrices(algebra, basis)
    m = len(basis)
    if m == 0:
        return []
    rows = []
    prefixes = [util.mat_identity(m)]
    for _ in range(m):  # word lengths 0 .. m-1
        for P in prefixes:
            rows.append([util.mat_trace(util.mat_mul(P, mats[v])) for v in range(m)])
        prefixes = [util.mat_mul(P, M) for P in prefixes for M in mats]
    coeffs = util.nullspace(rows, m)
    out = []
    for c in coeffs:
        v = zero_vec(algebra.dim)
        for i, ci in enumerate(c):
            if ci:
                v = vec_add(v, vec_scale(ci, basis[i]))
        out.append(v)
    return util.span_rref(out)


def polarization_check(algebra: LieAlgebraDef, cand: PolarizationCandidate) -> PolarizationReport:
    f = cand.f
    basis = [v for v in cand.b_basis if not is_zero_vec(v)]
    span = util.span_rref(list(basis))
    dim_b = len(span)

    is_sub = subalgebra_closed(algebra, span)
    is_iso = all(
        form_on_bracket(algebra, f, span[a], span[b]) == 0
        for a in range(dim_b)
        for b in range(a + 1, dim_b)
    )
    gf = stabilizer(algebra, f)
    target = Fraction(algebra.dim + len(gf), 2)
    is_max = is_iso and Fraction(dim_b) == target

    pukanszky = None
    detail = ""
    if is_sub:
        try:
            nil = nilradical_solvable(algebra, span)
            summed = util.span_rref(list(gf) + list(nil))
            pukanszky = util.span_eq(summed, span)
        except NilradicalUndecidable as e:
            pukanszky = None
            detail = str(e)
    return PolarizationReport(is_sub, is_iso, is_max, pukanszky, detail)

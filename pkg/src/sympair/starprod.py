"""The two-argument expansion E_lambda(X, Y) and the products built on it.

Only the coefficients through total order 4 are known in closed form:
the k-valued component

    H(X,Y) = 1/2 [X,Y] - 1/24 [X,[X,[X,Y]]] - 1/24 [Y,[Y,[X,Y]]]
             - 1/48 [X,[Y,[X,Y]]] - 1/48 [Y,[X,[X,Y]]] + ...

and the scalar logarithm, whose order-2 part vanishes identically and
whose order-4 part is (1/240) b([X,Y],[X,Y]) with b = K_g - 2 K_k.
Requests beyond order 4 fail loudly rather than guess.
"""

from __future__ import annotations

import warnings
from fractions import Fraction

from . import util
from .errors import NotPolarization, NotSigmaStable, OrderTooHigh, TruncationWarning
from .freelie import FreeAssocSeries, FreeLieSeries, expand_bracket, lie_from_assoc
from .liealg import (
    Character,
    PolarizationCandidate,
    SymmetricPair,
    polarization_check,
    trace_alternation,
)
from .poly import Poly, poly_exp
from .polyops import BlockPolynomial, require_invariant
from .series import TraceSeries, density_series, log_density

E_MAX_ORDER = 4

#: (coefficient, nested bracket) pairs of the k-valued component H(X, Y).
H_TERMS = (
    (Fraction(1, 2), ("X", "Y")),
    (Fraction(-1, 24), ("X", ("X", ("X", "Y")))),
    (Fraction(-1, 24), ("Y", ("Y", ("X", "Y")))),
    (Fraction(-1, 48), ("X", ("Y", ("X", "Y")))),
    (Fraction(-1, 48), ("Y", ("X", ("X", "Y")))),
)

#: coefficient of the alternation sum on ([X,Y],[X,Y]) in ln E, order 4.
LN_E_ORDER4_COEFF = Fraction(1, 240)


def h_component(order: int) -> FreeLieSeries:
    """The k-valued Lie series H(X, Y) through the requested order (<= 4)."""
    if order > E_MAX_ORDER:
        raise OrderTooHigh(f"H(X,Y) coefficients are only known through order {E_MAX_ORDER}")
    if order < 1:
        raise OrderTooHigh("order must be >= 1")
    assoc = FreeAssocSeries(order)
    for c, b in H_TERMS:
        assoc = assoc + expand_bracket(b, order).scale(c)
    return lie_from_assoc(assoc)


def ln_e_scalar(pair: SymmetricPair, X, Y) -> Fraction:
    """Order-4 value of ln E(X, Y): (1/240) (tr_p - tr_k)(ad[X,Y])^2.

    The order-2 alternation tr_p(ad X ad Y) - tr_k(ad Y ad X) vanishes for
    every pair (trace of AB versus BA across the two blocks), so the first
    contribution is the order-4 one.
    """
    return LN_E_ORDER4_COEFF * trace_alternation(pair, [("X", "Y"), ("X", "Y")], X, Y)


def _bidiff_symbol(pair: SymmetricPair, lam: Character, order: int = E_MAX_ORDER) -> Poly:
    """exp(lambda(H) + ln E) as a polynomial in (xi, eta) slot variables.

    Variables 0..dim_p-1 are the X slots (derivatives on the first factor),
    dim_p..2dim_p-1 the Y slots.  Truncated at total slot degree `order`.
    """
    dp = pair.dim_p
    nv = 2 * dp
    Xs = pair.symbolic_vector("p", nv, 0)
    Ys = pair.symbolic_vector("p", nv, dp)

    log_sym = Poly.zero(nv)
    if not lam.is_zero():
        hs = h_component(order)
        hval = hs.evaluate_poly(pair, Xs, Ys, max_degree=order)
        for i in pair.block_indices("k"):
            if not hval[i].is_zero():
                log_sym = log_sym + hval[i].scale(lam.values[i - dp])
    # scalar log: order-4 alternation term
    if order >= 4:
        W = pair.bracket_poly(Xs, Ys)
        M = pair.ad_poly(W)
        M2 = [[sum((M[i][t].mul(M[t][j]) for t in range(pair.dim)), Poly.zero(nv)) for j in range(pair.dim)] for i in range(pair.dim)]
        tr = Poly.zero(nv)
        for i in pair.block_indices("p"):
            tr = tr + M2[i][i]
        for i in pair.block_indices("k"):
            tr = tr - M2[i][i]
        log_sym = log_sym + tr.scale(LN_E_ORDER4_COEFF)
    return poly_exp(log_sym.truncate(order), order)


def star_cf(pair: SymmetricPair, f: BlockPolynomial, g: BlockPolynomial,
            lam: Character | None = None) -> BlockPolynomial:
    """The E-function product on S(p)^k at character lambda.

    Exact whenever one argument has degree <= 2 (unknown order >= 6 slots
    then need three or more derivatives on a single factor); otherwise a
    TruncationWarning is emitted.
    """
    lam = lam or pair.zero_character()
    if f.space != "p" or g.space != "p":
        raise ValueError("star_cf needs p-polynomials")
    require_invariant(pair, f, "f")
    require_invariant(pair, g, "g")
    if f.degree() >= 3 and g.degree() >= 3:
        warnings.warn("both degrees >= 3: product truncated at order 4", TruncationWarning)
    dp = pair.dim_p
    sym = _bidiff_symbol(pair, lam)
    out = Poly.zero(dp)
    for mono, c in sym.terms.items():
        alpha, beta_ = mono[:dp], mono[dp:]
        df = f.poly.diff_mono(alpha)
        if df.is_zero():
            continue
        dg = g.poly.diff_mono(beta_)
        if dg.is_zero():
            continue
        out = out + df.mul(dg).scale(c)
    return BlockPolynomial(pair, "p", out)


def wheel_factor_A(pair: SymmetricPair, order: int) -> TraceSeries:
    """A = q^(1/2) / J^(1/2) as a trace series (B is identically 1)."""
    return (log_density("q_half", order) - log_density("J_half", order)).exp()


def wheel_factor_B(pair: SymmetricPair, order: int) -> TraceSeries:
    return TraceSeries.constant(order, 1)


# -- invariant operators in exponential coordinates ---------------------------

def _series_at_vector(pair: SymmetricPair, series: TraceSeries, vector: list[Poly],
                      max_degree: int) -> Poly:
    """Evaluate a p-trace series at a vector with polynomial coordinates."""
    nv = vector[0].nvars
    compiled = series.as_polynomial(pair, "p")
    images = [vector[i] for i in pair.block_indices("p")]
    return compiled.subs(images, max_degree)


def exp_coord_operator(pair: SymmetricPair, R: BlockPolynomial, jet_order: int,
                       X=None, zsym: FreeLieSeries | None = None) -> Poly:
    """Normalized symbol of the invariant operator attached to R, at X.

    Computes exp(-<xi, X>) R(d_Y)[ J^(1/2)(Y) J^(1/2)(X) J^(-1/2)(Z(X,Y))
    exp(<xi, Z(X,Y)>) ] at Y = 0, with Z the symmetric-space BCH series
    truncated at jet_order (the wheel factor on the second axis is 1).

    Variables of the result: 0..dim_p-1 are the X coordinates, dim_p..2dim_p-1
    the symbol (xi) coordinates.  With a concrete X (adapted p-coordinates)
    the X variables are substituted away.  Exact through total (X,Y) order
    jet_order.
    """
    from .errors import TruncationTooLow
    from .freelie import z_sym as z_sym_series

    if R.space != "p":
        raise ValueError("R must be a p-polynomial")
    require_invariant(pair, R, "R")
    if R.degree() > jet_order:
        raise TruncationTooLow(f"deg R = {R.degree()} exceeds jet order {jet_order}")
    dp = pair.dim_p
    nv = 3 * dp  # x block, xi block, y block
    xs = pair.symbolic_vector("p", nv, 0)
    ys = pair.symbolic_vector("p", nv, 2 * dp)
    zs = zsym if zsym is not None else z_sym_series(jet_order)
    Z = zs.evaluate_poly(pair, xs, ys, max_degree=jet_order)

    cap = jet_order + R.degree()
    Jh = density_series(pair, "J_half", 2 * ((jet_order + 1) // 2) + 2)
    pref = _series_at_vector(pair, Jh, ys, cap)
    pref = pref.mul(_series_at_vector(pair, Jh, xs, cap), cap)
    pref = pref.mul(_series_at_vector(pair, Jh.inverse(), Z, cap), cap)

    # exp(<xi, Z - X>): every term of Z - X has y-degree >= 1
    pairing = Poly.zero(nv)
    for t, i in enumerate(pair.block_indices("p")):
        delta = Z[i] - Poly.var(nv, t)
        if not delta.is_zero():
            pairing = pairing + delta.mul(Poly.var(nv, dp + t))
    total = pref.mul(poly_exp(pairing.truncate(cap), cap), cap)

    # R(d_Y) then Y = 0
    out = Poly.zero(2 * dp)
    for mono, c in R.poly.terms.items():
        exps = (0,) * (2 * dp) + mono
        d = total.diff_mono(exps)
        # keep only y-free terms (evaluation at Y = 0)
        for m, cc in d.terms.items():
            if any(m[2 * dp + t] for t in range(dp)):
                continue
            out = out + Poly(2 * dp, {m[: 2 * dp]: c * cc})
    if X is not None:
        X = util.vec(X)
        images = [Poly.const(dp, X[i]) for i in pair.block_indices("p")]
        images += [Poly.var(dp, t) for t in range(dp)]
        return out.subs(images)
    return out


# -- characters from sigma-stable polarizations -------------------------------

def character_sigma_stable(pair: SymmetricPair, P: BlockPolynomial, f,
                           b: PolarizationCandidate) -> Fraction:
    """Character value at a linear form f in the k-annihilator.

    Validates that b is a sigma-stable polarization at f; the character of
    the invariant algebra is then evaluation at f (the vertical wheel
    factor is 1), constant on the K-orbit of f.
    """
    if P.space != "p":
        raise ValueError("P must be a p-polynomial")
    require_invariant(pair, P, "P")
    f = util.vec(f)  # adapted coordinates of a form on g
    if any(f[i] for i in pair.block_indices("k")):
        raise ValueError("f must annihilate k")

    # sigma stability of span(b): sigma is -1 on p and +1 on k in adapted coords
    basis = [util.vec(v) for v in b.b_basis]
    sig = [tuple(-v[i] if i < pair.dim_p else v[i] for i in range(pair.dim)) for v in basis]
    if not util.span_eq(basis, sig):
        raise NotSigmaStable("sigma(b) != b")

    # polarization flags, computed on the adapted-coordinate copy of g
    adapted_def = _adapted_algebra(pair)
    report = polarization_check(adapted_def, PolarizationCandidate(f, basis))
    if not report.is_polarization:
        raise NotPolarization(repr(report))
    return P.evaluate([f[i] for i in pair.block_indices("p")])


def _adapted_algebra(pair: SymmetricPair):
    """The pair's algebra re-expressed on the adapted basis."""
    from .liealg import LieAlgebraDef

    brackets = {}
    for i in range(pair.dim):
        for j in range(i + 1, pair.dim):
            w = pair.bracket_adapted(i, j)
            entries = {t: w[t] for t in range(pair.dim) if w[t]}
            if entries:
                brackets[(i, j)] = entries
    return LieAlgebraDef(pair.algebra.name + "_adapted", pair.adapted_names, brackets, validate=False)


def coadjoint_orbit_point(pair: SymmetricPair, K, f, max_power: int = 12):
    """exp(ad K)* f for a k-vector with nilpotent ad, exactly."""
    K = util.vec(K)
    f = util.vec(f)
    M = pair.ad_adapted(K)
    # coadjoint: <exp(ad K)* f, v> = <f, exp(-ad K) v>
    out = list(f)
    term = list(f)
    k = 1
    while True:
        # term <- -(1/k) * term o ad K   (i.e. transpose action)
        nxt = [Fraction(0)] * pair.dim
        for j in range(pair.dim):
            s = Fraction(0)
            for i in range(pair.dim):
                if term[i] and M[i][j]:
                    s += term[i] * M[i][j]
            nxt[j] = -s / k
        term = nxt
        if all(c == 0 for c in term):
            break
        out = [a + b for a, b in zip(out, term)]
        k += 1
        if k > max_power:
            raise ValueError("ad K is not nilpotent to the requested power")
    return tuple(out)

from fractions import Fraction

import pytest

from sympair.liealg import LieAlgebraDef, build_symmetric_pair
from sympair.poly import Poly, monomials_up_to_degree
from sympair.polyops import BlockPolynomial


def sl2_algebra():
    return LieAlgebraDef("sl2", ["H", "X", "Y"], {(0, 1): {1: 2}, (0, 2): {2: -2}, (1, 2): {0: 1}})


@pytest.fixture(scope="session")
def sl2_pair():
    return build_symmetric_pair(sl2_algebra(), [[-1, 0, 0], [0, 0, -1], [0, -1, 0]])


@pytest.fixture(scope="session")
def solvable_pair():
    alg = LieAlgebraDef("solvable4", ["t", "x", "y", "z"], {(0, 1): {1: -1}, (0, 2): {2: 1}, (1, 2): {3: 1}})
    sigma = [[-1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, -1]]
    return build_symmetric_pair(alg, sigma)


@pytest.fixture(scope="session")
def heisenberg_pair():
    alg = LieAlgebraDef("heisenberg3", ["x", "y", "z"], {(0, 1): {2: 1}})
    sigma = [[0, 1, 0], [1, 0, 0], [0, 0, -1]]
    return build_symmetric_pair(alg, sigma)


@pytest.fixture(scope="session")
def abelian_pair():
    alg = LieAlgebraDef("abelian2", ["a", "b"], {})
    return build_symmetric_pair(alg, [[-1, 0], [0, -1]])


def double_with_swap(base: LieAlgebraDef):
    """g + g with the factor-swap involution (the diagonal pair of base)."""
    n = base.dim
    brackets = {}
    for (i, j), _ in base._table.items():
        w = base.bracket_basis(i, j)
        brackets[(i, j)] = {t: w[t] for t in range(n) if w[t]}
        brackets[(i + n, j + n)] = {t + n: w[t] for t in range(n) if w[t]}
    basis = [s + "1" for s in base.basis] + [s + "2" for s in base.basis]
    dbl = LieAlgebraDef(base.name + "x2", basis, brackets)
    sigma = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        sigma[i][i + n] = 1
        sigma[i + n][i] = 1
    return build_symmetric_pair(dbl, sigma)


@pytest.fixture(scope="session")
def diagonal_pair():
    return double_with_swap(sl2_algebra())


def coadjoint_semidirect(base: LieAlgebraDef):
    """k semidirect k^* with the coadjoint action and sigma = (+1, -1).

    The pairing between the two blocks is sigma-anti-invariant, so this is
    a quadratic pair whose two-argument expansion collapses.
    """
    n = base.dim
    brackets = {}
    for i in range(n):
        for j in range(i + 1, n):
            w = base.bracket_basis(i, j)
            entries = {t: w[t] for t in range(n) if w[t]}
            if entries:
                brackets[(i, j)] = entries
    # [e_i, f_j] = coad(e_i) f_j with (coad(x) xi)(y) = -xi([x, y])
    for i in range(n):
        for j in range(n):
            entries = {}
            for t in range(n):
                w = base.bracket_basis(i, t)
                if w[j]:
                    entries[t + n] = -w[j]
            if entries:
                brackets[(i, j + n)] = entries
    basis = list(base.basis) + [s + "*" for s in base.basis]
    alg = LieAlgebraDef(base.name + "_coad", basis, brackets)
    sigma = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        sigma[i][i] = 1
        sigma[i + n][i + n] = -1
    return build_symmetric_pair(alg, sigma)


@pytest.fixture(scope="session")
def am_pair():
    """sl2 semidirect its coadjoint module: an anti-invariant quadratic pair."""
    return coadjoint_semidirect(sl2_algebra())


@pytest.fixture(scope="session")
def omega(sl2_pair):
    return BlockPolynomial(sl2_pair, "p", Poly(2, {(2, 0): 1, (0, 2): 1}))


def random_block_poly(pair, space, max_degree, rng, density=0.5, bound=3):
    nv = len(pair.block_indices(space))
    terms = {}
    for m in monomials_up_to_degree(nv, max_degree):
        if rng.random() < density:
            c = rng.randint(-bound, bound)
            if c:
                terms[m] = Fraction(c)
    return BlockPolynomial(pair, space, Poly(nv, terms))


def random_p_vector(pair, rng, bound=3):
    from sympair.util import zero_vec
    v = list(zero_vec(pair.dim))
    for i in range(pair.dim_p):
        v[i] = Fraction(rng.randint(-bound, bound))
    return tuple(v)

"""Exact-rational helpers: parsing, formatting, and dense linear algebra.

Matrices are lists of lists of Fraction; vectors are tuples of Fraction.
Sizes in this package stay small (dimension <= ~40), so plain Gaussian
elimination over Fraction is both exact and fast enough.
"""

from __future__ import annotations

from fractions import Fraction

Vec = tuple[Fraction, ...]


def frac(x) -> Fraction:
    """Parse an exact rational from int, Fraction, or a 'p/q' string."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"not an exact rational: {x!r}")


def fmt(x: Fraction) -> str:
    """Canonical 'p/q' (or 'p') rendering of a rational."""
    x = Fraction(x)
    return str(x)


def vec(entries) -> Vec:
    return tuple(frac(e) for e in entries)


def zero_vec(n: int) -> Vec:
    return (Fraction(0),) * n


def unit_vec(n: int, i: int) -> Vec:
    return tuple(Fraction(1 if j == i else 0) for j in range(n))


def vec_add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, u: Vec) -> Vec:
    c = frac(c)
    return tuple(c * a for a in u)


def vec_dot(u: Vec, v: Vec) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def is_zero_vec(u) -> bool:
    return all(a == 0 for a in u)


def mat_from_cols(cols: list[Vec]) -> list[list[Fraction]]:
    n = len(cols[0]) if cols else 0
    return [[cols[j][i] for j in range(len(cols))] for i in range(n)]


def mat_mul(A, B):
    n, k, m = len(A), len(B), len(B[0]) if B else 0
    out = [[Fraction(0)] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for t in range(k):
            a = Ai[t]
            if a == 0:
                continue
            Bt = B[t]
            row = out[i]
            for j in range(m):
                if Bt[j]:
                    row[j] += a * Bt[j]
    return out


def mat_apply(A, v: Vec) -> Vec:
    return tuple(sum((A[i][j] * v[j] for j in range(len(v)) if v[j]), Fraction(0)) for i in range(len(A)))


def mat_identity(n: int):
    return [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]


def mat_eq(A, B) -> bool:
    return len(A) == len(B) and all(ra == rb for ra, rb in zip(A, B))


def mat_trace(A) -> Fraction:
    return sum((A[i][i] for i in range(len(A))), Fraction(0))


def rref(rows: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form; returns (nonzero rows, pivot column indices)."""
    M = [list(r) for r in rows]
    nrows = len(M)
    ncols = len(M[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if M[i][c] != 0), None)
        if pr is None:
            continue
        M[r], M[pr] = M[pr], M[r]
        pv = M[r][c]
        M[r] = [x / pv for x in M[r]]
        for i in range(nrows):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return [row for row in M if any(x != 0 for x in row)], pivots


def rank(rows) -> int:
    return len(rref(rows)[0])


def nullspace(rows: list[list[Fraction]], ncols: int | None = None) -> list[Vec]:
    """Canonical basis of {v : M v = 0}, from the RREF free columns."""
    if not rows:
        if ncols is None:
            raise ValueError("ncols required for an empty matrix")
        return [unit_vec(ncols, i) for i in range(ncols)]
    ncols = len(rows[0])
    R, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -R[i][fc]
        basis.append(tuple(v))
    return basis


def solve(A: list[list[Fraction]], b: Vec) -> Vec | None:
    """One solution of A x = b, or None if inconsistent."""
    n = len(A)
    ncols = len(A[0]) if n else 0
    aug = [list(A[i]) + [b[i]] for i in range(n)]
    R, pivots = rref(aug)
    for row in R:
        if all(x == 0 for x in row[:-1]) and row[-1] != 0:
            return None
    x = [Fraction(0)] * ncols
    for i, pc in enumerate(pivots):
        if pc == ncols:
            return None
        x[pc] = R[i][-1]
    return tuple(x)


def span_rref(vectors: list[Vec]) -> list[Vec]:
    """Canonical (RREF) basis of the span; empty list for the zero space."""
    if not vectors:
        return []
    R, _ = rref([list(v) for v in vectors])
    return [tuple(r) for r in R]


def span_contains(span_basis: list[Vec], v: Vec) -> bool:
    if is_zero_vec(v):
        return True
    if not span_basis:
        return False
    before = len(span_rref(list(span_basis)))
    after = len(span_rref(list(span_basis) + [v]))
    return before == after


def span_eq(a: list[Vec], b: list[Vec]) -> bool:
    return span_rref(list(a)) == span_rref(list(b))


def span_intersect(a: list[Vec], b: list[Vec]) -> list[Vec]:
    """Basis of span(a) & span(b) via the kernel of [A | -B]."""
    if not a or not b:
        return []
    n = len(a[0])
    rows = [[a[j][i] for j in range(len(a))] + [-b[j][i] for j in range(len(b))] for i in range(n)]
    ker = nullspace(rows, len(a) + len(b))
    out = []
    for coeffs in ker:
        v = zero_vec(n)
        for j in range(len(a)):
            if coeffs[j]:
                v = vec_add(v, vec_scale(coeffs[j], a[j]))
        out.append(v)
    return span_rref(out)


def direct_sum_check(blocks: list[list[Vec]], dim: int) -> bool:
    """True iff the given families are independent and together span Q^dim."""
    allv = [v for blk in blocks for v in blk]
    return len(allv) == dim and rank([list(v) for v in allv]) == dim

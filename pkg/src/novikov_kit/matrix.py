"""Square matrices over Z[Z^m], stored as tuples of row tuples of LaurentElements."""
from __future__ import annotations

from typing import Sequence

from .group_ring import GradingForm, LaurentElement, RankMismatch

Matrix = tuple  # tuple[tuple[LaurentElement, ...], ...]

COFACTOR_LIMIT = 4


def as_matrix(rows: Sequence[Sequence[LaurentElement]]) -> Matrix:
    m = tuple(tuple(r) for r in rows)
    k = len(m)
    if k == 0:
        raise ValueError("empty matrix")
    if any(len(r) != k for r in m):
        raise ValueError("matrix is not square")
    ranks = {e.rank for r in m for e in r}
    if len(ranks) != 1:
        raise RankMismatch(f"matrix entries have mixed ranks {sorted(ranks)}")
    return m


def ambient_rank(a: Matrix) -> int:
    return a[0][0].rank


def identity(k: int, rank: int) -> Matrix:
    one, zero = LaurentElement.one(rank), LaurentElement.zero(rank)
    return tuple(tuple(one if i == j else zero for j in range(k)) for i in range(k))


def zeros(k: int, rank: int) -> Matrix:
    zero = LaurentElement.zero(rank)
    return tuple((zero,) * k for _ in range(k))


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(c, a: Matrix) -> Matrix:
    return tuple(tuple(c * x for x in r) for r in a)


def _dot(row, col, rank):
    acc = LaurentElement.zero(rank)
    for x, y in zip(row, col):
        if x and y:
            acc = acc + x * y
    return acc


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    rank = ambient_rank(a)
    cols = list(zip(*b))
    return tuple(tuple(_dot(r, c, rank) for c in cols) for r in a)


def mat_vec(a: Matrix, v: Sequence[LaurentElement]) -> tuple:
    rank = ambient_rank(a)
    return tuple(_dot(r, v, rank) for r in a)


def vec_dot(u: Sequence[LaurentElement], v: Sequence[LaurentElement]) -> LaurentElement:
    return _dot(u, v, u[0].rank)


def mat_truncate(a: Matrix, xi: GradingForm, c) -> Matrix:
    return tuple(tuple(x.truncate(xi, c) for x in r) for r in a)


def matrix_norm(a: Matrix) -> int:
    """max_ij of the 1-norm of the entries."""
    return max(x.norm() for r in a for x in r)


def _minor(a: Matrix, i: int, j: int) -> Matrix:
    return tuple(tuple(x for cj, x in enumerate(r) if cj != j) for ri, r in enumerate(a) if ri != i)


def det_cofactor(a: Matrix) -> LaurentElement:
    k = len(a)
    rank = ambient_rank(a)
    if k == 1:
        return a[0][0]
    if k == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    acc = LaurentElement.zero(rank)
    for j, x in enumerate(a[0]):
        if x:
            term = x * det_cofactor(_minor(a, 0, j))
            acc = acc + term if j % 2 == 0 else acc - term
    return acc


def adjugate_cofactor(a: Matrix) -> Matrix:
    k = len(a)
    rank = ambient_rank(a)
    if k == 1:
        return ((LaurentElement.one(rank),),)
    rows = []
    for i in range(k):
        row = []
        for j in range(k):
            # adj[i][j] = (-1)^(i+j) det(minor with row j, column i removed)
            d = det_cofactor(_minor(a, j, i))
            row.append(d if (i + j) % 2 == 0 else -d)
        rows.append(tuple(row))
    return tuple(rows)


def charpoly_berkowitz(a: Matrix) -> list:
    """Coefficients [c_0, c_1, ..., c_k] of det(x*I - a) = sum c_i x^(k-i), c_0 = 1.

    Division-free, so valid over any commutative ring.
    """
    k = len(a)
    rank = ambient_rank(a)
    zero, one = LaurentElement.zero(rank), LaurentElement.one(rank)
    poly = [one, -a[0][0]]
    for r in range(1, k):
        # leading principal block of size r, new row/column r
        R = [a[r][j] for j in range(r)]
        S = [a[i][r] for i in range(r)]
        A = [[a[i][j] for j in range(r)] for i in range(r)]
        # Toeplitz column: 1, -a_rr, -R S, -R A S, -R A^2 S, ...
        col = [one, -a[r][r]]
        v = S
        for _ in range(r):
            col.append(-sum((x * y for x, y in zip(R, v)), zero))
            v = [sum((A[i][j] * v[j] for j in range(r)), zero) for i in range(r)]
        new = []
        for i in range(r + 2):
            acc = zero
            for j in range(min(i, r) + 1):
                acc = acc + col[i - j] * poly[j]
            new.append(acc)
        poly = new
    return poly


def det_adjugate(a: Matrix) -> tuple:
    """(det a, adj a) by cofactors for small sizes, Berkowitz/Cayley-Hamilton above."""
    k = len(a)
    if k <= COFACTOR_LIMIT:
        return det_cofactor(a), adjugate_cofactor(a)
    rank = ambient_rank(a)
    c = charpoly_berkowitz(a)
    # det a = (-1)^k c_k ; adj a = (-1)^(k+1) (a^(k-1) + c_1 a^(k-2) + ... + c_(k-1) I)
    acc = mat_scale(c[0], identity(k, rank))
    for i in range(1, k):
        acc = mat_add(mat_mul(acc, a), mat_scale(c[i], identity(k, rank)))
    sign = 1 if k % 2 == 0 else -1
    return c[k] * sign, mat_scale(-sign, acc)

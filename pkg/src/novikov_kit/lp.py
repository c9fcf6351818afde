"""Exact rational linear algebra and a phase-1 simplex with Bland's rule."""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

Vector = Sequence  # of Fraction / int


def rank(rows: Sequence[Sequence]) -> int:
    m = [[Fraction(x) for x in r] for r in rows]
    if not m:
        return 0
    r = 0
    ncols = len(m[0])
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, len(m)):
            f = m[i][c] / m[r][c]
            if f:
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
        if r == len(m):
            break
    return r


def independent_subset(rows: Sequence[Sequence]) -> list:
    """Indices of a greedy maximal linearly independent subset of rows."""
    chosen: list = []
    basis: list = []
    for i, row in enumerate(rows):
        if rank(basis + [row]) > len(basis):
            basis.append(row)
            chosen.append(i)
    return chosen


def solve_square(a: Sequence[Sequence], b: Sequence) -> list | None:
    """Solve a x = b for square a; None when a is singular."""
    n = len(a)
    m = [[Fraction(x) for x in r] + [Fraction(y)] for r, y in zip(a, b)]
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c] != 0), None)
        if piv is None:
            return None
        m[c], m[piv] = m[piv], m[c]
        p = m[c][c]
        m[c] = [x / p for x in m[c]]
        for i in range(n):
            if i != c and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[c])]
    return [m[i][n] for i in range(n)]


def primitive_integer(v: Sequence) -> tuple:
    """Positive rescaling of a nonzero rational vector to a primitive integer vector."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        raise ValueError("zero vector has no primitive representative")
    return tuple(x // g for x in ints)


def nonnegative_solution(columns: Sequence[Sequence], target: Sequence) -> list | None:
    """Find lambda >= 0 with sum_j lambda_j * columns[j] == target, or None.

    Phase 1 of the simplex method on exact rationals, one artificial
    variable per row, Bland's smallest-index rule for both the entering and
    the leaving variable (which rules out cycling).
    """
    n = len(columns)
    m = len(target)
    if n == 0:
        return [] if all(x == 0 for x in target) else None
    # tableau rows: [A | I_art | rhs], with rhs >= 0
    rows = []
    for i in range(m):
        sgn = -1 if target[i] < 0 else 1
        row = [Fraction(sgn * columns[j][i]) for j in range(n)]
        row += [Fraction(1 if k == i else 0) for k in range(m)]
        row.append(Fraction(sgn * target[i]))
        rows.append(row)
    basis = [n + i for i in range(m)]
    width = n + m
    # objective: minimise the sum of artificials; reduced costs for the
    # original columns are -(column sums)
    cost = [Fraction(0)] * (width + 1)
    for row in rows:
        for j in range(n):
            cost[j] -= row[j]
        cost[width] -= row[width]
    while True:
        entering = next((j for j in range(width) if cost[j] < 0), None)
        if entering is None:
            break
        best = None
        for i, row in enumerate(rows):
            if row[entering] > 0:
                ratio = row[width] / row[entering]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            # unbounded phase-1 objective is impossible (bounded below by 0)
            raise ArithmeticError("phase-1 simplex reported unbounded direction")
        _, r = best
        piv = rows[r][entering]
        rows[r] = [x / piv for x in rows[r]]
        for i in range(m):
            if i != r and rows[i][entering]:
                f = rows[i][entering]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        f = cost[entering]
        cost = [x - f * y for x, y in zip(cost, rows[r])]
        basis[r] = entering
    if cost[width] != 0:
        return None
    sol = [Fraction(0)] * n
    for i, b in enumerate(basis):
        if b < n:
            sol[b] = rows[i][width]
    return sol


def feasible_point(forms: Sequence[Sequence], bounds: Sequence) -> list | None:
    """A rational x with forms[i] . x <= bounds[i] for all i, or None.

    Free variables are split as x = x+ - x-, slacks make the system an
    equality, and nonnegative_solution does the rest.
    """
    k = len(forms)
    dim = len(forms[0])
    # unknowns: x+ (dim), x- (dim), slack (k); equations: one per form
    columns = []
    for j in range(dim):
        columns.append([Fraction(f[j]) for f in forms])
    for j in range(dim):
        columns.append([-Fraction(f[j]) for f in forms])
    for i in range(k):
        columns.append([Fraction(1 if r == i else 0) for r in range(k)])
    sol = nonnegative_solution(columns, [Fraction(b) for b in bounds])
    if sol is None:
        return None
    return [sol[j] - sol[dim + j] for j in range(dim)]

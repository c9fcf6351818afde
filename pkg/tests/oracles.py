"""Independent reference computations, deliberately naive."""
from __future__ import annotations

from itertools import combinations, product

import sympy


def brute_cone_contains(generators, x) -> bool:
    """Caratheodory: x is in the cone iff it is a nonnegative combination of
    some linearly independent subset of the generators."""
    if not any(x):
        return True
    target = sympy.Matrix(list(x))
    gens = [tuple(g) for g in generators]
    for size in range(1, len(x) + 1):
        for sub in combinations(gens, size):
            M = sympy.Matrix([list(g) for g in sub]).T
            if M.rank() != size:
                continue
            try:
                sol, params = M.gauss_jordan_solve(target)
            except ValueError:
                continue
            if params.shape[0] == 0 and all(v >= 0 for v in sol):
                return True
    return False


def box(m: int, radius: int):
    return product(range(-radius, radius + 1), repeat=m)

"""Integral cones in Z^m and support control for Novikov-ring elements.

A cone Z<e_1, ..., e_k> is the set of nonnegative real combinations of
integer generators.  It is an integral eta-cone when it has full rank and
every generator is strictly negative on eta.  Everything here is exact:
membership is rational linear feasibility, intersections use the double
description method.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor
from typing import Sequence

from . import lp
from .group_ring import GradingForm, RankMismatch, as_exponent, as_rational, exp_add, exp_sub

DD_MAX_RANK = 4
_SCAN_RADIUS = 6


@dataclass(frozen=True)
class IntegralCone:
    generators: tuple
    rank: int

    def __post_init__(self):
        gens = tuple(as_exponent(g) for g in self.generators)
        for g in gens:
            if len(g) != self.rank:
                raise RankMismatch(f"generator {g} does not have rank {self.rank}")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def of(cls, *generators) -> "IntegralCone":
        gens = [as_exponent(g) for g in generators]
        return cls(tuple(gens), len(gens[0]))

    @property
    def is_full_rank(self) -> bool:
        return lp.rank(self.generators) == self.rank

    def contains(self, x: Sequence) -> bool:
        return cone_contains(self, x)[0]


@dataclass(frozen=True)
class ShiftedCone:
    """The translate cone + shift."""

    cone: IntegralCone
    shift: tuple

    def __post_init__(self):
        object.__setattr__(self, "shift", as_exponent(self.shift))
        if len(self.shift) != self.cone.rank:
            raise RankMismatch("shift rank differs from cone rank")

    def contains(self, x: Sequence) -> bool:
        return cone_contains(self.cone, exp_sub(tuple(x), self.shift))[0]


@dataclass(frozen=True)
class BoundedIntersection:
    """Marker returned when the two forms are negatively proportional.

    Then {xi >= c} meets {eta >= c'} in a bounded slab, so the intersection of
    the two shifted cones is a finite set and no cone is needed.
    """

    xi: GradingForm
    eta: GradingForm


def cone_contains(cone: IntegralCone, x: Sequence) -> tuple:
    """(True, lambda) if x = sum lambda_i e_i with rational lambda_i >= 0, else (False, None)."""
    if len(x) != cone.rank:
        raise RankMismatch(f"point of rank {len(x)} tested against cone of rank {cone.rank}")
    if all(v == 0 for v in x):
        return True, tuple(Fraction(0) for _ in cone.generators)
    sol = lp.nonnegative_solution(cone.generators, x)
    if sol is None:
        return False, None
    return True, tuple(sol)


def is_eta_cone(cone: IntegralCone, eta: GradingForm) -> bool:
    if eta.rank != cone.rank:
        raise RankMismatch("form and cone ranks differ")
    if not cone.generators:
        return False
    return all(eta(e) < 0 for e in cone.generators) and cone.is_full_rank


def _lattice_points_by_norm(m: int, radius: int):
    """Integer vectors of rank m in order of increasing 1-norm (excluding 0)."""
    for r in range(1, radius + 1):
        for signs_and_parts in _compositions(r, m):
            yield signs_and_parts


def _compositions(r: int, m: int):
    # all integer vectors with 1-norm exactly r, deterministic order
    def rec(remaining, slots):
        if slots == 1:
            if remaining == 0:
                yield (0,)
            else:
                yield (-remaining,)
                yield (remaining,)
            return
        for a in range(-remaining, remaining + 1):
            for rest in rec(remaining - abs(a), slots - 1):
                yield (a,) + rest
    yield from rec(r, m)


def negative_lattice_vector(forms: Sequence[GradingForm]) -> tuple | None:
    """An integer vector on which every form is strictly negative, or None.

    Small vectors are found by scanning increasing 1-norm; otherwise the
    system f(x) <= -1 is solved exactly and the solution scaled to integers.
    """
    m = forms[0].rank
    if m <= 4:
        for x in _lattice_points_by_norm(m, _SCAN_RADIUS):
            if all(f(x) < 0 for f in forms):
                return x
    sol = lp.feasible_point([f.weights for f in forms], [-1] * len(forms))
    if sol is None:
        return None
    if all(v == 0 for v in sol):
        return None
    return lp.primitive_integer(sol)


def _check_form_ranks(m: int, *forms: GradingForm) -> None:
    for f in forms:
        if f.rank != m:
            raise RankMismatch(f"form of rank {f.rank} in rank-{m} context")


def integral_hull(generators: Sequence[Sequence], eta1: GradingForm, eta2: GradingForm) -> IntegralCone:
    """A full-rank integral cone, with all generators strictly negative on
    eta1 and eta2, containing the cone spanned by the given rational vectors.

    Each input is rescaled to a primitive integer vector.  If these do not
    span Z^m, vectors N*h +- u_j are added, where h is a lattice point negative
    on both forms and N is the least positive integer keeping every new
    vector negative on both forms.
    """
    m = eta1.rank
    _check_form_ranks(m, eta2)
    prims = []
    for v in generators:
        if len(v) != m:
            raise RankMismatch(f"generator {tuple(v)} does not have rank {m}")
        fv = [as_rational(x) for x in v]
        if eta1.eval_rational(fv) >= 0 or eta2.eval_rational(fv) >= 0:
            raise ValueError(f"generator {tuple(v)} is not strictly negative on both forms")
        p = lp.primitive_integer(fv)
        if p not in prims:
            prims.append(p)
    if prims and lp.rank(prims) == m:
        return IntegralCone(tuple(prims), m)
    if prims:
        h = tuple(sum(col) for col in zip(*prims))
    else:
        h = negative_lattice_vector([eta1, eta2])
        if h is None:
            raise ValueError("no lattice vector is negative on both forms")
    extra = _completion_vectors(h, [eta1, eta2])
    for v in extra:
        p = lp.primitive_integer(v)
        if p not in prims:
            prims.append(p)
    return IntegralCone(tuple(prims), m)


def _completion_vectors(h: tuple, forms: Sequence[GradingForm]) -> list:
    m = len(h)
    units = []
    for j in range(m):
        for s in (1, -1):
            units.append(tuple(s if i == j else 0 for i in range(m)))
    n = 1
    for f in forms:
        fh = f(h)  # < 0
        for u in units:
            # need n * f(h) + f(u) < 0
            fu = f(u)
            need = Fraction(fu) / -fh
            n = max(n, int(need) + 1 if need >= 0 else 1)
    return [tuple(n * a + b for a, b in zip(h, u)) for u in units]


# -- double description ------------------------------------------------------


def extreme_rays(inequalities: Sequence[Sequence], dim: int) -> list:
    """Extreme rays of the pointed cone {x : a . x <= 0 for every row a}.

    Incremental double description: start from dim independent rows, whose
    cone is simplicial, then add the remaining rows one at a time, combining
    adjacent pairs across each new hyperplane.  Adjacency uses the algebraic
    test rank(common tight rows) == dim - 2.  Rays are returned as primitive
    integer vectors in sorted order.
    """
    rows = [tuple(Fraction(x) for x in a) for a in inequalities]
    if any(len(a) != dim for a in rows):
        raise RankMismatch("inequality rank differs from ambient dimension")
    if dim > DD_MAX_RANK:
        raise ValueError(f"double description is supported for rank <= {DD_MAX_RANK}")
    basis_idx = lp.independent_subset(rows)
    if len(basis_idx) < dim:
        raise ValueError("inequality system does not define a pointed cone")
    basis_idx = basis_idx[:dim]
    B = [rows[i] for i in basis_idx]
    rays = []
    for j in range(dim):
        rhs = [Fraction(-1 if i == j else 0) for i in range(dim)]
        r = lp.solve_square(B, rhs)
        zero_set = frozenset(basis_idx[i] for i in range(dim) if i != j)
        rays.append((_normalize(r), zero_set))
    added = set(basis_idx)
    for t, a in enumerate(rows):
        if t in basis_idx:
            continue
        vals = [(_dotq(a, r), r, z) for r, z in rays]
        pos = [(v, r, z) for v, r, z in vals if v > 0]
        neg = [(v, r, z) for v, r, z in vals if v < 0]
        new = [(r, z | {t}) if v == 0 else (r, z) for v, r, z in vals if v <= 0]
        for vp, rp, zp in pos:
            for vn, rn, zn in neg:
                common = zp & zn
                if len(common) < dim - 2:
                    continue
                if lp.rank([rows[i] for i in common]) != dim - 2:
                    continue
                comb = [vp * x - vn * y for x, y in zip(rn, rp)]
                new.append((_normalize(comb), common | {t}))
        added.add(t)
        distinct = dict.fromkeys(r for r, _ in new)
        rays = [(r, frozenset(i for i in added if _dotq(rows[i], r) == 0)) for r in distinct]
    return sorted(lp.primitive_integer(r) for r, _ in rays)


def _dotq(a, r) -> Fraction:
    return sum((x * y for x, y in zip(a, r)), Fraction(0))


def _normalize(v) -> tuple:
    return tuple(Fraction(x) for x in lp.primitive_integer(v))


def facet_normals(cone: IntegralCone) -> list:
    """Outer normals y with cone = {x : y . x <= 0 for all y}; needs full rank."""
    if not cone.is_full_rank:
        raise ValueError("facet description needs a full-rank cone")
    return extreme_rays(cone.generators, cone.rank)


def intersect_cones(c1: IntegralCone, c2: IntegralCone) -> list:
    """Extreme rays of c1 intersected with c2 (both full rank and pointed)."""
    if c1.rank != c2.rank:
        raise RankMismatch("cone ranks differ")
    ineqs = facet_normals(c1) + facet_normals(c2)
    return extreme_rays(ineqs, c1.rank)


# -- perturbation cover ------------------------------------------------------


@dataclass(frozen=True)
class PerturbationCover:
    forms: tuple             # xi + alpha_1, xi - alpha_1, ..., xi - alpha_m
    gamma_rays: tuple        # extreme rays of {x : every form <= 0}
    gamma0: IntegralCone     # integral xi-cone containing that cone
    shift: tuple             # b with {x : form_i(x) <= A_i} inside gamma0 + b
    base_point: tuple        # x0 with every form strictly negative


def perturbation_cone(xi: GradingForm, eps, bounds: Sequence) -> PerturbationCover:
    """Small perturbations xi +- alpha_i of xi and an integral cover of the
    region where all of them are bounded above.

    alpha_i = delta * (i-th coordinate form) with delta = min(eps, |xi|_max) / 2.
    bounds holds one upper bound per form, in the order of ``forms``.
    """
    eps = as_rational(eps)
    if eps <= 0:
        raise ValueError("eps must be positive")
    m = xi.rank
    delta = min(eps, max(abs(w) for w in xi.weights)) / 2
    forms = []
    for i in range(m):
        for s in (1, -1):
            forms.append(GradingForm(tuple(w + (s * delta if j == i else 0) for j, w in enumerate(xi.weights))))
    bounds = [as_rational(b) for b in bounds]
    if len(bounds) != len(forms):
        raise ValueError(f"need {len(forms)} bounds, one per perturbed form")
    rays = extreme_rays([f.weights for f in forms], m)
    gamma0 = integral_hull(rays, xi, xi)
    x0 = negative_lattice_vector([xi] + forms)
    if x0 is None:
        raise ArithmeticError("no lattice point with all perturbed forms negative")
    p = 0
    for f, a in zip(forms, bounds):
        beta = -f(x0)
        if a > 0:
            p = max(p, ceil(a / beta))
    shift = tuple(-p * v for v in x0)
    return PerturbationCover(tuple(forms), tuple(rays), gamma0, shift, x0)


# -- intersection cover ------------------------------------------------------


def negatively_proportional(xi: GradingForm, eta: GradingForm) -> bool:
    if lp.rank([xi.weights, eta.weights]) != 1:
        return False
    i = next(j for j, w in enumerate(xi.weights) if w != 0)
    return (eta.weights[i] / xi.weights[i]) < 0


def _smallest_n(cone: IntegralCone, a: tuple, h: tuple) -> int:
    """Least N >= 0 with a + N*h in cone (h interior, so N exists)."""
    def ok(n):
        return cone.contains(tuple(x + n * y for x, y in zip(a, h)))
    if ok(0):
        return 0
    hi = 1
    while not ok(hi):
        hi *= 2
    lo = hi // 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid
    return hi


def cone_intersection_cover(
    gamma1: IntegralCone,
    a1: Sequence,
    gamma2: IntegralCone,
    a2: Sequence,
    xi: GradingForm,
    eta: GradingForm,
):
    """A shifted integral (xi, eta)-cone containing (gamma1 + a1) & (gamma2 + a2).

    Returns a ShiftedCone, or a BoundedIntersection marker when xi and eta are
    negatively proportional.
    """
    m = gamma1.rank
    _check_form_ranks(m, xi, eta)
    if gamma2.rank != m:
        raise RankMismatch("cone ranks differ")
    a1, a2 = as_exponent(a1), as_exponent(a2)
    if negatively_proportional(xi, eta):
        return BoundedIntersection(xi, eta)
    if not is_eta_cone(gamma1, xi):
        raise ValueError("gamma1 is not an integral xi-cone")
    if not is_eta_cone(gamma2, eta):
        raise ValueError("gamma2 is not an integral eta-cone")
    h = negative_lattice_vector([xi, eta])
    if h is None:
        raise ArithmeticError("no lattice vector negative on both forms")
    # enlarge both cones so that h is interior; the new vectors are negative
    # on both forms, so gamma1 stays a xi-cone and gamma2 an eta-cone
    extra = [lp.primitive_integer(v) for v in _completion_vectors(h, [xi, eta])]
    g1 = IntegralCone(tuple(dict.fromkeys(gamma1.generators + tuple(extra))), m)
    g2 = IntegralCone(tuple(dict.fromkeys(gamma2.generators + tuple(extra))), m)
    n = max(_smallest_n(g1, a1, h), _smallest_n(g2, a2, h))
    rays = intersect_cones(g1, g2)
    delta = integral_hull(rays, xi, eta)
    return ShiftedCone(delta, tuple(-n * x for x in h))


# -- growth transfer ---------------------------------------------------------


def growth_transfer_constants(cone: IntegralCone, xi: GradingForm, eta: GradingForm, b: Sequence) -> tuple:
    """Constants (A, B) with (cone + b) & {xi >= c} inside {eta >= A*c + B} for every c.

    A is the least admissible slope, max_i eta(e_i)/xi(e_i): then
    eta(e_i) >= A*xi(e_i) on every generator, hence eta >= A*xi on the cone.
    B = eta(b) - A*xi(b).
    """
    _check_form_ranks(cone.rank, xi, eta)
    b = as_exponent(b)
    if not cone.generators:
        raise ValueError("cone has no generators")
    ratios = []
    for e in cone.generators:
        x, y = xi(e), eta(e)
        if x >= 0 or y >= 0:
            raise ValueError(f"generator {e} is not strictly negative on both forms")
        ratios.append(Fraction(y) / Fraction(x))
    A = max(ratios)
    B = Fraction(eta(b)) - A * Fraction(xi(b))
    return A, B


def lattice_points(shifted: ShiftedCone, xi: GradingForm, c, limit: int = 200000) -> list:
    """All lattice points of cone + b with xi >= c, for an integral xi-cone.

    Enumerates a bounding box derived from the cone's extreme rays, then
    filters by exact membership.  Used by tests and by the CLI report.
    """
    cone = shifted.cone
    m = cone.rank
    c = as_rational(c)
    normals = facet_normals(cone)
    rays = extreme_rays(normals, m)
    # every x in the cone with xi(x) >= c - xi(b) is a combination of rays
    # with sum_r lambda_r * xi(r) >= c', so lambda_r <= c'/xi(r)
    cprime = c - Fraction(xi(shifted.shift))
    if cprime > 0:
        return []
    lo = [0] * m
    hi = [0] * m
    for r in rays:
        lam = cprime / Fraction(xi(r))
        for i in range(m):
            v = lam * r[i]
            if v < 0:
                lo[i] += v
            else:
                hi[i] += v
    ranges = [range(floor(l), ceil(h) + 1) for l, h in zip(lo, hi)]
    # the last coordinate is solved from the inequalities instead of scanned
    rows = [tuple(Fraction(a) for a in nrm) for nrm in normals]
    rows.append(tuple(-Fraction(w) for w in xi.weights))
    rhs = [Fraction(0)] * len(normals) + [-cprime]
    total = 1
    for r in ranges[:-1]:
        total *= len(r)
    if total > limit:
        raise ValueError(f"lattice enumeration of {total} points exceeds limit {limit}")
    out = []
    for head in itertools.product(*ranges[:-1]):
        low, high = ranges[-1].start, ranges[-1].stop - 1
        for a, b in zip(rows, rhs):
            rest = b - sum(x * y for x, y in zip(a, head))
            if a[-1] > 0:
                high = min(high, floor(rest / a[-1]))
            elif a[-1] < 0:
                low = max(low, ceil(rest / a[-1]))
            elif rest < 0:
                low, high = 1, 0
                break
        for last in range(low, high + 1):
            out.append(exp_add(head + (last,), shifted.shift))
    return out

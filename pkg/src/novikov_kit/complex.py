"""Novikov complexes assembled from boundary data between adjacent indices.

Each boundary entry between critical points x (index p) and y (index p-1)
is a type-(L) datum, an explicit rational presentation, or zero.  The
boundary operators are evaluated as matrices of truncations; d^2 = 0 is
checked above a soundly propagated cutoff.
"""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Union

from .cones import IntegralCone, ShiftedCone
from .group_ring import GradingForm, LaurentElement, as_exponent, as_rational
from .novikov_series import NovikovTruncation, TypeLDatum, nv_zero, require_primitive, type_L_eval
from .rationality import RationalPresentation, closed_form_type_L, expand

Entry = Union[TypeLDatum, RationalPresentation, None]


@dataclass(frozen=True)
class CriticalPoint:
    name: str
    index: int


@dataclass(frozen=True)
class MorseSystem:
    rank: int
    xi: GradingForm
    theta: tuple
    points: tuple
    entries: dict = field(hash=False)

    def __post_init__(self):
        require_primitive(self.xi)
        object.__setattr__(self, "theta", as_exponent(self.theta))
        if self.xi.rank != self.rank or len(self.theta) != self.rank:
            raise ValueError("rank, grading form and theta disagree")
        if self.xi(self.theta) != -1:
            raise ValueError("theta must have grade -1")
        names = [p.name for p in self.points]
        if len(set(names)) != len(names):
            raise ValueError("critical point names must be unique")
        idx = {p.name: p.index for p in self.points}
        for (x, y), e in self.entries.items():
            if x not in idx or y not in idx:
                raise ValueError(f"entry ({x}, {y}) names an unknown point")
            if idx[x] != idx[y] + 1:
                raise ValueError(f"entry ({x}, {y}) does not lower the index by one")
            if e is not None and e.xi != self.xi:
                raise ValueError(f"entry ({x}, {y}) uses a different grading form")
            if isinstance(e, TypeLDatum) and e.theta != self.theta:
                raise ValueError(f"entry ({x}, {y}) uses a different theta")

    def index_of(self, name: str) -> int:
        for p in self.points:
            if p.name == name:
                return p.index
        raise KeyError(f"unknown critical point {name!r}")

    def points_of_index(self, p: int) -> list:
        return [q.name for q in self.points if q.index == p]

    @property
    def indices(self) -> list:
        return sorted({p.index for p in self.points})


def incidence_series(sys: MorseSystem, x: str, y: str, cutoff) -> NovikovTruncation:
    if sys.index_of(x) != sys.index_of(y) + 1:
        raise ValueError(f"ind {x} must equal ind {y} + 1")
    if (x, y) not in sys.entries:
        raise KeyError(f"no boundary entry for ({x}, {y})")
    return _evaluate(sys.entries[(x, y)], sys.xi, cutoff)


def _evaluate(entry: Entry, xi: GradingForm, cutoff) -> NovikovTruncation:
    if entry is None:
        return nv_zero(xi, cutoff)
    if isinstance(entry, TypeLDatum):
        return type_L_eval(entry, cutoff)
    return expand(entry, cutoff)


def _workers() -> int:
    env = os.environ.get("NOVIKOV_KIT_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return min(4, os.cpu_count() or 1)


def boundary_matrix(sys: MorseSystem, p: int, cutoff) -> tuple:
    """Matrix with rows indexed by index-(p-1) points and columns by index-p
    points; pairs without an entry count as zero."""
    xs = sys.points_of_index(p)
    ys = sys.points_of_index(p - 1)
    if not xs or not ys:
        raise ValueError(f"indices {p} and {p - 1} must both be populated")
    pairs = [(x, y) for y in ys for x in xs]

    def one(pair):
        return _evaluate(sys.entries.get(pair), sys.xi, cutoff)

    with ThreadPoolExecutor(max_workers=_workers()) as pool:
        flat = list(pool.map(one, pairs))
    n = len(xs)
    return tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(len(ys)))


@dataclass(frozen=True)
class DSquaredResult:
    index: int            # p: the composite d_{p-1} d_p
    residual_norm: int    # max 1-norm of an entry above its validity cutoff
    valid_above: Fraction  # every residual entry is exact at grades >= this

    @property
    def ok(self) -> bool:
        return self.residual_norm == 0


def _mat_product(a: tuple, b: tuple) -> tuple:
    rows = []
    for ra in a:
        row = []
        for j in range(len(b[0])):
            acc = None
            for k, x in enumerate(ra):
                t = x * b[k][j]
                acc = t if acc is None else acc + t
            row.append(acc)
        rows.append(tuple(row))
    return tuple(rows)


def verify_d_squared(sys: MorseSystem, cutoff) -> list:
    """For each p with indices p, p-1, p-2 populated, the residual of
    d_{p-1} . d_p above the propagated cutoff."""
    cutoff = as_rational(cutoff)
    out = []
    for p in sys.indices:
        if not (sys.points_of_index(p) and sys.points_of_index(p - 1) and sys.points_of_index(p - 2)):
            continue
        outer = boundary_matrix(sys, p - 1, cutoff)
        inner = boundary_matrix(sys, p, cutoff)
        prod = _mat_product(outer, inner)
        norm = max(e.terms.norm() for r in prod for e in r)
        valid = max(e.cutoff for r in prod for e in r)
        out.append(DSquaredResult(p, norm, valid))
    return out


@dataclass(frozen=True)
class ConeCertificate:
    cone: IntegralCone
    shift: tuple

    def __post_init__(self):
        object.__setattr__(self, "shift", as_exponent(self.shift))


def cone_support_check(a: NovikovTruncation, cert: ConeCertificate) -> bool:
    """Whether every stored support point lies in cone + shift.

    Only the truncation is examined, so a True answer holds down to the
    truncation's cutoff.
    """
    shifted = ShiftedCone(cert.cone, cert.shift)
    return all(shifted.contains(g) for g in a.terms.support())


# -- the built-in surface example -------------------------------------------

# Psi_* o H(v) on H_1 in the basis (a_1, b_1, a_2, b_2); column j is the
# image of the j-th basis vector, so D(b_2) = 2a_1 + a_2 + 3b_2 and D(a_2) = -b_2.
S3_D = (
    (0, 0, 0, 2),
    (0, 0, 0, 0),
    (0, 0, 0, 1),
    (0, 0, -1, 3),
)
S3_X = (0, 1, 0, -2)   # Psi_*([beta(0,2)]) = b_1 - 2 b_2
S3_Y = (1, 0, 0, 0)    # a_1-coordinate
S3_CALIBRATION = (
    "basis (a1, b1, a2, b2), D acting on columns; X = b1 - 2*b2, Y = a1-coordinate, "
    "r*q = t^-1. No sign adjustment was needed: n_2 = Y.D.X = -4 directly."
)


def s3_system() -> MorseSystem:
    xi = GradingForm((1,))
    theta = (-1,)
    tinv = LaurentElement.monomial((-1,))
    A = tuple(tuple(tinv * v for v in row) for row in S3_D)
    X = tuple(LaurentElement.constant(v, 1) for v in S3_X)
    Y = tuple(LaurentElement.constant(v, 1) for v in S3_Y)
    datum = TypeLDatum(r=(-1,), q=(0,), A=A, X=X, Y=Y, xi=xi, theta=theta)
    points = (CriticalPoint("x", 2), CriticalPoint("y", 1))
    return MorseSystem(1, xi, theta, points, {("x", "y"): datum})


def s3_closed_form(k: int, digits: int = 60) -> Decimal:
    """-4/sqrt5 * (l1^(k-1) - l2^(k-1)): the published closed form for n_k, k >= 1."""
    with localcontext() as ctx:
        ctx.prec = digits
        r5 = Decimal(5).sqrt()
        l1 = (3 + r5) / 2
        l2 = (3 - r5) / 2
        return -4 / r5 * (l1 ** (k - 1) - l2 ** (k - 1))


@dataclass(frozen=True)
class S3Row:
    k: int
    n: int
    closed: Decimal | None
    rel_error: float | None


@dataclass(frozen=True)
class S3Report:
    rows: tuple
    recurrence_ok: bool          # n_{k+2} = 3 n_{k+1} - n_k for 1 <= k <= depth - 2
    max_rel_error: float
    closed_form_presentation: RationalPresentation
    closed_form_matches: bool    # expansion of adj/det agrees with the series
    calibration: str = S3_CALIBRATION


def s3_coefficients(depth: int) -> list:
    """[n_0, ..., n_depth] with n_k the coefficient of t^-k."""
    sys = s3_system()
    series = incidence_series(sys, "x", "y", -depth)
    return [series.terms.coefficient((-k,)) for k in range(depth + 1)]


def builtin_example_s3(depth: int = 25) -> tuple:
    if depth < 2:
        raise ValueError("depth must be at least 2")
    sys = s3_system()
    series = incidence_series(sys, "x", "y", -depth)
    n = [series.terms.coefficient((-k,)) for k in range(depth + 1)]
    rows = []
    worst = 0.0
    for k, nk in enumerate(n):
        if k == 0:
            rows.append(S3Row(0, nk, None, None))
            continue
        cf = s3_closed_form(k)
        if nk == 0:
            err = float(abs(cf))
        else:
            err = float(abs((cf - nk) / nk))
        worst = max(worst, err)
        rows.append(S3Row(k, nk, cf, err))
    rec = all(n[k + 2] == 3 * n[k + 1] - n[k] for k in range(1, depth - 1))
    rp = closed_form_type_L(sys.entries[("x", "y")])
    matches = expand(rp, -depth) == series
    return sys, S3Report(tuple(rows), rec, worst, rp, matches)

"""Truncated elements of the Novikov completion Z[Z^m]_xi^- and the
series they come from: geometric series of matrices, theta-semilinear
powers, type-(L) incidence data and exponential-growth profiles.

A NovikovTruncation is exact on every monomial g with xi(g) >= cutoff and
stores nothing below the cutoff.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Callable, Sequence

from . import matrix as mx
from .group_ring import (
    GradingForm,
    LaurentElement,
    RankMismatch,
    as_exponent,
    as_rational,
    exp_add,
    exp_scale,
)


class SupportError(ValueError):
    """An element's support violates a grading condition."""


@dataclass(frozen=True)
class NovikovTruncation:
    terms: LaurentElement
    xi: GradingForm
    cutoff: Fraction

    def __post_init__(self):
        if self.terms.rank != self.xi.rank:
            raise RankMismatch("terms and grading form have different ranks")
        c = as_rational(self.cutoff)
        object.__setattr__(self, "cutoff", c)
        object.__setattr__(self, "terms", self.terms.truncate(self.xi, c))

    @property
    def rank(self) -> int:
        return self.xi.rank

    def max_grade(self):
        """Largest grade that can carry a nonzero term.

        For a stored-empty truncation the true element may still have terms
        just below the cutoff, so the cutoff itself is the sound answer.
        """
        g = self.terms.max_grade(self.xi)
        return self.cutoff if g is None else g

    def retruncate(self, c) -> "NovikovTruncation":
        c = as_rational(c)
        if c < self.cutoff:
            raise ValueError(f"cannot extend validity from {self.cutoff} down to {c}")
        return NovikovTruncation(self.terms, self.xi, c)

    def coefficient(self, g) -> int:
        if self.xi(g) < self.cutoff:
            raise ValueError(f"monomial {tuple(g)} lies below the validity cutoff {self.cutoff}")
        return self.terms.coefficient(g)

    def __add__(self, other: "NovikovTruncation") -> "NovikovTruncation":
        _check_same_form(self, other)
        return NovikovTruncation(self.terms + other.terms, self.xi, max(self.cutoff, other.cutoff))

    def __neg__(self) -> "NovikovTruncation":
        return NovikovTruncation(-self.terms, self.xi, self.cutoff)

    def __sub__(self, other: "NovikovTruncation") -> "NovikovTruncation":
        return self + (-other)

    def __mul__(self, other: "NovikovTruncation") -> "NovikovTruncation":
        return nv_mul(self, other)


def _check_same_form(a: NovikovTruncation, b: NovikovTruncation) -> None:
    if a.xi != b.xi:
        raise ValueError(f"grading mismatch: {a.xi} vs {b.xi}")


def nv_mul(a: NovikovTruncation, b: NovikovTruncation) -> NovikovTruncation:
    """Product with cutoff max(cutoff_a + maxgrade(b), cutoff_b + maxgrade(a))."""
    _check_same_form(a, b)
    cutoff = max(a.cutoff + b.max_grade(), b.cutoff + a.max_grade())
    return NovikovTruncation(a.terms.truncate(a.xi, cutoff - b.max_grade()) * b.terms, a.xi, cutoff)


def nv_zero(xi: GradingForm, cutoff) -> NovikovTruncation:
    return NovikovTruncation(LaurentElement.zero(xi.rank), xi, cutoff)


# -- integrality helpers -----------------------------------------------------


def require_primitive(xi: GradingForm) -> None:
    if not xi.is_primitive:
        raise ValueError(f"grading form {xi} must be integer-valued with coprime weights")


def default_theta(xi: GradingForm) -> tuple:
    """A lattice vector theta with xi(theta) = -1, from the extended gcd of the weights.

    Deterministic: weights are folded left to right with Bezout coefficients.
    """
    require_primitive(xi)
    w = [int(x) for x in xi.weights]
    coeffs = [0] * len(w)
    g = 0
    for i, x in enumerate(w):
        if x == 0:
            continue
        if g == 0:
            g = abs(x)
            coeffs[i] = 1 if x > 0 else -1
            continue
        d, s, t = _ext_gcd(g, x)
        coeffs = [s * c for c in coeffs]
        coeffs[i] = t
        g = d
    theta = tuple(-c for c in coeffs)
    assert xi(theta) == -1
    return theta


def _ext_gcd(a: int, b: int) -> tuple:
    """(d, s, t) with s*a + t*b = d = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def check_level(a: LaurentElement, xi: GradingForm, level: int, what: str) -> None:
    bad = [g for g in a.support() if xi(g) != level]
    if bad:
        raise SupportError(f"{what}: support point {bad[0]} has grade {xi(bad[0])}, expected {level}")


# -- geometric series --------------------------------------------------------


def geometric_series(A: Sequence[Sequence[LaurentElement]], xi: GradingForm, cutoff) -> tuple:
    """sum_{s >= 0} A^s as a matrix of truncations valid above ``cutoff``.

    Every entry of A must be supported strictly below grade 0.  With
    delta < 0 the top grade among the entries, A^s lives at grades <= s*delta,
    so the sum stops at s = ceil(cutoff / delta).
    """
    A = mx.as_matrix(A)
    k = len(A)
    rank = mx.ambient_rank(A)
    if rank != xi.rank:
        raise RankMismatch("matrix and grading form have different ranks")
    cutoff = as_rational(cutoff)
    tops = [x.max_grade(xi) for r in A for x in r if x]
    if any(t >= 0 for t in tops):
        raise SupportError("geometric series needs every entry supported in xi < 0")
    total = mx.identity(k, rank)
    if tops:
        delta = Fraction(max(tops))
        steps = max(0, ceil(cutoff / delta))
        power = mx.identity(k, rank)
        for _ in range(steps):
            power = mx.mat_truncate(mx.mat_mul(power, A), xi, cutoff)
            total = mx.mat_add(total, power)
    return tuple(tuple(NovikovTruncation(x, xi, cutoff) for x in row) for row in total)


# -- theta-semilinear maps ---------------------------------------------------


@dataclass(frozen=True)
class SemilinearMatrix:
    """Matrix (m_ij) of a theta-semilinear endomorphism of a free Z[Ker xi]-module."""

    entries: tuple
    theta: tuple
    xi: GradingForm

    def __post_init__(self):
        ents = mx.as_matrix(self.entries)
        object.__setattr__(self, "entries", ents)
        object.__setattr__(self, "theta", as_exponent(self.theta))
        require_primitive(self.xi)
        if self.xi(self.theta) != -1:
            raise SupportError(f"theta {self.theta} has grade {self.xi(self.theta)}, expected -1")
        for row in ents:
            for x in row:
                check_level(x, self.xi, 0, "semilinear matrix entry")

    @property
    def size(self) -> int:
        return len(self.entries)

    def twisted(self) -> tuple:
        """The matrix (m_ij * theta)."""
        return tuple(tuple(x.shift(self.theta) for x in row) for row in self.entries)


def semilinear_power(M: SemilinearMatrix, x: Sequence[LaurentElement], s: int) -> tuple:
    """Coordinates of mu^s(x): [M theta]^s x theta^(-s)."""
    if s < 0:
        raise ValueError("power must be nonnegative")
    if len(x) != M.size:
        raise ValueError("vector length differs from matrix size")
    for v in x:
        check_level(v, M.xi, 0, "semilinear argument")
    twisted = M.twisted()
    vec = tuple(x)
    for _ in range(s):
        vec = mx.mat_vec(twisted, vec)
    back = exp_scale(-s, M.theta)
    out = tuple(v.shift(back) for v in vec)
    for v in out:
        check_level(v, M.xi, 0, "semilinear result")
    return out


# -- type (L) data -----------------------------------------------------------


@dataclass(frozen=True)
class TypeLDatum:
    """r * (sum_s sum_ij Y_i [A^s]_ij X_j) * q with A at grade -1 and X, Y at grade 0."""

    r: tuple
    q: tuple
    A: tuple
    X: tuple
    Y: tuple
    xi: GradingForm
    theta: tuple | None = None

    def __post_init__(self):
        require_primitive(self.xi)
        m = self.xi.rank
        A = mx.as_matrix(self.A)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "r", as_exponent(self.r))
        object.__setattr__(self, "q", as_exponent(self.q))
        object.__setattr__(self, "X", tuple(self.X))
        object.__setattr__(self, "Y", tuple(self.Y))
        if self.theta is None:
            object.__setattr__(self, "theta", default_theta(self.xi))
        else:
            object.__setattr__(self, "theta", as_exponent(self.theta))
            if self.xi(self.theta) != -1:
                raise SupportError(f"theta {self.theta} has grade {self.xi(self.theta)}, expected -1")
        k = len(A)
        if len(self.X) != k or len(self.Y) != k:
            raise ValueError(f"X and Y must have length {k}")
        if mx.ambient_rank(A) != m or len(self.r) != m or len(self.q) != m:
            raise RankMismatch("datum components have inconsistent ranks")
        for row in A:
            for a in row:
                check_level(a, self.xi, -1, "A entry")
        for v in self.X + self.Y:
            if v.rank != m:
                raise RankMismatch("datum components have inconsistent ranks")
            check_level(v, self.xi, 0, "X/Y entry")

    @property
    def size(self) -> int:
        return len(self.A)

    @property
    def rank(self) -> int:
        return self.xi.rank

    @property
    def shift(self) -> tuple:
        return exp_add(self.r, self.q)

    def negated(self) -> "TypeLDatum":
        return TypeLDatum(self.r, self.q, self.A, self.X, tuple(-y for y in self.Y), self.xi, self.theta)


def type_L_eval(d: TypeLDatum, cutoff) -> NovikovTruncation:
    """The type-(L) element of ``d`` exactly above ``cutoff``."""
    cutoff = as_rational(cutoff)
    base = Fraction(d.xi(d.r) + d.xi(d.q))
    # Y A^s X sits at grade -s; r and q shift grades by base
    steps = ceil(base - cutoff)
    rank = d.rank
    acc = LaurentElement.zero(rank)
    vec = d.X
    for s in range(max(steps, -1) + 1):
        acc = acc + mx.vec_dot(d.Y, vec)
        if s < steps:
            vec = mx.mat_vec(d.A, vec)
    return NovikovTruncation(acc.shift(d.shift), d.xi, cutoff)


# -- growth ------------------------------------------------------------------


def growth_profile(a: NovikovTruncation, depth: int) -> list:
    """[(c, N_c)] for c = 0, -1, ..., -depth, where N_c is the norm of a above c."""
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    if a.cutoff > -depth:
        raise ValueError(f"depth {depth} exceeds validity (cutoff {a.cutoff})")
    # one pass: bucket norms by grade
    by_grade: dict = {}
    for g, c in a.terms.items():
        gr = a.xi(g)
        by_grade[gr] = by_grade.get(gr, 0) + abs(c)
    out = []
    for c in range(0, -depth - 1, -1):
        out.append((c, sum(v for gr, v in by_grade.items() if gr >= c)))
    return out


@dataclass(frozen=True)
class GrowthFit:
    A: float
    B: float

    def bound(self, c) -> float:
        return self.A * math.exp(-float(c) * self.B)


def growth_fit(profile: Sequence[tuple], tail_from=None) -> GrowthFit:
    """Constants with N_c <= A * exp(-c*B) on every profiled point.

    B is the largest log-ratio ln(N_{c-1}/N_c) over consecutive profile points
    with positive N_c; when ``tail_from`` is given only pairs with
    c <= tail_from count, which estimates the asymptotic rate instead of the
    worst early ratio.  A is then the smallest constant that makes the bound
    hold on the whole profile.
    """
    if not profile:
        raise ValueError("empty profile")
    pts = sorted(((Fraction(c), n) for c, n in profile), reverse=True)
    if any(n < 0 for _, n in pts):
        raise ValueError("norms must be nonnegative")
    B = 0.0
    for (c0, n0), (c1, n1) in zip(pts, pts[1:]):
        if n0 <= 0 or n1 <= 0:
            continue
        if tail_from is not None and c0 > as_rational(tail_from):
            continue
        B = max(B, math.log(n1 / n0) / float(c0 - c1))
    A = max(n * math.exp(float(c) * B) for c, n in pts)
    for c, n in pts:
        while n > A * math.exp(-float(c) * B):
            A = math.nextafter(A, math.inf)
    return GrowthFit(A, B)


def level_sums(a: LaurentElement, xi: GradingForm) -> dict:
    """grade -> sum of |coefficients| at that grade."""
    out: dict = {}
    for g, c in a.items():
        gr = xi(g)
        out[gr] = out.get(gr, 0) + abs(c)
    return out


def theoretical_growth_bound(A: Sequence[Sequence[LaurentElement]]) -> Callable[[int], int]:
    """k -> (size * ||A||)^k, the per-level bound for entries of sum A^s."""
    A = mx.as_matrix(A)
    base = len(A) * mx.matrix_norm(A)
    return lambda k: base ** k

"""Rational closed forms shift * P / Q with Q in S_xi (constant term 1, the
rest strictly below grade 0), their expansion back into truncations, and
recognition of such forms from a finite stretch of coefficients.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Sequence

from . import matrix as mx
from .group_ring import (
    GradingForm,
    LaurentElement,
    RankMismatch,
    as_exponent,
    as_rational,
    exact_divide,
    exp_scale,
    exp_sub,
)
from .novikov_series import (
    NovikovTruncation,
    SupportError,
    TypeLDatum,
    require_primitive,
)


@dataclass(frozen=True)
class RationalPresentation:
    P: LaurentElement
    Q: LaurentElement
    shift: tuple
    xi: GradingForm

    def __post_init__(self):
        object.__setattr__(self, "shift", as_exponent(self.shift))
        m = self.xi.rank
        if self.P.rank != m or self.Q.rank != m or len(self.shift) != m:
            raise RankMismatch("presentation components have inconsistent ranks")
        if not in_S_xi(self.Q, self.xi):
            raise SupportError("Q must have constant term 1 and Q - 1 supported in xi < 0")


def in_S_xi(Q: LaurentElement, xi: GradingForm) -> bool:
    if Q.coefficient((0,) * Q.rank) != 1:
        return False
    rest = Q - 1
    return all(xi(g) < 0 for g in rest.support())


def _check_negative_support(A: mx.Matrix, xi: GradingForm) -> None:
    for row in A:
        for x in row:
            if any(xi(g) >= 0 for g in x.support()):
                raise SupportError("matrix entries must be supported in xi < 0")


def adjugate_closed_form(A: Sequence[Sequence[LaurentElement]], xi: GradingForm) -> tuple:
    """(adj(1 - A), det(1 - A)), with (1 - A) adj = det * 1 checked before return."""
    A = mx.as_matrix(A)
    if mx.ambient_rank(A) != xi.rank:
        raise RankMismatch("matrix and grading form have different ranks")
    _check_negative_support(A, xi)
    k = len(A)
    rank = xi.rank
    one_minus = mx.mat_sub(mx.identity(k, rank), A)
    det, adj = mx.det_adjugate(one_minus)
    if mx.mat_mul(one_minus, adj) != mx.mat_scale(det, mx.identity(k, rank)):
        raise ArithmeticError("adjugate identity failed")
    if not in_S_xi(det, xi):
        raise ArithmeticError("det(1 - A) is not in S_xi")
    return adj, det


def closed_form_type_L(d: TypeLDatum) -> RationalPresentation:
    """P = Y . adj(1 - A) . X, Q = det(1 - A), shift = r + q."""
    adj, det = adjugate_closed_form(d.A, d.xi)
    P = mx.vec_dot(d.Y, mx.mat_vec(adj, d.X))
    return RationalPresentation(P, det, d.shift, d.xi)


def _grade_buckets(a: LaurentElement, xi: GradingForm) -> dict:
    out: dict = {}
    for g, c in a.items():
        out.setdefault(Fraction(xi(g)), {})[g] = c
    return {k: LaurentElement._raw(v, a.rank) for k, v in out.items()}


def divide_in_completion(P: LaurentElement, Q: LaurentElement, xi: GradingForm, cutoff) -> LaurentElement:
    """P * Q^{-1} exactly on grades >= cutoff, for Q in S_xi.

    With R = 1 - Q the quotient u solves u = P + R*u.  R lives strictly below
    grade 0, so the part of u at grade gamma only needs parts of u at higher
    grades; grades are visited from the top down.
    """
    cutoff = as_rational(cutoff)
    rank = xi.rank
    Pb = _grade_buckets(P, xi)
    Rb = _grade_buckets(LaurentElement.one(rank) - Q, xi)
    heap = [-g for g in Pb if g >= cutoff]
    heapq.heapify(heap)
    queued = set(heap)
    u: dict = {}
    while heap:
        gamma = -heapq.heappop(heap)
        acc = Pb.get(gamma, LaurentElement.zero(rank))
        for rho, r in Rb.items():
            prev = u.get(gamma - rho)
            if prev:
                acc = acc + r * prev
        if not acc:
            continue
        u[gamma] = acc
        for rho in Rb:
            nxt = gamma + rho
            if nxt >= cutoff and -nxt not in queued:
                queued.add(-nxt)
                heapq.heappush(heap, -nxt)
    return LaurentElement([t for part in u.values() for t in part.items()], rank=rank)


def inverse_series(Q: LaurentElement, xi: GradingForm, cutoff) -> LaurentElement:
    """Q^{-1} = sum_s (1 - Q)^s, exact on grades >= cutoff, for Q in S_xi."""
    return divide_in_completion(LaurentElement.one(xi.rank), Q, xi, cutoff)


def expand(rp: RationalPresentation, cutoff) -> NovikovTruncation:
    """shift * P * Q^{-1}, exact above ``cutoff``."""
    cutoff = as_rational(cutoff)
    xi = rp.xi
    local = cutoff - xi(rp.shift)
    prod = divide_in_completion(rp.P, rp.Q, xi, local)
    return NovikovTruncation(prod.shift(rp.shift), xi, cutoff)


# -- recognition -------------------------------------------------------------


def theta_coefficients(a: NovikovTruncation, theta: Sequence[int]) -> tuple:
    """Regrade ``a`` as base * sum_k c_k theta^k with c_k in Z[Ker xi].

    Returns (base, [c_0, ..., c_K]); base is -top*theta where top is the
    highest grade in the support, so c_0 != 0.  K counts every grade down to
    the validity cutoff.
    """
    xi = a.xi
    require_primitive(xi)
    theta = as_exponent(theta)
    if len(theta) != xi.rank:
        raise RankMismatch("theta rank differs from grading rank")
    if xi(theta) != -1:
        raise SupportError(f"theta {theta} has grade {xi(theta)}, expected -1")
    top = a.terms.max_grade(xi)
    if top is None:
        top = 0
    base = exp_scale(-top, theta)
    K = top - ceil(a.cutoff)
    rank = xi.rank
    buckets = [dict() for _ in range(max(K, -1) + 1)]
    for g, c in a.terms.items():
        k = top - xi(g)
        h = exp_sub(exp_sub(g, base), exp_scale(k, theta))
        buckets[k][h] = c
    return base, [LaurentElement._raw(b, rank) for b in buckets]


def _det(rows: list, rank: int) -> LaurentElement:
    if not rows:
        return LaurentElement.one(rank)
    return mx.det_adjugate(tuple(tuple(r) for r in rows))[0]


def _fraction_free_pivots(rows: list, ncols: int, rank: int) -> tuple:
    """Row-echelon pivots of a matrix over the domain Z[H] by Bareiss
    elimination with exact division; returns (pivot_rows, pivot_cols)
    as indices into the input."""
    work = [list(r) for r in rows]
    order = list(range(len(rows)))
    prev = LaurentElement.one(rank)
    prow = []
    pcol = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(work)) if work[i][c]), None)
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        order[r], order[piv] = order[piv], order[r]
        p = work[r][c]
        for i in range(r + 1, len(work)):
            new = []
            for j in range(ncols + 1):
                v = p * work[i][j] - work[i][c] * work[r][j]
                q = exact_divide(v, prev)
                if q is None:
                    raise ArithmeticError("Bareiss division was not exact")
                new.append(q)
            work[i] = new
        prev = p
        prow.append(order[r])
        pcol.append(c)
        r += 1
        if r == len(work):
            break
    # consistency: any remaining row with zero coefficients must have zero rhs
    consistent = all(not work[i][ncols] for i in range(r, len(work)))
    return prow, pcol, consistent


def _solve_order(c: list, d: int, p: int, rank: int):
    """Division-free solution of c_j = sum_{i=1..d} q_i c_{j-i} for p < j <= K.

    Returns (D, [D_1..D_d]) with q_i = D_i / D, or None if inconsistent.
    """
    K = len(c) - 1
    zero = LaurentElement.zero(rank)

    def coef(j):
        return c[j] if 0 <= j <= K else zero

    eqs = [[coef(j - i) for i in range(1, d + 1)] + [coef(j)] for j in range(p + 1, K + 1)]
    if d == 0:
        return (LaurentElement.one(rank), []) if all(not e[-1] for e in eqs) else None
    prow, pcol, consistent = _fraction_free_pivots(eqs, d, rank)
    if not consistent:
        return None
    sub = [[eqs[i][j] for j in pcol] for i in prow]
    rhs = [eqs[i][d] for i in prow]
    D = _det(sub, rank)
    Ds = [zero] * d
    for t, j in enumerate(pcol):
        repl = [row[:t] + [b] + row[t + 1:] for row, b in zip(sub, rhs)]
        Ds[j] = _det(repl, rank)
    # every equation, scaled by D
    for e in eqs:
        lhs = D * e[d]
        acc = zero
        for i in range(d):
            if Ds[i] and e[i]:
                acc = acc + Ds[i] * e[i]
        if lhs != acc:
            return None
    return D, Ds


def recognize(a: NovikovTruncation, theta: Sequence[int], max_deg: int) -> RationalPresentation | None:
    """Find shift * P / Q reproducing ``a`` on all its valid coefficients.

    Along the theta-direction the truncation is a power series with
    coefficients in Z[Ker xi].  Orders d = 0..max_deg of the denominator are
    tried in increasing order, and for each the numerator degree p =
    0..max_deg; the first fit wins.  Returns None when nothing fits or when the
    fitted denominator cannot be normalised into S_xi.
    """
    if max_deg < 0:
        raise ValueError("max_deg must be nonnegative")
    xi = a.xi
    rank = xi.rank
    base, c = theta_coefficients(a, theta)
    theta = as_exponent(theta)
    need = 2 * max_deg + 2
    if len(c) < need:
        raise ValueError(f"recognition with max_deg {max_deg} needs {need} coefficients, have {len(c)}")
    if all(not x for x in c):
        return RationalPresentation(LaurentElement.zero(rank), LaurentElement.one(rank), (0,) * rank, xi)
    for d in range(max_deg + 1):
        for p in range(max_deg + 1):
            sol = _solve_order(c, d, p, rank)
            if sol is None:
                continue
            D, Ds = sol
            q = []
            for Di in Ds:
                qi = exact_divide(Di, D)
                if qi is None:
                    break
                q.append(qi)
            if len(q) != d:
                continue
            Q = LaurentElement.one(rank)
            for i, qi in enumerate(q, start=1):
                Q = Q - qi.shift(exp_scale(i, theta))
            # P = (Q * series) mod theta^(p+1), built from the theta-coefficients
            P = LaurentElement.zero(rank)
            for j in range(p + 1):
                cj = c[j]
                for i, qi in enumerate(q, start=1):
                    if j - i >= 0:
                        cj = cj - qi * c[j - i]
                P = P + cj.shift(exp_scale(j, theta))
            rp = RationalPresentation(P, Q, base, xi)
            if expand(rp, a.cutoff).terms != a.terms:
                continue
            return rp
    return None


def theta_polynomial(x: LaurentElement, theta: Sequence[int], xi: GradingForm) -> list:
    """Coefficients of x as a polynomial in theta, each in Z[Ker xi]."""
    theta = tuple(theta)
    out: dict = {}
    for g, c in x.items():
        k = -xi(g)
        h = exp_sub(g, exp_scale(k, theta))
        out.setdefault(k, {})[h] = c
    if not out:
        return []
    lo, hi = min(out), max(out)
    return [(k, LaurentElement(out.get(k, {}), x.rank)) for k in range(lo, hi + 1)]

"""Shared random generators: hypothesis strategies and seeded plain-random builders."""
from __future__ import annotations

import random
from fractions import Fraction
from math import gcd

from hypothesis import strategies as st

from novikov_kit.group_ring import GradingForm, LaurentElement
from novikov_kit.novikov_series import TypeLDatum, default_theta


def exponents(m, lo=-3, hi=3):
    return st.tuples(*[st.integers(lo, hi)] * m)


@st.composite
def elements(draw, m=None, max_terms=4, lo=-3, hi=3):
    if m is None:
        m = draw(st.integers(1, 3))
    terms = draw(st.lists(st.tuples(exponents(m, lo, hi), st.integers(-4, 4)), max_size=max_terms))
    return LaurentElement(terms, rank=m)


@st.composite
def rational_forms(draw, m):
    w = draw(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=4), min_size=m, max_size=m).filter(any))
    return GradingForm(tuple(Fraction(x) for x in w))


@st.composite
def primitive_forms(draw, m=None, bound=3):
    if m is None:
        m = draw(st.integers(1, 3))
    w = draw(st.lists(st.integers(-bound, bound), min_size=m, max_size=m).filter(
        lambda v: any(v) and _gcd_all(v) == 1))
    return GradingForm(tuple(w))


def _gcd_all(v):
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


# -- seeded builders ----------------------------------------------------------


def random_primitive_form(rng: random.Random, m: int, bound: int = 2) -> GradingForm:
    while True:
        w = [rng.randint(-bound, bound) for _ in range(m)]
        if any(w) and _gcd_all(w) == 1:
            return GradingForm(tuple(w))


def point_at_grade(rng: random.Random, xi: GradingForm, theta, level: int, spread: int = 2) -> tuple:
    """A lattice point of grade ``level``: a random small vector moved along theta."""
    v = [rng.randint(-spread, spread) for _ in range(xi.rank)]
    k = xi(v) - level
    return tuple(x + k * t for x, t in zip(v, theta))


def random_element_at_grade(rng, xi, theta, level, max_norm=3) -> LaurentElement:
    norm = rng.randint(0, max_norm)
    terms = []
    while norm > 0:
        c = rng.randint(1, norm)
        norm -= c
        terms.append((point_at_grade(rng, xi, theta, level), c * rng.choice((1, -1))))
    return LaurentElement(terms, rank=xi.rank)


def random_type_L_datum(rng: random.Random, max_k: int = 4, max_m: int = 3, max_norm: int = 3) -> TypeLDatum:
    m = rng.randint(1, max_m)
    k = rng.randint(1, max_k)
    xi = random_primitive_form(rng, m)
    theta = default_theta(xi)
    A = [[random_element_at_grade(rng, xi, theta, -1, max_norm) for _ in range(k)] for _ in range(k)]
    X = [random_element_at_grade(rng, xi, theta, 0, max_norm) for _ in range(k)]
    Y = [random_element_at_grade(rng, xi, theta, 0, max_norm) for _ in range(k)]
    r = tuple(rng.randint(-2, 2) for _ in range(m))
    q = tuple(rng.randint(-2, 2) for _ in range(m))
    return TypeLDatum(r, q, A, X, Y, xi, theta)


def random_negative_matrix(rng, xi, theta, size, max_norm):
    """size x size matrix over the grade -1 level with ||A|| <= max_norm."""
    return [[random_element_at_grade(rng, xi, theta, -1, max_norm) for _ in range(size)] for _ in range(size)]


def cancellation_system(rng: random.Random, use_rational: bool = False):
    """Three populated indices with d_2 = [[u], [-u]] and d_1 = [[w, w]], so d_1 d_2 = 0.

    Extra index-2 points get independent cancelling pairs of their own.
    """
    from novikov_kit.complex import CriticalPoint, MorseSystem
    from novikov_kit.rationality import closed_form_type_L

    m = rng.randint(1, 3)
    xi = random_primitive_form(rng, m)
    theta = default_theta(xi)

    def datum():
        k = rng.randint(1, 3)
        A = [[random_element_at_grade(rng, xi, theta, -1, 2) for _ in range(k)] for _ in range(k)]
        X = [random_element_at_grade(rng, xi, theta, 0, 2) for _ in range(k)]
        Y = [random_element_at_grade(rng, xi, theta, 0, 2) for _ in range(k)]
        r = tuple(rng.randint(-1, 1) for _ in range(m))
        return TypeLDatum(r, (0,) * m, A, X, Y, xi, theta)

    n_top = rng.randint(1, 2)
    points = [CriticalPoint("y1", 1), CriticalPoint("y2", 1), CriticalPoint("w", 0)]
    w = datum()
    w_entry = closed_form_type_L(w) if use_rational else w
    entries = {("y1", "w"): w_entry, ("y2", "w"): w_entry}
    for i in range(n_top):
        u = datum()
        points.append(CriticalPoint(f"z{i}", 2))
        entries[(f"z{i}", "y1")] = u
        entries[(f"z{i}", "y2")] = u.negated()
    return MorseSystem(m, xi, theta, tuple(points), entries)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)

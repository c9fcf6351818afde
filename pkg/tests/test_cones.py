import random
from fractions import Fraction

from hypothesis import given, settings, strategies as st

from novikov_kit.cones import (
    BoundedIntersection,
    IntegralCone,
    ShiftedCone,
    cone_contains,
    cone_intersection_cover,
    extreme_rays,
    growth_transfer_constants,
    integral_hull,
    is_eta_cone,
    lattice_points,
    perturbation_cone,
)
from novikov_kit.group_ring import GradingForm

from oracles import box, brute_cone_contains

FAN = IntegralCone.of((-1, 0), (-1, 1), (-1, -1))


def test_contains_examples():
    ok, lam = cone_contains(FAN, (-3, 2))
    assert ok
    assert tuple(sum(l * g[i] for l, g in zip(lam, FAN.generators)) for i in range(2)) == (-3, 2)
    assert all(l >= 0 for l in lam)
    assert cone_contains(FAN, (0, 0))[0]
    assert not cone_contains(FAN, (1, 0))[0]


def test_is_eta_cone_examples():
    assert is_eta_cone(FAN, GradingForm((1, 0)))
    assert not is_eta_cone(FAN, GradingForm((0, 1)))
    assert not is_eta_cone(IntegralCone.of((-1, -1), (-2, -2)), GradingForm((1, 1)))


def test_hull_examples():
    e1, e2 = GradingForm((1, 0)), GradingForm((1, 1))
    h = integral_hull([(-1, 0)], e1, e2)
    assert is_eta_cone(h, e1) and is_eta_cone(h, e2)
    assert h.contains((-1, 0))
    f1, f2 = GradingForm((1, 0)), GradingForm((0, 1))
    h = integral_hull([(-1, -1), (-1, -2)], f1, f2)
    assert is_eta_cone(h, f1) and is_eta_cone(h, f2)
    assert h.contains((-1, -1)) and h.contains((-1, -2))


def test_hull_of_integral_full_rank_input_keeps_generators():
    xi = GradingForm((1, 0))
    h = integral_hull(FAN.generators, xi, xi)
    assert all(h.contains(g) for g in FAN.generators)


def test_hull_accepts_rational_generators():
    xi, eta = GradingForm((1, 0)), GradingForm((1, 1))
    gens = [(Fraction(-1, 2), Fraction(1, 3)), (Fraction(-3, 2), Fraction(-1, 5))]
    h = integral_hull(gens, xi, eta)
    assert is_eta_cone(h, xi) and is_eta_cone(h, eta)
    assert all(h.contains(tuple(x * 30 for x in g)) for g in gens)


def test_perturbation_two_dim():
    xi = GradingForm((1, 0))
    cov = perturbation_cone(xi, 1, [0, 0, 0, 0])
    assert is_eta_cone(cov.gamma0, xi)
    assert cov.shift == (0, 0)
    for x in box(2, 8):
        if all(f(x) <= 0 for f in cov.forms):
            assert cov.gamma0.contains(x)


def test_perturbation_one_dim_scan():
    xi = GradingForm((1,))
    cov = perturbation_cone(xi, Fraction(1, 2), [1, 1])
    assert cov.gamma0.contains((-1,))
    assert cov.shift[0] > 0
    sc = ShiftedCone(cov.gamma0, cov.shift)
    for v in range(-10, 30):
        if all(f((v,)) <= a for f, a in zip(cov.forms, [1, 1])):
            assert sc.contains((v,))


@settings(max_examples=15, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_perturbation_cover_random(seed):
    rng = random.Random(seed)
    m = rng.randint(1, 2)
    xi = GradingForm(tuple(rng.randint(-2, 2) or 1 for _ in range(m)))
    bounds = [rng.randint(-2, 3) for _ in range(2 * m)]
    cov = perturbation_cone(xi, Fraction(rng.randint(1, 4), 4), bounds)
    assert is_eta_cone(cov.gamma0, xi)
    sc = ShiftedCone(cov.gamma0, cov.shift)
    for x in box(m, 6 if m == 2 else 20):
        if all(f(x) <= a for f, a in zip(cov.forms, bounds)):
            assert sc.contains(x)


def test_cover_examples():
    xi = GradingForm((1, 0))
    res = cone_intersection_cover(FAN, (0, 0), FAN, (0, 0), xi, xi)
    assert all(res.contains(g) for g in FAN.generators)
    one = IntegralCone.of((-1,))
    res = cone_intersection_cover(one, (2,), one, (0,), GradingForm((1,)), GradingForm((1,)))
    for v in range(-20, 3):
        if v <= 0:
            assert res.contains((v,))


def test_cover_negatively_proportional_is_bounded():
    one = IntegralCone.of((-1,))
    res = cone_intersection_cover(one, (0,), IntegralCone.of((1,)), (0,), GradingForm((1,)), GradingForm((-1,)))
    assert isinstance(res, BoundedIntersection)


def test_transfer_examples():
    g = IntegralCone.of((-1, -1), (-2, -1))
    xi, eta = GradingForm((1, 0)), GradingForm((0, 1))
    A, B = growth_transfer_constants(g, xi, eta, (0, 0))
    assert (A, B) == (1, 0)
    assert growth_transfer_constants(g, xi, xi, (0, 0)) == (1, 0)
    assert growth_transfer_constants(g, xi, eta, (0, 3)) == (1, 3)


def test_transfer_inclusion_on_lattice_points():
    g = IntegralCone.of((-1, -1), (-2, -1))
    xi, eta = GradingForm((1, 0)), GradingForm((0, 1))
    A, B = growth_transfer_constants(g, xi, eta, (0, 0))
    pts = lattice_points(ShiftedCone(g, (0, 0)), xi, -20)
    assert pts
    assert all(eta(x) >= A * xi(x) + B for x in pts)


def test_lattice_points_matches_scan():
    sc = ShiftedCone(FAN, (1, -1))
    xi = GradingForm((1, 0))
    got = set(lattice_points(sc, xi, -4))
    want = {x for x in box(2, 8) if xi(x) >= -4 and sc.contains(x)}
    assert got == want


def test_extreme_rays_of_quadrant():
    rays = extreme_rays([(1, 0), (0, 1)], 2)
    assert sorted(rays) == [(-1, 0), (0, -1)]


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(-3, 3), st.integers(-3, 3)), min_size=1, max_size=4),
       st.tuples(st.integers(-5, 5), st.integers(-5, 5)))
def test_contains_matches_brute_force(gens, x):
    gens = [g for g in gens if any(g)] or [(-1, 0)]
    cone = IntegralCone(tuple(gens), 2)
    assert cone_contains(cone, x)[0] == brute_cone_contains(gens, x)

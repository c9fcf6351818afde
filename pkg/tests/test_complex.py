import random

import pytest

from novikov_kit.complex import (
    ConeCertificate,
    CriticalPoint,
    MorseSystem,
    boundary_matrix,
    builtin_example_s3,
    cone_support_check,
    incidence_series,
    s3_coefficients,
    s3_system,
    verify_d_squared,
)
from novikov_kit.cones import IntegralCone
from novikov_kit.group_ring import GradingForm, LaurentElement as L
from novikov_kit.novikov_series import NovikovTruncation as NT, geometric_series
from novikov_kit.rationality import RationalPresentation as RP, expand

from conftest import cancellation_system

XI1 = GradingForm((1,))
HALF_LINE = ConeCertificate(IntegralCone.of((-1,)), (0,))


def _two_point(entry):
    pts = (CriticalPoint("x", 1), CriticalPoint("y", 0))
    return MorseSystem(1, XI1, (-1,), pts, {("x", "y"): entry})


def test_zero_entry():
    assert not incidence_series(_two_point(None), "x", "y", -5).terms


def test_rational_entry_passes_through():
    rp = RP(L.one(1), L({(0,): 1, (-1,): -2}), (-1,), XI1)
    assert incidence_series(_two_point(rp), "x", "y", -6) == expand(rp, -6)


def test_incidence_errors():
    sys = _two_point(None)
    with pytest.raises(ValueError):
        incidence_series(sys, "y", "x", -3)
    sys = MorseSystem(1, XI1, (-1,), (CriticalPoint("x", 1), CriticalPoint("y", 0)), {})
    with pytest.raises(KeyError):
        incidence_series(sys, "x", "y", -3)


def test_system_validation():
    with pytest.raises(ValueError):
        MorseSystem(1, XI1, (-1,), (CriticalPoint("x", 2), CriticalPoint("y", 0)), {("x", "y"): None})
    with pytest.raises(ValueError):
        MorseSystem(1, XI1, (1,), (CriticalPoint("x", 1),), {})


def test_s3_coefficients():
    n = s3_coefficients(8)
    assert n[:6] == [0, 0, -4, -12, -32, -84]
    assert n[4] == -32


def test_s3_recurrence_to_28():
    n = s3_coefficients(30)
    assert all(n[k + 2] == 3 * n[k + 1] - n[k] for k in range(2, 29))


def test_s3_boundary_matrix_is_one_by_one():
    mat = boundary_matrix(s3_system(), 2, -5)
    assert len(mat) == 1 and len(mat[0]) == 1
    with pytest.raises(ValueError):
        boundary_matrix(s3_system(), 1, -5)


def test_s3_d_squared_vacuous():
    assert verify_d_squared(s3_system(), -20) == []


def test_s3_report():
    _, rep = builtin_example_s3(25)
    assert rep.recurrence_ok and rep.closed_form_matches
    assert rep.max_rel_error < 1e-9
    assert "basis" in rep.calibration


def test_d_squared_with_zero_outer_map():
    pts = (CriticalPoint("z", 2), CriticalPoint("y", 1), CriticalPoint("w", 0))
    rp = RP(L.one(1), L({(0,): 1, (-1,): -3}), (0,), XI1)
    sys = MorseSystem(1, XI1, (-1,), pts, {("z", "y"): rp, ("y", "w"): None})
    [res] = verify_d_squared(sys, -10)
    assert res.ok and res.index == 2


@pytest.mark.parametrize("seed", range(6))
def test_d_squared_cancellation(seed):
    sys = cancellation_system(random.Random(seed), use_rational=bool(seed % 2))
    for r in verify_d_squared(sys, -8):
        assert r.residual_norm == 0


def test_d_squared_detects_noncancellation():
    pts = (CriticalPoint("z", 2), CriticalPoint("y", 1), CriticalPoint("w", 0))
    one = RP(L.one(1), L.one(1), (0,), XI1)
    sys = MorseSystem(1, XI1, (-1,), pts, {("z", "y"): one, ("y", "w"): one})
    [res] = verify_d_squared(sys, -4)
    assert not res.ok


def test_threads_env_does_not_change_results(monkeypatch):
    sys = cancellation_system(random.Random(11))
    monkeypatch.setenv("NOVIKOV_KIT_THREADS", "1")
    a = boundary_matrix(sys, 2, -6)
    monkeypatch.setenv("NOVIKOV_KIT_THREADS", "3")
    assert boundary_matrix(sys, 2, -6) == a


def test_cone_support_examples():
    assert cone_support_check(NT(L.one(1), XI1, -3), HALF_LINE)
    u = geometric_series([[L.monomial((-1,))]], XI1, -10)[0][0]
    assert cone_support_check(u, HALF_LINE)
    assert not cone_support_check(NT(L.monomial((1,)), XI1, -3), HALF_LINE)


def test_s3_support_in_half_line():
    assert cone_support_check(incidence_series(s3_system(), "x", "y", -25), HALF_LINE)


def test_s3_growth_rate_from_tail():
    import math

    from novikov_kit.novikov_series import growth_fit, growth_profile

    prof = growth_profile(incidence_series(s3_system(), "x", "y", -25), 25)
    fit = growth_fit(prof, tail_from=-10)
    rate = math.log((3 + math.sqrt(5)) / 2)
    assert abs(fit.B - rate) <= 0.05 * rate
    assert all(n <= fit.bound(c) for c, n in prof)

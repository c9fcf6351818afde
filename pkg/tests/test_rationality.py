import random

import pytest
from hypothesis import given, settings, strategies as st

from novikov_kit.group_ring import GradingForm, LaurentElement as L
from novikov_kit.novikov_series import NovikovTruncation as NT, SupportError, TypeLDatum, type_L_eval
from novikov_kit.rationality import (
    RationalPresentation as RP,
    adjugate_closed_form,
    closed_form_type_L,
    expand,
    recognize,
    theta_coefficients,
)

from conftest import random_type_L_datum

XI1 = GradingForm((1,))


def poly(*coeffs):
    """sum c_k t^-k in rank 1"""
    return L({(-k,): c for k, c in enumerate(coeffs)})


def test_adjugate_examples():
    adj, det = adjugate_closed_form([[L.zero(1)]], XI1)
    assert adj == ((L.one(1),),) and det == 1
    adj, det = adjugate_closed_form([[L.monomial((-1,))]], XI1)
    assert adj == ((L.one(1),),) and det == poly(1, -1)
    t1 = L.monomial((-1,))
    adj, det = adjugate_closed_form([[t1, t1], [L.zero(1), t1 * 2]], XI1)
    assert det == poly(1, -3, 2)


def test_adjugate_rejects_nonnegative_entries():
    with pytest.raises(SupportError):
        adjugate_closed_form([[L.monomial((1,))]], XI1)


def test_closed_form_examples():
    xi = GradingForm((1, 0))
    d0 = TypeLDatum((0, 0), (0, 0), ((L.zero(2),),), (L.one(2),), (L.one(2),), xi)
    rp = closed_form_type_L(d0)
    assert rp.P == 1 and rp.Q == 1 and rp.shift == (0, 0)
    d1 = TypeLDatum((0, 0), (0, 0), ((L.monomial((-1, 0)),),), (L.one(2),), (L.one(2),), xi)
    rp = closed_form_type_L(d1)
    assert rp.P == 1 and rp.Q == L({(0, 0): 1, (-1, 0): -1})


def test_expand_examples():
    assert expand(RP(L.one(1), L.one(1), (0,), XI1), -9).terms == 1
    assert expand(RP(L.one(1), poly(1, -1), (0,), XI1), -5).terms == poly(*[1] * 6)
    assert expand(RP(L.one(1), poly(1, -3, 2), (0,), XI1), -4).terms == poly(1, 3, 7, 15, 31)


def test_presentation_rejects_denominator_outside_S():
    with pytest.raises(SupportError):
        RP(L.one(1), poly(2, -1), (0,), XI1)
    with pytest.raises(SupportError):
        RP(L.one(1), L({(0,): 1, (1,): 1}), (0,), XI1)


def test_recognize_examples():
    ones = NT(poly(*[1] * 10), XI1, -9)
    rp = recognize(ones, (-1,), 1)
    assert rp.P == 1 and rp.Q == poly(1, -1)
    ramp = NT(poly(*range(1, 12)), XI1, -10)
    rp = recognize(ramp, (-1,), 2)
    assert rp.P == 1 and rp.Q == poly(1, -2, 1)


def test_recognize_order_three_depth_30():
    Q = poly(1, 2, -3, 1)
    series = expand(RP(L.one(1), Q, (0,), XI1), -30)
    rp = recognize(series, (-1,), 3)
    assert rp.Q == Q and rp.P == 1


def test_recognize_reports_not_found():
    rng = random.Random(3)
    noise = NT(poly(*[rng.randint(-50, 50) for _ in range(12)]), XI1, -11)
    assert recognize(noise, (-1,), 2) is None


def test_recognize_needs_enough_coefficients():
    with pytest.raises(ValueError):
        recognize(NT(poly(1, 1), XI1, -1), (-1,), 3)


def test_recognize_multivariate_coefficients():
    # kernel direction t2 appears in the coefficients
    xi = GradingForm((1, 0))
    Q = L({(0, 0): 1, (-1, 1): -1, (-2, 0): -2})
    P = L({(0, 0): 3, (-1, -1): 1})
    series = expand(RP(P, Q, (2, 1), xi), -20)
    rp = recognize(series, (-1, 0), 2)
    assert expand(rp, -20) == series


def test_theta_coefficients_regrade():
    a = NT(L({(-2,): 5, (-3,): 7}), XI1, -6)
    base, c = theta_coefficients(a, (-1,))
    assert base == (-2,)
    assert [x.coefficient((0,)) for x in c] == [5, 7, 0, 0, 0]


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_closed_form_matches_series(seed):
    d = random_type_L_datum(random.Random(seed), max_k=3, max_m=3, max_norm=2)
    rp = closed_form_type_L(d)
    assert expand(rp, -8) == type_L_eval(d, -8)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(-3, 3), min_size=1, max_size=3), st.lists(st.integers(-3, 3), min_size=1, max_size=3),
       st.integers(-3, 3))
def test_recognition_round_trip(q, p, shift):
    Q = L({(0,): 1, **{(-i - 1,): -x for i, x in enumerate(q) if x}})
    P = poly(*p)
    series = expand(RP(P, Q, (shift,), XI1), -25)
    rp = recognize(series, (-1,), 3)
    assert rp is not None
    assert expand(rp, -25) == series

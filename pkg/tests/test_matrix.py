import random

import pytest
from hypothesis import given, settings, strategies as st

from novikov_kit import matrix as mx
from novikov_kit.group_ring import LaurentElement as L

from conftest import elements


def _random_matrix(rng, k, m=2):
    return tuple(
        tuple(L({tuple(rng.randint(-2, 2) for _ in range(m)): rng.randint(-3, 3) for _ in range(rng.randint(0, 2))}, rank=m)
              for _ in range(k))
        for _ in range(k)
    )


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_berkowitz_matches_cofactors(k):
    rng = random.Random(k)
    for _ in range(4):
        a = _random_matrix(rng, k)
        c = mx.charpoly_berkowitz(a)
        sign = 1 if k % 2 == 0 else -1
        assert c[k] * sign == mx.det_cofactor(a)


@pytest.mark.parametrize("k", [1, 3, 5, 6])
def test_adjugate_identity_all_sizes(k):
    rng = random.Random(100 + k)
    a = _random_matrix(rng, k)
    det, adj = mx.det_adjugate(a)
    assert mx.mat_mul(a, adj) == mx.mat_scale(det, mx.identity(k, 2))
    assert mx.mat_mul(adj, a) == mx.mat_scale(det, mx.identity(k, 2))


@settings(max_examples=40)
@given(st.lists(elements(m=1, max_terms=2), min_size=4, max_size=4))
def test_det_multiplicative_2x2(es):
    a = ((es[0], es[1]), (es[2], es[3]))
    b = ((es[3], es[0]), (es[1], es[2]))
    assert mx.det_cofactor(mx.mat_mul(a, b)) == mx.det_cofactor(a) * mx.det_cofactor(b)


def test_matrix_norm_is_max_entry_norm():
    a = ((L({(-1,): 2}), L({(-1,): -1, (-2,): 1})), (L.zero(1), L.zero(1)))
    assert mx.matrix_norm(a) == 2

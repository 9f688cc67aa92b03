import itertools

import pytest
from hypothesis import given, settings, strategies as st

from disect.gap import EXACT, LOCAL, min_gap_partition
from disect.oracle import exact_min_gap


def gap_of(splus, res):
    return sum(splus[i] for i in res.X1) - sum(splus[i] for i in res.X2)


@pytest.mark.parametrize("splus, theta", [([5, -3, 2], 0), ([7], 7), ([], 0), ([1, 1, 1], 1), ([0, 0], 0)])
def test_examples(splus, theta):
    res = min_gap_partition(splus)
    assert res.theta == theta == exact_min_gap(splus).value
    assert res.mode == EXACT


@settings(max_examples=200)
@given(st.lists(st.integers(-40, 40), max_size=14))
def test_exact_matches_oracle(splus):
    res = min_gap_partition(splus)
    assert sorted(res.X1 + res.X2) == list(range(len(splus)))
    assert res.theta == gap_of(splus, res) == exact_min_gap(splus).value >= 0


@settings(max_examples=60)
@given(st.lists(st.integers(-10**6, 10**6), min_size=1, max_size=14))
def test_meet_in_the_middle(splus):
    res = min_gap_partition(splus, budget=0)
    assert res.mode == EXACT
    assert res.theta == exact_min_gap(splus).value


@settings(max_examples=60)
@given(st.lists(st.integers(1, 50) | st.integers(-50, -1), min_size=1, max_size=12))
def test_local_mode_is_single_switch_minimal(splus):
    res = min_gap_partition(splus, budget=0, mitm_max=0)
    assert res.mode == LOCAL and res.theta == gap_of(splus, res) >= 0
    for i in range(len(splus)):
        flip = res.theta - 2 * splus[i] if i in res.X1 else res.theta + 2 * splus[i]
        assert abs(flip) >= res.theta


def test_zeros_spread_evenly():
    res = min_gap_partition([0, 0, 0, 0, 3, -3])
    assert abs(len(res.X1) - len(res.X2)) <= 1

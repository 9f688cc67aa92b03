import pytest

from conftest import complete, cycle, path
from disect.digraph import Digraph, UndirectedGraph, cut_sizes
from disect.oracle import (
    OracleGuardError,
    exact_best_bisection,
    exact_matching_profile,
    exact_min_gap,
    exact_tight_check,
)


def test_bisection_examples():
    assert exact_best_bisection(Digraph(3, [(0, 1), (1, 2), (2, 0)])).value == 1
    assert exact_best_bisection(Digraph(2, [(0, 1)])).value == 0
    assert exact_best_bisection(Digraph(2, [(0, 1), (1, 0)])).value == 1


def test_bisection_witness_achieves_value():
    D = Digraph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (0, 3), (3, 0)])
    res = exact_best_bisection(D)
    p1, p2 = res.witness
    assert cut_sizes(D, p1, p2).min_dir == res.value and 0 in p1


def test_bisection_guard():
    with pytest.raises(OracleGuardError):
        exact_best_bisection(Digraph(23, []))


def test_gap_examples():
    assert exact_min_gap([5, -3, 2]).value == 0
    assert exact_min_gap([7]).value == 7
    assert exact_min_gap([1, 1, 1]).value == 1
    with pytest.raises(OracleGuardError):
        exact_min_gap([1] * 25)


def test_matching_examples():
    assert exact_matching_profile(path(3)).value[:2] == (1, 1)
    assert exact_matching_profile(complete(3)).value[:2] == (1, 0)
    assert exact_matching_profile(UndirectedGraph(3, [])).value[:2] == (0, 0)
    with pytest.raises(OracleGuardError):
        exact_matching_profile(UndirectedGraph(13, []))


def test_tight_examples():
    assert exact_tight_check(complete(3))
    assert not exact_tight_check(cycle(5))
    assert exact_tight_check(UndirectedGraph(1, []))
    with pytest.raises(ValueError):
        exact_tight_check(UndirectedGraph(2, []))

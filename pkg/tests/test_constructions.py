import pytest

from disect.constructions import (
    eulerian_complete_odd,
    extremal_bisection_bound,
    extremal_family,
    extremal_size,
    random_hub_digraph,
    random_min_semidegree,
)
from disect.digraph import induced_subdigraph
from disect.tight import essential_components


@pytest.mark.parametrize("t", [3, 5, 7, 9])
def test_eulerian_balanced(t):
    D = eulerian_complete_odd(t)
    assert D.m == t * (t - 1) // 2
    assert set(D.outdeg) == set(D.indeg) == {(t - 1) // 2}
    assert not any(D.is_antiparallel(u, v) for u, v in D.arcs)
    assert eulerian_complete_odd(t) == D


def test_eulerian_t3_is_cycle():
    D = eulerian_complete_odd(3)
    assert D.m == 3 and set(D.outdeg) == {1}


@pytest.mark.parametrize("t", [4, 2, 1, 0])
def test_eulerian_rejects(t):
    with pytest.raises(ValueError):
        eulerian_complete_odd(t)


@pytest.mark.parametrize("d, k, n, m", [(1, 1, 8, 16), (2, 2, 17, 51), (1, 30, 95, 190)])
def test_extremal_size(d, k, n, m):
    D, _ = extremal_family(d, k)
    assert (D.n, D.m) == (n, m) == extremal_size(d, k)


@pytest.mark.parametrize("d", [1, 2, 3])
@pytest.mark.parametrize("k", [1, 4, 10])
def test_extremal_degrees(d, k):
    D, layout = extremal_family(d, k)
    assert min(D.outdeg) == d + 1 and D.min_semidegree() == d
    assert not any(D.is_antiparallel(u, v) for u, v in D.arcs)
    assert all(D.has_arc(v, layout.apex) for c in layout.copies for v in c)
    assert layout.apex in layout.big_clique and len(layout.copies) == k


def test_extremal_copies_are_essential():
    D, layout = extremal_family(2, 3)
    small = [v for c in layout.copies for v in c]
    H, _ = induced_subdigraph(D, small)
    r = essential_components(H)
    assert r.tau == 3 and all(len(c) == 5 for c in r.components)


def test_extremal_bound_value():
    assert extremal_bisection_bound(1, 30) == 30 + 3
    assert extremal_bisection_bound(3, 100) == 600 + 10


@pytest.mark.parametrize("d, k", [(0, 1), (1, 0)])
def test_extremal_rejects(d, k):
    with pytest.raises(ValueError):
        extremal_family(d, k)


def test_random_min_semidegree():
    assert random_min_semidegree(10, 1, 0, seed=3).min_semidegree() >= 1
    full = random_min_semidegree(7, 3, 1.0, seed=0)
    assert full.m == 42 and full.min_semidegree() == 6
    a = random_min_semidegree(12, 2, 0.1, seed=7)
    assert a == random_min_semidegree(12, 2, 0.1, seed=7) and a.min_semidegree() >= 2
    with pytest.raises(ValueError):
        random_min_semidegree(4, 2)


def test_hub_digraph_keeps_floor():
    for s in range(10):
        D = random_hub_digraph(60, 2, hubs=2, reach=0.9, seed=s)
        assert D.min_semidegree() >= 2 and max(D.degree) >= 40

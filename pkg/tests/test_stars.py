import pytest
from hypothesis import given, settings

from conftest import complete, graphs, path
from disect.digraph import UndirectedGraph
from disect.matching import matching_from_edges, maximum_matching, refine_matching
from disect.stars import DecompositionError, Star, StarDecomposition, check_decomposition, star_decomposition


def test_p3():
    G = path(3)
    dec = star_decomposition(G, set(), matching_from_edges(G, [(1, 2)]))
    assert dec.stars == (Star(1, (0, 2), (1, 2)),) and dec.U == () and dec.tau_star == 0


def test_k3():
    G = complete(3)
    dec = star_decomposition(G, set(), matching_from_edges(G, [(0, 1)]))
    assert [s.vertices for s in dec.stars] == [(0, 1)] and dec.U == (2,) and dec.tau_star == 1


def test_no_edges():
    G = UndirectedGraph(4, [])
    dec = star_decomposition(G, set(), maximum_matching(G))
    assert dec.stars == () and dec.U == (0, 1, 2, 3) and dec.tau_star == 4


def test_a_repair_keeps_one_a_leaf():
    # centre 0 with partner 1 and free leaves 2, 3
    G = UndirectedGraph(4, [(0, 1), (0, 2), (0, 3)])
    M = matching_from_edges(G, [(0, 1)])
    dec = star_decomposition(G, {2, 3}, M)
    assert dec.U == (3,) and dec.stars[0].leaves == (1, 2)
    dec = star_decomposition(G, {1, 2, 3}, M)
    assert dec.U == (2, 3) and dec.stars[0].leaves == (1,)


def test_u_bound_violation_raises():
    G = complete(3)
    with pytest.raises(DecompositionError) as info:
        star_decomposition(G, set(), matching_from_edges(G, [(0, 1)]), tau_star=0)
    assert info.value.violations == ["|U|=1 exceeds tau*+|A|=0"]
    assert info.value.decomposition.U == (2,)


def test_checker_catches_bad_star():
    G = path(3)
    bad = StarDecomposition((Star(0, (1, 2), (0, 1)),), ())
    assert any("not adjacent" in p for p in check_decomposition(G, bad))


@settings(max_examples=80, deadline=None)
@given(graphs(max_n=10))
def test_invariants_after_refinement(G):
    M = refine_matching(G, None, maximum_matching(G))
    A = {v for v in range(G.n) if G.degree(v) >= 3}
    try:
        dec = star_decomposition(G, A, M)
    except DecompositionError as err:
        # refinement is heuristic; only the size bound may fail
        assert all(v.startswith("|U|=") for v in err.violations)
        dec = err.decomposition
    problems = check_decomposition(G, dec)
    assert all(p.startswith("|U|=") for p in problems)

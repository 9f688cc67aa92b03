from dataclasses import replace
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import digraphs
from disect.config import EngineConfig
from disect.constructions import extremal_family, random_min_semidegree
from disect.digraph import Digraph, cut_sizes
from disect.engine import (
    build_split,
    decompose_y,
    default_threshold,
    dense_random_bisection,
    expected_cut,
    optimal_bisect,
    prepare_split,
    randomized_bisection,
    result_document,
    sample_unbalanced,
    verify_claims,
)
from disect.instances import pipeline_digraph
from disect.oracle import exact_best_bisection, exact_min_gap
from disect.sampling import ArcMatrix, polish, rebalance
from disect.stars import Star, StarDecomposition


def cycle_plus(n, extra):
    arcs = {(i, (i + 1) % n) for i in range(n)} | set(extra)
    return Digraph(n, arcs)


def hub16():
    # vertex 0: out to 1..9, in from 10, 11, 15; the rest is a cycle
    return cycle_plus(16, [(0, v) for v in range(2, 10)] + [(10, 0), (11, 0)])


class TestSplit:
    def test_threshold(self):
        assert default_threshold(16) == 8
        assert default_threshold(3) == 3
        for n in range(1, 400):
            t = default_threshold(n)
            assert t**4 >= n**3 > (t - 1) ** 4

    def test_hub_goes_to_x(self):
        D = cycle_plus(16, [(0, v) for v in range(2, 7)] + [(v, 0) for v in range(7, 11)])
        ctx = prepare_split(D)
        assert ctx.threshold == 8 and ctx.X == (0,) and D.degree[0] == 11

    def test_no_x(self):
        D = cycle_plus(20, [])
        ctx = prepare_split(D)
        assert ctx.X == () and ctx.stripped == D

    def test_stripping_removes_everything(self):
        D = Digraph(3, [(u, v) for u in range(3) for v in range(3) if u != v])
        ctx = prepare_split(D)
        assert len(ctx.X) == 3 and ctx.m == 0

    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10**6))
    def test_invariants(self, seed):
        D = pipeline_digraph(seed)
        ctx = build_split(D)
        xs = set(ctx.X)
        assert all((D.degree[v] >= ctx.threshold) == (v in xs) for v in range(D.n))
        assert not any(u in xs and v in xs for u, v in ctx.stripped.arcs)
        theta = sum(int(ctx.splus[v]) for v in ctx.X1) - sum(int(ctx.splus[v]) for v in ctx.X2)
        assert ctx.theta == theta >= 0
        assert ctx.e_xy + ctx.e_yx == sum(ctx.deltas) + ctx.g + 2 * ctx.b
        if ctx.gap_mode == "exact" and len(ctx.X) <= 16:
            assert ctx.theta == exact_min_gap([int(ctx.splus[v]) for v in ctx.X]).value
        r = ctx.components
        assert r.tau == r.tau_star - r.sigma


class TestClaims:
    def test_no_x_shortcut(self):
        ctx = build_split(cycle_plus(20, [(0, 10)]))
        recs = {r.name: r for r in verify_claims(ctx)}
        assert recs["theta_shortcut"].status == "pass"
        assert not any(r.failed for r in recs.values())

    def test_one_huge_vertex(self):
        ctx = build_split(hub16())
        assert ctx.X == (0,) and ctx.alpha == 1 and ctx.beta == 1 and ctx.g == 0
        # out 9 (incl. cycle arc), in 3
        assert ctx.delta1 == ctx.theta == 6 and ctx.b == 3
        recs = {r.name: r for r in verify_claims(ctx)}
        assert recs["min_cross_upper"].rhs == ctx.b
        assert recs["min_cross_upper"].status == "pass"

    def test_extremal_all_pass(self):
        D, _ = extremal_family(2, 10)
        recs = verify_claims(build_split(D))
        assert all(r.status in ("pass", "not_taken", "not_applicable") for r in recs)

    def test_local_mode_marks_na(self):
        ctx = build_split(hub16(), EngineConfig(gap_budget=0, mitm_max=0))
        recs = {r.name: r for r in verify_claims(ctx)}
        assert ctx.gap_mode == "local"
        for name in ("forward_vertices_huge", "forward_gap", "min_cross_upper"):
            assert recs[name].status == "not_applicable"

    def test_requires_gap(self):
        with pytest.raises(ValueError):
            verify_claims(prepare_split(hub16()))


def _ctx_and_dec(D, stars, U, threshold=None):
    ctx = build_split(D, EngineConfig(threshold=threshold))
    return ctx, StarDecomposition(tuple(stars), tuple(U))


class TestExpectation:
    def test_fixed_arc(self):
        ctx, dec = _ctx_and_dec(Digraph(2, [(0, 1)]), [], [], threshold=1)
        assert ctx.X1 == (0,) and ctx.X2 == (1,)
        assert expected_cut(ctx, dec) == (1, 0)

    def test_intra_star(self):
        ctx, dec = _ctx_and_dec(Digraph(2, [(0, 1)]), [Star(0, (1,), (0, 1))], [])
        assert expected_cut(ctx, dec) == (Fraction(1, 2), Fraction(1, 2))

    def test_between_stars(self):
        stars = [Star(0, (1,), (0, 1)), Star(2, (3,), (2, 3))]
        ctx, dec = _ctx_and_dec(Digraph(4, [(1, 2)]), stars, [])
        assert expected_cut(ctx, dec) == (Fraction(1, 4), Fraction(1, 4))

    def test_x_to_y(self):
        base = prepare_split(Digraph(3, [(0, 2), (1, 2), (0, 1)]), threshold=99)
        ctx = replace(base, X=(0, 1), Y=(2,), X1=(0,), X2=(1,))
        dec = StarDecomposition((), (2,))
        # 0->1 fixed crossing, 0->2 half, 1->2 half in the other direction
        assert expected_cut(ctx, dec) == (Fraction(3, 2), Fraction(1, 2))

    def test_matches_sampling(self):
        D = pipeline_digraph(4)
        ctx = build_split(D)
        dec, _, _ = decompose_y(ctx)
        E12, E21 = expected_cut(ctx, dec)
        a, b = sample_unbalanced(ctx, dec, 4000, seed=2)
        for E, x in ((E12, a), (E21, b)):
            assert abs(x.mean() - float(E)) <= 3 * x.std(ddof=1) / np.sqrt(len(x)) + 1e-9


class TestRandomized:
    def test_fixed_x(self):
        D = hub16()
        ctx = build_split(D)
        dec, _, _ = decompose_y(ctx)
        bis, stats = randomized_bisection(ctx, dec, 50, seed=0)
        assert set(ctx.X1) <= set(bis.part1) and set(ctx.X2) <= set(bis.part2)
        assert stats.trials == 50

    def test_single_star(self):
        D = Digraph(2, [(0, 1)])
        ctx, dec = _ctx_and_dec(D, [Star(0, (1,), (0, 1))], [])
        bis, stats = randomized_bisection(ctx, dec, 20, seed=0)
        assert bis.stats.min_dir == 0 and bis.stats.e12 + bis.stats.e21 == 1
        assert stats.mean_e12 + stats.mean_e21 == 1

    def test_zero_trials(self):
        ctx, dec = _ctx_and_dec(Digraph(2, [(0, 1)]), [], [0, 1])
        with pytest.raises(ValueError):
            randomized_bisection(ctx, dec, 0, seed=0)

    def test_thread_independent(self):
        D = pipeline_digraph(9)
        ctx = build_split(D)
        dec, _, _ = decompose_y(ctx)
        a, sa = randomized_bisection(ctx, dec, 3000, seed=5, threads=1)
        b, sb = randomized_bisection(ctx, dec, 3000, seed=5, threads=4)
        assert a == b and sa == sb


class TestRebalance:
    @settings(max_examples=40, deadline=None)
    @given(st.integers(0, 10**6))
    def test_bounds(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(5, 40))
        D = random_min_semidegree(n, 1, 0.1, seed=seed)
        arcs = ArcMatrix(D)
        side = (rng.random((8, n)) < rng.uniform(0.1, 0.9)).astype(np.int8)
        e12, e21 = arcs.cuts(side)
        imbalance = np.abs((side == 0).sum(axis=1) - (side == 1).sum(axis=1))
        res = rebalance(arcs, side, [np.ones(n, dtype=bool)])
        for i in range(8):
            p1 = [v for v in range(n) if res.side[i, v] == 0]
            p2 = [v for v in range(n) if res.side[i, v] == 1]
            assert abs(len(p1) - len(p2)) <= 1
            c = cut_sizes(D, p1, p2)
            assert (c.e12, c.e21) == (res.e12[i], res.e21[i])
            assert res.moved[i] <= imbalance[i]
            change = abs(c.min_dir - min(e12[i], e21[i]))
            assert change <= res.moved[i] * res.max_moved_degree[i]


@settings(max_examples=40, deadline=None)
@given(digraphs(min_n=2, max_n=10), st.integers(0, 100))
def test_polish_never_hurts(D, seed):
    rng = np.random.default_rng(seed)
    side = np.zeros(D.n, dtype=np.int8)
    side[rng.permutation(D.n)[: D.n // 2]] = 1
    before = cut_sizes(D, np.nonzero(side == 0)[0], np.nonzero(side == 1)[0])
    movable = rng.random(D.n) < 0.7
    res = polish(D, side, movable)
    assert min(res.e12, res.e21) >= before.min_dir
    assert (res.side[~movable] == side[~movable]).all()
    assert (res.side == 0).sum() == (side == 0).sum()


class TestDense:
    def test_tournament(self):
        rng = np.random.default_rng(3)
        n = 80
        arcs = [(u, v) if rng.random() < 0.5 else (v, u) for u in range(n) for v in range(u + 1, n)]
        D = Digraph(n, arcs)
        bis = dense_random_bisection(D, 0.2, 200, seed=1)
        assert bis.stats.min_dir >= (0.25 - 0.2) * D.m

    def test_tiny(self):
        assert dense_random_bisection(Digraph(2, [(0, 1)]), 0.2, 10, 0).stats.min_dir == 0
        bis = dense_random_bisection(Digraph(1, []), 0.2, 10, 0)
        assert (bis.part1, bis.part2) == ((0,), ())

    def test_zero_trials(self):
        with pytest.raises(ValueError):
            dense_random_bisection(Digraph(2, [(0, 1)]), 0.2, 0, 0)


class TestOptimalBisect:
    def test_c3(self):
        D = Digraph(3, [(0, 1), (1, 2), (2, 0)])
        bis, cert = optimal_bisect(D)
        assert cert.mode == "pipeline"
        assert bis.stats.min_dir == 1 == exact_best_bisection(D).value

    def test_extremal(self):
        D, _ = extremal_family(1, 30)
        bis, cert = optimal_bisect(D, EngineConfig(epsilon=0.05))
        assert bis.stats.min_dir / D.m >= 1 / 6 - 0.05
        assert not cert.failed and cert.achieved["boundStatus"] == "met"

    def test_no_arcs(self):
        bis, cert = optimal_bisect(Digraph(5, []))
        assert bis.stats.min_dir == 0 and not cert.failed
        assert cert.achieved["boundStatus"] == "vacuous"

    def test_dense_branch(self):
        D = Digraph(6, [(u, v) for u in range(6) for v in range(6) if u != v])
        _, cert = optimal_bisect(D, EngineConfig(dense_constant=0.01, trials=50))
        assert cert.mode == "dense"

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            optimal_bisect(Digraph(0, []))

    def test_config_validation(self):
        for bad in (dict(epsilon=0), dict(epsilon=0.25), dict(trials=0), dict(threads=0)):
            with pytest.raises(ValueError):
                EngineConfig(**bad)
        assert EngineConfig().resolved_trials == 2000
        assert EngineConfig(max_auto_trials=10**9).resolved_trials == 138156

    def test_document_shape(self):
        D = pipeline_digraph(1)
        bis, cert = optimal_bisect(D, EngineConfig(trials=100, seed=4))
        doc = result_document(D, bis, cert)
        assert list(doc) == ["input", "mode", "bisection", "stats", "certificate", "rng"]
        assert doc["bisection"]["part1"] == sorted(doc["bisection"]["part1"])
        assert doc["rng"] == {"seed": 4, "trials": 100}
        assert all({"name", "lhs", "rhs", "relation", "status"} <= set(r) for r in doc["certificate"]["records"])

    @settings(max_examples=25, deadline=None)
    @given(digraphs(min_n=1, max_n=9))
    def test_dominated_by_oracle(self, D):
        bis, _ = optimal_bisect(D, EngineConfig(trials=30))
        assert abs(len(bis.part1) - len(bis.part2)) <= 1
        assert bis.stats.min_dir <= exact_best_bisection(D).value

"""Bisection pipeline for digraphs with a minimum-semidegree guarantee.

Outline of :func:`optimal_bisect`:

1. Very dense inputs (``m >= c (2d+1)^2 n``) get the best of many uniform
   random bisections.
2. Otherwise vertices of degree at least ``ceil(n^(3/4))`` form ``X``; arcs
   inside ``X`` are dropped; ``X`` is split to minimise the ordered gap.
3. ``G[Y]`` gets a maximum matching refined towards many free vertices and
   antiparallel ("special") edges, and is cut into induced stars plus an
   independent set ``U``.
4. Random placements (star centre on a random side, its leaves opposite,
   ``U`` uniform, ``X_i`` fixed in part ``i``) are rebalanced into exact
   bisections; the best is returned with a certificate of every inequality
   the guarantee rests on, evaluated on this split.
"""

from __future__ import annotations

import json
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Any

import numpy as np

from .config import EngineConfig
from .digraph import (
    CutStats,
    Digraph,
    cut_sizes,
    induced_subdigraph,
    underlying_graph,
)
from .gap import EXACT, min_gap_partition
from .matching import Matching, maximum_matching, refine_matching
from .sampling import DENSE_STREAM, ArcMatrix, polish, rebalance, trial_rng
from .stars import DecompositionError, Star, StarDecomposition, star_decomposition
from .tight import ComponentReport, essential_components

log = logging.getLogger(__name__)

__all__ = [
    "Bisection",
    "Certificate",
    "Record",
    "SplitContext",
    "TrialStats",
    "build_split",
    "decompose_y",
    "default_threshold",
    "dense_hypothesis_warnings",
    "dense_random_bisection",
    "expected_cut",
    "optimal_bisect",
    "prepare_split",
    "randomized_bisection",
    "result_document",
    "sample_unbalanced",
    "split_gap",
    "verify_claims",
]

PASS, FAIL, NA = "pass", "fail", "not_applicable"
NOT_TAKEN = "not_taken"


@dataclass(frozen=True)
class Bisection:
    part1: tuple[int, ...]
    part2: tuple[int, ...]
    stats: CutStats

    def __post_init__(self):
        assert abs(len(self.part1) - len(self.part2)) <= 1, "not a bisection"

    @classmethod
    def from_side(cls, D: Digraph, side) -> Bisection:
        p1 = tuple(int(v) for v in np.nonzero(np.asarray(side) == 0)[0])
        p2 = tuple(int(v) for v in np.nonzero(np.asarray(side) == 1)[0])
        return cls(p1, p2, cut_sizes(D, p1, p2))


# -- split context -------------------------------------------------------------


def default_threshold(n: int) -> int:
    """Smallest integer ``t`` with ``t >= n^(3/4)``, computed exactly."""
    t = max(0, math.ceil(n**0.75))
    while t > 0 and (t - 1) ** 4 >= n**3:
        t -= 1
    while t**4 < n**3:
        t += 1
    return t


@dataclass(frozen=True)
class SplitContext:
    D: Digraph
    stripped: Digraph
    threshold: int
    X: tuple[int, ...]
    Y: tuple[int, ...]
    d: int
    b: int
    X1: tuple[int, ...] = ()
    X2: tuple[int, ...] = ()
    theta: int | None = None
    gap_mode: str | None = None
    components: ComponentReport | None = None

    @property
    def n(self) -> int:
        return self.D.n

    @property
    def m(self) -> int:
        """Arc count after removing arcs inside ``X``."""
        return self.stripped.m

    @cached_property
    def splus(self) -> np.ndarray:
        return self.stripped.outdeg - self.stripped.indeg

    def s(self, v: int) -> int:
        return abs(int(self.splus[v]))

    @property
    def e_xy(self) -> int:
        return int(sum(self.stripped.outdeg[v] for v in self.X))

    @property
    def e_yx(self) -> int:
        return int(sum(self.stripped.indeg[v] for v in self.X))

    @property
    def huge(self) -> tuple[int, ...]:
        if self.theta is None:
            return ()
        return tuple(v for v in self.X if self.s(v) >= self.theta)

    @property
    def alpha(self) -> int:
        return len(self.huge)

    @property
    def beta(self) -> int:
        return (self.alpha + 1) // 2

    @property
    def deltas(self) -> tuple[int, ...]:
        return tuple(sorted((self.s(v) for v in self.huge), reverse=True))

    @property
    def delta1(self) -> int:
        return self.deltas[0] if self.deltas else 0

    @property
    def g(self) -> int:
        huge = set(self.huge)
        return sum(self.s(v) for v in self.X if v not in huge)

    @property
    def tau(self) -> int | None:
        return None if self.components is None else self.components.tau

    def forward(self) -> list[int]:
        x1 = set(self.X1)
        return [v for v in self.X if (self.splus[v] > 0 if v in x1 else self.splus[v] < 0)]


def prepare_split(D: Digraph, threshold: int | None = None) -> SplitContext:
    if threshold is None:
        threshold = default_threshold(D.n)
    deg = D.degree
    X = tuple(v for v in range(D.n) if deg[v] >= threshold)
    xs = set(X)
    Y = tuple(v for v in range(D.n) if v not in xs)
    stripped = Digraph(D.n, [(u, v) for u, v in D.arcs if not (u in xs and v in xs)])
    b = int(sum(min(stripped.outdeg[v], stripped.indeg[v]) for v in X))
    ctx = SplitContext(D, stripped, threshold, X, Y, D.min_semidegree(), b)
    assert all(ctx.stripped.outdeg[v] == D.outdeg[v] and ctx.stripped.indeg[v] == D.indeg[v] for v in Y)
    return ctx


def split_gap(ctx: SplitContext, budget: int = 10**7, mitm_max: int = 40, seed: int = 0) -> SplitContext:
    res = min_gap_partition([int(ctx.splus[v]) for v in ctx.X], budget, mitm_max, seed)
    X1 = tuple(ctx.X[i] for i in res.X1)
    X2 = tuple(ctx.X[i] for i in res.X2)
    return replace(ctx, X1=X1, X2=X2, theta=res.theta, gap_mode=res.mode)


def with_components(ctx: SplitContext) -> SplitContext:
    DY, _ = induced_subdigraph(ctx.stripped, ctx.Y)
    report = essential_components(DY)
    Y = ctx.Y
    report = ComponentReport(
        tuple(tuple(Y[i] for i in c) for c in report.components),
        report.is_tight,
        report.has_antiparallel,
        report.is_essential,
    )
    return replace(ctx, components=report)


def build_split(D: Digraph, config: EngineConfig | None = None) -> SplitContext:
    """``prepare_split``, gap minimisation and component classification."""
    config = config or EngineConfig()
    ctx = prepare_split(D, config.threshold)
    ctx = split_gap(ctx, config.gap_budget, config.mitm_max, config.seed)
    return with_components(ctx)


# -- star decomposition of Y -----------------------------------------------------


def decompose_y(
    ctx: SplitContext, epsilon: float = 0.02, restarts: int = 20, seed: int = 0
) -> tuple[StarDecomposition, Matching, list[str]]:
    """Refined matching and star decomposition of ``G[Y]`` in global ids.

    ``A`` holds the ``Y``-vertices of underlying degree at least ``2C/epsilon``
    with ``C = m/n``. If only the ``|U|`` bound fails (the refinement is a
    heuristic), the decomposition is kept and a warning returned.
    """
    G = underlying_graph(ctx.stripped)
    GY, ymap = G.induced(ctx.Y)
    DY, _ = induced_subdigraph(ctx.stripped, ctx.Y)
    M = refine_matching(GY, DY, maximum_matching(GY, DY), restarts=restarts, seed=seed)
    C = ctx.m / ctx.n if ctx.n else 0.0
    A_local = {i for i, v in enumerate(ymap) if G.degree(v) >= 2 * C / epsilon}
    tau_star = ctx.components.tau_star if ctx.components is not None else None
    warnings = []
    try:
        dec = star_decomposition(GY, A_local, M, tau_star)
    except DecompositionError as err:
        if not all(p.startswith("|U|=") for p in err.violations):
            raise
        dec = err.decomposition
        warnings.append(f"heuristic refinement: {err.violations[0]}")
    stars = tuple(
        Star(ymap[s.center], tuple(ymap[x] for x in s.leaves), (ymap[s.edge[0]], ymap[s.edge[1]]))
        for s in dec.stars
    )
    glob = StarDecomposition(stars, tuple(ymap[u] for u in dec.U), frozenset(ymap[a] for a in dec.A), dec.tau_star)
    return glob, M, warnings


# -- random placement ------------------------------------------------------------


@dataclass(frozen=True)
class _Plan:
    """Vertex -> (unit, flip) for random vertices, fixed side for ``X``."""

    n: int
    units: int
    unit: np.ndarray  # -1 for fixed vertices
    flip: np.ndarray
    fixed: np.ndarray

    @classmethod
    def build(cls, ctx: SplitContext, dec: StarDecomposition) -> _Plan:
        n = ctx.n
        unit = np.full(n, -1, dtype=np.int64)
        flip = np.zeros(n, dtype=np.int8)
        fixed = np.zeros(n, dtype=np.int8)
        for v in ctx.X2:
            fixed[v] = 1
        k = 0
        for star in dec.stars:
            unit[star.center] = k
            for leaf in star.leaves:
                unit[leaf] = k
                flip[leaf] = 1
            k += 1
        for u in dec.U:
            unit[u] = k
            k += 1
        covered = set(ctx.X) | {int(v) for v in np.nonzero(unit >= 0)[0]}
        assert covered == set(range(n)), "placement plan does not cover every vertex"
        return cls(n, k, unit, flip, fixed)

    def sides(self, bits: np.ndarray) -> np.ndarray:
        rand = self.unit >= 0
        side = np.broadcast_to(self.fixed, (bits.shape[0], self.n)).copy()
        if self.units:
            side[:, rand] = bits[:, self.unit[rand]] ^ self.flip[rand]
        return side

    def draw(self, seed: int, start: int, stop: int) -> np.ndarray:
        bits = np.zeros((stop - start, self.units), dtype=np.int8)
        for i, t in enumerate(range(start, stop)):
            bits[i] = trial_rng(seed, t).integers(0, 2, size=self.units, dtype=np.int8)
        return self.sides(bits)


def expected_cut(ctx: SplitContext, dec: StarDecomposition) -> tuple[Fraction, Fraction]:
    """Exact ``(E[e12], E[e21])`` of the unbalanced random placement on ``ctx.D``."""
    plan = _Plan.build(ctx, dec)
    half, quarter = Fraction(1, 2), Fraction(1, 4)

    def prob(a: int, b: int) -> Fraction:
        """P(a in part 1 and b in part 2)."""
        ua, ub = plan.unit[a], plan.unit[b]
        if ua < 0 and ub < 0:
            return Fraction(int(plan.fixed[a] == 0 and plan.fixed[b] == 1))
        if ua < 0:
            return half if plan.fixed[a] == 0 else Fraction(0)
        if ub < 0:
            return half if plan.fixed[b] == 1 else Fraction(0)
        if ua == ub:
            return half if plan.flip[a] != plan.flip[b] else Fraction(0)
        return quarter

    e12 = e21 = Fraction(0)
    for u, v in ctx.D.arcs:
        e12 += prob(u, v)
        e21 += prob(v, u)
    return e12, e21


def sample_unbalanced(ctx: SplitContext, dec: StarDecomposition, trials: int, seed: int) -> tuple[np.ndarray, np.ndarray]:
    """Directed cut sizes of ``trials`` placements before rebalancing."""
    plan = _Plan.build(ctx, dec)
    arcs = ArcMatrix(ctx.D)
    e12, e21 = [], []
    for start, stop in _batches(trials, ctx.D.m):
        a, b = arcs.cuts(plan.draw(seed, start, stop))
        e12.append(a)
        e21.append(b)
    return np.concatenate(e12), np.concatenate(e21)


def _batches(trials: int, m: int) -> list[tuple[int, int]]:
    size = int(max(16, min(1024, 2_000_000 // max(m, 1))))
    return [(s, min(s + size, trials)) for s in range(0, trials, size)]


@dataclass(frozen=True)
class TrialStats:
    trials: int
    mean_e12: float
    std_e12: float
    mean_e21: float
    std_e21: float
    best_trial: int
    best_pre_min_dir: int
    moved: int
    max_moved_degree: int
    tier: int

    def to_json(self) -> dict:
        return {
            "trials": self.trials,
            "meanE12": self.mean_e12,
            "stdE12": self.std_e12,
            "meanE21": self.mean_e21,
            "stdE21": self.std_e21,
            "bestTrial": self.best_trial,
            "bestPreRebalanceMinDir": self.best_pre_min_dir,
            "moved": self.moved,
            "maxMovedDegree": self.max_moved_degree,
            "rebalanceTier": self.tier,
        }


REBALANCE_TIERS = ("low-degree Y vertex", "any Y vertex", "any vertex")


def _rebalance_tiers(ctx: SplitContext) -> list[np.ndarray]:
    n = ctx.n
    in_y = np.zeros(n, dtype=bool)
    in_y[list(ctx.Y)] = True
    C = ctx.m / n
    low = in_y & (ctx.D.degree <= 4 * C)
    return [low, in_y, np.ones(n, dtype=bool)]


def _run_trials(D: Digraph, draw, tiers, trials: int, threads: int):
    arcs = ArcMatrix(D)
    _ = arcs.A, arcs.AT, arcs.out_pad, arcs.in_pad  # build before threads share it

    def work(bounds):
        side = draw(*bounds)
        e12, e21 = arcs.cuts(side)
        res = rebalance(arcs, side, tiers)
        return e12, e21, res

    chunks = _batches(trials, D.m)
    if threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(work, chunks))
    else:
        results = [work(c) for c in chunks]
    pre12 = np.concatenate([r[0] for r in results])
    pre21 = np.concatenate([r[1] for r in results])
    post = np.concatenate([np.minimum(r[2].e12, r[2].e21) for r in results])
    best = int(np.argmax(post))  # first maximum = lowest trial index
    chunk_i = next(i for i, (s, e) in enumerate(chunks) if s <= best < e)
    res = results[chunk_i][2]
    j = best - chunks[chunk_i][0]
    stats = TrialStats(
        trials=trials,
        mean_e12=float(pre12.mean()),
        std_e12=float(pre12.std(ddof=1)) if trials > 1 else 0.0,
        mean_e21=float(pre21.mean()),
        std_e21=float(pre21.std(ddof=1)) if trials > 1 else 0.0,
        best_trial=best,
        best_pre_min_dir=int(min(pre12[best], pre21[best])),
        moved=int(res.moved[j]),
        max_moved_degree=int(res.max_moved_degree[j]),
        tier=int(res.tier[j]),
    )
    return res.side[j], stats


def randomized_bisection(
    ctx: SplitContext, dec: StarDecomposition, trials: int, seed: int, threads: int = 1
) -> tuple[Bisection, TrialStats]:
    if trials < 1:
        raise ValueError("trials must be >= 1")
    plan = _Plan.build(ctx, dec)
    side, stats = _run_trials(
        ctx.D, lambda s, e: plan.draw(seed, s, e), _rebalance_tiers(ctx), trials, threads
    )
    return Bisection.from_side(ctx.D, side), stats


def dense_hypothesis_warnings(D: Digraph, epsilon: float) -> list[str]:
    """Empty when ``m >= 16n/eps^2`` or the maximum degree is at most ``eps^2 m/8``."""
    n, m = D.n, D.m
    max_deg = int(D.degree.max()) if n else 0
    if m >= 16 * n / epsilon**2 or max_deg <= epsilon**2 * m / 8:
        return []
    return ["neither m >= 16n/eps^2 nor maxdeg <= eps^2 m/8 holds; no guarantee for random bisection"]


def dense_random_bisection(D: Digraph, epsilon: float, trials: int, seed: int, threads: int = 1) -> Bisection:
    """Best of ``trials`` uniformly random exact bisections."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    for w in dense_hypothesis_warnings(D, epsilon):
        log.warning(w)
    n = D.n
    half = (n + 1) // 2

    def draw(start, stop):
        side = np.ones((stop - start, n), dtype=np.int8)
        for i, t in enumerate(range(start, stop)):
            perm = trial_rng(seed, t, DENSE_STREAM).permutation(n)
            side[i, perm[:half]] = 0
        return side

    side, _ = _run_trials(D, draw, [np.ones(n, dtype=bool)], trials, threads)
    return Bisection.from_side(D, side)


# -- certificate ---------------------------------------------------------------


def _num(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else float(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    return x


@dataclass(frozen=True)
class Record:
    name: str
    lhs: Any
    relation: str
    rhs: Any
    status: str
    note: str = ""

    @property
    def failed(self) -> bool:
        return self.status == FAIL

    def to_json(self) -> dict:
        out = {"name": self.name, "lhs": _num(self.lhs), "relation": self.relation, "rhs": _num(self.rhs), "status": self.status}
        if self.note:
            out["note"] = self.note
        return out


def _rec(name: str, lhs, relation: str, rhs, applicable: bool = True, note: str = "") -> Record:
    if not applicable:
        return Record(name, lhs, relation, rhs, NA, note)
    ok = {"<=": lhs <= rhs, ">=": lhs >= rhs, "==": lhs == rhs}[relation]
    return Record(name, lhs, relation, rhs, PASS if ok else FAIL, note)


def verify_claims(ctx: SplitContext) -> list[Record]:
    """Evaluate every inequality of the guarantee on a concrete split.

    Needs ``theta`` and the component report. With a locally minimal gap the
    records that rely on global gap minimality are marked not applicable.
    """
    if ctx.theta is None or ctx.components is None:
        raise ValueError("split context lacks the gap partition or component report")
    n, m, d = ctx.n, ctx.m, ctx.d
    theta, tau, b, g = ctx.theta, ctx.tau, ctx.b, ctx.g
    alpha, beta, d1 = ctx.alpha, ctx.beta, ctx.delta1
    ny = len(ctx.Y)
    exy, eyx = ctx.e_xy, ctx.e_yx
    exact = ctx.gap_mode == EXACT
    local_note = "" if exact else "gap only locally minimal"
    cap = Fraction(m, 2 * d + 1)
    long_branch = theta > cap
    fwd = ctx.forward()
    fwd_min = min((ctx.s(v) for v in fwd), default=None)

    records = [
        _rec("arc_count_identity", exy + eyx, "==", sum(ctx.deltas) + g + 2 * b),
        Record("theta_shortcut", theta, "<=", cap, PASS if not long_branch else NOT_TAKEN),
    ]
    if fwd_min is None:
        records.append(Record("forward_vertices_huge", None, ">=", theta, PASS if exact else NA, "no forward vertex"))
        records.append(Record("forward_gap", None, ">=", theta + g, PASS if exact else NA, "no forward vertex"))
    else:
        records.append(_rec("forward_vertices_huge", fwd_min, ">=", theta, exact, local_note))
        records.append(_rec("forward_gap", fwd_min, ">=", theta + g, exact, local_note))
    records += [
        _rec("essential_component_bound", (2 * d + 1) * tau, "<=", ny + 2 * min(exy, eyx)),
        _rec("max_cross_lower", max(exy, eyx), ">=", beta * theta + b),
        _rec("min_cross_upper", min(exy, eyx), "<=", 2 * beta * d1 - (beta + 1) * theta + b, exact, local_note),
        _rec("arc_lower_bound", m, ">=", beta * theta + b + d * ny),
    ]
    if long_branch and exact:
        ok = 1 <= alpha and alpha * theta <= m and m < (2 * d + 1) * theta
        records.append(Record("alpha_bound", alpha, "<=", Fraction(m, theta), PASS if ok else FAIL, "1 <= alpha <= m/theta < 2d+1"))
        records.append(_rec("chain_lower_bound", 4 * d * ny - 4 * beta * d1 - 4 * (d - beta) * theta, ">=", 0))
    else:
        note = "theta <= m/(2d+1)" if exact else local_note
        records.append(Record("alpha_bound", alpha, "<=", Fraction(m, theta) if theta else None, NA, note))
        records.append(Record("chain_lower_bound", 4 * d * ny - 4 * beta * d1 - 4 * (d - beta) * theta, ">=", 0, NA, note))
    main = cap + Fraction(n, 2) - theta - Fraction(tau, 2)
    records.append(_rec("final_chain", 2 * (2 * d + 1) * main, ">=", 0, exact or not long_branch, local_note))
    return records


@dataclass
class Certificate:
    mode: str
    epsilon: float
    trials: int
    seed: int
    n: int
    m_original: int
    d: int
    records: list[Record] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)
    split: dict | None = None
    matching: dict | None = None
    stars: dict | None = None
    components: dict | None = None
    trial_stats: TrialStats | None = None
    achieved: dict | None = None
    polish_swaps: int | None = None

    @property
    def failed(self) -> list[Record]:
        return [r for r in self.records if r.failed]

    def to_json(self) -> dict:
        out: dict[str, Any] = {
            "mode": self.mode,
            "epsilon": self.epsilon,
            "trials": self.trials,
            "seed": self.seed,
            "n": self.n,
            "mOriginal": self.m_original,
            "d": self.d,
        }
        for key, val in (
            ("split", self.split),
            ("matching", self.matching),
            ("stars", self.stars),
            ("components", self.components),
        ):
            if val is not None:
                out[key] = val
        if self.trial_stats is not None:
            out["trialStats"] = self.trial_stats.to_json()
        if self.polish_swaps is not None:
            out["polishSwaps"] = self.polish_swaps
        out["records"] = [r.to_json() for r in self.records]
        out["achieved"] = self.achieved
        out["warnings"] = list(self.warnings)
        return out


def _bound(d: int) -> Fraction:
    return Fraction(d, 2 * (2 * d + 1))


def _achieved(D: Digraph, bis: Bisection, d: int, epsilon: float, m_stripped: int | None) -> dict:
    m = D.m
    ratio = bis.stats.min_dir / m if m else 0.0
    bound = float(_bound(d))
    if d == 0:
        status = "vacuous"
    else:
        status = "met" if ratio >= bound - epsilon else "below"
    out = {"minDir": bis.stats.min_dir, "ratio": ratio, "bound": bound, "boundStatus": status}
    if m_stripped is not None:
        out["ratioStripped"] = bis.stats.min_dir / m_stripped if m_stripped else 0.0
    return out


def _split_json(ctx: SplitContext) -> dict:
    return {
        "threshold": ctx.threshold,
        "X": len(ctx.X),
        "Y": len(ctx.Y),
        "X1": list(ctx.X1),
        "X2": list(ctx.X2),
        "mStripped": ctx.m,
        "theta": ctx.theta,
        "gapMode": ctx.gap_mode,
        "tau": ctx.tau,
        "alpha": ctx.alpha,
        "beta": ctx.beta,
        "b": ctx.b,
        "g": ctx.g,
        "Delta1": ctx.delta1,
        "eXY": ctx.e_xy,
        "eYX": ctx.e_yx,
    }


def optimal_bisect(D: Digraph, config: EngineConfig | None = None) -> tuple[Bisection, Certificate]:
    config = config or EngineConfig()
    if D.n == 0:
        raise ValueError("digraph has no vertices")
    n, m = D.n, D.m
    d = D.min_semidegree()
    trials = config.resolved_trials
    cert = Certificate("pipeline", config.epsilon, trials, config.seed, n, m, d)
    if d == 0:
        cert.warnings.append("minimum semidegree 0: the guaranteed ratio is vacuous")
    if n < 50:
        cert.warnings.append("n < 50: the asymptotic guarantee carries no promise at this size")

    if m >= config.dense_constant * (2 * d + 1) ** 2 * n:
        cert.mode = "dense"
        eps = 1 / (4 * (2 * d + 1))
        cert.warnings.extend(dense_hypothesis_warnings(D, eps))
        bis = dense_random_bisection(D, eps, trials, config.seed, config.threads)
        cert.records.append(
            Record(
                "dense_random_bisection",
                bis.stats.min_dir,
                ">=",
                Fraction(d, 2 * (2 * d + 1)) * m,
                PASS if bis.stats.min_dir >= Fraction(d, 2 * (2 * d + 1)) * m else NOT_TAKEN,
                "target for the best sampled bisection, not a proof obligation",
            )
        )
    else:
        ctx = build_split(D, config)
        cert.split = _split_json(ctx)
        cert.components = ctx.components.to_json()
        cert.records.extend(verify_claims(ctx))
        dec, M, warns = decompose_y(ctx, config.epsilon, config.refine_restarts, config.seed)
        cert.warnings.extend(warns)
        cert.stars = dec.to_json()
        cert.matching = {
            "size": M.size,
            "free": len(M.free),
            "nonfree": len(M.nonfree),
            "special": len(M.special),
            "sigma": ctx.components.sigma,
            "tauStar": ctx.components.tau_star,
            "refinementMode": "heuristic",
        }
        if len(M.special) < ctx.components.sigma:
            cert.warnings.append("fewer special matching edges than antiparallel tight components")
        bis, stats = randomized_bisection(ctx, dec, trials, config.seed, config.threads)
        cert.trial_stats = stats
        if stats.tier >= 1:
            cert.warnings.append(f"rebalancing fell back to: {REBALANCE_TIERS[stats.tier]}")
        if config.polish and n <= config.polish_max_n:
            movable = np.zeros(n, dtype=bool)
            movable[list(ctx.Y)] = True
            side = np.zeros(n, dtype=np.int8)
            side[list(bis.part2)] = 1
            res = polish(D, side, movable)
            cert.polish_swaps = res.swaps
            bis = Bisection.from_side(D, res.side)
        x1, x2 = set(ctx.X1), set(ctx.X2)
        if not (x1 <= set(bis.part1) and x2 <= set(bis.part2)):
            cert.warnings.append("rebalancing moved a vertex of X across")

    # double-entry check of the returned cut against the raw arcs
    fresh = cut_sizes(D, bis.part1, bis.part2)
    assert fresh == bis.stats and fresh.m == m
    cert.achieved = _achieved(D, bis, d, config.epsilon, cert.split["mStripped"] if cert.split else None)
    return bis, cert


def result_document(D: Digraph, bis: Bisection, cert: Certificate) -> dict:
    return {
        "input": {"n": D.n, "m": D.m, "d": cert.d},
        "mode": cert.mode,
        "bisection": {"part1": list(bis.part1), "part2": list(bis.part2)},
        "stats": {
            "e12": bis.stats.e12,
            "e21": bis.stats.e21,
            "minDir": bis.stats.min_dir,
            "ratio": bis.stats.min_dir / D.m if D.m else 0.0,
        },
        "certificate": cert.to_json(),
        "rng": {"seed": cert.seed, "trials": cert.trials},
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2) + "\n"

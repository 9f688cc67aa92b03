"""Vectorised evaluation of many random bipartitions at once.

A batch of bipartitions is a ``(B, n)`` int8 array ``side`` with 0 meaning
part 1 and 1 meaning part 2. Every trial draws from its own Philox stream
keyed by ``(seed, stream)`` with the trial index in the counter, so results
do not depend on batching or thread count.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.sparse as sp

from .digraph import Digraph

MASK64 = (1 << 64) - 1

SAMPLE_STREAM = 0
DENSE_STREAM = 1


def trial_rng(seed: int, trial: int, stream: int = SAMPLE_STREAM) -> np.random.Generator:
    bitgen = np.random.Philox(key=[seed & MASK64, stream], counter=[0, 0, trial, 0])
    return np.random.Generator(bitgen)


@dataclass(frozen=True)
class ArcMatrix:
    """Sparse adjacency of a digraph plus padded neighbour tables."""

    D: Digraph

    @cached_property
    def A(self) -> sp.csr_matrix:
        D = self.D
        data = np.ones(D.m, dtype=np.float64)
        return sp.csr_matrix((data, (D.tails, D.heads)), shape=(D.n, D.n))

    @cached_property
    def AT(self) -> sp.csr_matrix:
        return self.A.T.tocsr()

    def _pad(self, rows) -> np.ndarray:
        width = max((len(r) for r in rows), default=0)
        out = np.full((len(rows), max(width, 1)), self.D.n, dtype=np.int64)
        for i, r in enumerate(rows):
            out[i, : len(r)] = r
        return out

    @cached_property
    def out_pad(self) -> np.ndarray:
        return self._pad(self.D.out_adj)

    @cached_property
    def in_pad(self) -> np.ndarray:
        return self._pad(self.D.in_adj)

    def in_part1(self, side: np.ndarray) -> np.ndarray:
        """``[b, v]`` = number of in-neighbours of ``v`` in part 1."""
        P1 = (side == 0).astype(np.float64)
        return np.rint(np.asarray(self.AT @ P1.T).T).astype(np.int64)

    def out_part1(self, side: np.ndarray) -> np.ndarray:
        P1 = (side == 0).astype(np.float64)
        return np.rint(np.asarray(self.A @ P1.T).T).astype(np.int64)

    def cuts(self, side: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        in1 = self.in_part1(side)
        p1 = side == 0
        e12 = np.where(~p1, in1, 0).sum(axis=1)
        e21 = np.where(p1, self.D.indeg[None, :] - in1, 0).sum(axis=1)
        return e12.astype(np.int64), e21.astype(np.int64)


@dataclass
class RebalanceResult:
    side: np.ndarray
    e12: np.ndarray
    e21: np.ndarray
    moved: np.ndarray
    tier: np.ndarray  # highest eligibility tier used per trial, -1 if no move
    max_moved_degree: np.ndarray


def rebalance(arcs: ArcMatrix, side: np.ndarray, tiers: list[np.ndarray]) -> RebalanceResult:
    """Move vertices off the larger side until every row is a bisection.

    Each step moves, per row, the eligible vertex whose move keeps
    ``min(e12, e21)`` largest (lowest index on ties). Eligibility follows
    ``tiers``: the first mask with a candidate on the larger side is used.
    The last tier should allow every vertex.
    """
    side = side.copy()
    B, n = side.shape
    D = arcs.D
    outdeg, indeg = D.outdeg, D.indeg
    deg = outdeg + indeg
    hi, lo = (n + 1) // 2, n // 2
    n1 = (side == 0).sum(axis=1)
    src = np.where(n1 > hi, 0, 1).astype(np.int8)
    need = np.where(n1 > hi, n1 - hi, np.maximum(lo - n1, 0))
    e12, e21 = arcs.cuts(side)
    moved = np.zeros(B, dtype=np.int64)
    tier_used = np.full(B, -1, dtype=np.int64)
    max_deg = np.zeros(B, dtype=np.int64)
    if not need.any():
        return RebalanceResult(side, e12, e21, moved, tier_used, max_deg)
    in1 = np.zeros((B, n + 1), dtype=np.int64)
    out1 = np.zeros((B, n + 1), dtype=np.int64)
    in1[:, :n] = arcs.in_part1(side)
    out1[:, :n] = arcs.out_part1(side)
    neg = np.iinfo(np.int64).min
    while True:
        rows = np.nonzero(need > 0)[0]
        if len(rows) == 0:
            break
        S = side[rows]
        sign = np.where(src[rows] == 0, 1, -1)[:, None]
        # effect of moving v out of part 1; moving out of part 2 is the negation
        d12 = sign * (in1[rows, :n] - (outdeg - out1[rows, :n]))
        d21 = sign * (out1[rows, :n] - (indeg - in1[rows, :n]))
        score = np.minimum(e12[rows, None] + d12, e21[rows, None] + d21)
        onside = S == src[rows, None]
        cand = np.zeros_like(onside)
        tier_r = np.full(len(rows), -1, dtype=np.int64)
        for t, mask in enumerate(tiers):
            c = onside & mask[None, :]
            take = c.any(axis=1) & (tier_r == -1)
            cand[take] = c[take]
            tier_r[take] = t
        assert (tier_r >= 0).all(), "no movable vertex on the larger side"
        v = np.argmax(np.where(cand, score, neg), axis=1)
        r_idx = np.arange(len(rows))
        e12[rows] += d12[r_idx, v]
        e21[rows] += d21[r_idx, v]
        side[rows, v] ^= 1
        into1 = -sign  # +1 when the vertex lands in part 1
        in1[rows[:, None], arcs.out_pad[v]] += into1
        out1[rows[:, None], arcs.in_pad[v]] += into1
        need[rows] -= 1
        moved[rows] += 1
        tier_used[rows] = np.maximum(tier_used[rows], tier_r)
        max_deg[rows] = np.maximum(max_deg[rows], deg[v])
    return RebalanceResult(side, e12, e21, moved, tier_used, max_deg)


@dataclass
class PolishResult:
    side: np.ndarray
    e12: int
    e21: int
    swaps: int


def polish(D: Digraph, side: np.ndarray, movable: np.ndarray, max_swaps: int | None = None) -> PolishResult:
    """Pairwise-swap hill climb on ``(min(e12, e21), e12 + e21)``.

    Swapping keeps part sizes, so a bisection stays a bisection. Only
    vertices flagged in ``movable`` take part. Each step applies the best
    swap (lowest indices on ties) and stops when none improves.
    """
    n = D.n
    side = np.asarray(side, dtype=np.int8).copy()
    A = np.zeros((n, n), dtype=np.int64)
    if D.m:
        A[D.tails, D.heads] = 1
    link = A + A.T
    outdeg, indeg = D.outdeg.astype(np.int64), D.indeg.astype(np.int64)
    p1 = (side == 0).astype(np.int64)
    in1 = A.T @ p1
    out1 = A @ p1
    c = cut_pair(D, side)
    e12, e21 = c
    swaps = 0
    limit = n if max_swaps is None else max_swaps
    while swaps < limit:
        # single-move effects as if moving each vertex to the other side
        sign = np.where(side == 0, 1, -1)
        d12 = sign * (in1 - (outdeg - out1))
        d21 = sign * (out1 - (indeg - in1))
        U = np.nonzero((side == 0) & movable)[0]
        V = np.nonzero((side == 1) & movable)[0]
        if len(U) == 0 or len(V) == 0:
            break
        L = link[np.ix_(U, V)]
        n12 = e12 + d12[U][:, None] + d12[V][None, :] + L
        n21 = e21 + d21[U][:, None] + d21[V][None, :] + L
        low = np.minimum(n12, n21)
        key = low * (2 * D.m + 1) + (n12 + n21)
        i = int(np.argmax(key))
        iu, iv = divmod(i, len(V))
        if key.flat[i] <= min(e12, e21) * (2 * D.m + 1) + e12 + e21:
            break
        u, v = int(U[iu]), int(V[iv])
        e12, e21 = int(n12[iu, iv]), int(n21[iu, iv])
        side[u], side[v] = 1, 0
        # u left part 1, v joined it
        in1 += A[v] - A[u]
        out1 += A[:, v] - A[:, u]
        swaps += 1
    assert (e12, e21) == cut_pair(D, side)
    return PolishResult(side, e12, e21, swaps)


def cut_pair(D: Digraph, side: np.ndarray) -> tuple[int, int]:
    if D.m == 0:
        return 0, 0
    s = np.asarray(side)
    st, sh = s[D.tails], s[D.heads]
    return int(((st == 0) & (sh == 1)).sum()), int(((st == 1) & (sh == 0)).sum())

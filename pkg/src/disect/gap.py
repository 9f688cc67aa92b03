"""Signed partition of the high-degree set minimising the ordered gap.

Given the imbalances ``s+(v) = d+(v) - d-(v)`` of the vertices of ``X``, pick
``X1, X2`` minimising ``|sum_{X1} s+ - sum_{X2} s+|``. Putting ``v`` in ``X1``
contributes ``+s+(v)``, in ``X2`` contributes ``-s+(v)``, so this is a
number-partitioning problem over ``|s+(v)|``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

__all__ = ["GapResult", "min_gap_partition"]

EXACT = "exact"
LOCAL = "local"


@dataclass(frozen=True)
class GapResult:
    X1: tuple[int, ...]  # indices into the input list
    X2: tuple[int, ...]
    theta: int
    mode: str


def _dp_subset(values: list[int], target_lo: int) -> list[bool]:
    """Subset with the smallest reachable sum ``>= target_lo`` (bitset DP)."""
    reach = 1
    history = []
    for a in values:
        history.append(reach)
        reach |= reach << a
    total = sum(values)
    p = target_lo
    while not (reach >> p) & 1:
        p += 1
        assert p <= total
    chosen = [False] * len(values)
    for i in range(len(values) - 1, -1, -1):
        if not (history[i] >> p) & 1:
            chosen[i] = True
            p -= values[i]
    assert p == 0
    return chosen


def _half_sums(values: list[int]) -> tuple[np.ndarray, np.ndarray]:
    k = len(values)
    masks = np.arange(1 << k, dtype=np.int64)
    sums = np.zeros(1 << k, dtype=np.int64)
    for i, a in enumerate(values):
        sums += ((masks >> i) & 1) * a
    return sums, masks


def _mitm_subset(values: list[int], target_lo: int) -> list[bool]:
    h = len(values) // 2
    left, right = values[:h], values[h:]
    ls, lm = _half_sums(left)
    rs, rm = _half_sums(right)
    order = np.argsort(rs, kind="stable")
    rs, rm = rs[order], rm[order]
    need = target_lo - ls
    pos = np.searchsorted(rs, need, side="left")
    ok = pos < len(rs)
    totals = np.where(ok, ls + rs[np.minimum(pos, len(rs) - 1)], np.iinfo(np.int64).max)
    i = int(np.argmin(totals))
    lmask, rmask = int(lm[i]), int(rm[pos[i]])
    return [bool(lmask >> j & 1) for j in range(h)] + [bool(rmask >> j & 1) for j in range(len(right))]


def _local_subset(values: list[int], seed: int, starts: int) -> list[bool]:
    """Multi-start single-switch descent on ``|2P - T|``."""
    total = sum(values)
    rng = np.random.default_rng(seed)
    best, best_gap = None, None
    order = sorted(range(len(values)), key=lambda i: -values[i])
    for r in range(starts):
        chosen = [False] * len(values)
        p = 0
        if r == 0:
            for i in order:  # greedy: larger items to the lighter side
                if 2 * p < total:
                    chosen[i] = True
                    p += values[i]
        else:
            for i in range(len(values)):
                if rng.random() < 0.5:
                    chosen[i] = True
                    p += values[i]
        while True:
            gap = abs(2 * p - total)
            best_i, best_new = None, gap
            for i, a in enumerate(values):
                q = p - a if chosen[i] else p + a
                if abs(2 * q - total) < best_new:
                    best_i, best_new = i, abs(2 * q - total)
            if best_i is None:
                break
            p += -values[best_i] if chosen[best_i] else values[best_i]
            chosen[best_i] = not chosen[best_i]
        if 2 * p < total:
            chosen = [not c for c in chosen]
            p = total - p
        if best_gap is None or 2 * p - total < best_gap:
            best, best_gap = chosen, 2 * p - total
    return best


def min_gap_partition(
    splus: Sequence[int],
    budget: int = 10**7,
    mitm_max: int = 40,
    seed: int = 0,
    local_starts: int = 16,
) -> GapResult:
    """Split indices of ``splus`` into ``X1, X2`` with ``theta >= 0`` minimal.

    Exact via a reachable-sum bitset when ``sum |s+| <= budget``, else by
    meet-in-the-middle when at most ``mitm_max`` entries are non-zero, else
    local search (theta then only locally minimal under single switches).
    Zero entries are dealt alternately to the smaller side.
    """
    splus = [int(x) for x in splus]
    nz = [i for i, x in enumerate(splus) if x != 0]
    values = [abs(splus[i]) for i in nz]
    total = sum(values)
    target_lo = math.ceil(total / 2)
    if total <= budget:
        chosen, mode = _dp_subset(values, target_lo), EXACT
    elif len(values) <= mitm_max:
        chosen, mode = _mitm_subset(values, target_lo), EXACT
    else:
        chosen, mode = _local_subset(values, seed, local_starts), LOCAL
    X1, X2 = [], []
    for i, c in zip(nz, chosen):
        # chosen entries add |s+| to theta
        (X1 if (splus[i] > 0) == c else X2).append(i)
    for i, x in enumerate(splus):
        if x == 0:
            (X1 if len(X1) <= len(X2) else X2).append(i)
    theta = sum(splus[i] for i in X1) - sum(splus[i] for i in X2)
    assert theta >= 0
    return GapResult(tuple(sorted(X1)), tuple(sorted(X2)), theta, mode)

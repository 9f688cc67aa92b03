"""Exhaustive ground truth for small instances.

Nothing here shares code with the matching or partitioning routines; every
answer is obtained by plain enumeration. Size guards are hard errors.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Any, Iterator, Sequence

from .digraph import Digraph, UndirectedGraph

__all__ = [
    "OracleGuardError",
    "OracleResult",
    "exact_best_bisection",
    "exact_matching_profile",
    "exact_min_gap",
    "exact_tight_check",
]

BISECTION_MAX_N = 22
GAP_MAX_LEN = 24
MATCHING_MAX_N = 12
TIGHT_MAX_N = 10


class OracleGuardError(ValueError):
    pass


@dataclass(frozen=True)
class OracleResult:
    value: Any
    witness: Any
    explored: int


def _guard(size: int, limit: int, what: str) -> None:
    if size > limit:
        raise OracleGuardError(f"{what} of size {size} exceeds oracle guard {limit}")


def exact_best_bisection(D: Digraph) -> OracleResult:
    """Maximise ``min(e12, e21)`` over all bisections.

    Only parts containing vertex 0 are enumerated; the objective is symmetric
    under swapping the parts. The witness is the lexicographically smallest
    optimal ``part1`` (as a sorted tuple containing 0).
    """
    n = D.n
    _guard(n, BISECTION_MAX_N, "digraph")
    if n == 0:
        return OracleResult(0, ((), ()), 1)
    arcs = D.sorted_arcs
    sizes = sorted({(n + 1) // 2, n // 2} - {0})
    best, witness, explored = -1, None, 0
    for size in sizes:
        for rest in combinations(range(1, n), size - 1):
            part1 = (0, *rest)
            inside = 0
            for v in part1:
                inside |= 1 << v
            e12 = e21 = 0
            for u, v in arcs:
                a, b = inside >> u & 1, inside >> v & 1
                if a and not b:
                    e12 += 1
                elif b and not a:
                    e21 += 1
            explored += 1
            val = min(e12, e21)
            if val > best or (val == best and part1 < witness):
                best, witness = val, part1
    if n == 1:
        witness, best = (0,), 0
    part2 = tuple(v for v in range(n) if v not in witness)
    return OracleResult(best, (witness, part2), explored)


def exact_min_gap(splus: Sequence[int]) -> OracleResult:
    """Minimise ``|sum(sign_i * splus_i)|`` over all sign patterns."""
    _guard(len(splus), GAP_MAX_LEN, "gap list")
    best, witness, explored = None, (), 0
    for signs in product((1, -1), repeat=len(splus)):
        explored += 1
        val = abs(sum(s * a for s, a in zip(signs, splus)))
        if best is None or val < best:
            best, witness = val, signs
    return OracleResult(best, witness, explored)


def _all_matchings(n: int, edges: Sequence[tuple[int, int]]) -> Iterator[tuple[tuple[int, int], ...]]:
    def rec(i: int, used: int, chosen: list):
        if i == len(edges):
            yield tuple(chosen)
            return
        yield from rec(i + 1, used, chosen)
        u, v = edges[i]
        if not (used >> u & 1 or used >> v & 1):
            chosen.append(edges[i])
            yield from rec(i + 1, used | (1 << u) | (1 << v), chosen)
            chosen.pop()

    yield from rec(0, 0, [])


def _count_free(G: UndirectedGraph, matching) -> int:
    partner = {}
    for u, v in matching:
        partner[u], partner[v] = v, u
    count = 0
    for w in range(G.n):
        if w in partner:
            continue
        if any(x in partner and partner[x] not in G.adj[w] for x in G.adj[w]):
            count += 1
    return count


def exact_matching_profile(G: UndirectedGraph, D: Digraph | None = None) -> OracleResult:
    """Lexicographic optimum of (size, #free, #special) over all matchings."""
    _guard(G.n, MATCHING_MAX_N, "graph")
    edges = sorted(G.edges)
    best, witness, explored = None, (), 0
    for mt in _all_matchings(G.n, edges):
        explored += 1
        if best is not None and len(mt) < best[0]:
            continue
        special = sum(1 for u, v in mt if D is not None and (u, v) in D.arcs and (v, u) in D.arcs)
        key = (len(mt), _count_free(G, mt), special)
        if best is None or key > best:
            best, witness = key, mt
    return OracleResult(best, witness, explored)


def _perfect_matchings(vertices: tuple[int, ...], adj) -> Iterator[list[tuple[int, int]]]:
    if not vertices:
        yield []
        return
    first, rest = vertices[0], vertices[1:]
    for i, w in enumerate(rest):
        if w in adj[first]:
            for pm in _perfect_matchings(rest[:i] + rest[i + 1:], adj):
                yield [(first, w), *pm]


def exact_tight_check(G: UndirectedGraph) -> bool:
    """Both tightness conditions, checked literally over every perfect matching."""
    _guard(G.n, TIGHT_MAX_N, "graph")
    if G.n == 0 or len(G.components()) != 1:
        raise ValueError("graph must be connected and non-empty")
    for v in range(G.n):
        others = tuple(w for w in range(G.n) if w != v)
        found = False
        for pm in _perfect_matchings(others, G.adj):
            found = True
            for x, y in pm:
                if (x in G.adj[v]) != (y in G.adj[v]):
                    return False
        if not found:
            return False
    return True

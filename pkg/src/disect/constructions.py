"""Instance generators: Eulerian tournaments on odd cliques, the extremal
family (cliques pointing into an apex), and random digraphs with a
minimum-semidegree floor."""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

import numpy as np

from .digraph import Digraph

__all__ = [
    "random_hub_digraph",
    "ExtremalLayout",
    "eulerian_circuit",
    "eulerian_complete_odd",
    "extremal_bisection_bound",
    "extremal_family",
    "extremal_size",
    "random_min_semidegree",
]


def eulerian_circuit(n: int, edges: list[tuple[int, int]], start: int = 0) -> list[int]:
    """Hierholzer's algorithm; neighbours are consumed in increasing order."""
    adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for i, (u, v) in enumerate(edges):
        adj[u].append((v, i))
        adj[v].append((u, i))
    for row in adj:
        row.sort(reverse=True)  # pop() then yields the smallest neighbour
    used = [False] * len(edges)
    stack, circuit = [start], []
    while stack:
        v = stack[-1]
        while adj[v] and used[adj[v][-1][1]]:
            adj[v].pop()
        if adj[v]:
            w, i = adj[v].pop()
            used[i] = True
            stack.append(w)
        else:
            circuit.append(stack.pop())
    if not all(used):
        raise ValueError("graph has no Eulerian circuit")
    return circuit[::-1]


def eulerian_complete_odd(t: int) -> Digraph:
    """Orient ``K_t`` along an Euler circuit; every vertex ends with in = out = (t-1)/2."""
    if t < 3 or t % 2 == 0:
        raise ValueError(f"t must be odd and at least 3, got {t}")
    edges = [(u, v) for u in range(t) for v in range(u + 1, t)]
    walk = eulerian_circuit(t, edges)
    return Digraph(t, zip(walk, walk[1:]))


@dataclass(frozen=True)
class ExtremalLayout:
    d: int
    k: int
    copies: tuple[tuple[int, ...], ...]
    big_clique: tuple[int, ...]
    apex: int

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)


def extremal_size(d: int, k: int) -> tuple[int, int]:
    n = k * (2 * d + 1) + (2 * d + 3)
    m = k * (d + 1) * (2 * d + 1) + (d + 1) * (2 * d + 3)
    return n, m


def extremal_bisection_bound(d: int, k: int) -> int:
    """Upper bound on ``min(e12, e21)`` over all bipartitions of ``extremal_family(d, k)``."""
    return k * d * (d + 1) // 2 + (d + 1) * (d + 2) // 2


def extremal_family(d: int, k: int) -> tuple[Digraph, ExtremalLayout]:
    """``k`` Eulerian ``K_{2d+1}`` copies, one Eulerian ``K_{2d+3}``, and an
    arc from every small-copy vertex to the apex (first vertex of the big clique)."""
    if d < 1 or k < 1:
        raise ValueError(f"need d >= 1 and k >= 1, got d={d}, k={k}")
    small, big = 2 * d + 1, 2 * d + 3
    small_arcs = eulerian_complete_odd(small).sorted_arcs
    big_arcs = eulerian_complete_odd(big).sorted_arcs
    arcs, copies = [], []
    for c in range(k):
        off = c * small
        copies.append(tuple(range(off, off + small)))
        arcs.extend((u + off, v + off) for u, v in small_arcs)
    off = k * small
    apex = off
    arcs.extend((u + off, v + off) for u, v in big_arcs)
    arcs.extend((v, apex) for v in range(k * small))
    layout = ExtremalLayout(d, k, tuple(copies), tuple(range(off, off + big)), apex)
    return Digraph(off + big, arcs), layout


def random_min_semidegree(n: int, d: int, p: float = 0.0, seed: int = 0, max_retries: int = 1000) -> Digraph:
    """Random digraph with every in- and outdegree at least ``d``.

    Each vertex first sends ``d`` arcs to random targets; vertices still short
    of indegree ``d`` receive arcs from random non-neighbours. Then every
    remaining ordered pair becomes an arc independently with probability ``p``.
    """
    if d < 0 or n < 2 * d + 1 or n < 1:
        raise ValueError(f"n={n} too small for semidegree {d} (need n >= 2d+1)")
    rng = np.random.default_rng(seed)
    arcs: set[tuple[int, int]] = set()
    for u in range(n):
        others = np.delete(np.arange(n), u)
        for v in rng.choice(others, size=d, replace=False):
            arcs.add((u, int(v)))
    indeg = np.zeros(n, dtype=int)
    for _, v in arcs:
        indeg[v] += 1
    for v in range(n):
        retries = 0
        while indeg[v] < d:
            u = int(rng.integers(n))
            if u != v and (u, v) not in arcs:
                arcs.add((u, v))
                indeg[v] += 1
            else:
                retries += 1
                if retries > max_retries:
                    raise RuntimeError(f"could not repair indegree of vertex {v}")
    if p > 0:
        coins = rng.random((n, n)) < p
        for u, v in zip(*np.nonzero(coins)):
            if u != v:
                arcs.add((int(u), int(v)))
    return Digraph(n, arcs)


def random_hub_digraph(
    n: int, d: int, hubs: int = 3, p: float = 0.0, skew: float = 0.8, reach: float = 0.5, seed: int = 0
) -> Digraph:
    """``random_min_semidegree`` plus a few high-degree hubs with lopsided arcs.

    Each hub gets arcs to or from ``reach * n`` random vertices; a fraction
    ``skew`` of them point away from (or, for odd hubs, into) the hub, which
    gives large ``|d+ - d-|`` on high-degree vertices.
    """
    base = random_min_semidegree(n, d, p, seed)
    rng = np.random.default_rng([seed, 1])
    arcs = set(base.arcs)
    for h in range(min(hubs, n)):
        out_major = bool(rng.integers(2))
        for v in rng.choice(n, size=min(n, int(reach * n)), replace=False):
            v = int(v)
            if v == h:
                continue
            outward = (rng.random() < skew) == out_major
            arc = (h, v) if outward else (v, h)
            if (arc[1], arc[0]) not in arcs or rng.random() < 0.2:
                arcs.add(arc)
    return Digraph(n, arcs)

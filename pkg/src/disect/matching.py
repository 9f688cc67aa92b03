"""Maximum matchings in general graphs and free/non-free refinement.

The matching core is Edmonds' blossom-contraction search. Matchings are kept
as ``mate`` lists (``mate[v] == -1`` for an unmatched vertex) internally and
exposed through the :class:`Matching` record.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .digraph import Digraph, UndirectedGraph

__all__ = [
    "Matching",
    "NotMaximumError",
    "classify_free",
    "has_perfect_matching",
    "matching_from_edges",
    "maximum_matching",
    "refine_matching",
]


class NotMaximumError(ValueError):
    pass


@dataclass(frozen=True)
class Matching:
    edges: tuple[tuple[int, int], ...]
    free: frozenset[int]
    nonfree: frozenset[int]
    special: frozenset[tuple[int, int]]

    @property
    def size(self) -> int:
        return len(self.edges)

    @property
    def unmatched(self) -> frozenset[int]:
        return self.free | self.nonfree

    @property
    def objective(self) -> tuple[int, int]:
        return len(self.free), len(self.special)

    def mate(self, n: int) -> list[int]:
        mate = [-1] * n
        for u, v in self.edges:
            mate[u] = v
            mate[v] = u
        return mate

    def to_json(self) -> dict:
        return {
            "edges": [list(e) for e in self.edges],
            "free": sorted(self.free),
            "nonfree": sorted(self.nonfree),
            "special": [list(e) for e in sorted(self.special)],
        }


def augment_from(adj: Sequence, mate: list[int], root: int, alive: Sequence[bool] | None = None) -> bool:
    """Search for an augmenting path from the exposed vertex ``root``.

    On success the path is flipped in ``mate`` and True is returned.
    Vertices with ``alive[v]`` false are treated as deleted.
    """
    n = len(adj)
    parent = [-1] * n
    base = list(range(n))
    used = [False] * n
    used[root] = True
    queue = deque([root])

    def lca(a: int, b: int) -> int:
        seen = set()
        while True:
            a = base[a]
            seen.add(a)
            if mate[a] == -1:
                break
            a = parent[mate[a]]
        while True:
            b = base[b]
            if b in seen:
                return b
            b = parent[mate[b]]

    def mark_path(v: int, b: int, child: int, blossom: list[bool]) -> None:
        while base[v] != b:
            blossom[base[v]] = blossom[base[mate[v]]] = True
            parent[v] = child
            child = mate[v]
            v = parent[mate[v]]

    while queue:
        v = queue.popleft()
        for to in adj[v]:
            if alive is not None and not alive[to]:
                continue
            if base[v] == base[to] or mate[v] == to:
                continue
            if to == root or (mate[to] != -1 and parent[mate[to]] != -1):
                cur = lca(v, to)
                blossom = [False] * n
                mark_path(v, cur, to, blossom)
                mark_path(to, cur, v, blossom)
                for i in range(n):
                    if blossom[base[i]]:
                        base[i] = cur
                        if not used[i]:
                            used[i] = True
                            queue.append(i)
            elif parent[to] == -1:
                parent[to] = v
                if mate[to] == -1:
                    u = to
                    while u != -1:
                        pv = parent[u]
                        nxt = mate[pv]
                        mate[u] = pv
                        mate[pv] = u
                        u = nxt
                    return True
                used[mate[to]] = True
                queue.append(mate[to])
    return False


def max_mate(adj: Sequence, alive: Sequence[bool] | None = None, mate: list[int] | None = None) -> list[int]:
    """Maximum matching as a ``mate`` list, optionally warm-started.

    A warm start must be a valid matching among alive vertices.
    """
    n = len(adj)
    if mate is None:
        mate = [-1] * n
        for v in range(n):
            if mate[v] != -1 or (alive is not None and not alive[v]):
                continue
            for w in sorted(adj[v]):
                if mate[w] == -1 and w != v and (alive is None or alive[w]):
                    mate[v], mate[w] = w, v
                    break
    for v in range(n):
        if mate[v] == -1 and (alive is None or alive[v]):
            augment_from(adj, mate, v, alive)
    return mate


def _edges_of(mate: Sequence[int]) -> tuple[tuple[int, int], ...]:
    return tuple((v, w) for v, w in enumerate(mate) if w > v)


def _special_of(edges, D: Digraph | None) -> frozenset[tuple[int, int]]:
    if D is None:
        return frozenset()
    return frozenset(e for e in edges if D.is_antiparallel(*e))


def _is_free(adj: Sequence[frozenset[int]], mate: Sequence[int], w: int) -> bool:
    nbrs = adj[w]
    for v in nbrs:
        p = mate[v]
        if p != -1 and p not in nbrs:
            return True
    return False


def _check_maximal(G: UndirectedGraph, mate: Sequence[int]) -> None:
    for u, v in G.edges:
        assert not (mate[u] == -1 and mate[v] == -1), f"unmatched vertices {u},{v} are adjacent"


def classify_free(G: UndirectedGraph, edges) -> tuple[frozenset[int], frozenset[int], dict[int, list[int]]]:
    """Split the unmatched vertices into free and non-free ones.

    Returns ``(free, nonfree, witnesses)`` where ``witnesses[w]`` lists the
    matched vertices that are free neighbours of ``w`` (sorted).
    """
    mate = [-1] * G.n
    for u, v in edges:
        if not G.has_edge(u, v):
            raise ValueError(f"({u}, {v}) is not an edge of the graph")
        if mate[u] != -1 or mate[v] != -1:
            raise ValueError("edges do not form a matching")
        mate[u], mate[v] = v, u
    free, nonfree, witnesses = set(), set(), {}
    for w in range(G.n):
        if mate[w] != -1:
            continue
        wit = sorted(v for v in G.adj[w] if mate[v] != -1 and mate[v] not in G.adj[w])
        if wit:
            free.add(w)
            witnesses[w] = wit
        else:
            nonfree.add(w)
    return frozenset(free), frozenset(nonfree), witnesses


def matching_from_edges(G: UndirectedGraph, edges, D: Digraph | None = None) -> Matching:
    edges = tuple(sorted((min(e), max(e)) for e in edges))
    free, nonfree, _ = classify_free(G, edges)
    return Matching(edges, free, nonfree, _special_of(edges, D))


def maximum_matching(G: UndirectedGraph, D: Digraph | None = None) -> Matching:
    mate = max_mate(G.sorted_adj)
    _check_maximal(G, mate)
    return matching_from_edges(G, _edges_of(mate), D)


def has_perfect_matching(G: UndirectedGraph) -> bool:
    if G.n % 2:
        return False
    mate = max_mate(G.sorted_adj)
    return all(w != -1 for w in mate)


# -- refinement --------------------------------------------------------------


class _Refiner:
    """Hill-climbing over maximum matchings of one component.

    Every move keeps the matching size. A move is ``(vertices, pairs)``: the
    listed vertices are unmatched, then ``pairs`` are matched. Kinds:

    * rotation from an unmatched ``w``: ``{x, y}`` becomes ``{w, x}``;
    * alternating path of length four: ``{x, y}, {x2, y2}`` becomes
      ``{w, x}, {y, x2}``;
    * alternating 4-cycle: ``{x, y}, {x2, y2}`` becomes ``{x, x2}, {y, y2}``.
    """

    def __init__(self, adj, sorted_adj, D: Digraph | None, vertices: list[int]):
        self.adj = adj
        self.sorted_adj = sorted_adj
        self.D = D
        self.vertices = vertices

    def special(self, u: int, v: int) -> int:
        return 1 if self.D is not None and self.D.is_antiparallel(u, v) else 0

    def objective(self, mate: list[int]) -> tuple[int, int]:
        free = special = 0
        for v in self.vertices:
            if mate[v] == -1:
                free += _is_free(self.adj, mate, v)
            elif mate[v] > v:
                special += self.special(v, mate[v])
        return free, special

    def moves(self, mate: list[int]):
        for w in self.vertices:
            if mate[w] != -1:
                continue
            for x in self.sorted_adj[w]:
                y = mate[x]
                if y == -1:
                    continue
                yield (w, x, y), ((w, x),)
                for x2 in self.sorted_adj[y]:
                    y2 = mate[x2]
                    if y2 == -1 or x2 == x or y2 in (w, x, y):
                        continue
                    yield (w, x, y, x2, y2), ((w, x), (y, x2))
        for x in self.vertices:
            y = mate[x]
            if y < x:
                continue
            for x2 in self.sorted_adj[x]:
                y2 = mate[x2]
                if y2 == -1 or x2 == y or min(x2, y2) < x or y2 not in self.adj[y]:
                    continue
                yield (x, y, x2, y2), ((x, x2), (y, y2))

    @staticmethod
    def apply(mate: list[int], move) -> list[tuple[int, int]]:
        """Apply ``move`` in place; returns the previous mate entries."""
        verts, pairs = move
        saved = [(v, mate[v]) for v in verts]
        for v in verts:
            mate[v] = -1
        for a, b in pairs:
            mate[a], mate[b] = b, a
        return saved

    def delta(self, mate: list[int], move) -> tuple[int, int]:
        verts, pairs = move
        touched = set(verts)
        for v in verts:
            touched.update(self.adj[v])
        before_free = sum(_is_free(self.adj, mate, u) for u in touched if mate[u] == -1)
        before_special = sum(self.special(v, mate[v]) for v in verts if mate[v] > v)
        saved = self.apply(mate, move)
        after_free = sum(_is_free(self.adj, mate, u) for u in touched if mate[u] == -1)
        after_special = sum(self.special(a, b) for a, b in pairs)
        for v, old in saved:
            mate[v] = old
        return after_free - before_free, after_special - before_special

    def climb(self, mate: list[int]) -> None:
        while True:
            best, best_move = (0, 0), None
            for move in self.moves(mate):
                d = self.delta(mate, move)
                if d > best:
                    best, best_move = d, move
            if best_move is None:
                return
            self.apply(mate, best_move)

    def walk(self, mate: list[int], rng: np.random.Generator, steps: int) -> None:
        for _ in range(steps):
            options = list(self.moves(mate))
            if not options:
                return
            self.apply(mate, options[int(rng.integers(len(options)))])


def refine_matching(
    G: UndirectedGraph,
    D: Digraph | None,
    M0: Matching,
    restarts: int = 20,
    seed: int = 0,
) -> Matching:
    """Improve a maximum matching lexicographically on (#free, #special).

    Each connected component is refined independently: a hill-climb from the
    given matching, then ``restarts`` further climbs from random-move walks. The best matching found is returned; ties keep the earlier one.
    The result is locally optimal, not guaranteed globally optimal.
    """
    nu = len(_edges_of(max_mate(G.sorted_adj)))
    if M0.size != nu:
        raise NotMaximumError(f"matching of size {M0.size} is not maximum ({nu})")
    mate = M0.mate(G.n)
    adj = G.adj
    for ci, comp in enumerate(G.components()):
        if len(comp) < 3:
            continue
        unmatched = [v for v in comp if mate[v] == -1]
        ref = _Refiner(adj, G.sorted_adj, D, comp)
        has_special = D is not None and any(ref.special(u, v) for u in comp for v in adj[u] if u < v)

        def at_ceiling(mt: list[int]) -> bool:
            if ref.objective(mt)[0] < len(unmatched):
                return False
            return not has_special or all(mt[v] == -1 or ref.special(v, mt[v]) for v in comp)

        if at_ceiling(mate):
            continue

        best = list(mate)
        ref.climb(best)
        best_obj = ref.objective(best)
        for r in range(restarts):
            if at_ceiling(best):
                break
            rng = np.random.default_rng([seed, ci, r])
            cand = list(mate)
            ref.walk(cand, rng, steps=max(5, 2 * len(unmatched), len(comp) // 2))
            ref.climb(cand)
            obj = ref.objective(cand)
            if obj > best_obj:
                best, best_obj = cand, obj
        for v in comp:
            mate[v] = best[v]
    _check_maximal(G, mate)
    return matching_from_edges(G, _edges_of(mate), D)

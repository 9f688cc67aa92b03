"""Tight and essential components.

A connected graph is tight when deleting any vertex ``v`` leaves a graph with
a perfect matching, and no such perfect matching uses an edge with exactly
one end adjacent to ``v``. The second condition is tested per edge: an edge
``{x, y}`` with exactly one end adjacent to ``v`` lies in some perfect
matching of ``T - v`` iff ``T - {v, x, y}`` has a perfect matching.
"""

from __future__ import annotations

from dataclasses import dataclass

from .digraph import Digraph, UndirectedGraph, underlying_graph
from .matching import augment_from, max_mate

__all__ = [
    "ComponentReport",
    "essential_components",
    "is_factor_critical",
    "is_tight",
    "tight_component_count",
]


def _require_connected(G: UndirectedGraph) -> None:
    if G.n and len(G.components()) != 1:
        raise ValueError("graph must be connected")


def _vertex_deleted_matchings(adj, n: int):
    """Yield ``(v, mate)`` with ``mate`` a perfect matching of ``G - v``.

    Yields ``(v, None)`` and stops at the first ``v`` for which none exists.
    """
    if n % 2 == 0:
        yield 0, None
        return
    base = max_mate(adj)
    exposed = [v for v in range(n) if base[v] == -1]
    if len(exposed) != 1:
        yield exposed[0], None
        return
    for v in range(n):
        mate = list(base)
        if mate[v] != -1:
            p = mate[v]
            mate[v] = mate[p] = -1
            alive = [True] * n
            alive[v] = False
            if not augment_from(adj, mate, p, alive):
                yield v, None
                return
        yield v, mate


def is_factor_critical(G: UndirectedGraph) -> bool:
    _require_connected(G)
    if G.n == 0:
        return False
    return all(mate is not None for _, mate in _vertex_deleted_matchings(G.sorted_adj, G.n))


def _tight(adj, nbr_sets, n: int) -> bool:
    deleted = []
    for v, mate in _vertex_deleted_matchings(adj, n):
        if mate is None:
            return False
        near = nbr_sets[v]
        for x, y in enumerate(mate):
            if y > x and (x in near) != (y in near):
                return False
        deleted.append((v, mate))
    for v, pm in deleted:
        near = nbr_sets[v]
        for x in range(n):
            if x == v:
                continue
            for y in adj[x]:
                if y <= x or y == v or (x in near) == (y in near):
                    continue
                mate = list(pm)
                xp, yp = mate[x], mate[y]
                for w in (x, xp, y, yp):
                    mate[w] = -1
                alive = [True] * n
                alive[v] = alive[x] = alive[y] = False
                if augment_from(adj, mate, xp, alive):
                    return False
    return True


def is_tight(G: UndirectedGraph) -> bool:
    _require_connected(G)
    if G.n == 0:
        return False
    return _tight(G.sorted_adj, G.adj, G.n)


@dataclass(frozen=True)
class ComponentReport:
    components: tuple[tuple[int, ...], ...]
    is_tight: tuple[bool, ...]
    has_antiparallel: tuple[bool, ...]
    is_essential: tuple[bool, ...]

    @property
    def tau_star(self) -> int:
        return sum(self.is_tight)

    @property
    def sigma(self) -> int:
        return sum(t and a for t, a in zip(self.is_tight, self.has_antiparallel))

    @property
    def tau(self) -> int:
        return sum(self.is_essential)

    def to_json(self) -> dict:
        return {
            "componentSizes": [len(c) for c in self.components],
            "isTight": list(self.is_tight),
            "hasAntiparallel": list(self.has_antiparallel),
            "isEssential": list(self.is_essential),
            "tau": self.tau,
            "tauStar": self.tau_star,
            "sigma": self.sigma,
        }


def _component_flags(G: UndirectedGraph, comp: list[int]) -> bool:
    if len(comp) % 2 == 0:
        return False
    if len(comp) == 1:
        return True
    H, _ = G.induced(comp)
    return _tight(H.sorted_adj, H.adj, H.n)


def tight_component_count(G: UndirectedGraph) -> int:
    return sum(_component_flags(G, comp) for comp in G.components())


def essential_components(D: Digraph) -> ComponentReport:
    G = underlying_graph(D)
    comps = G.components()
    tight, anti, essential = [], [], []
    for comp in comps:
        members = set(comp)
        t = _component_flags(G, comp)
        arcs = [(u, v) for u in comp for v in D.out_adj[u] if v in members]
        a = any(D.has_arc(v, u) for u, v in arcs)
        e = t and not a
        if e:
            i = len(comp)
            assert len(arcs) <= i * (i - 1) // 2, "essential component with too many arcs"
        tight.append(t)
        anti.append(a)
        essential.append(e)
    return ComponentReport(tuple(map(tuple, comps)), tuple(tight), tuple(anti), tuple(essential))

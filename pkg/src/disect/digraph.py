"""Directed graphs: representation, arc-list I/O, degree and cut accounting."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

import numpy as np

__all__ = [
    "CutStats",
    "DegreeProfile",
    "Digraph",
    "DuplicateArcError",
    "MalformedError",
    "ParseError",
    "SelfLoopError",
    "UndirectedGraph",
    "VertexRangeError",
    "cut_sizes",
    "degree_profile",
    "induced_subdigraph",
    "parse_digraph",
    "read_digraph",
    "serialize_digraph",
    "underlying_graph",
]


class ParseError(ValueError):
    """Base class for arc-list parse failures."""

    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class MalformedError(ParseError):
    pass


class SelfLoopError(ParseError):
    pass


class DuplicateArcError(ParseError):
    pass


class VertexRangeError(ParseError):
    pass


@dataclass(frozen=True)
class Digraph:
    """Loop-free digraph on vertices ``0..n-1``.

    An arc ``(u, v)`` is directed from ``u`` to ``v``. Antiparallel pairs are
    allowed; duplicates cannot occur because arcs are stored as a set.
    """

    n: int
    arcs: frozenset[tuple[int, int]]

    def __init__(self, n: int, arcs: Iterable[tuple[int, int]] = ()):
        arcs = frozenset((int(u), int(v)) for u, v in arcs)
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        for u, v in arcs:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"arc ({u}, {v}) out of range for n={n}")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "arcs", arcs)

    @property
    def m(self) -> int:
        return len(self.arcs)

    @cached_property
    def sorted_arcs(self) -> tuple[tuple[int, int], ...]:
        return tuple(sorted(self.arcs))

    @cached_property
    def out_adj(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.sorted_arcs:
            out[u].append(v)
        return tuple(map(tuple, out))

    @cached_property
    def in_adj(self) -> tuple[tuple[int, ...], ...]:
        inn: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.sorted_arcs:
            inn[v].append(u)
        return tuple(tuple(sorted(a)) for a in inn)

    @cached_property
    def tails(self) -> np.ndarray:
        return np.fromiter((u for u, _ in self.sorted_arcs), dtype=np.int64, count=self.m)

    @cached_property
    def heads(self) -> np.ndarray:
        return np.fromiter((v for _, v in self.sorted_arcs), dtype=np.int64, count=self.m)

    @cached_property
    def outdeg(self) -> np.ndarray:
        return np.bincount(self.tails, minlength=self.n).astype(np.int64)

    @cached_property
    def indeg(self) -> np.ndarray:
        return np.bincount(self.heads, minlength=self.n).astype(np.int64)

    @property
    def degree(self) -> np.ndarray:
        return self.outdeg + self.indeg

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def is_antiparallel(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs and (v, u) in self.arcs

    def min_semidegree(self) -> int:
        if self.n == 0:
            return 0
        return int(np.minimum(self.outdeg, self.indeg).min())

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class UndirectedGraph:
    """Simple undirected graph; edges are stored as ``(min, max)`` pairs."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        norm = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            norm.add((u, v) if u < v else (v, u))
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "edges", frozenset(norm))

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        nbrs: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nbrs[u].add(v)
            nbrs[v].add(u)
        return tuple(frozenset(s) for s in nbrs)

    @cached_property
    def sorted_adj(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(sorted(s)) for s in self.adj)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by smallest vertex."""
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                v = stack.pop()
                comp.append(v)
                for w in self.adj[v]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def induced(self, vertices: Iterable[int]) -> tuple[UndirectedGraph, list[int]]:
        """Induced subgraph relabelled to ``0..k-1``, plus the new->old map."""
        old = sorted(set(vertices))
        index = {v: i for i, v in enumerate(old)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return UndirectedGraph(len(old), edges), old

    def __repr__(self) -> str:
        return f"UndirectedGraph(n={self.n}, edges={len(self.edges)})"


@dataclass(frozen=True)
class DegreeProfile:
    out: np.ndarray
    inn: np.ndarray
    splus: np.ndarray
    s: np.ndarray
    semidegree: np.ndarray

    @property
    def min_semidegree(self) -> int:
        return int(self.semidegree.min()) if len(self.semidegree) else 0


@dataclass(frozen=True)
class CutStats:
    e12: int
    e21: int
    internal1: int
    internal2: int

    @property
    def min_dir(self) -> int:
        return min(self.e12, self.e21)

    @property
    def m(self) -> int:
        return self.e12 + self.e21 + self.internal1 + self.internal2


def degree_profile(D: Digraph) -> DegreeProfile:
    out = D.outdeg.copy()
    inn = D.indeg.copy()
    splus = out - inn
    return DegreeProfile(out, inn, splus, np.abs(splus), np.minimum(out, inn))


def cut_sizes(D: Digraph, part1: Iterable[int], part2: Iterable[int]) -> CutStats:
    """Count arcs by the sides of their tail and head."""
    p1, p2 = set(part1), set(part2)
    if p1 & p2:
        raise ValueError(f"parts overlap on {sorted(p1 & p2)}")
    if len(p1) + len(p2) != D.n or not all(0 <= v < D.n for v in p1 | p2):
        raise ValueError("parts must cover exactly the vertices 0..n-1")
    e12 = e21 = i1 = i2 = 0
    for u, v in D.arcs:
        a, b = u in p1, v in p1
        if a and b:
            i1 += 1
        elif a:
            e12 += 1
        elif b:
            e21 += 1
        else:
            i2 += 1
    return CutStats(e12, e21, i1, i2)


def underlying_graph(D: Digraph) -> UndirectedGraph:
    return UndirectedGraph(D.n, D.arcs)


def induced_subdigraph(D: Digraph, S: Iterable[int]) -> tuple[Digraph, list[int]]:
    """Subdigraph induced by ``S``, relabelled to ``0..|S|-1``.

    Returns the digraph and the list mapping new ids to old ids.
    """
    old = sorted(set(S))
    for v in old:
        if not 0 <= v < D.n:
            raise ValueError(f"vertex {v} out of range for n={D.n}")
    index = {v: i for i, v in enumerate(old)}
    arcs = [(index[u], index[v]) for u, v in D.arcs if u in index and v in index]
    return Digraph(len(old), arcs), old


def _parse_ints(line: str, lineno: int) -> tuple[int, int]:
    parts = line.split()
    if len(parts) != 2:
        raise MalformedError(f"expected two integers, got {line!r}", lineno)
    try:
        a, b = int(parts[0]), int(parts[1])
    except ValueError:
        raise MalformedError(f"non-integer token in {line!r}", lineno) from None
    return a, b


def parse_digraph(text: str) -> Digraph:
    """Parse the arc-list format: header ``n m`` then ``m`` lines ``u v``.

    Blank lines and lines starting with ``#`` are ignored.
    """
    rows = [
        (i, line.strip())
        for i, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.lstrip().startswith("#")
    ]
    if not rows:
        raise MalformedError("missing header line")
    lineno, header = rows[0]
    n, m = _parse_ints(header, lineno)
    if n < 0 or m < 0:
        raise MalformedError("negative count in header", lineno)
    body = rows[1:]
    if len(body) != m:
        raise MalformedError(f"header announces {m} arcs, found {len(body)}", lineno)
    arcs: set[tuple[int, int]] = set()
    for lineno, line in body:
        u, v = _parse_ints(line, lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise VertexRangeError(f"arc ({u}, {v}) has a vertex outside 0..{n - 1}", lineno)
        if u == v:
            raise SelfLoopError(f"self-loop at vertex {u}", lineno)
        if (u, v) in arcs:
            raise DuplicateArcError(f"duplicate arc ({u}, {v})", lineno)
        arcs.add((u, v))
    return Digraph(n, arcs)


def serialize_digraph(D: Digraph) -> str:
    lines = [f"{D.n} {D.m}"]
    lines.extend(f"{u} {v}" for u, v in D.sorted_arcs)
    return "\n".join(lines) + "\n"


def read_digraph(path) -> Digraph:
    with open(path, encoding="utf-8") as fh:
        return parse_digraph(fh.read())

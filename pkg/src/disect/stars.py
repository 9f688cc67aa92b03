"""Decomposition of a graph into induced stars around matching edges plus an
independent remainder."""

from __future__ import annotations

from dataclasses import dataclass, field

from .digraph import UndirectedGraph
from .matching import Matching, classify_free
from .tight import tight_component_count

__all__ = ["DecompositionError", "Star", "StarDecomposition", "star_decomposition"]


@dataclass(frozen=True)
class Star:
    center: int
    leaves: tuple[int, ...]
    edge: tuple[int, int]

    @property
    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted((self.center, *self.leaves)))


@dataclass(frozen=True)
class StarDecomposition:
    stars: tuple[Star, ...]
    U: tuple[int, ...]
    A: frozenset[int] = field(default_factory=frozenset)
    tau_star: int = 0

    def to_json(self) -> dict:
        return {
            "stars": len(self.stars),
            "starSizes": [1 + len(s.leaves) for s in self.stars],
            "U": len(self.U),
            "A": len(self.A),
            "tauStar": self.tau_star,
        }


class DecompositionError(RuntimeError):
    """Raised when a decomposition violates its postconditions.

    ``violations`` names the failed checks; ``decomposition`` holds the
    offending object for diagnostics.
    """

    def __init__(self, violations: list[str], decomposition: StarDecomposition):
        self.violations = violations
        self.decomposition = decomposition
        super().__init__("star decomposition invalid: " + "; ".join(violations))


def check_decomposition(G: UndirectedGraph, dec: StarDecomposition) -> list[str]:
    problems = []
    seen: list[int] = []
    for star in dec.stars:
        seen.extend(star.vertices)
    seen.extend(dec.U)
    if sorted(seen) != list(range(G.n)):
        problems.append("stars and U do not partition the vertex set")
    for star in dec.stars:
        c, leaves = star.center, star.leaves
        if tuple(sorted(star.edge)) not in G.edges or c not in star.edge:
            problems.append(f"star at {c} does not contain its matching edge {star.edge}")
        if any(not G.has_edge(c, x) for x in leaves):
            problems.append(f"star at {c} has a leaf not adjacent to the centre")
        if any(G.has_edge(x, y) for i, x in enumerate(leaves) for y in leaves[i + 1:]):
            problems.append(f"star at {c} is not induced (adjacent leaves)")
        if sum(x in dec.A for x in leaves) > 1:
            problems.append(f"star at {c} has more than one leaf in A")
    U = dec.U
    if any(G.has_edge(x, y) for i, x in enumerate(U) for y in U[i + 1:]):
        problems.append("U is not independent")
    if len(U) > dec.tau_star + len(dec.A):
        problems.append(f"|U|={len(U)} exceeds tau*+|A|={dec.tau_star + len(dec.A)}")
    return problems


def star_decomposition(
    G: UndirectedGraph,
    A,
    M: Matching,
    tau_star: int | None = None,
) -> StarDecomposition:
    """Grow a star around every matching edge and collect the rest in ``U``.

    Each free vertex hangs off its lowest-index free neighbour, which becomes
    the centre; non-free vertices go to ``U``. A star with two or more leaves
    in ``A`` keeps one (the matched partner if it is in ``A``, else the
    lowest-index one) and sends the others to ``U``. All postconditions are
    checked; a violation raises :class:`DecompositionError`.
    """
    A = frozenset(A)
    if tau_star is None:
        tau_star = tight_component_count(G)
    mate = M.mate(G.n)
    free, nonfree, witnesses = classify_free(G, M.edges)
    attached: dict[int, list[int]] = {}
    for w in sorted(free):
        attached.setdefault(witnesses[w][0], []).append(w)
    U = set(nonfree)
    stars = []
    for x, y in M.edges:
        if x in attached and y in attached:
            # would mean an augmenting path w-x-y-w'
            raise DecompositionError(
                [f"both ends of matching edge ({x}, {y}) have free leaves"],
                StarDecomposition((), tuple(sorted(U)), A, tau_star),
            )
        center = y if y in attached else x
        partner = mate[center]
        extra = attached.get(center, [])
        in_a = [w for w in extra if w in A]
        if len(in_a) + (partner in A) > 1:
            keep = set() if partner in A else {in_a[0]}
            drop = [w for w in in_a if w not in keep]
            U.update(drop)
            extra = [w for w in extra if w not in drop]
        stars.append(Star(center, tuple(sorted((partner, *extra))), (x, y)))
    dec = StarDecomposition(tuple(stars), tuple(sorted(U)), A, tau_star)
    problems = check_decomposition(G, dec)
    if problems:
        raise DecompositionError(problems, dec)
    return dec

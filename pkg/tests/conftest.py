import itertools

from hypothesis import strategies as st

from disect.digraph import Digraph, UndirectedGraph


@st.composite
def digraphs(draw, min_n=1, max_n=10):
    n = draw(st.integers(min_n, max_n))
    pairs = [(u, v) for u, v in itertools.product(range(n), repeat=2) if u != v]
    arcs = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Digraph(n, arcs)


@st.composite
def graphs(draw, min_n=0, max_n=10):
    n = draw(st.integers(min_n, max_n))
    pairs = list(itertools.combinations(range(n), 2))
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return UndirectedGraph(n, edges)


def bipartitions(n, draw):
    side = draw(st.lists(st.booleans(), min_size=n, max_size=n))
    return [v for v in range(n) if not side[v]], [v for v in range(n) if side[v]]


def cycle(n):
    return UndirectedGraph(n, [(i, (i + 1) % n) for i in range(n)])


def path(n):
    return UndirectedGraph(n, [(i, i + 1) for i in range(n - 1)])


def complete(n):
    return UndirectedGraph(n, itertools.combinations(range(n), 2))

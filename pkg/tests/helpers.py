"""Shared test utilities: small-graph catalogues and hypothesis strategies."""

from functools import lru_cache
from itertools import combinations

import networkx as nx
from hypothesis import strategies as st

from gcsg.graph import Graph, is_connected


def to_nx(graph):
    g = nx.Graph()
    g.add_nodes_from(range(graph.n))
    g.add_edges_from(graph.edges)
    return g


@lru_cache(maxsize=None)
def connected_shapes(n):
    """One representative per isomorphism class of connected graphs on n
    nodes, found by running through every edge subset."""
    pairs = list(combinations(range(n), 2))
    buckets = {}
    reps = []
    for mask in range(1 << len(pairs)):
        edges = [p for k, p in enumerate(pairs) if mask >> k & 1]
        if len(edges) < n - 1:
            continue
        g = Graph(n, edges)
        if not is_connected(g):
            continue
        key = (g.e, tuple(sorted(g.degree(u) for u in range(n))))
        h = to_nx(g)
        bucket = buckets.setdefault(key, [])
        if any(nx.is_isomorphic(h, other) for other in bucket):
            continue
        bucket.append(h)
        reps.append(g)
    return tuple(reps)


def all_shapes(max_n, min_n=1):
    out = []
    for n in range(min_n, max_n + 1):
        out.extend(connected_shapes(n))
    return out


@st.composite
def connected_graphs(draw, min_n=1, max_n=8):
    """Random spanning tree plus extra edges."""
    n = draw(st.integers(min_n, max_n))
    edges = set()
    for v in range(1, n):
        u = draw(st.integers(0, v - 1))
        edges.add((u, v))
    extra = draw(st.lists(st.tuples(st.integers(0, max(n - 1, 0)), st.integers(0, max(n - 1, 0))), max_size=2 * n))
    for u, v in extra:
        if u != v:
            edges.add((min(u, v), max(u, v)))
    return Graph(n, edges)


@st.composite
def weighted_graphs(draw, min_n=1, max_n=8, low=-5, high=5):
    g = draw(connected_graphs(min_n, max_n))
    w = {e: draw(st.integers(low, high)) for e in g.edges}
    return g, w


@st.composite
def constraints(draw, n, max_domain=4, max_blocks=3):
    """Random required partition over a random subset of 0..n-1 (possibly empty)."""
    k = draw(st.integers(0, min(max_domain, n)))
    dom = draw(st.permutations(range(n)))[:k]
    labels = [draw(st.integers(0, max_blocks - 1)) for _ in dom]
    blocks = {}
    for u, b in zip(dom, labels):
        blocks.setdefault(b, set()).add(u)
    return list(blocks.values())

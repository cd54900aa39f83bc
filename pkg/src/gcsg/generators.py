"""Seeded random instances. Every generator takes a ``random.Random`` (or a
seed) and builds its class by construction."""

from __future__ import annotations

import heapq
import random
from itertools import combinations

from .graph import Graph

__all__ = [
    "as_rng",
    "random_tree",
    "random_sp_graph",
    "random_k23_graph",
    "random_connected_graph",
    "random_grid_subgraph",
    "random_outerplanar",
    "random_cnf",
]


def as_rng(seed) -> random.Random:
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_tree(n: int, seed=None) -> Graph:
    """Uniform labelled tree from a random Pruefer sequence."""
    rng = as_rng(seed)
    if n <= 1:
        return Graph(max(n, 0))
    if n == 2:
        return Graph(2, [(0, 1)])
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for x in seq:
        degree[x] += 1
    leaves = [u for u in range(n) if degree[u] == 1]
    heapq.heapify(leaves)
    edges = []
    for x in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, x))
        degree[x] -= 1
        if degree[x] == 1:
            heapq.heappush(leaves, x)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return Graph(n, edges)


def random_sp_graph(n: int, seed=None, pendant: float = 0.15) -> Graph:
    """Connected K4-minor-free graph on ``n`` nodes.

    Grows from one edge. Each new node either subdivides an edge (series),
    is hung across an edge's two ends (parallel), or with probability
    ``pendant`` hangs off a single node, which starts a new block.
    """
    rng = as_rng(seed)
    if n <= 1:
        return Graph(max(n, 0))
    edges = [(0, 1)]
    where = {(0, 1): 0}
    for k in range(2, n):
        r = rng.random()
        if r < pendant:
            u = rng.randrange(k)
            new = [(u, k)]
        else:
            idx = rng.randrange(len(edges))
            u, v = edges[idx]
            new = [(u, k), (v, k)]
            if r < pendant + (1 - pendant) / 2:
                # series: the edge itself goes away
                last = edges.pop()
                if idx < len(edges):
                    edges[idx] = last
                    where[last] = idx
                del where[(u, v)]
        for e in new:
            where[e] = len(edges)
            edges.append(e)
    return Graph(n, edges)


def random_k23_graph(n_sp: int, k4_blocks: int, seed=None) -> Graph:
    """Series-parallel core with ``k4_blocks`` K4 blocks hung on random nodes."""
    rng = as_rng(seed)
    core = random_sp_graph(n_sp, rng)
    edges = list(core.edges)
    n = core.n
    for _ in range(k4_blocks):
        u = rng.randrange(n)
        quad = [u, n, n + 1, n + 2]
        edges += [(a, b) if a < b else (b, a) for a, b in combinations(quad, 2)]
        n += 3
    return Graph(n, edges)


def random_connected_graph(n: int, p: float, seed=None) -> Graph:
    """Random spanning tree plus each remaining pair with probability ``p``."""
    rng = as_rng(seed)
    tree = random_tree(n, rng)
    edges = set(tree.edges)
    for u, v in combinations(range(n), 2):
        if (u, v) not in edges and rng.random() < p:
            edges.add((u, v))
    return Graph(n, edges)


def random_grid_subgraph(rows: int, cols: int, keep: float = 0.7, seed=None) -> Graph:
    """Connected spanning subgraph of a grid: a random spanning tree plus a
    ``keep`` fraction of the other grid edges."""
    rng = as_rng(seed)
    grid = Graph.grid(rows, cols)
    order = list(grid.edges)
    rng.shuffle(order)
    parent = list(range(grid.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    edges = []
    extra = []
    for u, v in order:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            edges.append((u, v))
        else:
            extra.append((u, v))
    edges += [e for e in extra if rng.random() < keep]
    return Graph(grid.n, edges)


def random_outerplanar(n: int, chords: int, seed=None) -> Graph:
    """Cycle ``0..n-1`` plus up to ``chords`` random non-crossing chords."""
    rng = as_rng(seed)
    if n < 3:
        return Graph.path(n)
    edges = set(Graph.cycle(n).edges)
    faces = [list(range(n))]
    for _ in range(chords):
        big = [f for f in faces if len(f) >= 4]
        if not big:
            break
        face = rng.choice(big)
        faces.remove(face)
        k = len(face)
        i = rng.randrange(k)
        j = (i + rng.randrange(2, k - 1)) % k
        i, j = min(i, j), max(i, j)
        u, v = face[i], face[j]
        edges.add((min(u, v), max(u, v)))
        faces.append(face[i:j + 1])
        faces.append(face[j:] + face[:i + 1])
    return Graph(n, edges)


def random_cnf(variable_count: int, m: int, seed=None):
    """``(variable_count, clauses)`` with three random literals per clause
    (repeats allowed)."""
    rng = as_rng(seed)
    clauses = []
    for _ in range(m):
        clauses.append(tuple(rng.choice((1, -1)) * rng.randint(1, variable_count) for _ in range(3)))
    return variable_count, clauses

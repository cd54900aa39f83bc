"""Leaf-peeling solver for trees."""

from __future__ import annotations

import heapq

from .enumeration import Solution
from .errors import GraphClassError
from .graph import Graph, canonical_structure, is_connected
from .valuation import Valuation, normalize_singletons

__all__ = ["solve_tree"]


def solve_tree(graph: Graph, valuation: Valuation, order: str = "smallest") -> Solution:
    """Optimal connected structure on a tree.

    Leaves are peeled one at a time. After shifting singletons to zero, leaf
    ``i`` with neighbour ``j`` joins ``j``'s block iff ``v({i, j}) > 0``; ties
    leave ``i`` alone. ``order`` picks which leaf goes first ("smallest" or
    "largest" id); both give optimal values.
    """
    n = graph.n
    if n == 0:
        return Solution((), 0)
    if graph.e != n - 1 or not is_connected(graph):
        raise GraphClassError("solve_tree needs a tree (connected, e = n - 1)")
    if order not in ("smallest", "largest"):
        raise ValueError("order must be 'smallest' or 'largest'")
    norm, offset = normalize_singletons(valuation, graph)
    sign = 1 if order == "smallest" else -1

    degree = [len(a) for a in graph.adj]
    removed = [False] * n
    heap = [sign * u for u in range(n) if degree[u] == 1]
    heapq.heapify(heap)
    decisions = []  # (leaf, neighbour, joins)
    gain = 0
    remaining = n
    while remaining > 1:
        i = sign * heapq.heappop(heap)
        removed[i] = True
        remaining -= 1
        j = next(w for w in graph.adj[i] if not removed[w])
        marginal = norm.evaluate(frozenset((i, j)))
        joins = marginal > 0
        if joins:
            gain += marginal
        decisions.append((i, j, joins))
        degree[j] -= 1
        if degree[j] == 1 and remaining > 1:
            heapq.heappush(heap, sign * j)

    root = next(u for u in range(n) if not removed[u])
    owner = {root: 0}
    blocks = [[root]]
    for i, j, joins in reversed(decisions):
        if joins:
            b = owner[j]
        else:
            b = len(blocks)
            blocks.append([])
        owner[i] = b
        blocks[b].append(i)
    return Solution(canonical_structure(blocks), gain + offset)

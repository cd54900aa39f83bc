"""Referees for the test suites: a filter oracle for connected structures,
random IDM valuations, a SAT brute force and a minor checker. Everything here
is deliberately naive so it shares no code paths with the solvers."""

from __future__ import annotations

from itertools import product
from typing import Iterator

from .errors import CapExceededError
from .generators import as_rng
from .graph import Graph, canonical_structure, connected_components, is_connected_structure
from .valuation import EdgeSumValuation, TableValuation, Valuation

__all__ = [
    "BELL",
    "set_partitions",
    "filter_oracle",
    "random_idm_valuation",
    "sat_bruteforce",
    "has_minor",
]

# Bell(0..5), analytic constants; larger counts are always computed.
BELL = (1, 1, 2, 5, 15, 52)

ORACLE_CAP = 8


def set_partitions(items) -> Iterator[tuple]:
    """All set partitions of ``items`` via restricted growth strings."""
    items = list(items)
    k = len(items)
    if k == 0:
        yield ()
        return
    rgs = [0] * k
    while True:
        blocks: dict[int, list] = {}
        for x, b in zip(items, rgs):
            blocks.setdefault(b, []).append(x)
        yield canonical_structure(blocks.values())
        # next restricted growth string
        i = k - 1
        while i > 0 and rgs[i] > max(rgs[:i]):
            i -= 1
        if i == 0:
            return
        rgs[i] += 1
        for t in range(i + 1, k):
            rgs[t] = 0


def filter_oracle(graph: Graph, cap: int = ORACLE_CAP) -> list:
    """Every set partition of the nodes whose blocks are all connected."""
    if graph.n > cap:
        raise CapExceededError(f"n={graph.n} exceeds oracle cap {cap}")
    return [p for p in set_partitions(range(graph.n)) if is_connected_structure(graph, p)]


def random_idm_valuation(graph: Graph, seed=None, low: int = -5, high: int = 5,
                         node_constants: bool = False, table_cap: int = 10) -> Valuation:
    """Edge-sum valuation with weights drawn uniformly from ``[low, high]``.

    With ``node_constants`` the result is a table valuation: edge sum plus a
    per-node constant in the same range, which stays IDM.
    """
    rng = as_rng(seed)
    weights = {e: rng.randint(low, high) for e in graph.edges}
    es = EdgeSumValuation(graph, weights)
    if not node_constants:
        return es
    if graph.n > table_cap:
        raise CapExceededError(f"table valuation on n={graph.n} exceeds cap {table_cap}")
    consts = [rng.randint(low, high) for _ in range(graph.n)]
    return TableValuation.from_function(graph.n, lambda c: es.evaluate(c) + sum(consts[i] for i in c))


def sat_bruteforce(cnf, cap: int = 20):
    """``(satisfiable, witness)``; the witness maps variables to bools."""
    nv = cnf.variable_count
    if nv > cap:
        raise CapExceededError(f"{nv} variables exceeds cap {cap}")
    for bits in product((False, True), repeat=nv):
        assignment = {x + 1: bits[x] for x in range(nv)}
        ok = True
        for clause in cnf.clauses:
            if not any(assignment[abs(l)] == (l > 0) for l in clause):
                ok = False
                break
        if ok:
            return True, assignment
    return False, None


def has_minor(graph: Graph, pattern: Graph, cap: int = 7) -> bool:
    """Exhaustive minor test: try every map of the nodes onto pattern nodes
    (or deletion) and check that each branch set is connected and every
    pattern edge is realised."""
    if graph.n > cap:
        raise CapExceededError(f"n={graph.n} exceeds minor-check cap {cap}")
    k = pattern.n
    if k > graph.n:
        return False
    for assign in product(range(-1, k), repeat=graph.n):
        sets = [[] for _ in range(k)]
        for u, a in enumerate(assign):
            if a >= 0:
                sets[a].append(u)
        if any(not s for s in sets):
            continue
        if any(len(connected_components(graph, s)) != 1 for s in sets):
            continue
        ok = True
        for a, b in pattern.edges:
            if not any(graph.has_edge(u, w) for u in sets[a] for w in sets[b]):
                ok = False
                break
        if ok:
            return True
    return False

"""Divide-and-conquer solver over balanced vertex separators.

A subproblem is a connected graph plus a set of *required pieces*: disjoint
node sets that must each end up inside one block. Pieces come in groups.
Pieces of one group are parts of the same coalition of the enclosing problem,
so they must land in different blocks, and those blocks must not touch.

To split a subproblem, take a proper separator ``S`` with sides ``PA`` and
``PB``. The A-side graph is induced on ``PA``. The B-side graph is induced on
``PB`` without the edges inside ``S``, so every edge belongs to exactly one
side. Every connected structure then cuts into A-pieces (components of each
block on the A side) and B-pieces, glued back together at ``S``. The loop runs
over all pairs of traces of those pieces on the boundary sets
``(K & PA) | S`` and ``(K & PB) | S``, where ``K`` holds the required nodes,
and solves each side under its trace.

The B side is valued with the induced valuation of the A-side optimum. For
edge-sum valuations that reduces to the plain edge sum over B-side edges,
which does not depend on the A side, so the solver uses it directly.
"""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Optional

from .enumeration import Solution, _adj_masks, _best, _masks_to_structure, _to_mask, is_noncrossing
from .errors import BudgetExceededError, DisconnectedGraphError
from .graph import Graph, SeparatorDecomposition, canonical_structure, connected_components, find_separator
from .valuation import BoundaryConstraint, EdgeSumValuation, InducedValuation, Valuation

__all__ = [
    "BoundaryEnumeration",
    "SolverConfig",
    "SolverStats",
    "solve_separator",
    "boundary_sets",
    "iter_boundary_pairs",
    "side_graphs",
    "split_structure",
]


class BoundaryEnumeration(enum.Enum):
    ALL_PARTITIONS = "all"
    NONCROSSING = "noncrossing"


@dataclass
class SolverConfig:
    """Knobs for :func:`solve_separator`.

    ``boundary_order`` maps node ids to positions along a planar boundary
    walk. Non-crossing enumeration is only sound when every connected
    structure traces a non-crossing partition in that order (outerplanar
    graphs with their outer cycle, for instance), so it must be supplied.
    """

    base_threshold: int = 8
    balance: float = 2 / 3
    boundary_enumeration: BoundaryEnumeration = BoundaryEnumeration.ALL_PARTITIONS
    boundary_order: Optional[Mapping[int, int]] = None
    naive_pairs: bool = False
    memoize: bool = True
    max_subproblems: Optional[int] = None
    time_limit: Optional[float] = None

    def __post_init__(self):
        if isinstance(self.boundary_enumeration, str):
            self.boundary_enumeration = BoundaryEnumeration(self.boundary_enumeration)
        if self.base_threshold < 2:
            raise ValueError("base_threshold must be at least 2")
        if not 0 < self.balance < 1:
            raise ValueError("balance must lie in (0, 1)")
        if self.boundary_enumeration is BoundaryEnumeration.NONCROSSING and self.boundary_order is None:
            raise ValueError("non-crossing enumeration needs a boundary order")


@dataclass
class SolverStats:
    subproblems: int = 0
    base_cases: int = 0
    pairs: int = 0
    memo_hits: int = 0
    max_depth: int = 0
    separators: list = field(default_factory=list)


# ------------------------------------------------------------------ helpers

def side_graphs(graph: Graph, dec: SeparatorDecomposition):
    """``(graph_a, ids_a, graph_b, ids_b)``: the A side keeps separator edges,
    the B side drops them."""
    ga, ids_a = graph.induced(dec.part_a)
    ids_b = tuple(sorted(dec.part_b))
    index = {u: i for i, u in enumerate(ids_b)}
    sep = dec.separator
    edges = [(index[u], index[v]) for u, v in graph.edges
             if u in index and v in index and not (u in sep and v in sep)]
    return ga, ids_a, Graph(len(ids_b), edges), ids_b


def split_structure(graph: Graph, dec: SeparatorDecomposition, structure):
    """Cut a connected structure into its A-pieces and B-pieces."""
    ga, ids_a, gb, ids_b = side_graphs(graph, dec)
    out = []
    for g, ids in ((ga, ids_a), (gb, ids_b)):
        index = {u: i for i, u in enumerate(ids)}
        pieces = []
        for block in structure:
            local = [index[u] for u in block if u in index]
            for comp in connected_components(g, local):
                pieces.append(frozenset(ids[i] for i in comp))
        out.append(canonical_structure(pieces))
    return out[0], out[1]


def boundary_sets(dec: SeparatorDecomposition, required=()):
    """The two boundary sets ``(K & PA) | S`` and ``(K & PB) | S``."""
    k = frozenset().union(*map(frozenset, required)) if required else frozenset()
    return (k & dec.part_a) | dec.separator, (k & dec.part_b) | dec.separator


def _partitions(items, labels, order=None) -> Iterator[list]:
    """Set partitions of ``items`` whose blocks carry at most one non-negative label.

    With ``labels`` None every partition is produced. With ``order`` given, only
    partitions that are non-crossing in that order survive.
    """
    items = list(items)
    blocks: list[list] = []
    block_label: list[int] = []

    def rec(i):
        if i == len(items):
            if order is None or is_noncrossing(blocks, order):
                yield [frozenset(b) for b in blocks]
            return
        u = items[i]
        lab = -1 if labels is None else labels.get(u, -1)
        for bi in range(len(blocks)):
            bl = block_label[bi]
            if lab >= 0 and bl >= 0 and bl != lab:
                continue
            blocks[bi].append(u)
            old = bl
            if lab >= 0:
                block_label[bi] = lab
            yield from rec(i + 1)
            block_label[bi] = old
            blocks[bi].pop()
        blocks.append([u])
        block_label.append(lab)
        yield from rec(i + 1)
        blocks.pop()
        block_label.pop()

    yield from rec(0)


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        p = self.parent.setdefault(x, x)
        if p != x:
            p = self.parent[x] = self.find(p)
        return p

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra


def _join(trace_a, trace_b):
    """Union-find over the nodes of both traces, linked through shared nodes."""
    uf = _UnionFind()
    for trace in (trace_a, trace_b):
        for block in trace:
            it = iter(block)
            first = next(it)
            uf.find(first)
            for u in it:
                uf.union(first, u)
    return uf


def _consistent(uf, block_of, required_blocks):
    """Joined classes restricted to the required nodes equal the required blocks."""
    cls_block = {}
    for b, block in enumerate(required_blocks):
        roots = {uf.find(u) for u in block}
        if len(roots) != 1:
            return None
        r = roots.pop()
        if r in cls_block:
            return None
        cls_block[r] = b
    return cls_block


def _group_trace(trace, uf, cls_block, block_group):
    """Attach each trace block to a group: its required block's group, or a
    fresh group per joined class. Returned as a canonical hashable form."""
    groups: dict = {}
    for block in trace:
        r = uf.find(next(iter(block)))
        b = cls_block.get(r)
        key = ("g", block_group[b]) if b is not None else ("c", r)
        groups.setdefault(key, []).append(block)
    return frozenset(frozenset(bs) for bs in groups.values())


def iter_boundary_pairs(graph: Graph, dec: SeparatorDecomposition, constraint: BoundaryConstraint | None = None,
                        config: SolverConfig | None = None):
    """Pairs of boundary traces the solver tries at the top level, with
    ``constraint`` as the required partition. Node ids are the graph's own."""
    config = config or SolverConfig()
    required = () if constraint is None else tuple(constraint.structure)
    req = frozenset(frozenset([b]) for b in required)
    for trace_a, trace_b, _, _ in _pairs(dec, req, config):
        yield canonical_structure(trace_a), canonical_structure(trace_b)


def _pairs(dec, req, config):
    """Consistent boundary pairs with their grouped side constraints."""
    required_blocks = []
    block_group = []
    for gi, group in enumerate(sorted(req, key=lambda g: min(min(b) for b in g))):
        for block in sorted(group, key=min):
            required_blocks.append(block)
            block_group.append(gi)
    block_of = {u: b for b, block in enumerate(required_blocks) for u in block}
    ka, kb = boundary_sets(dec, required_blocks)
    labels = None if config.naive_pairs else block_of
    order = config.boundary_order if config.boundary_enumeration is BoundaryEnumeration.NONCROSSING else None
    traces_b = list(_partitions(sorted(kb), labels, order))
    for trace_a in _partitions(sorted(ka), labels, order):
        for trace_b in traces_b:
            uf = _join(trace_a, trace_b)
            cls_block = _consistent(uf, block_of, required_blocks)
            if cls_block is None:
                continue
            yield (trace_a, trace_b,
                   _group_trace(trace_a, uf, cls_block, block_group),
                   _group_trace(trace_b, uf, cls_block, block_group))


# ------------------------------------------------------------------ solver

class _Solver:
    def __init__(self, valuation: Valuation, config: SolverConfig, edge_sum: bool):
        self.v = valuation
        self.cfg = config
        self.edge_sum = edge_sum
        self.memo: dict = {}
        self.stats = SolverStats()
        self.deadline = None if config.time_limit is None else time.monotonic() + config.time_limit

    def _tick(self):
        s = self.stats
        s.subproblems += 1
        cap = self.cfg.max_subproblems
        if cap is not None and s.subproblems > cap:
            raise BudgetExceededError(f"more than {cap} subproblems")
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise BudgetExceededError(f"time limit of {self.cfg.time_limit}s exceeded")

    def _key(self, graph, ids, val, req):
        if self.edge_sum:
            # val is the edge weight table (original ids)
            vk = tuple(val.get((ids[u], ids[v]), 0) for u, v in graph.edges)
        else:
            vk = val  # identity hash; holding it also keeps the id from being reused
        return graph, ids, vk, req

    def _value(self, val, nodes):
        if self.edge_sum:
            return sum(val.get((u, w), 0) for u in nodes for w in nodes if u < w)
        return val.evaluate(nodes)

    def solve(self, graph: Graph, ids: tuple, val, req: frozenset, depth=0):
        """Best (blocks in original ids, value) or None when infeasible."""
        if graph.n == 0:
            return (), 0
        comps = connected_components(graph)
        if len(comps) > 1:
            return self._solve_components(graph, ids, val, req, comps, depth)
        key = None
        if self.cfg.memoize:
            key = self._key(graph, ids, val, req)
            if key in self.memo:
                self.stats.memo_hits += 1
                return self.memo[key]
        self._tick()
        self.stats.max_depth = max(self.stats.max_depth, depth)
        result = None
        dec = None
        if graph.n > self.cfg.base_threshold:
            try:
                dec = find_separator(graph, self.cfg.balance, proper=True)
            except ValueError:
                dec = None
        if dec is None:
            result = self._base(graph, ids, val, req)
        else:
            result = self._split(graph, ids, val, req, dec, depth)
        if key is not None:
            self.memo[key] = result
        return result

    def _solve_components(self, graph, ids, val, req, comps, depth):
        where = {}
        for ci, comp in enumerate(comps):
            for u in comp:
                where[ids[u]] = ci
        per = [[] for _ in comps]
        for group in req:
            parts: dict = {}
            for block in group:
                cs = {where[u] for u in block}
                if len(cs) != 1:
                    return None
                parts.setdefault(cs.pop(), []).append(block)
            for ci, blocks in parts.items():
                per[ci].append(frozenset(blocks))
        blocks, total = [], 0
        for ci, comp in enumerate(comps):
            sub, sub_ids = graph.induced(comp)
            res = self.solve(sub, tuple(ids[i] for i in sub_ids), val, frozenset(per[ci]), depth)
            if res is None:
                return None
            blocks.extend(res[0])
            total += res[1]
        return tuple(blocks), total

    def _base(self, graph, ids, val, req):
        self.stats.base_cases += 1
        index = {u: i for i, u in enumerate(ids)}
        labels = [-1] * graph.n
        label_masks, groups = [], []
        for gi, group in enumerate(sorted(req, key=lambda g: min(min(b) for b in g))):
            for block in group:
                for u in block:
                    labels[index[u]] = len(label_masks)
                label_masks.append(_to_mask(index[u] for u in block))
                groups.append(gi)
        if not label_masks:
            labels = None
        cache: dict = {}

        def value_of(m):
            x = cache.get(m)
            if x is None:
                nodes = frozenset(_masks_to_structure([m], ids)[0])
                x = cache[m] = self._value(val, nodes)
            return x

        found = _best(_adj_masks(graph), graph.n, value_of, labels, label_masks, groups)
        if found is None:
            return None
        masks, value = found
        return _masks_to_structure(masks, ids), value

    def _split(self, graph, ids, val, req, dec_local, depth):
        to_orig = lambda s: frozenset(ids[u] for u in s)
        dec = SeparatorDecomposition(to_orig(dec_local.part_a), to_orig(dec_local.part_b),
                                     to_orig(dec_local.separator), dec_local.balance)
        self.stats.separators.append(len(dec.separator))
        ga, la, gb, lb = side_graphs(graph, dec_local)
        ids_a = tuple(ids[i] for i in la)
        ids_b = tuple(ids[i] for i in lb)
        sep = dec.separator
        if self.edge_sum:
            val_b = {k: w for k, w in val.items() if not (k[0] in sep and k[1] in sep)}
        best = None
        a_cache: dict = {}
        for trace_a, trace_b, req_a, req_b in _pairs(dec, req, self.cfg):
            self.stats.pairs += 1
            if req_a in a_cache:
                res_a = a_cache[req_a]
            else:
                res_a = a_cache[req_a] = self.solve(ga, ids_a, val, req_a, depth + 1)
            if res_a is None:
                continue
            if not self.edge_sum:
                touched = [b for b in res_a[0] if b & sep]
                val_b = InducedValuation(val, touched, dec.part_b)
            res_b = self.solve(gb, ids_b, val_b, req_b, depth + 1)
            if res_b is None:
                continue
            total = res_a[1] + res_b[1]
            if best is None or total > best[1]:
                best = (_glue(res_a[0], res_b[0]), total)
        return best


def _glue(blocks_a, blocks_b):
    uf = _UnionFind()
    for block in list(blocks_a) + list(blocks_b):
        it = iter(block)
        first = next(it)
        uf.find(first)
        for u in it:
            uf.union(first, u)
    out: dict = {}
    for u in uf.parent:
        out.setdefault(uf.find(u), set()).add(u)
    return tuple(frozenset(b) for b in out.values())


def solve_separator(graph: Graph, valuation: Valuation, constraint: BoundaryConstraint | None = None,
                    config: SolverConfig | None = None, stats: SolverStats | None = None) -> Solution | None:
    """Optimal connected structure whose trace on the constraint domain is the
    required partition, or None when no such structure exists.

    Small subproblems (at most ``config.base_threshold`` nodes, or without a
    proper separator) go to constrained exhaustive search.
    """
    config = config or SolverConfig()
    if graph.n == 0:
        return Solution((), 0)
    if len(connected_components(graph)) > 1:
        raise DisconnectedGraphError("graph must be connected; split it into components first")
    required = () if constraint is None else tuple(constraint.structure)
    for block in required:
        for u in block:
            if not 0 <= u < graph.n:
                raise ValueError(f"constraint node {u} outside node range")
    edge_sum = isinstance(valuation, EdgeSumValuation) and valuation.graph == graph
    solver = _Solver(valuation, config, edge_sum)
    val = dict(valuation.weights) if edge_sum else valuation
    req = frozenset(frozenset([b]) for b in required)
    res = solver.solve(graph, tuple(range(graph.n)), val, req)
    if stats is not None:
        stats.__dict__.update(solver.stats.__dict__)
    if res is None:
        return None
    return Solution(canonical_structure(res[0]), res[1])

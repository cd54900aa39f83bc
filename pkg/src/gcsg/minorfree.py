"""Cubic-time solvers for K4-minor-free graphs and for graphs whose blocks are
series-parallel or K4.

Each block is solved on its own with singleton values shifted to zero, then
block solutions are glued at articulation points.

Inside a 2-connected series-parallel block a chordless cycle with at most two
branching nodes is located and folded into a single *virtual edge* between its
anchors. A virtual edge remembers the best value of the folded nodes in three
situations:

    joined     anchors in one coalition, connected through the folded part
    apart      anchors in one coalition, connected only elsewhere
    split      anchors in different coalitions

"apart" is needed because the folded paths may be cut even when the anchors
end up together through the rest of the block. The fold repeats until one
edge is left. Folded nodes are read through pair values ``v({i, j})``, which
describe an edge-sum valuation exactly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional

from .enumeration import Solution, solve_bruteforce
from .errors import GraphClassError
from .graph import (
    Graph,
    GraphClass,
    articulation_points,
    biconnected_components,
    canonical_structure,
    classify_graph,
    is_k4,
)
from .valuation import RelabeledValuation, Valuation, normalize_singletons

__all__ = [
    "ReductionKind",
    "ReductionStep",
    "VirtualEdge",
    "find_reducible_cycle",
    "solve_2connected_k4_free",
    "solve_minor_free",
]

JOINED, APART, SPLIT = "joined", "apart", "split"


def _add(a, b):
    if a is None or b is None:
        return None
    return a + b


def _argmax(options):
    """First option with the largest finite value, as ``(value, payload)``."""
    best = (None, None)
    for val, payload in options:
        if val is not None and (best[0] is None or val > best[0]):
            best = (val, payload)
    return best


@dataclass(eq=False)
class VirtualEdge:
    """Two-terminal piece of a block, with its best value per anchor state.

    ``kind`` is "edge" for an original edge, "series" for two pieces chained
    through ``mid``, "parallel" for two pieces sharing both terminals.
    """

    s: int
    t: int
    joined: Optional[int]
    apart: Optional[int]
    split: Optional[int]
    kind: str = "edge"
    left: Optional["VirtualEdge"] = None
    right: Optional["VirtualEdge"] = None
    mid: Optional[int] = None
    choice: dict = field(default_factory=dict)

    def value(self, state):
        return getattr(self, state)

    @property
    def v_plus(self):
        return self.joined

    @property
    def v_minus(self):
        return self.split

    @classmethod
    def edge(cls, s, t, weight):
        return cls(s, t, weight, None, 0)

    @classmethod
    def series(cls, left, right, s, mid, t):
        # mid joins: "s" -> s's coalition, "t" -> t's coalition, "new" -> its own
        opts = {
            JOINED: [((JOINED, JOINED), "s")],
            APART: [((JOINED, APART), "s"), ((APART, JOINED), "s"), ((SPLIT, SPLIT), "new")],
            SPLIT: [((JOINED, SPLIT), "s"), ((SPLIT, JOINED), "t"), ((SPLIT, SPLIT), "new")],
        }
        vals, choice = {}, {}
        for state, cand in opts.items():
            vals[state], choice[state] = _argmax(
                (_add(left.value(a), right.value(b)), ((a, b), m)) for (a, b), m in cand)
        return cls(s, t, vals[JOINED], vals[APART], vals[SPLIT], "series", left, right, mid, choice)

    @classmethod
    def parallel(cls, first, second, s, t):
        opts = {
            JOINED: [(JOINED, JOINED), (JOINED, APART), (APART, JOINED)],
            APART: [(APART, APART)],
            SPLIT: [(SPLIT, SPLIT)],
        }
        vals, choice = {}, {}
        for state, cand in opts.items():
            vals[state], choice[state] = _argmax(
                (_add(first.value(a), second.value(b)), ((a, b), None)) for a, b in cand)
        return cls(s, t, vals[JOINED], vals[APART], vals[SPLIT], "parallel", first, second, None, choice)

    def expand(self, state, label, fresh):
        """Give every folded node a coalition label; terminals must be labelled."""
        stack = [(self, state)]
        while stack:
            piece, st = stack.pop()
            if piece.kind == "edge":
                continue
            (a, b), m = piece.choice[st]
            if piece.kind == "series":
                if m == "s":
                    label[piece.mid] = label[piece.s]
                elif m == "t":
                    label[piece.mid] = label[piece.t]
                else:
                    label[piece.mid] = fresh()
            stack.append((piece.left, a))
            stack.append((piece.right, b))


class ReductionKind(enum.Enum):
    EAR_REMOVAL = "ear"            # path folded onto an existing anchor edge
    CYCLE_CONTRACTION = "cycle"    # two paths replaced by a new virtual edge


@dataclass
class ReductionStep:
    kind: ReductionKind
    removed_nodes: frozenset
    anchor_pair: tuple
    edge: VirtualEdge

    @property
    def v_plus(self):
        return self.edge.joined

    @property
    def v_minus(self):
        return self.edge.split


def _find_cycle(adj: dict) -> list:
    """Chordless cycle with at most two nodes of degree > 2 (see find_reducible_cycle)."""
    nodes = sorted(adj)
    if len(nodes) < 3:
        raise GraphClassError("need at least three nodes")
    deg2 = [u for u in nodes if len(adj[u]) == 2]
    if len(deg2) == len(nodes):
        start = nodes[0]
        cyc = [start]
        prev, cur = start, min(adj[start])
        while cur != start:
            cyc.append(cur)
            prev, cur = cur, next(w for w in adj[cur] if w != prev)
        return cyc
    seen = set()
    by_ends: dict[tuple, list] = {}
    for u in deg2:
        if u in seen:
            continue
        seen.add(u)
        a, b = sorted(adj[u])
        left = [u]
        prev, cur = u, a
        while len(adj[cur]) == 2:
            if cur in seen:
                raise GraphClassError("block is not 2-connected")
            seen.add(cur)
            left.append(cur)
            prev, cur = cur, next(w for w in adj[cur] if w != prev)
        end_a = cur
        right = []
        prev, cur = u, b
        while len(adj[cur]) == 2:
            seen.add(cur)
            right.append(cur)
            prev, cur = cur, next(w for w in adj[cur] if w != prev)
        end_b = cur
        if end_a == end_b:
            raise GraphClassError("block is not 2-connected: path returns to the same branching node")
        chain = [end_a] + left[::-1] + right + [end_b]
        if chain[0] > chain[-1]:
            chain.reverse()
        if chain[-1] in adj[chain[0]]:
            return chain
        key = (chain[0], chain[-1])
        if key in by_ends:
            other = by_ends[key]
            return chain + other[-2:0:-1]
        by_ends[key] = chain
    raise GraphClassError("no reducible cycle: graph is not a 2-connected K4-minor-free graph")


def find_reducible_cycle(graph: Graph) -> list:
    """A chordless cycle of a 2-connected K4-minor-free graph with at most two
    nodes of degree above 2.

    Degree-2 nodes are grouped into maximal paths; a path whose ends are
    adjacent closes a cycle with that edge, and two paths with the same ends
    close a cycle with each other. Raises GraphClassError when neither exists.
    """
    if graph.n < 3:
        raise GraphClassError("need at least three nodes")
    if articulation_points(graph):
        raise GraphClassError("graph is not 2-connected")
    adj = {u: set(graph.adj[u]) for u in range(graph.n)}
    return _find_cycle(adj)


def _fold_chain(adj, chain):
    """Fold the inner nodes of ``chain`` into one virtual edge between its ends."""
    a, b = chain[0], chain[-1]
    piece = adj[a][chain[1]]
    for k in range(1, len(chain) - 1):
        m, nxt = chain[k], chain[k + 1]
        piece = VirtualEdge.series(piece, adj[m][nxt], a, m, nxt)
    del adj[a][chain[1]]
    del adj[b][chain[-2]]
    for m in chain[1:-1]:
        del adj[m]
    if b in adj[a]:
        piece = VirtualEdge.parallel(adj[a][b], piece, a, b)
        kind = ReductionKind.EAR_REMOVAL
    else:
        kind = ReductionKind.CYCLE_CONTRACTION
    adj[a][b] = adj[b][a] = piece
    return kind


def _reduce(adj, trace=None):
    while len(adj) > 2:
        cyc = _find_cycle({u: adj[u].keys() for u in adj})
        high = [k for k, u in enumerate(cyc) if len(adj[u]) > 2]
        if len(high) == 0:
            chains = [cyc]
        elif len(high) == 2:
            i, j = high
            rot = cyc[i:] + cyc[:i]
            j = (j - i) % len(cyc)
            chains = [rot[:j + 1], rot[j:] + [rot[0]]]
        else:
            raise GraphClassError("cycle has a single branching node: block is not 2-connected")
        for chain in chains:
            if len(chain) < 3:
                continue
            kind = _fold_chain(adj, chain)
            if trace is not None:
                a, b = chain[0], chain[-1]
                trace.append(ReductionStep(kind, frozenset(chain[1:-1]), (a, b), adj[a][b]))
    a, b = sorted(adj)
    return a, b, adj[a][b]


def _solve_block_pairs(nodes, edges, weight, trace=None):
    """Coalition labels for a 2-connected series-parallel block, and its value."""
    adj = {u: {} for u in nodes}
    for u, v in edges:
        piece = VirtualEdge.edge(u, v, weight(u, v))
        adj[u][v] = adj[v][u] = piece
    a, b, piece = _reduce(adj, trace)
    counter = iter(range(2, 10 ** 9))
    label = {a: 0}
    if piece.joined is not None and piece.joined > piece.split:
        label[b] = 0
        state = JOINED
    else:
        label[b] = 1
        state = SPLIT
    piece.expand(state, label, lambda: next(counter))
    return label, piece.value(state)


def _labels_to_structure(label):
    groups: dict = {}
    for u, lab in label.items():
        groups.setdefault(lab, []).append(u)
    return canonical_structure(groups.values())


def solve_2connected_k4_free(graph: Graph, valuation: Valuation, trace: list | None = None) -> Solution:
    """Optimal structure on a 2-connected K4-minor-free graph by cycle folding.

    Appends a ReductionStep per fold to ``trace`` when given.
    """
    if graph.n < 2:
        raise GraphClassError("need at least two nodes")
    if graph.n > 2 and articulation_points(graph):
        raise GraphClassError("graph is not 2-connected")
    norm, offset = normalize_singletons(valuation, graph)
    label, val = _solve_block_pairs(range(graph.n), graph.edges,
                                    lambda u, v: norm.evaluate(frozenset((u, v))), trace)
    return Solution(_labels_to_structure(label), val + offset)


def solve_minor_free(graph: Graph, valuation: Valuation, cls: GraphClass | None = None,
                     trace: list | None = None) -> Solution:
    """Optimal structure on a connected graph whose blocks are series-parallel or K4.

    Blocks are solved independently on the singleton-shifted valuation; K4
    blocks by trying all 15 partitions, two-node blocks by the sign of the
    pair value, the rest by cycle folding. Coalitions meeting at an
    articulation point are merged.

    Outside K4 blocks only values of pairs are consulted, so the result is
    exact for valuations that are an edge sum plus node constants. A value
    that only shows up on three or more nodes (say a bonus on a triangle) is
    not seen.
    """
    actual = classify_graph(graph)
    if cls is None:
        cls = actual
    if cls not in (GraphClass.ACYCLIC, GraphClass.K4_MINOR_FREE, GraphClass.K23_MINOR_FREE) or not cls.includes(actual):
        raise GraphClassError(f"graph is {actual.name}, not solvable as {cls.name} by the minor-free solver")
    if graph.n == 1:
        return Solution((frozenset({0}),), valuation.evaluate(frozenset({0})))
    norm, offset = normalize_singletons(valuation, graph)

    def pair(u, v):
        return norm.evaluate(frozenset((u, v)))

    parent = list(range(graph.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    total = offset
    for block in biconnected_components(graph):
        nodes = sorted(block)
        if len(nodes) == 2:
            u, v = nodes
            w = pair(u, v)
            if w > 0:
                parent[find(v)] = find(u)
                total += w
            continue
        if is_k4(graph, block):
            sub, ids = graph.induced(nodes)
            sol = solve_bruteforce(sub, RelabeledValuation(norm, ids))
            for b in sol.structure:
                members = [ids[i] for i in b]
                for x in members[1:]:
                    parent[find(x)] = find(members[0])
            total += sol.value
            continue
        edges = [(u, v) for u, v in graph.edges if u in block and v in block]
        label, val = _solve_block_pairs(nodes, edges, pair, trace)
        first = {}
        for u in nodes:
            lab = label[u]
            if lab in first:
                parent[find(u)] = find(first[lab])
            else:
                first[lab] = u
        total += val
    groups: dict[int, list[int]] = {}
    for u in range(graph.n):
        groups.setdefault(find(u), []).append(u)
    return Solution(canonical_structure(groups.values()), total)

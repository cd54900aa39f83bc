"""Simple undirected graphs, connectivity, blocks, separators and class recognition."""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable

from .errors import DisconnectedGraphError, GraphFormatError

__all__ = [
    "Graph",
    "GraphClass",
    "SeparatorDecomposition",
    "canonical_structure",
    "validate_partition",
    "connected_components",
    "is_connected",
    "is_connected_structure",
    "biconnected_components",
    "articulation_points",
    "find_separator",
    "is_series_parallel",
    "is_k4",
    "classify_graph",
]


class Graph:
    """Simple undirected graph on nodes ``0..n-1``.

    Edges are stored once, as ``(u, v)`` with ``u < v``, sorted. Instances are
    immutable and hashable, so they can key caches.
    """

    __slots__ = ("n", "edges", "adj", "_hash")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise GraphFormatError("node count must be non-negative")
        seen = set()
        for u, v in edges:
            if u == v:
                raise GraphFormatError(f"self-loop on node {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise GraphFormatError(f"edge ({u}, {v}) outside node range 0..{n - 1}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise GraphFormatError(f"duplicate edge {e}")
            seen.add(e)
        self.n = n
        self.edges = tuple(sorted(seen))
        adj = [set() for _ in range(n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        self.adj = tuple(frozenset(a) for a in adj)
        self._hash = hash((n, self.edges))

    @property
    def e(self) -> int:
        return len(self.edges)

    def nodes(self) -> range:
        return range(self.n)

    def degree(self, u: int) -> int:
        return len(self.adj[u])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def induced(self, nodes: Iterable[int]) -> tuple["Graph", tuple[int, ...]]:
        """Induced subgraph on ``nodes``, relabelled to ``0..k-1`` in ascending order.

        Returns the subgraph and the map from new ids back to the old ones.
        """
        old = tuple(sorted(set(nodes)))
        index = {u: i for i, u in enumerate(old)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph(len(old), edges), old

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Graph(n={self.n}, edges={list(self.edges)!r})"

    # small constructors used all over the tests and demos
    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        return cls(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def complete(cls, n: int) -> "Graph":
        return cls(n, combinations(range(n), 2))

    @classmethod
    def grid(cls, rows: int, cols: int) -> "Graph":
        edges = []
        for r in range(rows):
            for c in range(cols):
                u = r * cols + c
                if c + 1 < cols:
                    edges.append((u, u + 1))
                if r + 1 < rows:
                    edges.append((u, u + cols))
        return cls(rows * cols, edges)


def canonical_structure(blocks: Iterable[Iterable[int]]) -> tuple[frozenset, ...]:
    """Blocks as frozensets, ordered by minimum node id."""
    out = [frozenset(b) for b in blocks]
    out.sort(key=min)
    return tuple(out)


def validate_partition(blocks: Iterable[Iterable[int]], ground: Iterable[int]) -> tuple[frozenset, ...]:
    """Check that ``blocks`` partition ``ground``; return the canonical form.

    Raises ValueError on empty, overlapping or missing blocks.
    """
    ground = frozenset(ground)
    seen: set[int] = set()
    out = []
    for b in blocks:
        b = frozenset(b)
        if not b:
            raise ValueError("empty block in coalition structure")
        if b & seen:
            raise ValueError(f"blocks overlap on {sorted(b & seen)}")
        seen |= b
        out.append(b)
    if seen != ground:
        missing = sorted(ground - seen)
        extra = sorted(seen - ground)
        raise ValueError(f"structure does not partition the ground set (missing={missing}, extra={extra})")
    return canonical_structure(out)


def connected_components(graph: Graph, subset: Iterable[int] | None = None) -> list[frozenset]:
    """Connected components of the subgraph induced by ``subset`` (default: all nodes).

    Components are returned in ascending order of their minimum node id.
    """
    allowed = set(range(graph.n)) if subset is None else set(subset)
    for u in allowed:
        if not 0 <= u < graph.n:
            raise ValueError(f"node {u} outside node range")
    comps = []
    for start in sorted(allowed):
        if start not in allowed:
            continue
        comp = {start}
        allowed.discard(start)
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in graph.adj[u]:
                if w in allowed:
                    allowed.discard(w)
                    comp.add(w)
                    queue.append(w)
        comps.append(frozenset(comp))
    return comps


def is_connected(graph: Graph, subset: Iterable[int] | None = None) -> bool:
    comps = connected_components(graph, subset)
    return len(comps) <= 1


def is_connected_structure(graph: Graph, structure) -> bool:
    """True iff every block of the partition induces a connected subgraph."""
    blocks = validate_partition(structure, range(graph.n))
    return all(len(connected_components(graph, b)) == 1 for b in blocks)


def _require_connected(graph: Graph):
    if graph.n == 0 or not is_connected(graph):
        raise DisconnectedGraphError("graph must be connected; split it into components first")


def biconnected_components(graph: Graph) -> list[frozenset]:
    """Maximal 2-connected blocks of a connected graph (bridges are 2-node blocks).

    Iterative Hopcroft-Tarjan on edges. A single isolated node forms one block.
    """
    _require_connected(graph)
    n = graph.n
    if n == 1:
        return [frozenset({0})]
    disc = [-1] * n
    low = [0] * n
    blocks = []
    edge_stack: list[tuple[int, int]] = []
    time = 0
    disc[0] = low[0] = time
    time += 1
    adj_sorted = [sorted(a) for a in graph.adj]
    stack = [(0, -1, iter(adj_sorted[0]))]
    while stack:
        u, parent, it = stack[-1]
        advanced = False
        for w in it:
            if disc[w] == -1:
                edge_stack.append((u, w))
                disc[w] = low[w] = time
                time += 1
                stack.append((w, u, iter(adj_sorted[w])))
                advanced = True
                break
            if w != parent and disc[w] < disc[u]:
                edge_stack.append((u, w))
                low[u] = min(low[u], disc[w])
        if advanced:
            continue
        stack.pop()
        if stack:
            p = stack[-1][0]
            low[p] = min(low[p], low[u])
            if low[u] >= disc[p]:
                block = set()
                while True:
                    a, b = edge_stack.pop()
                    block.add(a)
                    block.add(b)
                    if (a, b) == (p, u):
                        break
                blocks.append(frozenset(block))
    blocks.sort(key=lambda b: sorted(b))
    return blocks


def articulation_points(graph: Graph) -> frozenset:
    counts: dict[int, int] = {}
    for b in biconnected_components(graph):
        for u in b:
            counts[u] = counts.get(u, 0) + 1
    return frozenset(u for u, c in counts.items() if c > 1)


@dataclass(frozen=True)
class SeparatorDecomposition:
    """Cover of the node set by two parts whose overlap is a vertex separator."""

    part_a: frozenset
    part_b: frozenset
    separator: frozenset
    balance: float

    @property
    def only_a(self) -> frozenset:
        return self.part_a - self.part_b

    @property
    def only_b(self) -> frozenset:
        return self.part_b - self.part_a

    def check(self, graph: Graph) -> None:
        """Raise AssertionError unless all decomposition invariants hold."""
        nodes = frozenset(range(graph.n))
        assert self.part_a | self.part_b == nodes, "parts do not cover the graph"
        assert self.separator == self.part_a & self.part_b, "separator is not the overlap"
        a, b = self.only_a, self.only_b
        for u, v in graph.edges:
            assert not ((u in a and v in b) or (u in b and v in a)), f"edge ({u}, {v}) crosses the separator"
        limit = self.balance * graph.n
        assert len(a) <= limit and len(b) <= limit, "decomposition is not balanced"


def _split_components(sizes: list[int], limit: float, proper: bool):
    """Assign component sizes to two sides, each side total strictly below limit.

    Exhaustive over assignments when there are few components, greedy
    otherwise. Returns a tuple of side labels (0/1) or None.
    """
    k = len(sizes)
    total = sum(sizes)
    if k <= 16:
        best = None
        best_key = None
        # first component on side 0 (symmetry)
        for mask in range(1 << max(k - 1, 0)):
            side = [0] + [(mask >> i) & 1 for i in range(k - 1)]
            a = sum(s for s, t in zip(sizes, side) if t == 0)
            b = total - a
            if a >= limit or b >= limit:
                continue
            if proper and (a == 0 or b == 0):
                continue
            key = max(a, b)
            if best_key is None or key < best_key:
                best, best_key = tuple(side), key
        return best
    side = [0] * k
    a = b = 0
    for i in sorted(range(k), key=lambda i: (-sizes[i], i)):
        if a <= b:
            side[i], a = 0, a + sizes[i]
        else:
            side[i], b = 1, b + sizes[i]
    if a >= limit or b >= limit or (proper and (a == 0 or b == 0)):
        return None
    return tuple(side)


def _decomposition_for(graph: Graph, sep: frozenset, balance: float, proper: bool):
    rest = [u for u in range(graph.n) if u not in sep]
    comps = connected_components(graph, rest)
    side = _split_components([len(c) for c in comps], balance * graph.n, proper)
    if side is None:
        return None
    only_a = frozenset().union(*[c for c, t in zip(comps, side) if t == 0])
    only_b = frozenset().union(*[c for c, t in zip(comps, side) if t == 1])
    return SeparatorDecomposition(only_a | sep, only_b | sep, sep, balance)


EXHAUSTIVE_LIMIT = 16


@lru_cache(maxsize=4096)
def find_separator(graph: Graph, balance: float = 2 / 3, proper: bool = False,
                   exhaustive_limit: int = EXHAUSTIVE_LIMIT) -> SeparatorDecomposition:
    """Balanced vertex separator of a connected graph.

    For ``n <= exhaustive_limit`` candidate separators are tried in order of
    increasing size (lexicographic within a size), so the result is a
    smallest balanced separator. Larger graphs use BFS level cuts. Sides are
    kept strictly below ``balance * n``. Two nodes give the degenerate cover
    with both nodes on both sides.

    With ``proper=True`` both sides outside the separator must be nonempty,
    which is what a recursive solver needs to make progress; a ValueError is
    raised when no such separator exists (complete graphs).
    """
    if not 0 < balance < 1:
        raise ValueError("balance must lie in (0, 1)")
    _require_connected(graph)
    n = graph.n
    if n < 2:
        raise ValueError("need at least two nodes")
    if n == 2 and not proper:
        both = frozenset({0, 1})
        return SeparatorDecomposition(both, both, both, balance)
    if n <= exhaustive_limit:
        for size in range(0, n):
            for sep in combinations(range(n), size):
                dec = _decomposition_for(graph, frozenset(sep), balance, proper)
                if dec is not None:
                    return dec
    else:
        dec = _bfs_level_separator(graph, balance, proper)
        if dec is not None:
            return dec
    if proper:
        raise ValueError("graph has no proper balanced separator")
    raise ValueError("no balanced separator found")  # pragma: no cover


def _bfs_levels(graph: Graph, root: int) -> list[list[int]]:
    dist = {root: 0}
    levels = [[root]]
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in sorted(graph.adj[u]):
            if w not in dist:
                dist[w] = dist[u] + 1
                if dist[w] == len(levels):
                    levels.append([])
                levels[dist[w]].append(w)
                queue.append(w)
    return levels


def _bfs_level_separator(graph: Graph, balance: float, proper: bool):
    # roots: node 0 and the far end of a double sweep from it
    roots = [0]
    far = _bfs_levels(graph, 0)[-1][0]
    if far not in roots:
        roots.append(far)
    best = None
    for root in roots:
        levels = _bfs_levels(graph, root)
        for level in levels:
            dec = _decomposition_for(graph, frozenset(level), balance, proper)
            if dec is None:
                continue
            key = (len(dec.separator), max(len(dec.only_a), len(dec.only_b)))
            if best is None or key < best[0]:
                best = (key, dec)
    if best is not None:
        return best[1]
    # no single level balances: grow a window of consecutive levels
    levels = _bfs_levels(graph, 0)
    for width in range(2, len(levels) + 1):
        for start in range(0, len(levels) - width + 1):
            sep = frozenset(u for lv in levels[start:start + width] for u in lv)
            if len(sep) >= graph.n:
                continue
            dec = _decomposition_for(graph, sep, balance, proper)
            if dec is not None:
                return dec
    return None


def _multigraph_reduces_to_edge(nodes: Iterable[int], edges: Iterable[tuple[int, int]]) -> bool:
    """Series-parallel test for a 2-connected block.

    Repeatedly merges parallel edges and suppresses degree-2 nodes; the block
    is series-parallel iff this ends in a single edge.
    """
    mult: dict[int, dict[int, int]] = {u: {} for u in nodes}
    for u, v in edges:
        mult[u][v] = mult[u].get(v, 0) + 1
        mult[v][u] = mult[v].get(u, 0) + 1
    # parallel edges collapse immediately: keep neighbor sets only
    nbrs = {u: set(m) for u, m in mult.items()}
    queue = deque(u for u in nbrs if len(nbrs[u]) == 2)
    alive = len(nbrs)
    while queue and alive > 2:
        u = queue.popleft()
        if u not in nbrs or len(nbrs[u]) != 2:
            continue
        a, b = nbrs.pop(u)
        alive -= 1
        nbrs[a].discard(u)
        nbrs[b].discard(u)
        nbrs[a].add(b)
        nbrs[b].add(a)
        for x in (a, b):
            if len(nbrs[x]) == 2:
                queue.append(x)
    return alive == 2 and all(len(s) == 1 for s in nbrs.values())


def is_series_parallel(graph: Graph) -> bool:
    """True iff the connected graph has no K4 minor (every block series-parallel)."""
    _require_connected(graph)
    for block in biconnected_components(graph):
        if len(block) <= 2:
            continue
        edges = [(u, v) for u, v in graph.edges if u in block and v in block]
        if not _multigraph_reduces_to_edge(block, edges):
            return False
    return True


def is_k4(graph: Graph, block: frozenset | None = None) -> bool:
    nodes = frozenset(range(graph.n)) if block is None else block
    if len(nodes) != 4:
        return False
    return all(graph.has_edge(u, v) for u, v in combinations(sorted(nodes), 2))


class GraphClass(enum.IntEnum):
    """Dispatch classes, most specific first."""

    ACYCLIC = 0
    K4_MINOR_FREE = 1
    K23_MINOR_FREE = 2
    GENERAL = 3

    def includes(self, other: "GraphClass") -> bool:
        """True if every graph of class ``other`` also belongs to ``self``."""
        return other <= self


def classify_graph(graph: Graph) -> GraphClass:
    """Most specific class of a connected graph.

    K23_MINOR_FREE means every block is series-parallel or a K4, which is the
    shape the K2,3-minor-free solver relies on.
    """
    _require_connected(graph)
    if graph.e == graph.n - 1:
        return GraphClass.ACYCLIC
    cls = GraphClass.K4_MINOR_FREE
    for block in biconnected_components(graph):
        if len(block) <= 2:
            continue
        edges = [(u, v) for u, v in graph.edges if u in block and v in block]
        if _multigraph_reduces_to_edge(block, edges):
            continue
        if is_k4(graph, block):
            cls = GraphClass.K23_MINOR_FREE
            continue
        return GraphClass.GENERAL
    return cls

"""Coalition valuations.

All values are Python ints; nothing in here rounds. A valuation is any object
with ``evaluate(coalition) -> int`` and ``evaluate(empty) == 0``.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Mapping, NamedTuple

from .errors import CapExceededError
from .graph import Graph, connected_components, validate_partition

__all__ = [
    "Valuation",
    "EdgeSumValuation",
    "TableValuation",
    "NormalizedValuation",
    "InducedValuation",
    "RelabeledValuation",
    "BoundaryConstraint",
    "IdmViolation",
    "evaluate",
    "structure_value",
    "find_idm_violation",
    "check_idm",
    "normalize_singletons",
    "induced_valuation",
]


class Valuation:
    """Base class. Subclasses implement ``evaluate``."""

    def evaluate(self, coalition: Iterable[int]) -> int:
        raise NotImplementedError

    def __call__(self, coalition: Iterable[int]) -> int:
        return self.evaluate(coalition)


class EdgeSumValuation(Valuation):
    """Value of a coalition = sum of the weights of edges inside it."""

    def __init__(self, graph: Graph, weights: Mapping[tuple[int, int], int]):
        self.graph = graph
        w = {}
        for (u, v), x in weights.items():
            key = (u, v) if u < v else (v, u)
            if not graph.has_edge(*key):
                raise ValueError(f"weight given for non-edge {key}")
            if key in w:
                raise ValueError(f"edge {key} weighted twice")
            w[key] = int(x)
        missing = [e for e in graph.edges if e not in w]
        if missing:
            raise ValueError(f"edges without weight: {missing[:5]}")
        self.weights = w
        wadj: list[dict[int, int]] = [{} for _ in range(graph.n)]
        for (u, v), x in w.items():
            wadj[u][v] = x
            wadj[v][u] = x
        self._wadj = wadj

    def weight(self, u: int, v: int) -> int:
        return self._wadj[u][v]

    def evaluate(self, coalition):
        c = coalition if isinstance(coalition, (set, frozenset)) else set(coalition)
        total = 0
        wadj = self._wadj
        for u in c:
            for v, x in wadj[u].items():
                if u < v and v in c:
                    total += x
        return total

    def total_weight(self) -> int:
        return sum(self.weights.values())

    def __repr__(self):
        return f"EdgeSumValuation(n={self.graph.n}, e={len(self.weights)})"


class TableValuation(Valuation):
    """Explicit map from node subsets to values; subsets not listed are worth 0."""

    def __init__(self, table: Mapping[Iterable[int], int]):
        t = {}
        for k, x in table.items():
            t[frozenset(k)] = int(x)
        if t.get(frozenset(), 0) != 0:
            raise ValueError("a valuation must give the empty coalition value 0")
        self.table = t

    @classmethod
    def from_function(cls, n: int, fn: Callable[[frozenset], int]) -> "TableValuation":
        table = {}
        for k in range(1, n + 1):
            for c in combinations(range(n), k):
                fc = frozenset(c)
                table[fc] = fn(fc)
        return cls(table)

    def evaluate(self, coalition):
        return self.table.get(frozenset(coalition), 0)


class NormalizedValuation(Valuation):
    """``base`` minus the sum of singleton values of the members."""

    def __init__(self, base: Valuation, singletons: Mapping[int, int] | list[int]):
        self.base = base
        self.singletons = singletons

    def evaluate(self, coalition):
        c = frozenset(coalition)
        if not c:
            return 0
        return self.base.evaluate(c) - sum(self.singletons[i] for i in c)


class InducedValuation(Valuation):
    """Residual value of a coalition on one side of a separator.

    ``blocks`` is a connected structure over the other side. A coalition ``F``
    is charged ``v(F + touched blocks) - sum v(touched blocks)``, where the
    touched blocks are those sharing a node with ``F``.
    """

    def __init__(self, base: Valuation, blocks: Iterable[Iterable[int]], domain: Iterable[int] | None = None):
        self.base = base
        self.blocks = tuple(frozenset(b) for b in blocks)
        self.domain = None if domain is None else frozenset(domain)
        self._owner = {}
        for idx, b in enumerate(self.blocks):
            for u in b:
                self._owner[u] = idx
        self._block_values = [None] * len(self.blocks)

    def _block_value(self, idx):
        val = self._block_values[idx]
        if val is None:
            val = self._block_values[idx] = self.base.evaluate(self.blocks[idx])
        return val

    def evaluate(self, coalition):
        f = frozenset(coalition)
        if self.domain is not None and not f <= self.domain:
            raise ValueError(f"nodes {sorted(f - self.domain)} lie outside the valuation's side")
        if not f:
            return 0
        touched = sorted({self._owner[u] for u in f if u in self._owner})
        union = set(f)
        penalty = 0
        for idx in touched:
            union |= self.blocks[idx]
            penalty += self._block_value(idx)
        return self.base.evaluate(frozenset(union)) - penalty


@dataclass(frozen=True)
class BoundaryConstraint:
    """A required partition ``structure`` of the node set ``domain``.

    Blocks need not be connected. A coalition structure satisfies the
    constraint when its trace on ``domain`` is exactly ``structure``.
    """

    domain: frozenset
    structure: tuple

    def __init__(self, structure: Iterable[Iterable[int]] = (), domain: Iterable[int] | None = None):
        blocks = [frozenset(b) for b in structure]
        dom = frozenset().union(*blocks) if domain is None else frozenset(domain)
        object.__setattr__(self, "structure", validate_partition(blocks, dom))
        object.__setattr__(self, "domain", dom)

    @classmethod
    def empty(cls) -> "BoundaryConstraint":
        return cls(())

    def is_satisfied_by(self, structure) -> bool:
        trace = {frozenset(b & self.domain) for b in map(frozenset, structure)} - {frozenset()}
        return trace == set(self.structure)


def evaluate(valuation: Valuation, coalition: Iterable[int]) -> int:
    return valuation.evaluate(frozenset(coalition))


def structure_value(valuation: Valuation, structure, ground: Iterable[int] | None = None) -> int:
    """Sum of block values. With ``ground`` given, the partition is validated first."""
    blocks = [frozenset(b) for b in structure]
    if ground is not None:
        validate_partition(blocks, ground)
    return sum(valuation.evaluate(b) for b in blocks)


class IdmViolation(NamedTuple):
    i: int
    j: int
    separator: frozenset


def _separates(graph: Graph, sep: frozenset, i: int, j: int) -> bool:
    rest = [u for u in range(graph.n) if u not in sep]
    for comp in connected_components(graph, rest):
        if i in comp:
            return j not in comp
    return True  # pragma: no cover


def find_idm_violation(valuation: Valuation, graph: Graph, cap: int = 10) -> IdmViolation | None:
    """First ``(i, j, C)`` breaking independence of disconnected members, or None.

    Pairs are scanned with ``i < j`` in lexicographic order, separators ``C``
    by size and then lexicographically. Only sets whose removal disconnects
    ``i`` from ``j`` count as separators.
    """
    n = graph.n
    if n > cap:
        raise CapExceededError(f"IDM check is exhaustive; n={n} exceeds cap {cap}")
    v = valuation.evaluate
    for i, j in combinations(range(n), 2):
        if graph.has_edge(i, j):
            continue
        others = [u for u in range(n) if u != i and u != j]
        for k in range(len(others) + 1):
            for c in combinations(others, k):
                c = frozenset(c)
                if not _separates(graph, c, i, j):
                    continue
                if v(c | {i}) - v(c) != v(c | {i, j}) - v(c | {j}):
                    return IdmViolation(i, j, c)
    return None


def check_idm(valuation: Valuation, graph: Graph, cap: int = 10) -> bool:
    return find_idm_violation(valuation, graph, cap) is None


def normalize_singletons(valuation: Valuation, graph: Graph) -> tuple[Valuation, int]:
    """Shift every singleton to value 0.

    Returns ``(shifted, offset)`` with ``v(C) = shifted(C) + sum of v({i}) over C``
    and ``offset`` the sum over all nodes, so every full partition's value moves
    by exactly ``offset``.
    """
    if isinstance(valuation, EdgeSumValuation):
        return valuation, 0
    singles = [valuation.evaluate(frozenset({i})) for i in range(graph.n)]
    if not any(singles):
        return valuation, 0
    return NormalizedValuation(valuation, singles), sum(singles)


def induced_valuation(base: Valuation, boundary_structure, overlap: Iterable[int] | None = None,
                      domain: Iterable[int] | None = None) -> InducedValuation:
    """Valuation on the far side of a separator, given a structure on the near side.

    ``overlap`` (the separator) is accepted for symmetry with the call sites; the
    formula only needs the concrete blocks.
    """
    blocks = [frozenset(b) for b in boundary_structure]
    if overlap is not None:
        overlap = frozenset(overlap)
        covered = frozenset().union(*blocks) if blocks else frozenset()
        if not overlap <= covered:
            raise ValueError("boundary structure must cover the overlap")
    return InducedValuation(base, blocks, domain)


class RelabeledValuation(Valuation):
    """View of ``base`` through a node relabelling ``ids[local] = original``."""

    def __init__(self, base: Valuation, ids):
        self.base = base
        self.ids = tuple(ids)

    def evaluate(self, coalition):
        ids = self.ids
        return self.base.evaluate(frozenset(ids[i] for i in coalition))

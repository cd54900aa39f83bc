"""3-SAT to edge-sum coalition structure generation.

Node 0 is the hub. Every literal occurrence gets its own node, numbered
clause by clause. Hub edges weigh +1. Two occurrences in the same clause, or
two complementary occurrences anywhere, are joined by an edge of weight
``-(3m + 1)``, which no block can afford. The best structure is worth ``m``
exactly when the formula is satisfiable: the hub picks up one literal per
clause.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .graph import Graph, is_connected_structure, validate_partition
from .valuation import EdgeSumValuation, structure_value

__all__ = [
    "Cnf3",
    "ReductionArtifact",
    "reduce_3sat",
    "decode_assignment",
    "encode_assignment",
    "satisfies",
]


@dataclass(frozen=True)
class Cnf3:
    """Formula in 3-CNF. Literals are signed 1-based variable indices."""

    variable_count: int
    clauses: tuple

    def __init__(self, variable_count: int, clauses: Iterable[Iterable[int]]):
        cl = tuple(tuple(int(x) for x in c) for c in clauses)
        for i, c in enumerate(cl):
            if len(c) != 3:
                raise ValueError(f"clause {i} has {len(c)} literals, expected 3")
            for lit in c:
                if lit == 0 or abs(lit) > variable_count:
                    raise ValueError(f"literal {lit} in clause {i} out of range 1..{variable_count}")
        object.__setattr__(self, "variable_count", int(variable_count))
        object.__setattr__(self, "clauses", cl)

    @property
    def m(self) -> int:
        return len(self.clauses)


def satisfies(cnf: Cnf3, assignment: Mapping[int, bool]) -> bool:
    return all(any(assignment.get(abs(l), False) == (l > 0) for l in c) for c in cnf.clauses)


@dataclass(frozen=True)
class ReductionArtifact:
    cnf: Cnf3
    graph: Graph
    weights: EdgeSumValuation
    hub: int
    literal_nodes: dict  # (clause, position) -> node

    def literal_at(self, node: int) -> int:
        for (i, j), u in self.literal_nodes.items():
            if u == node:
                return self.cnf.clauses[i][j]
        raise KeyError(node)


def reduce_3sat(cnf: Cnf3) -> ReductionArtifact:
    m = cnf.m
    if m < 1:
        raise ValueError("empty formula")
    penalty = -(3 * m + 1)
    hub = 0
    nodes = {}
    occ = []  # (node, literal)
    for i, clause in enumerate(cnf.clauses):
        for j, lit in enumerate(clause):
            u = 1 + 3 * i + j
            nodes[(i, j)] = u
            occ.append((u, lit))
    weights = {}
    for u, _ in occ:
        weights[(hub, u)] = 1
    for i in range(m):
        a, b, c = (nodes[(i, j)] for j in range(3))
        for e in ((a, b), (a, c), (b, c)):
            weights[e] = penalty
    for x in range(len(occ)):
        for y in range(x + 1, len(occ)):
            (u, lu), (w, lw) = occ[x], occ[y]
            if lu == -lw:
                weights[(u, w)] = penalty
    graph = Graph(3 * m + 1, weights)
    return ReductionArtifact(cnf, graph, EdgeSumValuation(graph, weights), hub, nodes)


def decode_assignment(artifact: ReductionArtifact, structure) -> dict | None:
    """Assignment read off a structure of value ``m``: a variable is true iff a
    positive occurrence shares the hub's block. None below value ``m``."""
    blocks = validate_partition(structure, range(artifact.graph.n))
    if structure_value(artifact.weights, blocks) != artifact.cnf.m:
        return None
    hub_block = next(b for b in blocks if artifact.hub in b)
    assignment = {x: False for x in range(1, artifact.cnf.variable_count + 1)}
    for (i, j), u in sorted(artifact.literal_nodes.items()):
        lit = artifact.cnf.clauses[i][j]
        if u in hub_block and lit > 0:
            assignment[lit] = True
    return assignment


def encode_assignment(artifact: ReductionArtifact, assignment: Mapping[int, bool]) -> tuple:
    """Hub plus the first true occurrence of each clause; everyone else alone."""
    cnf = artifact.cnf
    if not satisfies(cnf, assignment):
        raise ValueError("assignment does not satisfy the formula")
    hub_block = {artifact.hub}
    for i, clause in enumerate(cnf.clauses):
        j = next(j for j, l in enumerate(clause) if assignment.get(abs(l), False) == (l > 0))
        hub_block.add(artifact.literal_nodes[(i, j)])
    rest = [{u} for u in range(artifact.graph.n) if u not in hub_block]
    out = validate_partition([hub_block] + rest, range(artifact.graph.n))
    assert is_connected_structure(artifact.graph, out)
    return out

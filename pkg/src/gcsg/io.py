"""Text formats: graphs (optionally weighted), structures, table valuations,
DIMACS CNF, and the reduction's node mapping.

Every parser takes a string and raises GraphFormatError with a line number on
bad input. ``#`` starts a comment line everywhere; blank lines are skipped.
"""

from __future__ import annotations

from pathlib import Path

from .errors import GraphFormatError
from .graph import Graph, canonical_structure
from .valuation import EdgeSumValuation, TableValuation

__all__ = [
    "parse_graph",
    "format_graph",
    "parse_structure",
    "format_structure",
    "parse_table",
    "format_table",
    "parse_dimacs",
    "format_dimacs",
    "parse_mapping",
    "format_mapping",
    "read_text",
    "write_text",
]


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield no, line


def _ints(no, line, what):
    try:
        return [int(tok) for tok in line.split()]
    except ValueError:
        raise GraphFormatError(f"line {no}: expected integers in {what}, got {line!r}") from None


def parse_graph(text: str):
    """``(graph, weights)``; weights is None for an unweighted file.

    Header ``n e``, then ``e`` lines ``u v`` or ``u v w`` with ``u < v``.
    Weighted and unweighted lines cannot be mixed.
    """
    lines = list(_lines(text))
    if not lines:
        raise GraphFormatError("empty graph file")
    no, head = lines[0]
    hdr = _ints(no, head, "header")
    if len(hdr) != 2 or hdr[0] < 0 or hdr[1] < 0:
        raise GraphFormatError(f"line {no}: header must be 'n e' with non-negative counts")
    n, e = hdr
    body = lines[1:]
    if len(body) != e:
        raise GraphFormatError(f"header announces {e} edges, file has {len(body)} edge lines")
    edges, weights = [], {}
    width = None
    for no, line in body:
        vals = _ints(no, line, "edge line")
        if len(vals) not in (2, 3):
            raise GraphFormatError(f"line {no}: edge line needs 'u v' or 'u v w'")
        if width is None:
            width = len(vals)
        elif width != len(vals):
            raise GraphFormatError(f"line {no}: mixes weighted and unweighted edges")
        u, v = vals[0], vals[1]
        if not 0 <= u < v < n:
            raise GraphFormatError(f"line {no}: edge must satisfy 0 <= u < v < n, got {u} {v}")
        edges.append((u, v))
        if width == 3:
            weights[(u, v)] = vals[2]
    graph = Graph(n, edges)
    return graph, (weights if width == 3 else None)


def format_graph(graph: Graph, weights=None) -> str:
    out = [f"{graph.n} {graph.e}"]
    for u, v in graph.edges:
        if weights is None:
            out.append(f"{u} {v}")
        else:
            w = weights.weight(u, v) if isinstance(weights, EdgeSumValuation) else weights[(u, v)]
            out.append(f"{u} {v} {w}")
    return "\n".join(out) + "\n"


def parse_structure(text: str) -> tuple:
    """Blocks, one per line. Validation against a graph is the caller's job."""
    blocks = []
    for no, line in _lines(text):
        block = _ints(no, line, "block")
        if len(set(block)) != len(block):
            raise GraphFormatError(f"line {no}: repeated node in block")
        blocks.append(frozenset(block))
    return tuple(blocks)


def format_structure(structure) -> str:
    return "".join(" ".join(map(str, sorted(b))) + "\n" for b in canonical_structure(structure))


def parse_table(text: str) -> TableValuation:
    """Lines ``id id ... value``; subsets not listed are worth 0."""
    table = {}
    for no, line in _lines(text):
        vals = _ints(no, line, "table line")
        if len(vals) < 2:
            raise GraphFormatError(f"line {no}: need at least one node id and a value")
        key = frozenset(vals[:-1])
        if len(key) != len(vals) - 1:
            raise GraphFormatError(f"line {no}: repeated node in subset")
        if key in table:
            raise GraphFormatError(f"line {no}: subset listed twice")
        table[key] = vals[-1]
    return TableValuation(table)


def format_table(valuation: TableValuation) -> str:
    rows = sorted((sorted(k), x) for k, x in valuation.table.items() if k)
    rows.sort(key=lambda r: (len(r[0]), r[0]))
    return "".join(" ".join(map(str, k + [x])) + "\n" for k, x in rows)


def parse_dimacs(text: str):
    """``(variable_count, clauses)`` from DIMACS CNF. Clauses end with 0 and may
    span lines; ``c`` lines are comments."""
    nv = nc = None
    clauses, cur = [], []
    for no, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise GraphFormatError(f"line {no}: bad problem line {line!r}")
            try:
                nv, nc = int(parts[2]), int(parts[3])
            except ValueError:
                raise GraphFormatError(f"line {no}: bad problem line {line!r}") from None
            continue
        if nv is None:
            raise GraphFormatError(f"line {no}: clause before 'p cnf' header")
        for lit in _ints(no, line, "clause"):
            if lit == 0:
                clauses.append(tuple(cur))
                cur = []
            else:
                if abs(lit) > nv:
                    raise GraphFormatError(f"line {no}: literal {lit} exceeds variable count {nv}")
                cur.append(lit)
    if nv is None:
        raise GraphFormatError("missing 'p cnf' header")
    if cur:
        raise GraphFormatError("last clause is not terminated by 0")
    if len(clauses) != nc:
        raise GraphFormatError(f"header announces {nc} clauses, file has {len(clauses)}")
    return nv, clauses


def format_dimacs(variable_count: int, clauses) -> str:
    out = [f"p cnf {variable_count} {len(clauses)}"]
    out += [" ".join(map(str, c)) + " 0" for c in clauses]
    return "\n".join(out) + "\n"


def parse_mapping(text: str) -> dict:
    out = {}
    for no, line in _lines(text):
        vals = _ints(no, line, "mapping line")
        if len(vals) != 3:
            raise GraphFormatError(f"line {no}: mapping line is 'clause position node'")
        out[(vals[0], vals[1])] = vals[2]
    return out


def format_mapping(literal_nodes) -> str:
    return "".join(f"{i} {j} {u}\n" for (i, j), u in sorted(literal_nodes.items()))


def read_text(path) -> str:
    return Path(path).read_text()


def write_text(path, text: str) -> None:
    Path(path).write_text(text)

"""Command-line front end.

    python3 -m gcsg solve graph.txt [--algorithm auto] [--constraint c.txt] [--output out.txt]
    python3 -m gcsg check graph.txt structure.txt
    python3 -m gcsg count graph.txt
    python3 -m gcsg reduce formula.cnf graph.txt mapping.txt
    python3 -m gcsg bench --suite sp --sizes 4:9 --seed 1

Exit codes: 0 ok, 1 failed check / infeasible / bench mismatch, 2 bad input,
3 algorithm does not fit the graph, 4 budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
import time

from .enumeration import DEFAULT_CAP, count_connected_structures, solve_bruteforce, structure_count_bound
from .errors import BudgetExceededError, CapExceededError, GraphClassError, GraphFormatError
from .generators import as_rng, random_cnf, random_grid_subgraph, random_sp_graph, random_tree
from .graph import GraphClass, canonical_structure, classify_graph, connected_components, validate_partition
from .harness import random_idm_valuation, sat_bruteforce
from .io import format_graph, format_mapping, format_structure, parse_dimacs, parse_graph, parse_structure, parse_table, read_text
from .minorfree import solve_minor_free
from .sat import Cnf3, reduce_3sat
from .separator import SolverConfig, solve_separator
from .tree import solve_tree
from .valuation import BoundaryConstraint, EdgeSumValuation, RelabeledValuation, structure_value

EXIT_OK, EXIT_FAIL, EXIT_FORMAT, EXIT_CLASS, EXIT_BUDGET = 0, 1, 2, 3, 4


class _Defaults:
    """Solver settings when solve_graph is called from Python."""

    cap = DEFAULT_CAP
    base_threshold = 8
    balance = 2 / 3
    time_limit = None


ALGORITHMS = ("auto", "bruteforce", "tree", "minorfree", "separator")


def _err(msg):
    print(f"error: {msg}", file=sys.stderr)


def _load_instance(path, table_path=None):
    graph, weights = parse_graph(read_text(path))
    if table_path is not None:
        return graph, parse_table(read_text(table_path))
    if weights is None:
        raise GraphFormatError("graph file has no edge weights (give --table for a table valuation)")
    return graph, EdgeSumValuation(graph, weights)


def _pick(cls: GraphClass, constrained: bool, pairwise: bool = True) -> str:
    if constrained:
        return "separator"
    if cls is GraphClass.ACYCLIC:
        return "tree"
    # cycle folding only reads pair values, so a table may hide terms it misses
    if pairwise and cls <= GraphClass.K23_MINOR_FREE:
        return "minorfree"
    return "separator"


def _solve_component(sub, val, algorithm, constraint, args):
    if constraint is not None and algorithm in ("tree", "minorfree"):
        raise GraphClassError(f"algorithm {algorithm} does not take a constraint")
    if algorithm == "bruteforce":
        return solve_bruteforce(sub, val, constraint, cap=args.cap)
    if algorithm == "tree":
        return solve_tree(sub, val)
    if algorithm == "minorfree":
        return solve_minor_free(sub, val)
    config = SolverConfig(base_threshold=args.base_threshold, balance=args.balance, time_limit=args.time_limit)
    return solve_separator(sub, val, constraint, config)


def solve_graph(graph, valuation, algorithm="auto", constraint=None, args=None):
    """Solve each component on its own; returns ``(structure, value, names)``
    or None when the constraint cannot be met."""
    args = args or _Defaults
    blocks, total, names = [], 0, []
    required = [] if constraint is None else list(constraint.structure)
    for comp in connected_components(graph):
        sub, ids = graph.induced(comp)
        index = {u: i for i, u in enumerate(ids)}
        local = []
        for b in required:
            if b & comp:
                if not b <= comp:
                    return None
                local.append([index[u] for u in b])
        con = BoundaryConstraint(local) if local else None
        name = algorithm
        if name == "auto":
            name = _pick(classify_graph(sub), con is not None, isinstance(valuation, EdgeSumValuation))
        if isinstance(valuation, EdgeSumValuation):
            val = EdgeSumValuation(sub, {(index[u], index[v]): w for (u, v), w in valuation.weights.items()
                                         if u in index and v in index})
        else:
            val = RelabeledValuation(valuation, ids)
        sol = _solve_component(sub, val, name, con, args)
        if sol is None:
            return None
        blocks += [frozenset(ids[u] for u in b) for b in sol.structure]
        total += sol.value
        if name not in names:
            names.append(name)
    return canonical_structure(blocks), total, names


def cmd_solve(args) -> int:
    graph, val = _load_instance(args.graph, args.table)
    constraint = None
    if args.constraint:
        blocks = parse_structure(read_text(args.constraint))
        try:
            constraint = BoundaryConstraint(blocks)
        except ValueError as exc:
            raise GraphFormatError(f"constraint: {exc}") from None
        for b in constraint.structure:
            if any(not 0 <= u < graph.n for u in b):
                raise GraphFormatError("constraint names nodes outside the graph")
    res = solve_graph(graph, val, args.algorithm, constraint, args)
    if res is None:
        print(f"infeasible algorithm={args.algorithm} nodes={graph.n} edges={graph.e}")
        return EXIT_FAIL
    structure, value, names = res
    text = format_structure(structure)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    print(f"value={value} algorithm={'+'.join(names) or args.algorithm} nodes={graph.n} edges={graph.e}")
    if not args.output:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_check(args) -> int:
    graph, weights = parse_graph(read_text(args.graph))
    structure = parse_structure(read_text(args.structure))
    try:
        blocks = validate_partition(structure, range(graph.n))
    except ValueError as exc:
        print(f"invalid: {exc}")
        return EXIT_FAIL
    for b in blocks:
        if len(connected_components(graph, b)) != 1:
            print(f"invalid: block {sorted(b)} is not connected")
            return EXIT_FAIL
    if weights is not None:
        print(f"valid value={structure_value(EdgeSumValuation(graph, weights), blocks)} blocks={len(blocks)}")
    else:
        print(f"valid blocks={len(blocks)}")
    return EXIT_OK


def cmd_count(args) -> int:
    graph, _ = parse_graph(read_text(args.graph))
    count = 1
    for comp in connected_components(graph):
        sub, _ = graph.induced(comp)
        count *= count_connected_structures(sub, cap=args.cap)
    print(f"count={count} bound={structure_count_bound(graph)} nodes={graph.n} edges={graph.e}")
    return EXIT_OK


def cmd_reduce(args) -> int:
    nv, clauses = parse_dimacs(read_text(args.cnf))
    try:
        cnf = Cnf3(nv, clauses)
        art = reduce_3sat(cnf)
    except ValueError as exc:
        raise GraphFormatError(str(exc)) from None
    with open(args.out_graph, "w") as fh:
        fh.write(format_graph(art.graph, art.weights))
    with open(args.out_map, "w") as fh:
        fh.write(format_mapping(art.literal_nodes))
    print(f"m={cnf.m} nodes={art.graph.n}")
    return EXIT_OK


# ---------------------------------------------------------------- bench

BENCH_SUITES = ("trees", "sp", "planar-like", "reductions")
DEFAULT_SIZES = {"trees": "4:9", "sp": "4:9", "planar-like": "4:10", "reductions": "1:4"}


def _parse_range(text):
    try:
        if ":" in text:
            lo, hi = (int(x) for x in text.split(":"))
        else:
            lo = hi = int(text)
    except ValueError:
        raise GraphFormatError(f"size range must look like 4:9, got {text!r}") from None
    if lo < 1 or hi < lo:
        raise GraphFormatError(f"bad size range {text!r}")
    return range(lo, hi + 1)


def _bench_rows(suite, sizes, seed, per_size, cap):
    rng = as_rng(seed)
    for n in sizes:
        for k in range(per_size):
            name = f"{suite}-{n}-{k}"
            if suite == "reductions":
                nv, clauses = random_cnf(rng.randint(1, 6), n, rng)
                cnf = Cnf3(nv, clauses)
                art = reduce_3sat(cnf)
                graph, val, algo = art.graph, art.weights, "bruteforce"
            else:
                if suite == "trees":
                    graph, algo = random_tree(n, rng), "tree"
                elif suite == "sp":
                    graph, algo = random_sp_graph(n, rng), "minorfree"
                else:
                    cols = max(1, round(n ** 0.5))
                    rows = max(1, -(-n // cols))
                    graph, algo = random_grid_subgraph(rows, cols, 0.6, rng), "separator"
                val = random_idm_valuation(graph, rng)
                expect = {"tree": GraphClass.ACYCLIC, "minorfree": GraphClass.K4_MINOR_FREE}
                if algo in expect and not expect[algo].includes(classify_graph(graph)):
                    raise AssertionError(f"{name}: generator left its class")
            t0 = time.perf_counter()
            if algo == "bruteforce":
                sol = solve_bruteforce(graph, val, cap=max(cap, graph.n))
            else:
                sol = _solve_component(graph, val, algo, None, _Defaults)
            secs = time.perf_counter() - t0
            oracle, status = "", "ok"
            if suite == "reductions":
                sat, _ = sat_bruteforce(cnf)
                oracle = "sat" if sat else "unsat"
                if (sol.value == cnf.m) != sat:
                    status = "MISMATCH"
            elif graph.n <= cap:
                ref = solve_bruteforce(graph, val, cap=cap).value
                oracle = str(ref)
                if ref != sol.value or structure_value(val, sol.structure) != sol.value:
                    status = "MISMATCH"
            ratio = f"{secs / graph.n ** 3:.3e}" if suite == "sp" else ""
            yield [name, graph.n, graph.e, algo, sol.value, oracle, status, f"{secs:.6f}", ratio]


def cmd_bench(args) -> int:
    sizes = _parse_range(args.sizes or DEFAULT_SIZES[args.suite])
    out = open(args.output, "w") if args.output else sys.stdout
    bad = 0
    try:
        out.write("instance,n,e,algorithm,value,oracle,status,seconds,seconds_per_n3\n")
        for row in _bench_rows(args.suite, sizes, args.seed, args.per_size, args.cap):
            bad += row[6] != "ok"
            out.write(",".join(map(str, row)) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    if bad:
        _err(f"{bad} mismatching instance(s)")
        return EXIT_FAIL
    return EXIT_OK


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gcsg", description="Optimal connected coalition structures on graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="solve a weighted graph")
    s.add_argument("graph")
    s.add_argument("--algorithm", choices=ALGORITHMS, default="auto")
    s.add_argument("--constraint", help="structure file whose blocks must be traced exactly")
    s.add_argument("--table", help="table valuation file instead of edge weights")
    s.add_argument("--output", help="write the structure here instead of stdout")
    s.add_argument("--balance", type=float, default=2 / 3)
    s.add_argument("--base-threshold", type=int, default=8)
    s.add_argument("--cap", type=int, default=DEFAULT_CAP, help="node cap for brute force")
    s.add_argument("--time-limit", type=float, default=None, help="seconds for the separator solver")
    s.add_argument("--seed", type=int, default=0, help="unused by the deterministic solvers")
    s.set_defaults(func=cmd_solve)

    c = sub.add_parser("check", help="validate a structure and print its value")
    c.add_argument("graph")
    c.add_argument("structure")
    c.set_defaults(func=cmd_check)

    n = sub.add_parser("count", help="count connected structures")
    n.add_argument("graph")
    n.add_argument("--cap", type=int, default=DEFAULT_CAP)
    n.set_defaults(func=cmd_count)

    r = sub.add_parser("reduce", help="3-SAT (DIMACS) to a weighted graph plus node mapping")
    r.add_argument("cnf")
    r.add_argument("out_graph")
    r.add_argument("out_map")
    r.set_defaults(func=cmd_reduce)

    b = sub.add_parser("bench", help="seeded random instances, cross-checked against brute force")
    b.add_argument("--suite", choices=BENCH_SUITES, default="trees")
    b.add_argument("--sizes", help="node range lo:hi (clause range for reductions)")
    b.add_argument("--per-size", type=int, default=3)
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--cap", type=int, default=10, help="largest n cross-checked by brute force")
    b.add_argument("--output")
    b.set_defaults(func=cmd_bench)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "solve" and not 0 < args.balance < 1:
            raise GraphFormatError("--balance must lie in (0, 1)")
        if getattr(args, "base_threshold", 2) < 2:
            raise GraphFormatError("--base-threshold must be at least 2")
        return args.func(args)
    except (GraphFormatError, OSError) as exc:
        _err(exc)
        return EXIT_FORMAT
    except GraphClassError as exc:
        _err(exc)
        return EXIT_CLASS
    except (BudgetExceededError, CapExceededError) as exc:
        _err(exc)
        return EXIT_BUDGET


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

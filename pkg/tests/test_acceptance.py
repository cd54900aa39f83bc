"""Acceptance criteria, one test each.

Every test prints a single PASS/FAIL line (also repeated in the terminal
summary) and then asserts. All checks are exact integer comparisons.
"""
import random
import time
from itertools import combinations
from math import comb

from gcsg.enumeration import (
    count_connected_structures,
    enumerate_connected_structures,
    enumerate_noncrossing,
    is_noncrossing,
    solve_bruteforce,
)
from gcsg.generators import random_cnf, random_connected_graph, random_k23_graph, random_sp_graph, random_tree
from gcsg.graph import Graph, find_separator, is_connected_structure
from gcsg.harness import filter_oracle, random_idm_valuation, sat_bruteforce, set_partitions
from gcsg.minorfree import solve_minor_free
from gcsg.sat import Cnf3, decode_assignment, encode_assignment, reduce_3sat, satisfies
from gcsg.separator import SolverConfig, solve_separator, split_structure
from gcsg.tree import solve_tree
from gcsg.valuation import (
    BoundaryConstraint,
    EdgeSumValuation,
    InducedValuation,
    TableValuation,
    check_idm,
    find_idm_violation,
    structure_value,
)

from helpers import all_shapes


def _random_constraint(rng, n):
    if rng.random() < 0.3:
        return None
    nodes = rng.sample(range(n), rng.randint(0, min(n, 4)))
    blocks = {}
    for u in nodes:
        blocks.setdefault(rng.randint(0, 2), set()).add(u)
    return BoundaryConstraint(list(blocks.values()))


def test_trees_match_oracle(acceptance):
    rng = random.Random(1001)
    t0 = time.perf_counter()
    bad = 0
    for _ in range(200):
        g = random_tree(rng.randint(3, 8), rng)
        v = random_idm_valuation(g, rng)
        bad += solve_tree(g, v).value != solve_bruteforce(g, v).value
    secs = time.perf_counter() - t0
    ok = bad == 0 and secs < 10
    acceptance("oracle equivalence, trees", ok, f"200 trees, {bad} mismatches, {secs:.2f}s (< 10s)")
    assert ok


def test_minor_free_match_oracle(acceptance):
    rng = random.Random(1002)
    t0 = time.perf_counter()
    bad = 0
    for _ in range(200):
        g = random_sp_graph(rng.randint(2, 9), rng)
        v = random_idm_valuation(g, rng)
        bad += solve_minor_free(g, v).value != solve_bruteforce(g, v).value
    for _ in range(100):
        # one K4 adds at most three nodes, two add six: stay within n <= 9
        k4s = rng.randint(1, 2)
        g = random_k23_graph(rng.randint(2, 9 - 3 * k4s), k4s, rng)
        v = random_idm_valuation(g, rng)
        bad += solve_minor_free(g, v).value != solve_bruteforce(g, v).value
    secs = time.perf_counter() - t0
    ok = bad == 0 and secs < 60
    acceptance("oracle equivalence, minor-free", ok,
               f"200 series-parallel + 100 with K4 blocks, {bad} mismatches, {secs:.2f}s (< 60s)")
    assert ok


def test_separator_matches_oracle(acceptance):
    rng = random.Random(1003)
    t0 = time.perf_counter()
    bad = infeasible = constrained = 0
    for k in range(200):
        n = rng.randint(2, 8)
        g = random_connected_graph(n, rng.choice((0.0, 0.2, 0.4, 0.7)), rng)
        v = random_idm_valuation(g, rng, node_constants=k % 4 == 0)
        con = _random_constraint(rng, n)
        constrained += con is not None
        cfg = SolverConfig(base_threshold=rng.randint(2, 4))
        got = solve_separator(g, v, con, cfg)
        ref = solve_bruteforce(g, v, con)
        if ref is None:
            infeasible += 1
            bad += got is not None
        elif got is None or got.value != ref.value or structure_value(v, got.structure) != got.value \
                or not is_connected_structure(g, got.structure):
            bad += 1
    secs = time.perf_counter() - t0
    ok = bad == 0 and secs < 120
    acceptance("oracle equivalence, separator", ok,
               f"200 graphs ({constrained} constrained, {infeasible} infeasible), {bad} mismatches, "
               f"{secs:.2f}s (< 120s)")
    assert ok


def test_enumeration_matches_filter(acceptance):
    t0 = time.perf_counter()
    shapes = all_shapes(6)
    bad = over = 0
    for g in shapes:
        got = list(enumerate_connected_structures(g))
        bad += len(got) != len(set(got)) or set(got) != set(filter_oracle(g))
        over += count_connected_structures(g) > comb(g.e + g.n, g.n)
    secs = time.perf_counter() - t0
    ok = bad == 0 and over == 0 and secs < 120
    acceptance("enumeration correctness", ok,
               f"{len(shapes)} shapes n<=6, {bad} set mismatches, {over} over the binomial bound, {secs:.2f}s (< 120s)")
    assert ok


def test_noncrossing_count_and_bound(acceptance):
    t0 = time.perf_counter()
    counts, bad = [], 0
    for r in range(1, 9):
        got = len(list(enumerate_noncrossing(r)))
        want = sum(1 for p in set_partitions(range(r)) if is_noncrossing(p))
        counts.append(got)
        bad += got != want or got > 4 ** r / 2
    secs = time.perf_counter() - t0
    ok = bad == 0 and counts[3] == 14 and secs < 5
    acceptance("non-crossing bound", ok, f"counts r=1..8 {counts}, r=4 gives {counts[3]}, {secs:.2f}s (< 5s)")
    assert ok


def _quotient_graph(g, part_b, blocks):
    # far-side nodes are adjacent when the near-side blocks holding them touch
    ids = sorted(part_b)
    owner = {u: b for b in blocks for u in b}
    closure = [owner.get(u, frozenset({u})) for u in ids]
    edges = [(i, j) for i, j in combinations(range(len(ids)), 2)
             if closure[i] & closure[j] or any(g.has_edge(x, y) for x in closure[i] for y in closure[j])]
    return Graph(len(ids), edges), ids


class _Local:
    def __init__(self, vd, ids):
        self.vd, self.ids = vd, ids

    def evaluate(self, c):
        return self.vd.evaluate(frozenset(self.ids[i] for i in c))


def test_combination_identity(acceptance):
    rng = random.Random(1006)
    t0 = time.perf_counter()
    splits = pairs = bad = not_idm = 0
    for g in all_shapes(6, 2):
        v = EdgeSumValuation(g, {e: rng.randint(-5, 5) for e in g.edges})
        decs = []
        for proper in (False, True):
            try:
                dec = find_separator(g, proper=proper)
            except ValueError:
                continue
            if dec not in decs:
                decs.append(dec)
        for dec in decs:
            splits += 1
            seen = {}
            for s in enumerate_connected_structures(g):
                pieces_a, pieces_b = split_structure(g, dec, s)
                pairs += 1
                touching = [p for p in pieces_a if p & dec.separator]
                vd = InducedValuation(v, touching, domain=dec.part_b)
                lhs = structure_value(v, s)
                rhs = sum(v.evaluate(p) for p in pieces_a) + sum(vd.evaluate(p) for p in pieces_b)
                bad += lhs != rhs
                key = tuple(sorted(touching, key=min))
                if key not in seen:
                    gq, ids = _quotient_graph(g, dec.part_b, touching)
                    seen[key] = check_idm(_Local(vd, ids), gq)
                    not_idm += not seen[key]
    secs = time.perf_counter() - t0
    ok = bad == 0 and not_idm == 0 and secs < 120
    acceptance("combination identity", ok,
               f"{splits} separator splits, {pairs} compatible pairs, {bad} identity failures, "
               f"{not_idm} non-IDM induced valuations, {secs:.2f}s (< 120s)")
    assert ok


def test_sat_equivalence(acceptance):
    rng = random.Random(1007)
    t0 = time.perf_counter()
    bad = sat_count = 0
    formulas = [Cnf3(*random_cnf(rng.randint(1, 6), rng.randint(1, 4), rng)) for _ in range(100)]
    exemplars = [(Cnf3(3, [(1, 2, 3), (-1, -2, 3), (1, -3, -3)]), True),
                 (Cnf3(1, [(1, 1, 1), (-1, -1, -1)]), False)]
    for cnf, expect in [(f, None) for f in formulas] + exemplars:
        art = reduce_3sat(cnf)
        # m = 4 gives 13 nodes, one over the default brute-force cap
        sol = solve_bruteforce(art.graph, art.weights, cap=art.graph.n)
        sat, witness = sat_bruteforce(cnf)
        sat_count += sat
        if expect is not None and sat != expect:
            bad += 1
        if (sol.value == cnf.m) != sat or sol.value > cnf.m:
            bad += 1
        if sol.value == cnf.m and not satisfies(cnf, decode_assignment(art, sol.structure)):
            bad += 1
        if sat and structure_value(art.weights, encode_assignment(art, witness)) != cnf.m:
            bad += 1
    secs = time.perf_counter() - t0
    ok = bad == 0 and secs < 60
    acceptance("3-SAT equivalence", ok,
               f"102 formulas ({sat_count} satisfiable), {bad} failures, {secs:.2f}s (< 60s)")
    assert ok


def test_idm_checker(acceptance):
    rng = random.Random(1008)
    t0 = time.perf_counter()
    fails = 0
    for _ in range(50):
        g = random_connected_graph(rng.randint(2, 8), rng.choice((0.1, 0.3, 0.6)), rng)
        fails += not check_idm(random_idm_valuation(g, rng), g)
    square = TableValuation.from_function(3, lambda c: len(c) ** 2)
    bad = find_idm_violation(square, Graph.path(3))
    found = bad is not None and (bad.i, bad.j, set(bad.separator)) == (0, 2, {1})
    secs = time.perf_counter() - t0
    ok = fails == 0 and found and secs < 30
    acceptance("IDM checker", ok, f"50 edge-sum valuations, {fails} rejected; |C|^2 on a path gives {bad}, {secs:.2f}s (< 30s)")
    assert ok


def test_scaling_smoke(acceptance):
    g = random_tree(10 ** 4, 1009)
    v = random_idm_valuation(g, 1009)
    t = time.perf_counter()
    solve_tree(g, v)
    tree_s = time.perf_counter() - t
    g = random_sp_graph(2000, 1009)
    v = random_idm_valuation(g, 1009)
    t = time.perf_counter()
    solve_minor_free(g, v)
    sp_s = time.perf_counter() - t
    g = Graph.grid(5, 5)
    v = random_idm_valuation(g, 1009)
    t = time.perf_counter()
    sol = solve_separator(g, v)
    grid_s = time.perf_counter() - t
    ok = tree_s < 2 and sp_s < 30 and grid_s < 60 and structure_value(v, sol.structure) == sol.value
    acceptance("scaling smoke tests", ok,
               f"tree n=10^4 {tree_s:.2f}s (< 2s), series-parallel n=2000 {sp_s:.2f}s (< 30s), "
               f"5x5 grid {grid_s:.2f}s (< 60s)")
    assert ok

import random
from itertools import combinations
import time

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gcsg.enumeration import enumerate_connected_structures, solve_bruteforce
from gcsg.errors import BudgetExceededError, DisconnectedGraphError
from gcsg.generators import random_outerplanar
from gcsg.graph import Graph, find_separator, is_connected_structure
from gcsg.harness import random_idm_valuation
from gcsg.separator import (
    BoundaryEnumeration,
    SolverConfig,
    SolverStats,
    boundary_sets,
    iter_boundary_pairs,
    side_graphs,
    solve_separator,
    split_structure,
)
from gcsg.valuation import BoundaryConstraint, EdgeSumValuation, InducedValuation, check_idm, structure_value

from helpers import all_shapes, connected_graphs, constraints

P3 = Graph.path(3)
P3_VAL = EdgeSumValuation(P3, {(0, 1): 1, (1, 2): -1})


def test_path_examples():
    assert solve_separator(P3, P3_VAL, BoundaryConstraint.empty()) == (({0, 1}, {2}), 1)
    assert solve_separator(P3, P3_VAL, BoundaryConstraint([{0, 2}])) == (({0, 1, 2},), 0)
    sol = solve_separator(P3, P3_VAL, BoundaryConstraint([{0}, {1}]))
    assert sol.value == 0
    assert sol.structure in ((frozenset({0}), frozenset({1, 2})), (frozenset({0}), frozenset({1}), frozenset({2})))


def test_infeasible_constraint():
    assert solve_separator(P3, P3_VAL, BoundaryConstraint([{0, 2}, {1}])) is None
    g = Graph.grid(3, 4)
    v = random_idm_valuation(g, 0)
    # corner 0 is cut off once both of its neighbours are pinned elsewhere
    con = BoundaryConstraint([{0, 11}, {1}, {4}])
    assert solve_bruteforce(g, v, con) is None
    assert solve_separator(g, v, con, SolverConfig(base_threshold=3)) is None


def test_config_validation():
    with pytest.raises(ValueError):
        SolverConfig(base_threshold=1)
    with pytest.raises(ValueError):
        SolverConfig(balance=1.0)
    with pytest.raises(ValueError):
        SolverConfig(boundary_enumeration="noncrossing")
    assert SolverConfig(boundary_enumeration="all").boundary_enumeration is BoundaryEnumeration.ALL_PARTITIONS


def test_rejects_disconnected_graph():
    g = Graph(4, [(0, 1), (2, 3)])
    with pytest.raises(DisconnectedGraphError):
        solve_separator(g, EdgeSumValuation(g, {(0, 1): 1, (2, 3): 1}))


def _check(g, v, con, config):
    sol = solve_separator(g, v, con, config)
    ref = solve_bruteforce(g, v, con)
    if ref is None:
        assert sol is None
        return None
    assert sol.value == ref.value
    assert is_connected_structure(g, sol.structure)
    assert structure_value(v, sol.structure) == sol.value
    if con is not None:
        assert con.is_satisfied_by(sol.structure)
    return sol


@settings(max_examples=80, deadline=None)
@given(connected_graphs(max_n=8), st.integers(0, 10 ** 6), st.integers(2, 5), st.data())
def test_matches_bruteforce_edge_sum(g, seed, threshold, data):
    v = random_idm_valuation(g, seed)
    con = BoundaryConstraint(data.draw(constraints(g.n)))
    _check(g, v, con, SolverConfig(base_threshold=threshold))


@settings(max_examples=40, deadline=None)
@given(connected_graphs(max_n=7), st.integers(0, 10 ** 6), st.data())
def test_matches_bruteforce_table_valuation(g, seed, data):
    # a table valuation takes the general path through induced valuations
    v = random_idm_valuation(g, seed, node_constants=True)
    con = BoundaryConstraint(data.draw(constraints(g.n)))
    _check(g, v, con, SolverConfig(base_threshold=3))


@settings(max_examples=40, deadline=None)
@given(connected_graphs(min_n=4, max_n=7), st.integers(0, 10 ** 6), st.data())
def test_naive_pairs_agree_with_strategy(g, seed, data):
    v = random_idm_valuation(g, seed)
    con = BoundaryConstraint(data.draw(constraints(g.n, max_domain=3)))
    fast = solve_separator(g, v, con, SolverConfig(base_threshold=3))
    naive = solve_separator(g, v, con, SolverConfig(base_threshold=3, naive_pairs=True))
    assert (fast is None) == (naive is None)
    if fast is not None:
        assert fast.value == naive.value


def test_random_graphs_up_to_ten_nodes():
    rng = random.Random(4)
    from gcsg.generators import random_connected_graph
    for _ in range(15):
        n = rng.randint(9, 10)
        g = random_connected_graph(n, rng.choice((0.1, 0.25)), rng)
        v = random_idm_valuation(g, rng)
        _check(g, v, None, SolverConfig())


def test_noncrossing_equals_all_partitions_on_outerplanar():
    for seed in range(25):
        n = 6 + seed % 5
        g = random_outerplanar(n, 2 + seed % 4, seed)
        v = random_idm_valuation(g, seed)
        order = {u: u for u in range(n)}
        full = solve_separator(g, v, None, SolverConfig(base_threshold=3))
        nc_stats = SolverStats()
        nc = solve_separator(g, v, None, SolverConfig(base_threshold=3, boundary_enumeration="noncrossing",
                                                      boundary_order=order), nc_stats)
        assert nc.value == full.value
        assert structure_value(v, nc.structure) == nc.value


def test_optimal_pair_is_enumerated():
    rng = random.Random(9)
    for g in all_shapes(6, 4):
        try:
            dec = find_separator(g, proper=True)
        except ValueError:
            continue
        v = random_idm_valuation(g, rng)
        sol = solve_bruteforce(g, v)
        pieces_a, pieces_b = split_structure(g, dec, sol.structure)
        ka, kb = boundary_sets(dec)
        trace_a = tuple(sorted((p & ka for p in pieces_a if p & ka), key=min))
        trace_b = tuple(sorted((p & kb for p in pieces_b if p & kb), key=min))
        assert (trace_a, trace_b) in set(iter_boundary_pairs(g, dec))


def test_pieces_cover_each_side():
    g = Graph.grid(3, 3)
    dec = find_separator(g, proper=True)
    ga, ids_a, gb, ids_b = side_graphs(g, dec)
    assert set(ids_a) == dec.part_a and set(ids_b) == dec.part_b
    # every edge lands on exactly one side
    assert ga.e + gb.e == g.e
    for s in enumerate_connected_structures(g):
        a, b = split_structure(g, dec, s)
        assert set().union(*a) == dec.part_a
        assert set().union(*b) == dec.part_b


def _pair_identity_holds(g, v, dec, structure):
    pieces_a, pieces_b = split_structure(g, dec, structure)
    vd = InducedValuation(v, [p for p in pieces_a if p & dec.separator], domain=dec.part_b)
    return sum(v.evaluate(b) for b in structure) == (
        sum(v.evaluate(p) for p in pieces_a) + sum(vd.evaluate(p) for p in pieces_b))


def test_combination_identity_on_small_graphs():
    rng = random.Random(21)
    for g in all_shapes(6, 3):
        try:
            dec = find_separator(g, proper=True)
        except ValueError:
            continue
        v = random_idm_valuation(g, rng, node_constants=True)
        for s in enumerate_connected_structures(g):
            assert _pair_identity_holds(g, v, dec, s)


def _quotient_graph(g, part_b, blocks):
    # far-side nodes are adjacent when the near-side blocks holding them touch
    ids = sorted(part_b)
    owner = {u: b for b in blocks for u in b}
    closure = [owner.get(u, frozenset({u})) for u in ids]
    edges = []
    for i, j in combinations(range(len(ids)), 2):
        ci, cj = closure[i], closure[j]
        if ci & cj or any(g.has_edge(x, y) for x in ci for y in cj):
            edges.append((i, j))
    return Graph(len(ids), edges), ids


def test_induced_valuation_is_idm_on_quotient():
    rng = random.Random(5)
    for g in all_shapes(6, 4)[::3]:
        try:
            dec = find_separator(g, proper=True)
        except ValueError:
            continue
        v = random_idm_valuation(g, rng)
        for s in list(enumerate_connected_structures(g))[::7]:
            pieces_a, _ = split_structure(g, dec, s)
            touching = [p for p in pieces_a if p & dec.separator]
            vd = InducedValuation(v, touching, domain=dec.part_b)
            gq, ids = _quotient_graph(g, dec.part_b, touching)

            class Local:
                def evaluate(self, c, ids=ids, vd=vd):
                    return vd.evaluate(frozenset(ids[i] for i in c))

            assert check_idm(Local(), gq)


def test_budget_caps():
    g = Graph.grid(3, 4)
    v = random_idm_valuation(g, 0)
    with pytest.raises(BudgetExceededError):
        solve_separator(g, v, None, SolverConfig(base_threshold=3, max_subproblems=3))
    with pytest.raises(BudgetExceededError):
        solve_separator(Graph.grid(5, 5), random_idm_valuation(Graph.grid(5, 5), 0), None,
                        SolverConfig(time_limit=0.0))


def test_memo_does_not_change_answers():
    g = Graph.grid(3, 4)
    for seed in range(5):
        v = random_idm_valuation(g, seed)
        a = solve_separator(g, v, None, SolverConfig(base_threshold=3))
        b = solve_separator(g, v, None, SolverConfig(base_threshold=3, memoize=False))
        assert a == b


def test_grid_5x5_is_fast():
    g = Graph.grid(5, 5)
    v = random_idm_valuation(g, 0)
    stats = SolverStats()
    t = time.perf_counter()
    sol = solve_separator(g, v, None, SolverConfig(), stats)
    assert time.perf_counter() - t < 60
    assert is_connected_structure(g, sol.structure)
    assert structure_value(v, sol.structure) == sol.value
    assert stats.separators and stats.subproblems > 1

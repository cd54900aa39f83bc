import pytest

from gcsg.errors import CapExceededError
from gcsg.graph import Graph
from gcsg.harness import BELL, filter_oracle, has_minor, random_idm_valuation, sat_bruteforce, set_partitions
from gcsg.sat import Cnf3, satisfies
from gcsg.valuation import EdgeSumValuation, TableValuation, check_idm


def test_bell_numbers():
    assert BELL == (1, 1, 2, 5, 15, 52)
    assert len(list(set_partitions("abcdef"))) == 203


def test_filter_oracle_examples():
    assert len(filter_oracle(Graph.path(3))) == 4
    assert len(filter_oracle(Graph.complete(3))) == 5
    assert len(filter_oracle(Graph.path(4))) == 8
    with pytest.raises(CapExceededError):
        filter_oracle(Graph.path(9))


def test_sat_bruteforce():
    ok, w = sat_bruteforce(Cnf3(2, [(1, 1, 2), (-1, -1, -1)]))
    assert ok and w == {1: False, 2: True} and satisfies(Cnf3(2, [(1, 1, 2), (-1, -1, -1)]), w)
    assert sat_bruteforce(Cnf3(1, [(1, 1, 1), (-1, -1, -1)])) == (False, None)


def test_random_valuation_shapes():
    g = Graph.cycle(5)
    a = random_idm_valuation(g, 3)
    b = random_idm_valuation(g, 3)
    assert isinstance(a, EdgeSumValuation) and a.weights == b.weights
    assert all(-5 <= x <= 5 for x in a.weights.values())
    zero = random_idm_valuation(g, 3, low=0, high=0)
    assert set(zero.weights.values()) == {0}
    t = random_idm_valuation(g, 3, node_constants=True)
    assert isinstance(t, TableValuation) and check_idm(t, g)
    with pytest.raises(CapExceededError):
        random_idm_valuation(Graph.path(11), 0, node_constants=True)


def test_has_minor():
    k4 = Graph.complete(4)
    assert has_minor(Graph.complete(5), k4)
    assert not has_minor(Graph.cycle(6), k4)
    # a wheel contracts to K4
    wheel = Graph(6, [(0, i) for i in range(1, 6)] + [(i, i % 5 + 1) for i in range(1, 6)])
    assert has_minor(wheel, k4)

import pytest
from hypothesis import given, settings

from gcsg.errors import GraphFormatError
from gcsg.graph import Graph
from gcsg.io import (
    format_dimacs,
    format_graph,
    format_mapping,
    format_structure,
    format_table,
    parse_dimacs,
    parse_graph,
    parse_mapping,
    parse_structure,
    parse_table,
)
from gcsg.valuation import TableValuation

from helpers import weighted_graphs


def test_graph_examples():
    g, w = parse_graph("3 2\n0 1 4\n1 2 -1\n")
    assert g == Graph.path(3) and w == {(0, 1): 4, (1, 2): -1}
    g, w = parse_graph("# comment\n2 1\n\n0 1\n")
    assert g.n == 2 and w is None


@pytest.mark.parametrize("text", [
    "",
    "3\n0 1\n",
    "3 2\n0 1\n",
    "3 1\n1 0\n",
    "3 1\n0 3\n",
    "3 2\n0 1 2\n1 2\n",
    "3 1\n0 x\n",
    "2 1\n0 1 2 3\n",
])
def test_graph_format_errors(text):
    with pytest.raises(GraphFormatError):
        parse_graph(text)


def test_graph_error_has_line_number():
    with pytest.raises(GraphFormatError, match="line 3"):
        parse_graph("3 2\n0 1\n2 1\n")


@settings(max_examples=50, deadline=None)
@given(weighted_graphs(max_n=7))
def test_graph_round_trip(gw):
    g, w = gw
    back, bw = parse_graph(format_graph(g, w))
    # with no edge lines there is nothing to say about weights
    assert back == g and (bw or {}) == w
    assert parse_graph(format_graph(g))[0] == g


def test_structure_round_trip():
    s = (frozenset({2, 0}), frozenset({1}))
    text = format_structure(s)
    assert text == "0 2\n1\n"
    assert set(parse_structure(text)) == set(s)
    with pytest.raises(GraphFormatError):
        parse_structure("0 0\n")


def test_table_round_trip():
    t = TableValuation({(0,): 1, (0, 1): 5, (2, 1): -3})
    back = parse_table(format_table(t))
    assert back.table == t.table
    for bad in ("3\n", "0 0 2\n", "0 1\n0 1\n"):
        with pytest.raises(GraphFormatError):
            parse_table(bad)


def test_dimacs():
    text = "c hello\np cnf 3 2\n1 -2 3 0\n-1\n2 3 0\n"
    nv, clauses = parse_dimacs(text)
    assert nv == 3 and clauses == [(1, -2, 3), (-1, 2, 3)]
    assert parse_dimacs(format_dimacs(nv, clauses)) == (nv, clauses)
    for bad in ("1 2 3 0\n", "p cnf 2 1\n1 2 3 0\n", "p cnf 3 1\n1 2 3\n", "p cnf 3 2\n1 2 3 0\n", "p sat 3 1\n"):
        with pytest.raises(GraphFormatError):
            parse_dimacs(bad)


def test_mapping_round_trip():
    m = {(0, 0): 1, (0, 1): 2, (1, 2): 6}
    assert parse_mapping(format_mapping(m)) == m
    with pytest.raises(GraphFormatError):
        parse_mapping("0 1\n")

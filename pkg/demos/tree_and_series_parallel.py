"""Coalitions on sparse networks.

A tree is solved edge by edge, a series-parallel graph by folding cycles into
virtual edges. Both answers are checked against exhaustive search.
"""
from gcsg import EdgeSumValuation, Graph, solve_bruteforce, solve_minor_free, solve_tree
from gcsg.generators import random_sp_graph
from gcsg.harness import random_idm_valuation

# a star: the centre likes two leaves and dislikes the third
star = Graph(4, [(0, 1), (0, 2), (0, 3)])
v = EdgeSumValuation(star, {(0, 1): 2, (0, 2): -3, (0, 3): 5})
sol = solve_tree(star, v)
print("star:", [sorted(b) for b in sol.structure], "value", sol.value)

# two triangles sharing node 2, one friendly and one hostile
bowtie = Graph(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])
w = {(0, 1): 1, (0, 2): 1, (1, 2): 1, (2, 3): -1, (2, 4): -1, (3, 4): -1}
sol = solve_minor_free(bowtie, EdgeSumValuation(bowtie, w))
print("bowtie:", [sorted(b) for b in sol.structure], "value", sol.value)

for seed in range(5):
    g = random_sp_graph(9, seed)
    v = random_idm_valuation(g, seed)
    fast, slow = solve_minor_free(g, v).value, solve_bruteforce(g, v).value
    print(f"seed {seed}: n={g.n} e={g.e} folded={fast} exhaustive={slow}")
    assert fast == slow

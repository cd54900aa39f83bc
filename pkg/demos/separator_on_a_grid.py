"""Divide and conquer over small separators on a 5x5 grid.

The solver splits the grid, enumerates how coalitions can cross the cut and
recurses on both halves. The statistics show how much work the cache saves.
"""
import time

from gcsg import Graph, SolverConfig, SolverStats, solve_separator
from gcsg.graph import find_separator
from gcsg.harness import random_idm_valuation

grid = Graph.grid(5, 5)
dec = find_separator(grid, proper=True)
print("separator", sorted(dec.separator), "sides", len(dec.part_a), len(dec.part_b))

# without the cache even 5x5 takes minutes, so compare on 4x4
small = Graph.grid(4, 4)
w = random_idm_valuation(small, 7)
for memo in (True, False):
    stats = SolverStats()
    t = time.perf_counter()
    sol = solve_separator(small, w, None, SolverConfig(memoize=memo), stats)
    print(f"4x4 memoize={memo}: value {sol.value} in {time.perf_counter() - t:.2f}s, "
          f"{stats.subproblems} subproblems, {stats.memo_hits} cache hits")

v = random_idm_valuation(grid, 7)
stats = SolverStats()
t = time.perf_counter()
sol = solve_separator(grid, v, None, SolverConfig(), stats)
print(f"5x5: value {sol.value} in {time.perf_counter() - t:.2f}s, {stats.subproblems} subproblems, "
      f"depth {stats.max_depth}")

for row in range(5):
    label = {u: i for i, b in enumerate(sol.structure) for u in b}
    print(" ".join(f"{label[row * 5 + c]:2d}" for c in range(5)))

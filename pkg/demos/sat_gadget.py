"""3-SAT as coalition formation.

Each literal occurrence becomes a node tied to a hub. Joining the hub earns 1,
but occurrences of one clause and complementary literals repel strongly, so
the best structure is worth m exactly when the formula is satisfiable.
"""
from gcsg import solve_bruteforce
from gcsg.harness import sat_bruteforce
from gcsg.sat import Cnf3, decode_assignment, reduce_3sat

formulas = {
    "satisfiable": Cnf3(3, [(1, 2, 3), (-1, -2, 3), (1, -3, -3)]),
    "contradiction": Cnf3(1, [(1, 1, 1), (-1, -1, -1)]),
}
for name, cnf in formulas.items():
    art = reduce_3sat(cnf)
    sol = solve_bruteforce(art.graph, art.weights, cap=art.graph.n)
    sat, _ = sat_bruteforce(cnf)
    print(f"{name}: m={cnf.m} nodes={art.graph.n} optimum={sol.value} satisfiable={sat}")
    hub = next(b for b in sol.structure if art.hub in b)
    print("  hub coalition literals:", sorted(art.literal_at(u) for u in hub if u != art.hub))
    if sol.value == cnf.m:
        print("  assignment:", decode_assignment(art, sol.structure))

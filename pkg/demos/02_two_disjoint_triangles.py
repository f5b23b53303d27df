# Graphs without two disjoint triangles.
#
# A clique vertex joined to a triangle-free extremal graph cannot host two
# disjoint triangles, since every triangle must use that vertex. The search
# below shows when this join is the unique edge maximiser and where small
# orders behave differently.
#
# Run: python demos/02_two_disjoint_triangles.py

# %%
from spectrex import Graph, ProblemSpec, complete_graph, join, verify_edge_theorem, verify_spectral_theorem
from spectrex.canon import canonical_graph6

spec = ProblemSpec(complete_graph(3), k=2, a=0)

# %% Edge counts against the join construction.
rep = verify_edge_theorem(range(5, 10), spec)
for row in rep.rows:
    print(f"n={row['n']}: ex={row['ex']} join={row['construction_edges']} {row['verdict']} "
          f"({len(row['extremal'])} extremal classes)")
print("join is the unique maximiser from n =", rep.stable_from)

# %% At n=6 the winner is a triangle joined to three isolated vertices.
print("n=6 winner is K3 v 3K1:", rep.row(6)["extremal"] == [canonical_graph6(join(complete_graph(3), Graph(3)))])

# %% Spectral radius: the maximiser need not be edge-extremal at small n.
srep = verify_spectral_theorem(range(6, 10), spec)
for row in srep.rows:
    print(f"n={row['n']}: rho={row['rho_max']:.6f} gap={row['gap']:.3e} inside edge catalog: {row['contained']}")

# Triangle-free graphs: how many there are and which ones have the most edges.
#
# Run: python demos/01_triangle_free.py

# %%
from spectrex import ProblemSpec, complete_graph, edge_extremal, enumerate_family_free, turan_graph
from spectrex.canon import canonical_graph6

triangle_free = ProblemSpec(complete_graph(3))

# %% Count isomorphism classes of triangle-free graphs by order.
for n in range(1, 9):
    count = sum(1 for _ in enumerate_family_free(n, triangle_free))
    print(f"n={n}: {count} triangle-free classes")

# %% The densest one is always the balanced complete bipartite graph.
for n in range(3, 10):
    cat = edge_extremal(n, triangle_free)
    is_turan = cat.graphs == [canonical_graph6(turan_graph(n, 2))]
    print(f"n={n}: ex={cat.value} (n^2/4 rounded down: {n * n // 4}), unique T(n,2): {is_turan}, "
          f"{cat.stats.nodes} nodes visited")

# Most edges in a graph with bounded matching number and bounded degree:
# closed form against exhaustive search.
#
# Run: python demos/04_matching_degree_bound.py

# %%
from spectrex import brute_force_f, chvatal_hanson
from spectrex.graph6 import graph6_encode

# %%
print(" nu  Delta  formula  search  witness")
for nu in range(1, 5):
    for delta in range(1, 5):
        if nu * (delta + 1) > 12:
            continue
        value, witness = brute_force_f(nu, delta)
        print(f"{nu:>3} {delta:>6} {chvatal_hanson(nu, delta):>8} {value:>7}  {graph6_encode(witness)}")

# Clique joined with a complete multipartite graph: the radius from a small
# quotient matrix and a closed form for the Perron vector entries.
#
# Run: python demos/03_quotient_perron.py

# %%
import numpy as np

from spectrex import QuotientSpec, perron_formula_check, quotient_rho, spectral_radius

# %% K1 v K(2,2): the quotient gives 1 + sqrt(5).
q = QuotientSpec((2, 2), clique=1)
rho, parts, residual = quotient_rho(q)
print(f"rho = {rho:.12f}, 1 + sqrt 5 = {1 + np.sqrt(5):.12f}, residual {residual:.1e}")
print("part entries (clique entry is 1):", parts)

# %% The part entries equal (rho + 1) / (rho + n_i).
for sizes, clique in [((3, 3, 2), 1), ((10, 9, 9, 9), 2), ((40, 1), 3)]:
    q = QuotientSpec(sizes, clique)
    rho = quotient_rho(q)[0]
    full = spectral_radius(q.expand())
    print(f"sizes={sizes} clique={clique}: quotient {rho:.10f}, expanded {full.rho:.10f}, "
          f"formula deviation {perron_formula_check(q):.1e}")

"""
How far apart are density and degree?
=====================================

The Bhattacharyya coefficient between a graph's density distribution
and its degree distribution is 1 when they coincide and 0 when their
supports are disjoint. Classic random models sit at the low end.
"""

import math

from netdens import (
    beta_rho_delta,
    decompose,
    density_distribution,
    generate_gnp,
    generate_pa,
    generate_regular,
    generate_sw,
)

# %%
# Regular graphs: every node has degree d but density rank d/2 or so,
# so the two distributions never overlap.
for d in (3, 4, 6):
    g = generate_regular(500, d, seed=d)
    print(f"{d}-regular: beta = {beta_rho_delta(g)}")

# %%
# A ring lattice behaves the same way until rewiring spreads degrees.
for p in (0.0, 0.1, 1.0):
    g = generate_sw(2000, 3, p, seed=1)
    print(f"small world p={p}: beta = {beta_rho_delta(g):.3f}")

# %%
# Preferential attachment puts almost every node in ring c.
g = generate_pa(20000, 5, 3, seed=0)
d = decompose(g)
rho = density_distribution(d)
print(f"PA c=3: rho_3 = {rho[3]:.4f}, beta = {beta_rho_delta(g, d):.3f}, "
      f"sqrt(2/c^3) = {math.sqrt(2 / 27):.3f}")

# %%
# Sparse G(n, p): the top rank is floor(c/2) + 1.
n = 10000
for c in (5, 10):
    g = generate_gnp(n, c / (n - 1), seed=2)
    d = decompose(g)
    print(f"G(n,p) c={c}: top rank {d.k}, beta = {beta_rho_delta(g, d):.3f}")

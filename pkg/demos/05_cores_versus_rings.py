"""
k-cores against density rings
=============================

Core numbers come from peeling in linear time and nest like rings do,
but they only pin down region density to within a factor of two.
"""

from collections import Counter

from netdens import (
    decompose,
    generate_gnp,
    generate_regular,
    kcore_decompose,
    kcore_region_density,
)

# %%
# On a 4-regular graph the whole graph is the 4-core, with density 2:
# the bottom of the [i/2, i] window.
g = generate_regular(200, 4, seed=0)
c = kcore_decompose(g)
print("4-regular: core", c.p, "region density", kcore_region_density(g, c, 4))
print("           rank", decompose(g).k)

# %%
# On G(n, p) compare shell sizes with ring sizes and the density of
# each core region.
g = generate_gnp(2000, 8 / 1999, seed=1)
c = kcore_decompose(g)
d = decompose(g)
print("core shell sizes:", sorted(Counter(c.core).items()))
print("ring sizes:      ", list(enumerate(d.ring_sizes)))
for i in sorted(set(c.core) - {0}):
    dens = kcore_region_density(g, c, i)
    print(f"core {i}: region density {float(dens):.3f} in [{i / 2}, {i}]")

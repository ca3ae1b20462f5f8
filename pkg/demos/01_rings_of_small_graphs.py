"""
Density rings of small graphs
=============================

A star and a clique can give a node the same degree while putting it
in very different rings. Here we orient a few small graphs
egalitarianly and read the rings off the orientation.
"""

from netdens import Graph, decompose, egalitarian_orient, verify_decomposition

# %%
# A star with seven leaves. The centre can push every edge outward, so
# nobody needs indegree above 1 and all eight nodes land in ring 1.
star = Graph(8, [(0, i) for i in range(1, 8)])
o = egalitarian_orient(star)
print("star indegrees:", o.indegree)
print("star ranks:    ", decompose(star).rank)

# %%
# In K_8 the same degree-7 node cannot shirk: every node carries 3 or
# 4 edges and the whole clique forms ring 4 (density 28/8 = 3.5).
k8 = Graph(8, [(u, v) for v in range(8) for u in range(v)])
d = decompose(k8)
print("K_8 indegrees:", d.witness.indegree)
print("K_8 ring sizes:", d.ring_sizes)

# %%
# Glue a pendant onto K_4. The clique is ring 2, the pendant ring 1.
# The verification report gives the exact density of each ring's
# region (denser rings merged, sparser ones removed).
g = Graph(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4)])
d = decompose(g)
rep = verify_decomposition(g, d)
print("ranks:", d.rank)
for i, dens in sorted(rep.ring_density.items()):
    print(f"ring {i}: region density {dens}")
print("all checks passed:", rep.passed)

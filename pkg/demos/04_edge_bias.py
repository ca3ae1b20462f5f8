"""
Where do the edges of a ring go?
================================

For each ring the edge-bias report compares the share of its edges
that land in every denser ring with the share expected from counting
candidate pairs. Ring-internal edges are the interesting column.
"""

from netdens import decompose, edge_bias_report, generate_hsw, generate_rdd

dist = [0, 0.3, 0.3, 0.4]

# %%
# RDD nodes pick from their whole ring, so a same-ring pair can be
# chosen from either end and ring-internal edges run above the pair
# count. Cross-ring offsets compensate.
g, _ = generate_rdd(dist, 1000, seed=0)
print(edge_bias_report(g, decompose(g)).summary_csv())

# %%
# HSW with little rewiring keeps most edges inside rings.
g, _ = generate_hsw(dist, 1000, 0.1, seed=0)
rep = edge_bias_report(g, decompose(g))
print(rep.to_csv())
print(rep.summary_csv())

"""Distributions and similarity measures over graphs and decompositions."""

from __future__ import annotations

import math
import random
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .decomposition import DensityDecomposition, decompose
from .errors import ContractError, DegenerateError, UndefinedMetricError
from .graph import Graph

NORM_TOL = 1e-12


class Distribution:
    """Nonnegative vector indexed from 0 (by ring or by degree)."""

    __slots__ = ("values", "normalized")

    def __init__(self, values, normalized: bool | None = None):
        arr = np.asarray(values, dtype=float).ravel()
        if arr.size and (arr < 0).any():
            raise ContractError("distribution entries must be nonnegative")
        self.values = arr
        if normalized is None:
            normalized = arr.size > 0 and abs(arr.sum() - 1.0) <= NORM_TOL
        elif normalized and abs(arr.sum() - 1.0) > NORM_TOL:
            raise ContractError(f"values sum to {arr.sum()!r}, not 1")
        self.normalized = bool(normalized)

    def normalize(self) -> "Distribution":
        total = self.values.sum()
        if total <= 0:
            raise ContractError("cannot normalize an all-zero distribution")
        return Distribution(self.values / total, normalized=True)

    def padded(self, length: int) -> np.ndarray:
        if length <= len(self.values):
            return self.values
        return np.concatenate([self.values, np.zeros(length - len(self.values))])

    def tolist(self) -> list[float]:
        return self.values.tolist()

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Distribution):
            return NotImplemented
        size = max(len(self), len(other))
        return bool(np.array_equal(self.padded(size), other.padded(size)))

    def __repr__(self) -> str:
        return f"Distribution({self.values.tolist()}, normalized={self.normalized})"


def _counts(counts, normalize: bool) -> Distribution:
    total = sum(counts)
    if normalize:
        if total == 0:
            raise ContractError("cannot normalize an empty distribution")
        # fsum keeps the normalised sum within rounding of 1
        vals = [c / total for c in counts]
        return Distribution(vals, normalized=abs(math.fsum(vals) - 1) <= NORM_TOL)
    return Distribution(counts, normalized=False)


def density_distribution(d: DensityDecomposition, normalize: bool = True) -> Distribution:
    return _counts(list(d.ring_sizes), normalize)


def degree_distribution(graph: Graph, normalize: bool = True) -> Distribution:
    degs = graph.degrees()
    counts = [0] * (max(degs, default=0) + 1)
    for x in degs:
        counts[x] += 1
    return _counts(counts, normalize)


def bhattacharyya(p: Distribution, q: Distribution) -> float:
    """Bhattacharyya coefficient ``sum_i sqrt(p_i q_i)`` of two normalized
    distributions; the shorter one is zero-padded."""
    if not (p.normalized and q.normalized):
        raise ContractError("bhattacharyya needs normalized distributions")
    size = max(len(p), len(q))
    b = float(np.sqrt(p.padded(size) * q.padded(size)).sum())
    return min(b, 1.0)


def beta_rho_delta(graph: Graph, d: DensityDecomposition | None = None) -> float:
    if d is None:
        d = decompose(graph)
    return bhattacharyya(density_distribution(d), degree_distribution(graph))


def clustering_coefficient(graph: Graph, count_low_degree: bool = True) -> float:
    """Average local clustering coefficient.

    Nodes of degree below 2 count as 0 by default; with
    ``count_low_degree=False`` they are left out of the average.
    """
    if graph.n == 0:
        raise UndefinedMetricError("clustering coefficient of an empty graph")
    nbr = [set(a) for a in graph.adj]
    tri = [0] * graph.n
    for u, v in graph.edges:
        su, sv = nbr[u], nbr[v]
        if len(su) > len(sv):
            su, sv = sv, su
        for w in su:
            if w in sv:
                tri[u] += 1
                tri[v] += 1
    # each triangle at v was counted once per incident edge in it: twice
    total = 0.0
    count = 0
    for v in range(graph.n):
        dv = len(nbr[v])
        if dv < 2:
            if count_low_degree:
                count += 1
            continue
        total += (tri[v] / 2) / (dv * (dv - 1) / 2)
        count += 1
    if count == 0:
        raise UndefinedMetricError("no node has degree 2 or more")
    return total / count


def _bfs_totals(csr, sources) -> tuple[int, int]:
    from scipy.sparse.csgraph import shortest_path

    dist = shortest_path(csr, method="D", unweighted=True, indices=sources)
    finite = np.isfinite(dist)
    pairs = int(finite.sum()) - len(sources)
    hops = int(dist[finite].sum())
    return hops, pairs


def average_path_length(graph: Graph, mode: str = "exact", sources: int | None = None,
                        seed=None, threads: int = 1, chunk: int = 256) -> float:
    """Mean hop distance over ordered reachable pairs ``(u, v)``, ``u != v``.

    Parameters
    ----------
    graph : Graph
    mode : {"exact", "sampled"}
        ``"exact"`` runs a BFS from every node; ``"sampled"`` from
        `sources` nodes drawn uniformly without replacement using `seed`.
    threads : int
        Worker threads for the BFS batches. Totals are integer sums, so
        the result does not depend on this.

    Raises
    ------
    UndefinedMetricError
        If no ordered pair of distinct nodes is connected.
    """
    if mode == "exact":
        srcs = list(range(graph.n))
    elif mode == "sampled":
        if sources is None or sources < 1:
            raise ContractError("sampled mode needs a positive source count")
        k = min(sources, graph.n)
        srcs = sorted(random.Random(seed).sample(range(graph.n), k))
    else:
        raise ContractError(f"unknown mode {mode!r}")
    if graph.m == 0:
        raise UndefinedMetricError("no connected pair of nodes")
    csr = graph.to_csr()
    batches = [srcs[i:i + chunk] for i in range(0, len(srcs), chunk)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as ex:
            parts = list(ex.map(lambda b: _bfs_totals(csr, b), batches))
    else:
        parts = [_bfs_totals(csr, b) for b in batches]
    hops = sum(h for h, _ in parts)
    pairs = sum(p for _, p in parts)
    if pairs == 0:
        raise UndefinedMetricError("no connected pair among the sampled sources")
    return hops / pairs


def expected_edge_fraction(ring_sizes: Sequence[int], i: int, j: int) -> float:
    """Expected share of ring-``i`` edges landing in ring ``j`` under
    uniform neighbour choice (``j >= i``)."""
    if j < i:
        raise ContractError("expected_edge_fraction needs j >= i")
    if not ring_sizes[i]:
        raise ContractError(f"ring {i} is empty")
    same = 0.5 * (ring_sizes[i] - 1)
    denom = same + sum(ring_sizes[i + 1:])
    if denom == 0:
        raise DegenerateError(f"ring {i} is a singleton with nothing above it")
    return (same if j == i else ring_sizes[j]) / denom


@dataclass
class EdgeBiasReport:
    rows: list[tuple[int, int, float, float, float]] = field(default_factory=list)
    summary: dict[int, tuple[float, float, float]] = field(default_factory=dict)

    def to_csv(self) -> str:
        lines = ["i,j,actual,expected,diff"]
        lines += [f"{i},{j},{a!r},{e!r},{d!r}" for i, j, a, e, d in self.rows]
        return "\n".join(lines) + "\n"

    def summary_csv(self) -> str:
        lines = ["offset,min,avg,max"]
        lines += [f"{o},{lo!r},{av!r},{hi!r}" for o, (lo, av, hi) in sorted(self.summary.items())]
        return "\n".join(lines) + "\n"


def edge_bias_report(graph: Graph, d: DensityDecomposition) -> EdgeBiasReport:
    """Actual versus expected fraction of edges between rings.

    For ring ``i`` the actual fraction at ``(i, j)`` is the number of
    edges with endpoint ranks ``{i, j}`` over the number of edges whose
    lower-ranked endpoint lies in ring ``i``. Rings with no such edges,
    and pairs whose expectation is degenerate, are skipped.
    """
    rank = d.rank
    sizes = d.ring_sizes
    pair = defaultdict(int)
    per_low = defaultdict(int)
    for u, v in graph.edges:
        a, b = rank[u], rank[v]
        if a > b:
            a, b = b, a
        pair[a, b] += 1
        per_low[a] += 1
    rep = EdgeBiasReport()
    groups = defaultdict(list)
    for i in range(len(sizes)):
        if not sizes[i] or not per_low[i]:
            continue
        for j in range(i, len(sizes)):
            if not sizes[j]:
                continue
            try:
                exp = expected_edge_fraction(sizes, i, j)
            except DegenerateError:
                continue
            act = pair[i, j] / per_low[i]
            rep.rows.append((i, j, act, exp, act - exp))
            groups[j - i].append(act - exp)
    for off, diffs in groups.items():
        rep.summary[off] = (min(diffs), sum(diffs) / len(diffs), max(diffs))
    return rep


def densest_subgraph_bruteforce(graph: Graph, max_n: int = 16) -> tuple[frozenset[int], Fraction]:
    """Exhaustive densest induced subgraph.

    Scans all ``2**n - 1`` nonempty node subsets. Ties go to the
    lexicographically smallest sorted node tuple.
    """
    n = graph.n
    if n > max_n:
        raise ContractError(f"brute force limited to {max_n} nodes, got {n}")
    if n == 0:
        raise ContractError("graph has no nodes")
    masks = np.arange(1, 1 << n, dtype=np.int64)
    bits = ((masks[:, None] >> np.arange(n)) & 1).astype(np.int64)
    size = bits.sum(axis=1)
    edges = np.zeros(len(masks), dtype=np.int64)
    for u, v in graph.edges:
        edges += bits[:, u] & bits[:, v]
    best_e, best_s = int(edges[0]), int(size[0])
    for e, s in zip(edges.tolist(), size.tolist()):
        if e * best_s > best_e * s:
            best_e, best_s = e, s
    tied = np.nonzero(edges * best_s == best_e * size)[0]
    subsets = [tuple(np.nonzero(bits[t])[0].tolist()) for t in tied]
    return frozenset(min(subsets)), Fraction(best_e, best_s)


def induced_density(graph: Graph, nodes) -> Fraction:
    nodes = list(nodes)
    return Fraction(graph.induced_edge_count(nodes), len(nodes))

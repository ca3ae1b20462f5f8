"""Density decomposition via egalitarian orientations, plus k-cores.

An orientation is egalitarian when no directed path leads from a node
of indegree ``x`` to a node of indegree ``x + 2`` or more. Reversing
such paths until none remain converges; the rings are then read off
the final orientation top-down by backward reachability.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ContractError, EmptyRegionError
from .graph import Graph, Orientation, identify_and_delete


@dataclass(frozen=True)
class DensityDecomposition:
    rank: tuple[int, ...]
    ring_sizes: tuple[int, ...]
    k: int
    witness: Orientation | None = field(default=None, compare=False, repr=False)

    @property
    def n(self) -> int:
        return len(self.rank)

    def ring(self, i: int) -> list[int]:
        return [v for v, r in enumerate(self.rank) if r == i]


@dataclass(frozen=True)
class CoreDecomposition:
    core: tuple[int, ...]
    p: int


@dataclass
class VerificationReport:
    ring_density: dict[int, Fraction] = field(default_factory=dict)
    lower_ok: dict[int, bool] = field(default_factory=dict)
    upper_ok: dict[int, bool] = field(default_factory=dict)
    reversible_path_free: bool = True
    edge_directions_ok: bool = True
    indegrees_ok: bool = True
    sizes_ok: bool = True
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (
            all(self.lower_ok.values())
            and all(self.upper_ok.values())
            and self.reversible_path_free
            and self.edge_directions_ok
            and self.indegrees_ok
            and self.sizes_ok
        )


def find_reversible_path(orientation: Orientation) -> list[int] | None:
    """Return a directed path ``[u, ..., v]`` with ``indeg(v) >= indeg(u) + 2``.

    Forward searches are started from nodes in increasing order of
    indegree, each skipping nodes already claimed by an earlier search.
    A node is therefore first reached from the lowest-indegree node that
    reaches it, so one sweep settles every pair in O(n log n + m).
    Returns None if the orientation is egalitarian.
    """
    g = orientation.graph
    indeg = orientation.indegree
    inn = orientation.inn
    adj = g.adj
    parent = [-1] * g.n
    claimed = bytearray(g.n)
    for s in sorted(range(g.n), key=lambda v: (indeg[v], v)):
        if claimed[s]:
            continue
        claimed[s] = 1
        limit = indeg[s] + 2
        queue = [s]
        for x in queue:
            inx = inn[x]
            for y in adj[x]:
                if claimed[y] or y in inx:
                    continue
                claimed[y] = 1
                parent[y] = x
                if indeg[y] >= limit:
                    path = [y]
                    while path[-1] != s:
                        path.append(parent[path[-1]])
                    path.reverse()
                    return path
                queue.append(y)
    return None


def reverse_path(orientation: Orientation, path) -> Orientation:
    """Flip every arc of a directed path in place.

    Only the endpoints change indegree: the first gains one, the last
    loses one.
    """
    path = list(path)
    if len(path) < 2:
        raise ContractError("a path needs at least two nodes")
    inn = orientation.inn
    for a, b in zip(path, path[1:]):
        if a not in inn[b]:
            raise ContractError(f"{a} -> {b} is not an arc of the orientation")
    for a, b in zip(path, path[1:]):
        inn[b].remove(a)
        inn[a].add(b)
    orientation.indegree[path[0]] += 1
    orientation.indegree[path[-1]] -= 1
    return orientation


def _local_pass(o: Orientation) -> None:
    # single-arc reversals (paths of length one); cheap pre-balancing
    inn = o.inn
    indeg = o.indegree
    stack = [v for v in range(o.graph.n) if indeg[v] >= 2]
    while stack:
        v = stack.pop()
        if indeg[v] < 2:
            continue
        for u in list(inn[v]):
            if indeg[v] - indeg[u] >= 2:
                inn[v].remove(u)
                inn[u].add(v)
                indeg[v] -= 1
                indeg[u] += 1
                stack.append(u)


def _augment_phase(o: Orientation, D: int, buckets, settled) -> tuple[bool, dict]:
    """One blocking-flow phase toward the indegree-``D`` nodes.

    Returns (reversed_any, visited). When nothing was reversed the
    visited set is the full backward closure of the sinks.
    """
    inn = o.inn
    indeg = o.indegree
    low = D - 2
    sinks = sorted(buckets[D])
    dist = dict.fromkeys(sinks, 0)
    layer = sinks
    depth = 0
    top = None
    while layer and top is None:
        depth += 1
        nxt = []
        for w in layer:
            for x in inn[w]:
                if x in dist or settled[x]:
                    continue
                dist[x] = depth
                if indeg[x] <= low:
                    top = depth
                nxt.append(x)
        layer = nxt
    if top is None:
        return False, dist

    arcs: dict[int, list[int]] = {}
    ptr: dict[int, int] = {}
    dead = set()
    found = False
    for v in sinks:
        path = [v]
        while path:
            w = path[-1]
            dw = dist[w]
            if dw == top:
                if indeg[w] <= low:
                    for a, b in zip(path, path[1:]):
                        inn[a].remove(b)
                        inn[b].add(a)
                    buckets[D].discard(v)
                    buckets[D - 1].add(v)
                    indeg[v] -= 1
                    buckets[indeg[w]].discard(w)
                    indeg[w] += 1
                    buckets[indeg[w]].add(w)
                    found = True
                    break
                dead.add(w)
                path.pop()
                continue
            lst = arcs.get(w)
            if lst is None:
                want = dw + 1
                lst = arcs[w] = [x for x in inn[w] if dist.get(x) == want]
                ptr[w] = 0
            i = ptr[w]
            inw = inn[w]
            while i < len(lst):
                x = lst[i]
                if x not in dead and x in inw:
                    break
                i += 1
            ptr[w] = i
            if i < len(lst):
                path.append(lst[i])
            else:
                dead.add(w)
                path.pop()
    return found, dist


def _balance(o: Orientation) -> None:
    """Reverse paths until the orientation is egalitarian.

    Levels are handled from the top indegree ``D`` down. At each level,
    paths from nodes of indegree ``<= D - 2`` to nodes of indegree ``D``
    are reversed in layered phases until none is left; the backward
    closure of the remaining indegree-``D`` nodes is then frozen, since
    no later reversal can enter it.
    """
    _local_pass(o)
    n = o.graph.n
    indeg = o.indegree
    top = max(indeg, default=0)
    buckets = [set() for _ in range(top + 1)]
    for v in range(n):
        buckets[indeg[v]].add(v)
    settled = bytearray(n)
    D = top
    while D >= 0:
        if not buckets[D]:
            D -= 1
            continue
        closure = None
        if D >= 2:
            while True:
                found, visited = _augment_phase(o, D, buckets, settled)
                if not found:
                    closure = visited
                    break
                if not buckets[D]:
                    break
        if buckets[D]:
            if closure is None:
                closure = _backward_closure(o, buckets[D], settled)
            for v in closure:
                settled[v] = 1
                buckets[indeg[v]].discard(v)
        D -= 1


def _backward_closure(o: Orientation, start, blocked) -> list[int]:
    inn = o.inn
    seen = set(start)
    out = sorted(seen)
    for w in out:
        for x in inn[w]:
            if x not in seen and not blocked[x]:
                seen.add(x)
                out.append(x)
    return out


def egalitarian_orient(graph: Graph, initial: Orientation | None = None, seed=None) -> Orientation:
    """Egalitarian orientation of `graph` by path reversal.

    Parameters
    ----------
    graph : Graph
    initial : Orientation, optional
        Starting orientation; copied, not modified.
    seed : optional
        If given (and `initial` is not), start from a uniformly random
        orientation drawn with this seed. Otherwise every edge starts
        directed from the lower id to the higher id.

    Returns
    -------
    Orientation
        Admits no directed path from indegree ``x`` to indegree ``>= x + 2``.
    """
    if initial is not None:
        if initial.graph != graph:
            raise ContractError("initial orientation belongs to another graph")
        o = initial.copy()
    elif seed is not None:
        o = Orientation.random(graph, seed)
    else:
        o = Orientation.low_to_high(graph)
    _balance(o)
    return o


def rings_from_orientation(orientation: Orientation, check: bool = True) -> DensityDecomposition:
    """Read the density rings off an egalitarian orientation.

    Ring ``i`` holds the not-yet-assigned nodes of indegree ``i`` and
    every not-yet-assigned node with a directed path to one of them,
    for ``i = k, k-1, ..., 0`` where ``k`` is the maximum indegree.
    """
    if check and find_reversible_path(orientation) is not None:
        raise ContractError("orientation is not egalitarian")
    n = orientation.graph.n
    indeg = orientation.indegree
    inn = orientation.inn
    k = max(indeg, default=0)
    by_deg: list[list[int]] = [[] for _ in range(k + 1)]
    for v in range(n):
        by_deg[indeg[v]].append(v)
    rank = [-1] * n
    sizes = [0] * (k + 1)
    for i in range(k, -1, -1):
        frontier = [v for v in by_deg[i] if rank[v] < 0]
        for v in frontier:
            rank[v] = i
        for w in frontier:
            for x in inn[w]:
                if rank[x] < 0:
                    rank[x] = i
                    frontier.append(x)
        sizes[i] = len(frontier)
    return DensityDecomposition(tuple(rank), tuple(sizes), k, orientation)


def decompose(graph: Graph, seed=None, initial: Orientation | None = None) -> DensityDecomposition:
    return rings_from_orientation(egalitarian_orient(graph, initial=initial, seed=seed))


def verify_decomposition(graph: Graph, d: DensityDecomposition) -> VerificationReport:
    """Check every defining property of a density decomposition.

    Densities are compared as exact fractions. Failures are collected in
    the report rather than raised.
    """
    rep = VerificationReport()
    rank = d.rank
    if len(rank) != graph.n:
        rep.sizes_ok = False
        rep.failures.append("rank vector length differs from node count")
        return rep
    sizes = [0] * (d.k + 1)
    for r in rank:
        if not 0 <= r <= d.k:
            rep.sizes_ok = False
            rep.failures.append(f"rank {r} outside [0, {d.k}]")
            return rep
        sizes[r] += 1
    if tuple(sizes) != tuple(d.ring_sizes):
        rep.sizes_ok = False
        rep.failures.append("ring_sizes disagree with rank counts")

    rings = [[] for _ in range(d.k + 1)]
    for v, r in enumerate(rank):
        rings[r].append(v)
    for i in range(1, d.k + 1):
        if not rings[i]:
            continue
        above = [v for j in range(i + 1, d.k + 1) for v in rings[j]]
        below = [v for j in range(i) for v in rings[j]]
        dens = identify_and_delete(graph, above, below).density
        size = len(rings[i])
        lower = Fraction((size - 1) * (i - 1) + i, size + 1)
        rep.ring_density[i] = dens
        rep.upper_ok[i] = dens <= i
        rep.lower_ok[i] = dens >= lower
        if not rep.upper_ok[i]:
            rep.failures.append(f"ring {i}: density {dens} exceeds {i}")
        if not rep.lower_ok[i]:
            rep.failures.append(f"ring {i}: density {dens} below {lower}")

    w = d.witness
    if w is None or w.graph != graph:
        rep.reversible_path_free = False
        rep.edge_directions_ok = False
        rep.indegrees_ok = False
        rep.failures.append("missing or mismatched witness orientation")
        return rep
    if find_reversible_path(w) is not None:
        rep.reversible_path_free = False
        rep.failures.append("witness admits a reversible path")
    for u, v in graph.edges:
        ru, rv = rank[u], rank[v]
        if ru == rv:
            continue
        hi, lo = (u, v) if ru > rv else (v, u)
        if not w.points_to(hi, lo):
            rep.edge_directions_ok = False
            rep.failures.append(f"edge {hi}-{lo} crosses rings upward")
            break
    for v, r in enumerate(rank):
        x = w.indegree[v]
        ok = x == 0 if r == 0 else x in (r, r - 1)
        if not ok:
            rep.indegrees_ok = False
            rep.failures.append(f"node {v} of rank {r} has witness indegree {x}")
            break
    for i in range(1, d.k + 1):
        if rings[i] and not any(w.indegree[v] == i for v in rings[i]):
            rep.indegrees_ok = False
            rep.failures.append(f"ring {i} has no node of indegree {i}")
    return rep


def kcore_decompose(graph: Graph) -> CoreDecomposition:
    """Core numbers by bucket peeling in O(n + m)."""
    n = graph.n
    adj = graph.adj
    deg = [len(a) for a in adj]
    md = max(deg, default=0)
    bins = [0] * (md + 1)
    for x in deg:
        bins[x] += 1
    start = 0
    for x in range(md + 1):
        bins[x], start = start, start + bins[x]
    pos = [0] * n
    vert = [0] * n
    for v in range(n):
        pos[v] = bins[deg[v]]
        vert[pos[v]] = v
        bins[deg[v]] += 1
    for x in range(md, 0, -1):
        bins[x] = bins[x - 1]
    if md >= 0 and n:
        bins[0] = 0
    for i in range(n):
        v = vert[i]
        dv = deg[v]
        for u in adj[v]:
            du = deg[u]
            if du > dv:
                pu = pos[u]
                pw = bins[du]
                w = vert[pw]
                if u != w:
                    pos[u], pos[w] = pw, pu
                    vert[pu], vert[pw] = w, u
                bins[du] += 1
                deg[u] = du - 1
    return CoreDecomposition(tuple(deg), max(deg, default=0))


def kcore_region_density(graph: Graph, c: CoreDecomposition, i: int) -> Fraction:
    """Density after identifying cores above `i` and deleting cores below it."""
    if not 0 <= i <= c.p:
        raise ContractError(f"core index {i} outside [0, {c.p}]")
    core = c.core
    if not any(x == i for x in core):
        raise EmptyRegionError(f"no node has core number {i}")
    above = [v for v, x in enumerate(core) if x > i]
    below = [v for v, x in enumerate(core) if x < i]
    return identify_and_delete(graph, above, below).density

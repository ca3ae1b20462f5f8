"""Random graph generators.

`abstract_generate` builds a graph with a prescribed density
distribution: rings are created densest first and every node of ring
``i`` receives exactly ``i`` edges from nodes already in the graph (its
own ring included). How those ``i`` nodes are chosen is delegated to a
neighbour selector; `rdd_selector` picks uniformly, `hsw_selector`
builds a rewired ring lattice inside every ring.

The remaining generators are the usual baselines: small world,
preferential attachment, G(n, p), random regular and degree sequence.
"""

from __future__ import annotations

import math
import random
import warnings
from dataclasses import asdict, dataclass
from heapq import heappop, heappush
from typing import Callable, Protocol, Sequence

import numpy as np

from .decomposition import DensityDecomposition
from .errors import ContractError, InfeasibleSpecError, NotGraphicalError
from .graph import Graph, Orientation
from .metrics import Distribution

MAX_REDRAWS = 100
MAX_RING_ATTEMPTS = 100


class BuildState:
    """Graph under construction, as seen by a neighbour selector.

    Node ids are contiguous per ring: the densest ring gets the lowest
    ids. While ring ``i`` is being wired, `lo` and `hi` bound its ids,
    so ``range(0, lo)`` is every denser ring and ``range(0, hi)`` is
    the current node set.
    """

    def __init__(self, n: int):
        self.adj: list[set[int]] = [set() for _ in range(n)]
        self.picks: list[list[int]] = [[] for _ in range(n)]
        self.ring = 0
        self.lo = 0
        self.hi = 0

    @property
    def size(self) -> int:
        return self.hi - self.lo

    def position(self, v: int) -> int:
        return v - self.lo

    def eligible(self, v: int, x: int, taken) -> bool:
        return x != v and x not in self.adj[v] and x not in taken

    def sample(self, v: int, count: int, lo: int, hi: int, rng: random.Random, taken=()) -> list[int]:
        """Draw `count` distinct nodes from ``[lo, hi)`` that are neither
        `v`, its neighbours, nor in `taken`."""
        taken = set(taken)
        out = []
        span = hi - lo
        for _ in range(count):
            x = -1
            if span > 0:
                for _ in range(MAX_REDRAWS):
                    y = lo + rng.randrange(span)
                    if self.eligible(v, y, taken):
                        x = y
                        break
            if x < 0:
                cands = [y for y in range(lo, hi) if self.eligible(v, y, taken)]
                x = rng.choice(cands) if cands else self._release(v, lo, hi, taken, rng)
            out.append(x)
            taken.add(x)
        return out

    def _release(self, v: int, lo: int, hi: int, taken, rng: random.Random) -> int:
        # v has run out of candidates: some w in [lo, hi) that picked v
        # swaps that pick for another node, freeing w for v
        for w in sorted(self.adj[v]):
            if not lo <= w < hi or w in taken or v not in self.picks[w]:
                continue
            alts = [x for x in range(self.hi) if x not in (v, w) and x not in self.adj[w]]
            if not alts:
                continue
            x = rng.choice(alts)
            self.picks[w][self.picks[w].index(v)] = x
            self.adj[w].discard(v)
            self.adj[v].discard(w)
            self.adj[w].add(x)
            self.adj[x].add(w)
            return w
        raise InfeasibleSpecError(
            f"node {v} of ring {self.ring} cannot find enough distinct non-neighbours"
        )


class NeighborSelector(Protocol):
    def __call__(self, v: int, i: int, state: BuildState, rng: random.Random) -> list[int]:
        """Return `i` distinct nodes of ``range(state.hi)`` for `v` to pick."""


def rdd_selector() -> NeighborSelector:
    def select(v, i, state, rng):
        return state.sample(v, i, 0, state.hi, rng)

    return select


def hsw_selector(p: float) -> NeighborSelector:
    """Ring lattice per ring, each lattice edge rewired with probability `p`.

    A rewired edge goes to a uniform node of the denser rings, or of the
    ring itself when it is the densest one. Lattice predecessors that
    are unavailable (the node itself, or already adjacent) are treated
    as rewired.
    """
    if not 0 <= p <= 1:
        raise ContractError(f"rewiring probability {p} outside [0, 1]")

    def select(v, i, state, rng):
        size = state.size
        t = state.position(v)
        chosen = []
        rewire = 0
        for s in range(1, i + 1):
            u = state.lo + (t - s) % size
            if rng.random() < p or not state.eligible(v, u, chosen):
                rewire += 1
            else:
                chosen.append(u)
        if state.lo == 0:
            lo, hi = state.lo, state.hi
        else:
            lo, hi = 0, state.lo
        return chosen + state.sample(v, rewire, lo, hi, rng, taken=chosen)

    return select


def target_ring_sizes(dist, n: int) -> list[int]:
    """Ring sizes ``floor(rho_i * n)``; whatever flooring loses goes to ring 0."""
    if not isinstance(dist, Distribution):
        dist = Distribution(dist)
    if not dist.normalized:
        raise ContractError("density distribution must be normalized")
    if n < 0:
        raise ContractError("n must be nonnegative")
    sizes = [0] * max(len(dist), 1)
    for i in range(1, len(dist)):
        r = float(dist[i])
        # tolerance absorbs products such as 0.29 * 100 = 28.999...
        sizes[i] = math.floor(r * n + 1e-9)
        if r > 0 and sizes[i] == 0:
            warnings.warn(f"ring {i} gets no nodes ({r} * {n} < 1); dropped", stacklevel=3)
    sizes[0] = n - sum(sizes[1:])
    if sizes[0] < 0:
        raise ContractError("ring sizes exceed n")
    while len(sizes) > 1 and sizes[-1] == 0:
        sizes.pop()
    return sizes


def abstract_generate(dist, n: int, selector: NeighborSelector, seed=None) -> tuple[Graph, DensityDecomposition]:
    """Build an `n`-node graph whose density distribution is `dist`.

    Parameters
    ----------
    dist : Distribution or sequence of float
        Normalized density distribution, indexed by ring.
    n : int
    selector : NeighborSelector
    seed : optional
        Seed for ``random.Random``.

    Returns
    -------
    (Graph, DensityDecomposition)
        The decomposition is the one built, with the construction
        orientation (every new edge directed into the node that picked
        it) as witness.

    Raises
    ------
    InfeasibleSpecError
        If the densest ring ``k`` has fewer than ``2k + 1`` nodes, the
        smallest size in which every node can reach indegree ``k``.
    """
    sizes = target_ring_sizes(dist, n)
    k = len(sizes) - 1
    if k >= 1 and sizes[k] < 2 * k + 1:
        raise InfeasibleSpecError(
            f"densest ring {k} has {sizes[k]} nodes; at least {2 * k + 1} needed"
        )
    rng = random.Random(seed)
    state = BuildState(n)
    rank = [0] * n
    start = 0
    for i in range(k, -1, -1):
        state.ring, state.lo, state.hi = i, start, start + sizes[i]
        for v in range(state.lo, state.hi):
            rank[v] = i
        if i > 0:
            _wire_ring(state, i, selector, rng)
        start = state.hi
    arcs = [(u, v) for v in range(n) for u in state.picks[v]]
    graph = Graph(n, arcs)
    witness = Orientation(graph, arcs)
    return graph, DensityDecomposition(tuple(rank), tuple(sizes), k, witness)


def _wire_ring(state: BuildState, i: int, selector: NeighborSelector, rng: random.Random) -> None:
    # A ring that is nearly complete can paint itself into a corner; the
    # ring is then rewired from scratch, up to MAX_RING_ATTEMPTS times.
    saved = [set(a) for a in state.adj[:state.hi]]
    for attempt in range(MAX_RING_ATTEMPTS):
        try:
            for v in range(state.lo, state.hi):
                chosen = selector(v, i, state, rng)
                if len(chosen) != i or len(set(chosen)) != i:
                    raise ContractError(f"selector returned {chosen!r} for ring {i}")
                for u in chosen:
                    if not (0 <= u < state.hi) or u == v or u in state.adj[v]:
                        raise ContractError(f"selector chose ineligible node {u} for {v}")
                    state.adj[v].add(u)
                    state.adj[u].add(v)
                state.picks[v].extend(chosen)
            return
        except InfeasibleSpecError:
            if attempt == MAX_RING_ATTEMPTS - 1:
                raise
            state.adj[:state.hi] = [set(a) for a in saved]
            for v in range(state.lo, state.hi):
                state.picks[v].clear()


def generate_rdd(dist, n: int, seed=None):
    return abstract_generate(dist, n, rdd_selector(), seed)


def generate_hsw(dist, n: int, p: float, seed=None):
    return abstract_generate(dist, n, hsw_selector(p), seed)


def _redraw(rng: random.Random, n: int, ok: Callable[[int], bool]) -> int | None:
    for _ in range(MAX_REDRAWS):
        x = rng.randrange(n)
        if ok(x):
            return x
    cands = [x for x in range(n) if ok(x)]
    return rng.choice(cands) if cands else None


def generate_sw(n: int, k_lattice: int, p: float, seed=None) -> Graph:
    """Watts-Strogatz style small world.

    Each node is joined to its `k_lattice` cyclic predecessors (degree
    ``2 * k_lattice`` before rewiring); then, edge by edge, the
    predecessor end is moved to a uniform node with probability `p`.
    """
    if not 0 <= p <= 1:
        raise ContractError(f"rewiring probability {p} outside [0, 1]")
    if k_lattice < 0 or n <= 2 * k_lattice:
        raise ContractError("need n > 2 * k_lattice")
    rng = random.Random(seed)
    adj = [set() for _ in range(n)]
    lattice = [((v - s) % n, v) for v in range(n) for s in range(1, k_lattice + 1)]
    for u, v in lattice:
        adj[u].add(v)
        adj[v].add(u)
    for u, v in lattice:
        if rng.random() >= p:
            continue
        w = _redraw(rng, n, lambda x: x != v and x not in adj[v])
        if w is None:
            continue
        adj[u].discard(v)
        adj[v].discard(u)
        adj[w].add(v)
        adj[v].add(w)
    return Graph(n, ((u, v) for u in range(n) for v in adj[u] if u < v))


def generate_pa(n: int, n0: int, c: int, seed=None) -> Graph:
    """Preferential attachment: each new node links to `c` distinct
    existing nodes drawn with probability proportional to degree.

    The `n0` seed nodes form a cycle when ``n0 >= 3`` and a clique
    otherwise.
    """
    if not (n0 >= c >= 1 and n > n0):
        raise ContractError("need n0 >= c >= 1 and n > n0")
    rng = random.Random(seed)
    if n0 >= 3:
        edges = [(i, (i + 1) % n0) for i in range(n0)]
    else:
        edges = [(0, 1)] if n0 == 2 else []
    ends = [x for e in edges for x in e]
    for v in range(n0, n):
        targets: dict[int, None] = {}
        while len(targets) < c:
            x = rng.choice(ends) if ends else rng.randrange(v)
            targets[x] = None
        for u in targets:
            edges.append((u, v))
            ends.append(u)
            ends.append(v)
    return Graph(n, edges)


def generate_gnp(n: int, p: float, seed=None) -> Graph:
    """Erdős–Rényi G(n, p), sampled by geometric skips over the pair index."""
    if not 0 <= p <= 1:
        raise ContractError(f"edge probability {p} outside [0, 1]")
    total = n * (n - 1) // 2
    if p == 0 or total == 0:
        return Graph(n)
    if p == 1:
        return Graph(n, ((u, v) for v in range(n) for u in range(v)))
    rng = np.random.default_rng(seed)
    mean = total * p
    batch = int(mean + 10 * math.sqrt(mean) + 64)
    chunks = []
    pos = -1
    while True:
        hits = pos + np.cumsum(rng.geometric(p, size=batch))
        keep = hits[hits < total]
        chunks.append(keep)
        if len(keep) < batch:
            break
        pos = int(hits[-1])
    r = np.concatenate(chunks).astype(np.int64)
    # pair index r = v(v-1)/2 + u with u < v
    v = ((1 + np.sqrt(1 + 8 * r.astype(np.float64))) // 2).astype(np.int64)
    v -= (v * (v - 1) // 2 > r).astype(np.int64)
    v += ((v + 1) * v // 2 <= r).astype(np.int64)
    u = r - v * (v - 1) // 2
    return Graph(n, zip(u.tolist(), v.tolist()))


def generate_regular(n: int, d: int, seed=None, max_restarts: int = 10_000) -> Graph:
    """Uniform-ish random d-regular graph by sequential stub matching.

    Stubs are paired at random, rejecting pairs that would form a loop
    or a parallel edge; if no valid pair remains the matching restarts.
    """
    if d < 0 or d >= n or (n * d) % 2:
        raise ContractError(f"no simple {d}-regular graph on {n} nodes")
    rng = random.Random(seed)
    for _ in range(max_restarts):
        stubs = [v for v in range(n) for _ in range(d)]
        adj = [set() for _ in range(n)]
        edges = []
        while stubs:
            pair = None
            for _ in range(MAX_REDRAWS):
                i = rng.randrange(len(stubs))
                j = rng.randrange(len(stubs))
                a, b = stubs[i], stubs[j]
                if a != b and b not in adj[a]:
                    pair = (i, j)
                    break
            if pair is None:
                left = sorted(set(stubs))
                options = [(a, b) for a in left for b in left if a < b and b not in adj[a]]
                if not options:
                    break
                a, b = rng.choice(options)
                pair = (stubs.index(a), stubs.index(b))
            i, j = pair
            a, b = stubs[i], stubs[j]
            adj[a].add(b)
            adj[b].add(a)
            edges.append((a, b))
            for idx in sorted(pair, reverse=True):
                stubs[idx] = stubs[-1]
                stubs.pop()
        else:
            return Graph(n, edges)
    raise InfeasibleSpecError(f"stub matching failed {max_restarts} times")


def erdos_gallai_violation(seq: Sequence[int]) -> int | None:
    """First index ``k`` (1-based, over the descending sequence) at which the
    Erdős–Gallai inequality fails, or None if the sequence is graphical.
    Parity must be checked separately."""
    d = np.sort(np.asarray(seq, dtype=np.int64))[::-1]
    n = len(d)
    if n == 0:
        return None
    k = np.arange(1, n + 1)
    lhs = np.cumsum(d)
    suffix = np.concatenate([np.cumsum(d[::-1])[::-1], [0]])
    # p[k-1]: number of entries greater than k (a prefix, as d descends)
    p = n - np.searchsorted(d[::-1], k, side="right")
    start = np.maximum(k, p)
    rhs = k * (k - 1) + k * np.maximum(p - k, 0) + suffix[start]
    bad = np.nonzero(lhs > rhs)[0]
    return int(bad[0]) + 1 if bad.size else None


def _check_graphical(seq: Sequence[int]) -> None:
    if any(x < 0 for x in seq):
        raise NotGraphicalError("negative degree", None)
    if sum(seq) % 2:
        raise NotGraphicalError("degree sum is odd", None)
    k = erdos_gallai_violation(seq)
    if k is not None:
        raise NotGraphicalError(f"Erdős–Gallai inequality fails at k={k}", k)


def havel_hakimi(seq: Sequence[int]) -> list[tuple[int, int]]:
    """Greedy realisation: the node with most remaining demand is joined
    to the next highest ones. Ties break toward lower ids."""
    rem = list(seq)
    heap = [(-r, v) for v, r in enumerate(rem) if r > 0]
    heap.sort()
    edges = []
    while heap:
        r, v = heappop(heap)
        if -r != rem[v] or rem[v] == 0:
            continue
        need = rem[v]
        rem[v] = 0
        partners = []
        while len(partners) < need:
            if not heap:
                raise NotGraphicalError("greedy realisation ran out of partners", None)
            r2, u = heappop(heap)
            if -r2 != rem[u] or rem[u] == 0 or u in partners:
                continue
            partners.append(u)
        for u in partners:
            edges.append((v, u))
            rem[u] -= 1
            if rem[u] > 0:
                heappush(heap, (-rem[u], u))
    return edges


def _components(n, edges):
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    return [find(x) for x in range(n)]


def _cycle_edge(edge_ids, edges):
    # first edge closing a cycle under union-find lies on a cycle
    parent = {}

    def find(x):
        parent.setdefault(x, x)
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in edge_ids:
        a, b = edges[e]
        ra, rb = find(a), find(b)
        if ra == rb:
            return e
        parent[ra] = rb
    return None


def _connect(n, edges, eset, degrees):
    if n > 1 and min(degrees) == 0:
        raise InfeasibleSpecError("a degree-0 node cannot be connected")
    while True:
        comp = _components(n, edges)
        roots = sorted(set(comp))
        if len(roots) <= 1:
            return
        by_root = {r: [] for r in roots}
        for e, (a, b) in enumerate(edges):
            by_root[comp[a]].append(e)
        e1 = None
        for r in roots:
            e1 = _cycle_edge(by_root[r], edges)
            if e1 is not None:
                break
        if e1 is None:
            raise InfeasibleSpecError("too few edges for a connected realisation")
        other = next(x for x in roots if x != r)
        e2 = by_root[other][0]
        a, b = edges[e1]
        c, d = edges[e2]
        eset.discard((min(a, b), max(a, b)))
        eset.discard((min(c, d), max(c, d)))
        edges[e1] = (a, c)
        edges[e2] = (b, d)
        eset.add((min(a, c), max(a, c)))
        eset.add((min(b, d), max(b, d)))


def generate_ds(degree_sequence: Sequence[int], seed=None, connect: bool = False,
                swaps: int | None = None) -> Graph:
    """Random simple graph with the given degree sequence.

    A greedy Havel-Hakimi realisation is mixed with ``10 * m``
    double-edge swap attempts. With ``connect=True`` further swaps join
    components without changing any degree.

    Raises
    ------
    NotGraphicalError
        If the sequence has odd sum or violates Erdős–Gallai; `index`
        holds the failing ``k``.
    """
    seq = [int(x) for x in degree_sequence]
    _check_graphical(seq)
    n = len(seq)
    edges = havel_hakimi(seq)
    m = len(edges)
    eset = {(min(a, b), max(a, b)) for a, b in edges}
    rng = random.Random(seed)
    for _ in range(10 * m if swaps is None else swaps):
        if m < 2:
            break
        i, j = rng.randrange(m), rng.randrange(m)
        if i == j:
            continue
        a, b = edges[i]
        c, d = edges[j]
        if rng.random() < 0.5:
            c, d = d, c
        if len({a, b, c, d}) < 4:
            continue
        e1, e2 = (min(a, d), max(a, d)), (min(c, b), max(c, b))
        if e1 in eset or e2 in eset:
            continue
        eset.discard((min(a, b), max(a, b)))
        eset.discard((min(c, d), max(c, d)))
        eset.add(e1)
        eset.add(e2)
        edges[i], edges[j] = (a, d), (c, b)
    if connect:
        _connect(n, edges, eset, seq)
    return Graph(n, edges)


def clique_orientation(n: int) -> Orientation:
    """Balanced orientation of K_n.

    With ``h = n // 2``, the edge between ``v_i`` and ``v_j`` (``i < j``)
    points to ``v_i`` when ``j - i <= h`` and to ``v_j`` otherwise.
    Indegrees are ``h`` or ``h - 1``.
    """
    if n < 1:
        raise ContractError("clique needs at least one node")
    h = n // 2
    arcs = [(j, i) if j - i <= h else (i, j) for j in range(n) for i in range(j)]
    return Orientation(Graph(n, arcs), arcs)


KINDS = ("rdd", "hsw", "sw", "pa", "gnp", "regular", "ds")


@dataclass
class ModelSpec:
    kind: str
    n: int | None = None
    dist: list[float] | None = None
    p: float | None = None
    c: float | None = None
    n0: int | None = None
    d: int | None = None
    k_lattice: int | None = None
    degree_sequence: list[int] | None = None
    connect: bool = False
    seed: int | None = None

    def validate(self) -> None:
        if self.kind not in KINDS:
            raise ContractError(f"unknown model kind {self.kind!r}")
        if self.p is not None and not 0 <= self.p <= 1:
            raise ContractError(f"p={self.p} outside [0, 1]")

        def need(*names):
            for name in names:
                if getattr(self, name) is None:
                    raise ContractError(f"model {self.kind!r} needs {name!r}")

        if self.kind in ("rdd", "hsw"):
            need("n", "dist")
            if self.kind == "hsw":
                need("p")
        elif self.kind == "sw":
            need("n", "k_lattice", "p")
        elif self.kind == "pa":
            need("n", "c")
        elif self.kind == "gnp":
            need("n")
            if self.p is None and self.c is None:
                raise ContractError("model 'gnp' needs 'p' or mean degree 'c'")
        elif self.kind == "regular":
            need("n", "d")
        elif self.kind == "ds":
            need("degree_sequence")

    def to_dict(self) -> dict:
        out = {k: v for k, v in asdict(self).items() if v is not None}
        if not self.connect:
            out.pop("connect", None)
        return out

    @classmethod
    def from_dict(cls, data: dict) -> "ModelSpec":
        known = set(cls.__dataclass_fields__)
        extra = {k: v for k, v in data.items() if k not in known}
        if extra:
            raise ContractError(f"unknown ModelSpec fields: {sorted(extra)}")
        return cls(**data)


def generate(spec: ModelSpec) -> tuple[Graph, DensityDecomposition | None]:
    """Run the generator named by ``spec.kind``."""
    spec.validate()
    kind = spec.kind
    if kind == "rdd":
        return generate_rdd(spec.dist, spec.n, spec.seed)
    if kind == "hsw":
        return generate_hsw(spec.dist, spec.n, spec.p, spec.seed)
    if kind == "sw":
        return generate_sw(spec.n, spec.k_lattice, spec.p, spec.seed), None
    if kind == "pa":
        c = int(spec.c)
        n0 = spec.n0 if spec.n0 is not None else max(c, 3)
        return generate_pa(spec.n, n0, c, spec.seed), None
    if kind == "gnp":
        p = spec.p if spec.p is not None else spec.c / (spec.n - 1)
        if not 0 <= p <= 1:
            raise ContractError(f"mean degree {spec.c} needs p={p} outside [0, 1]")
        return generate_gnp(spec.n, p, spec.seed), None
    if kind == "regular":
        return generate_regular(spec.n, spec.d, spec.seed), None
    return generate_ds(spec.degree_sequence, spec.seed, spec.connect), None

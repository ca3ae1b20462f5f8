"""Simple undirected graphs, edge orientations and edge-list I/O."""

from __future__ import annotations

import random
from bisect import bisect_left
from fractions import Fraction
from typing import Hashable, Iterable, NamedTuple, Sequence, TextIO

from .errors import ContractError, ParseError


class LabelMap:
    """Bijection between external labels and dense node ids."""

    def __init__(self, labels: Iterable[Hashable] = ()):
        self._labels: list = []
        self._ids: dict = {}
        for lab in labels:
            self.add(lab)

    @classmethod
    def identity(cls, n: int) -> "LabelMap":
        return cls(str(i) for i in range(n))

    def add(self, label) -> int:
        """Return the id of `label`, assigning the next free id if new."""
        idx = self._ids.get(label)
        if idx is None:
            idx = len(self._labels)
            self._ids[label] = idx
            self._labels.append(label)
        return idx

    def id(self, label) -> int:
        return self._ids[label]

    def label(self, idx: int):
        return self._labels[idx]

    @property
    def labels(self) -> list:
        return list(self._labels)

    def __len__(self) -> int:
        return len(self._labels)

    def __contains__(self, label) -> bool:
        return label in self._ids

    def __eq__(self, other) -> bool:
        return isinstance(other, LabelMap) and self._labels == other._labels

    def __repr__(self) -> str:
        return f"LabelMap({len(self)} labels)"


class Graph:
    """Immutable simple undirected graph on nodes ``0..n-1``.

    Adjacency lists are sorted so that `has_edge` is a binary search.
    Self-loops and repeated pairs passed to the constructor are dropped.
    """

    __slots__ = ("n", "m", "adj", "edges")

    def __init__(self, n: int, pairs: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ContractError("node count must be nonnegative")
        seen = set()
        for u, v in pairs:
            if not (0 <= u < n and 0 <= v < n):
                raise ContractError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                continue
            seen.add((u, v) if u < v else (v, u))
        edges = sorted(seen)
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            adj[u].append(v)
            adj[v].append(u)
        for nbrs in adj:
            nbrs.sort()
        self.n = n
        self.m = len(edges)
        self.adj = tuple(tuple(a) for a in adj)
        self.edges = tuple(edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        a = self.adj[u]
        i = bisect_left(a, v)
        return i < len(a) and a[i] == v

    def induced_edge_count(self, nodes: Iterable[int]) -> int:
        s = set(nodes)
        return sum(1 for u, v in self.edges if u in s and v in s)

    def to_csr(self):
        """Symmetric scipy CSR adjacency matrix with unit weights."""
        import numpy as np
        from scipy.sparse import csr_matrix

        indptr = np.zeros(self.n + 1, dtype=np.int64)
        indptr[1:] = np.cumsum([len(a) for a in self.adj])
        indices = np.fromiter(
            (v for a in self.adj for v in a), dtype=np.int32, count=2 * self.m
        )
        data = np.ones(2 * self.m, dtype=np.int8)
        return csr_matrix((data, indices, indptr), shape=(self.n, self.n))

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


class Orientation:
    """Direction assignment for every edge of a graph.

    Stored as per-node in-neighbour sets; ``u in inn[v]`` means the edge
    is directed ``u -> v``. Mutable, single writer.
    """

    __slots__ = ("graph", "inn", "indegree")

    def __init__(self, graph: Graph, arcs: Iterable[tuple[int, int]]):
        self.graph = graph
        self.inn: list[set[int]] = [set() for _ in range(graph.n)]
        count = 0
        for u, v in arcs:
            if not graph.has_edge(u, v):
                raise ContractError(f"arc ({u}, {v}) is not an edge of the graph")
            if u in self.inn[v] or v in self.inn[u]:
                raise ContractError(f"edge ({u}, {v}) oriented twice")
            self.inn[v].add(u)
            count += 1
        if count != graph.m:
            raise ContractError(f"orientation covers {count} of {graph.m} edges")
        self.indegree = [len(s) for s in self.inn]

    @classmethod
    def low_to_high(cls, graph: Graph) -> "Orientation":
        return cls(graph, graph.edges)

    @classmethod
    def random(cls, graph: Graph, seed=None) -> "Orientation":
        rng = random.Random(seed)
        return cls(
            graph,
            ((u, v) if rng.random() < 0.5 else (v, u) for u, v in graph.edges),
        )

    @classmethod
    def from_directions(cls, graph: Graph, direction: Sequence[bool]) -> "Orientation":
        """Build from per-edge flags; True directs edge ``(u, v)`` toward ``v``."""
        if len(direction) != graph.m:
            raise ContractError("one direction flag per edge required")
        return cls(
            graph,
            ((u, v) if d else (v, u) for (u, v), d in zip(graph.edges, direction)),
        )

    def points_to(self, u: int, v: int) -> bool:
        """True if the edge between u and v is directed ``u -> v``."""
        return u in self.inn[v]

    def in_neighbors(self, v: int) -> set[int]:
        return self.inn[v]

    def out_neighbors(self, v: int) -> list[int]:
        inn = self.inn[v]
        return [w for w in self.graph.adj[v] if w not in inn]

    def flip(self, u: int, v: int) -> None:
        """Reverse the arc ``u -> v``."""
        if u not in self.inn[v]:
            raise ContractError(f"no arc {u} -> {v} to flip")
        self.inn[v].remove(u)
        self.inn[u].add(v)
        self.indegree[v] -= 1
        self.indegree[u] += 1

    @property
    def direction(self) -> list[bool]:
        return [u in self.inn[v] for u, v in self.graph.edges]

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) if u in self.inn[v] else (v, u) for u, v in self.graph.edges]

    def copy(self) -> "Orientation":
        new = object.__new__(Orientation)
        new.graph = self.graph
        new.inn = [set(s) for s in self.inn]
        new.indegree = list(self.indegree)
        return new

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Orientation)
            and self.graph == other.graph
            and self.inn == other.inn
        )

    def __repr__(self) -> str:
        return f"Orientation(n={self.graph.n}, m={self.graph.m})"


def from_edges(pairs: Iterable[Sequence]) -> tuple[Graph, LabelMap]:
    """Build a simple graph from label pairs.

    Reversed and repeated pairs collapse to one edge and self-loops are
    dropped. Labels get ids in order of first appearance, self-loop
    labels included.
    """
    labels = LabelMap()
    ids = []
    for lineno, pair in enumerate(pairs, start=1):
        if isinstance(pair, (str, bytes)) or len(pair) != 2:
            raise ParseError(f"expected a pair, got {pair!r}", lineno)
        a, b = pair
        ids.append((labels.add(a), labels.add(b)))
    return Graph(len(labels), ids), labels


def parse_edgelist(stream: TextIO | Iterable[str], comment: str = "#", sep: str | None = None):
    """Read a whitespace separated edge list.

    Parameters
    ----------
    stream : text stream or iterable of lines
    comment : str
        Lines whose first non-blank characters start with this prefix
        are skipped, as are blank lines.
    sep : str or None
        Token separator; None splits on any run of whitespace.

    Returns
    -------
    (Graph, LabelMap)

    Raises
    ------
    ParseError
        If a data line does not have exactly two tokens.
    """
    pairs = []
    for lineno, raw in enumerate(stream, start=1):
        line = raw.strip()
        if not line or (comment and line.startswith(comment)):
            continue
        toks = line.split(sep) if sep is not None else line.split()
        if sep is not None:
            toks = [t.strip() for t in toks if t.strip()]
        if len(toks) != 2:
            raise ParseError(f"expected 2 tokens, found {len(toks)}", lineno)
        pairs.append(toks)
    return from_edges(pairs)


def read_edgelist(path, comment: str = "#", sep: str | None = None):
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_edgelist(fh, comment=comment, sep=sep)


def write_edgelist(graph: Graph, labels: LabelMap | None = None) -> str:
    """One ``label_u label_v`` line per edge, sorted by node ids."""
    if labels is None:
        labels = LabelMap.identity(graph.n)
    lab = labels.label
    return "".join(f"{lab(u)} {lab(v)}\n" for u, v in graph.edges)


class Contraction(NamedTuple):
    nodes: int
    edges: int

    @property
    def density(self) -> Fraction:
        if self.nodes == 0:
            raise ZeroDivisionError("density of a network with no nodes")
        return Fraction(self.edges, self.nodes)


def identify_and_delete(graph: Graph, identify: Iterable[int] = (), delete: Iterable[int] = ()) -> Contraction:
    """Merge `identify` into one node and remove `delete`.

    Edges with both ends in `identify` become self-loops and are
    dropped; parallel edges between the merged node and the rest are
    kept. Only the node and edge counts of the result are returned.
    """
    s = set(identify)
    d = set(delete)
    if s & d:
        raise ContractError("identify and delete sets must be disjoint")
    nodes = graph.n - len(s) - len(d) + (1 if s else 0)
    edges = 0
    for u, v in graph.edges:
        if u in d or v in d or (u in s and v in s):
            continue
        edges += 1
    return Contraction(nodes, edges)

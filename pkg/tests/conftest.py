import random

import pytest

from netdens import Graph, from_edges


def complete(n):
    return Graph(n, ((u, v) for v in range(n) for u in range(v)))


def gnm(n, m, seed):
    rng = random.Random(seed)
    pairs = set()
    while len(pairs) < m:
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            pairs.add((min(u, v), max(u, v)))
    return Graph(n, pairs)


def star(leaves):
    return Graph(leaves + 1, ((0, i) for i in range(1, leaves + 1)))


@pytest.fixture
def triangle():
    return from_edges([("a", "b"), ("b", "c"), ("a", "c")])[0]


@pytest.fixture
def path3():
    return from_edges([("a", "b"), ("b", "c")])[0]


@pytest.fixture
def k4_pendant():
    # nodes 0..3 form K_4, node 4 hangs off node 0
    return Graph(5, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4)])


@pytest.fixture
def triangle_pendant():
    # triangle a=0, b=1, c=2 with pendant 3 on a
    return Graph(4, [(0, 1), (1, 2), (0, 2), (0, 3)])


# one line per acceptance criterion, echoed at the end of the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)

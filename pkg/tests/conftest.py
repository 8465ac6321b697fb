from __future__ import annotations

import random

import pytest

from nectar.graph import Graph

_acceptance_lines: list[str] = []


@pytest.fixture
def record():
    """Collect one summary line per acceptance criterion for the terminal report."""
    return _acceptance_lines.append


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
    return Graph(n, edges)


def random_partition(rng: random.Random, n: int) -> list[set[int]]:
    k = rng.randint(1, n)
    labels = [rng.randrange(k) for _ in range(n)]
    return [{v for v in range(n) if labels[v] == c} for c in set(labels)]


def random_cover(rng: random.Random, n: int, overlap: bool = True) -> list[set[int]]:
    parts = random_partition(rng, n)
    if overlap:
        for _ in range(rng.randint(0, n)):
            rng.choice(parts).add(rng.randrange(n))
    return parts


def clique(n: int, offset: int = 0) -> list[tuple[int, int]]:
    return [(offset + u, offset + v) for u in range(n) for v in range(u + 1, n)]


@pytest.fixture
def k3() -> Graph:
    return Graph(3, clique(3))


@pytest.fixture
def k4() -> Graph:
    return Graph(4, clique(4))


@pytest.fixture
def bowtie() -> Graph:
    """Two triangles sharing node 0."""
    return Graph(5, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)])


@pytest.fixture
def two_k4() -> Graph:
    """Two 4-cliques joined by the single edge (3, 4)."""
    return Graph(8, clique(4) + clique(4, 4) + [(3, 4)])

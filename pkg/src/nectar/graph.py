"""Immutable undirected simple graph with triangle primitives."""

from __future__ import annotations

import logging
from collections.abc import Collection, Iterable, Sequence
from functools import cached_property
from typing import IO

log = logging.getLogger(__name__)


class EdgeListError(ValueError):
    """Malformed edge-list input."""

    def __init__(self, lineno: int, line: str):
        super().__init__(f"line {lineno}: expected two node labels, got {line.strip()!r}")
        self.lineno = lineno


class Graph:
    """Undirected simple graph over dense node ids ``0..n-1``.

    Nodes carry an optional string label (kept for output); adjacency is a
    tuple of frozensets so instances can be shared freely between runs.
    """

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]],
        labels: Sequence[str] | None = None,
        self_loops_skipped: int = 0,
    ):
        if labels is not None and len(labels) != n:
            raise ValueError(f"expected {n} labels, got {len(labels)}")
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) outside node range 0..{n - 1}")
            if u == v:
                raise ValueError(f"self-loop on node {u}")
            adj[u].add(v)
            adj[v].add(u)
        self.adj: tuple[frozenset[int], ...] = tuple(frozenset(a) for a in adj)
        self.degree: tuple[int, ...] = tuple(len(a) for a in adj)
        self.edge_count = sum(self.degree) // 2
        self.labels: tuple[str, ...] = (
            tuple(labels) if labels is not None else tuple(str(i) for i in range(n))
        )
        self.self_loops_skipped = self_loops_skipped

    @property
    def n(self) -> int:
        return len(self.adj)

    def __len__(self) -> int:
        return len(self.adj)

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_count})"

    def neighbors(self, v: int) -> list[int]:
        return sorted(self.adj[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    @cached_property
    def index(self) -> dict[str, int]:
        return {label: i for i, label in enumerate(self.labels)}

    # Per-node triangle data is computed once; the graph never changes.

    @cached_property
    def node_triangles(self) -> tuple[int, ...]:
        """t(v, V) for every node."""
        return tuple(self._closed_pairs(v, self.adj[v]) for v in range(self.n))

    @cached_property
    def triangle_partners(self) -> tuple[frozenset[int], ...]:
        """Neighbors of each node that close at least one triangle with it."""
        adj = self.adj
        return tuple(
            frozenset(x for x in adj[v] if not adj[x].isdisjoint(adj[v]))
            for v in range(self.n)
        )

    def _closed_pairs(self, v: int, candidates: Collection[int]) -> int:
        adj = self.adj
        inside = adj[v].intersection(candidates)
        return sum(len(adj[x] & inside) for x in inside) // 2

    def triangles_in_set(self, v: int, nodes: Collection[int]) -> int:
        """Triangles ``v`` closes with pairs drawn from ``nodes``."""
        return self._closed_pairs(v, nodes)

    def partners_in_set(self, v: int, nodes: Collection[int]) -> int:
        """Members of ``nodes`` (other than ``v``) forming a triangle with ``v``."""
        partners = self.triangle_partners[v]
        if len(nodes) < len(partners):
            return sum(1 for x in nodes if x in partners)
        return len(partners.intersection(nodes))

    def clustering_coefficient(self, v: int) -> float:
        k = self.degree[v]
        if k < 2:
            return 0.0
        return self.node_triangles[v] / (k * (k - 1) / 2)

    def triangle_count(self) -> int:
        """Number of distinct triangles in the graph."""
        return sum(self.node_triangles) // 3

    def triangle_rate(self) -> float:
        """Mean number of triangles closed per node (each triangle counts at all three corners)."""
        if self.n == 0:
            raise ValueError("triangle rate of an empty graph is undefined")
        return sum(self.node_triangles) / self.n

    def distinct_triangle_rate(self) -> float:
        """Distinct triangles per node; one third of :meth:`triangle_rate`."""
        if self.n == 0:
            raise ValueError("triangle rate of an empty graph is undefined")
        return self.triangle_count() / self.n


# Function forms of the graph primitives.

def triangles_of_node_in_set(graph: Graph, v: int, nodes: Collection[int]) -> int:
    return graph.triangles_in_set(v, nodes)


def triangle_partners_in_set(graph: Graph, v: int, nodes: Collection[int]) -> int:
    return graph.partners_in_set(v, nodes)


def triangle_rate(graph: Graph) -> float:
    return graph.triangle_rate()


def clustering_coefficient(graph: Graph, v: int) -> float:
    return graph.clustering_coefficient(v)


def load_edge_list(stream: IO[str] | Iterable[str]) -> Graph:
    """Read a whitespace-separated edge list.

    Labels are interned to dense ids in order of first appearance. Duplicate
    edges collapse; self-loops are dropped and counted on
    ``Graph.self_loops_skipped``. Blank lines and ``#`` comments are ignored.
    """
    index: dict[str, int] = {}
    edges: set[tuple[int, int]] = set()
    loops = 0
    for lineno, line in enumerate(stream, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        tokens = stripped.split()
        if len(tokens) != 2:
            raise EdgeListError(lineno, line)
        u = index.setdefault(tokens[0], len(index))
        v = index.setdefault(tokens[1], len(index))
        if u == v:
            loops += 1
            continue
        edges.add((u, v) if u < v else (v, u))
    if loops:
        log.warning("skipped %d self-loop(s)", loops)
    return Graph(len(index), sorted(edges), labels=list(index), self_loops_skipped=loops)

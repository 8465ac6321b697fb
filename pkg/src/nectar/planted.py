"""Planted-partition graphs with optional overlapping nodes and known ground truth."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Graph


@dataclass(frozen=True)
class PlantedPartitionSpec:
    communities: int
    community_size: int
    p_in: float
    p_out: float
    overlap_nodes: int = 0
    memberships_per_overlap_node: int = 2
    seed: int = 0

    def __post_init__(self):
        if self.communities < 1 or self.community_size < 1:
            raise ValueError("need at least one community of at least one node")
        if not 0 <= self.p_out <= self.p_in <= 1:
            raise ValueError(f"need 0 <= p_out <= p_in <= 1, got p_in={self.p_in}, p_out={self.p_out}")
        if self.p_out == self.p_in and self.p_in > 0:
            raise ValueError("p_out must be strictly below p_in")
        if self.overlap_nodes < 0:
            raise ValueError("overlap_nodes must be nonnegative")
        if self.overlap_nodes:
            m = self.memberships_per_overlap_node
            if not 2 <= m <= self.communities:
                raise ValueError(f"memberships per overlap node must lie in 2..{self.communities}")
            if self.overlap_nodes * m > self.communities * self.community_size:
                raise ValueError("not enough community slots for the requested overlap")

    @property
    def n(self) -> int:
        extra = self.overlap_nodes * (self.memberships_per_overlap_node - 1) if self.overlap_nodes else 0
        return self.communities * self.community_size - extra


def generate_planted(spec: PlantedPartitionSpec) -> tuple[Graph, list[list[int]]]:
    """Sample a graph and its ground-truth cover.

    Every community has exactly ``community_size`` member slots. Overlap nodes
    (the last ``overlap_nodes`` ids) take ``m`` slots in distinct communities;
    the remaining slots go to ordinary nodes. Pairs sharing a community are
    joined with probability ``p_in``, all other pairs with ``p_out``.
    """
    rng = np.random.default_rng(spec.seed)
    k, size = spec.communities, spec.community_size
    n = spec.n
    n_plain = n - spec.overlap_nodes

    capacity = np.full(k, size)
    truth: list[list[int]] = [[] for _ in range(k)]
    for v in range(n_plain, n):
        # most free slots first keeps the assignment feasible; random tie-break
        order = np.lexsort((rng.random(k), -capacity))
        for c in order[: spec.memberships_per_overlap_node]:
            truth[c].append(v)
            capacity[c] -= 1
    v = 0
    for c in range(k):
        for _ in range(int(capacity[c])):
            truth[c].append(v)
            v += 1
    assert v == n_plain

    member = np.zeros((n, k), dtype=bool)
    for c, nodes in enumerate(truth):
        member[nodes, c] = True
    shared = (member.astype(np.int32) @ member.T.astype(np.int32)) > 0
    iu, ju = np.triu_indices(n, k=1)
    prob = np.where(shared[iu, ju], spec.p_in, spec.p_out)
    keep = rng.random(len(iu)) < prob
    edges = list(zip(iu[keep].tolist(), ju[keep].tolist()))
    return Graph(n, edges), [sorted(c) for c in truth]

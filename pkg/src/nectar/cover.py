"""Mutable overlapping cover: communities plus a node -> community index."""

from __future__ import annotations

from collections.abc import Iterable
from typing import IO

from .graph import Graph


class Cover:
    """A set of (possibly overlapping) communities over nodes ``0..n-1``.

    Every community has a stable integer id. Ids are handed out in increasing
    order and never recycled, except that :meth:`add_community` may restore a
    previously deleted id when asked to explicitly.
    """

    def __init__(self, n: int):
        self.n = n
        self.communities: dict[int, set[int]] = {}
        self.node_index: list[set[int]] = [set() for _ in range(n)]
        self._next_id = 0

    @classmethod
    def from_sets(cls, n: int, sets: Iterable[Iterable[int]]) -> Cover:
        cover = cls(n)
        for members in sets:
            cover.add_community(members)
        return cover

    def copy(self) -> Cover:
        other = Cover(self.n)
        other.communities = {cid: set(m) for cid, m in self.communities.items()}
        other.node_index = [set(c) for c in self.node_index]
        other._next_id = self._next_id
        return other

    def __len__(self) -> int:
        return len(self.communities)

    def __contains__(self, cid: int) -> bool:
        return cid in self.communities

    def __repr__(self) -> str:
        return f"Cover(n={self.n}, communities={len(self.communities)})"

    def ids(self) -> list[int]:
        return sorted(self.communities)

    def members(self, cid: int) -> set[int]:
        return self.communities[cid]

    def size(self, cid: int) -> int:
        return len(self.communities[cid])

    def memberships(self, v: int) -> set[int]:
        return self.node_index[v]

    def overlap_count(self, v: int) -> int:
        """O_v: number of communities holding ``v``."""
        return len(self.node_index[v])

    def add_community(self, members: Iterable[int], cid: int | None = None) -> int:
        nodes = set(members)
        if not nodes:
            raise ValueError("communities must be nonempty")
        for v in nodes:
            if not 0 <= v < self.n:
                raise ValueError(f"node {v} outside 0..{self.n - 1}")
        if cid is None:
            cid = self._next_id
        elif cid in self.communities:
            raise ValueError(f"community id {cid} already in use")
        self._next_id = max(self._next_id, cid + 1)
        self.communities[cid] = nodes
        for v in nodes:
            self.node_index[v].add(cid)
        return cid

    def add_node(self, v: int, cid: int) -> None:
        self.communities[cid].add(v)
        self.node_index[v].add(cid)

    def remove_node(self, v: int, cid: int) -> None:
        """Drop ``v`` from one community, deleting the community if it empties."""
        members = self.communities[cid]
        members.discard(v)
        self.node_index[v].discard(cid)
        if not members:
            del self.communities[cid]

    def remove_node_from_all(self, v: int) -> frozenset[int]:
        """Detach ``v`` everywhere; returns the ids it belonged to."""
        prior = frozenset(self.node_index[v])
        for cid in prior:
            self.remove_node(v, cid)
        return prior

    def neighboring_communities(self, graph: Graph, v: int) -> set[int]:
        """Ids of communities holding at least one neighbor of ``v``."""
        found: set[int] = set()
        for u in graph.adj[v]:
            found.update(self.node_index[u])
        return found

    def merge_overlapping(self, alpha: float) -> bool:
        """Union pairs with ``|A & B| / min(|A|, |B|) >= alpha`` until none remain.

        Pairs are taken lowest id first and the survivor keeps the smaller id.
        Returns True when the number of communities went down.
        """
        if not 0 < alpha <= 1:
            raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
        before = len(self.communities)
        start = -1
        while True:
            pair = self._first_mergeable(alpha, start)
            if pair is None:
                break
            a, b = pair
            touched = self._absorb(a, b)
            # Pairs (x, y) with x below every community overlapping `a` are unaffected.
            start = min(touched | {a})
        return len(self.communities) < before

    def _first_mergeable(self, alpha: float, start: int) -> tuple[int, int] | None:
        for a in sorted(cid for cid in self.communities if cid >= start):
            members = self.communities[a]
            shared: dict[int, int] = {}
            for v in members:
                for b in self.node_index[v]:
                    if b > a:
                        shared[b] = shared.get(b, 0) + 1
            for b in sorted(shared):
                if shared[b] / min(len(members), len(self.communities[b])) >= alpha:
                    return a, b
        return None

    def _absorb(self, a: int, b: int) -> set[int]:
        """Fold community ``b`` into ``a``; returns ids now overlapping ``a``."""
        for v in self.communities.pop(b):
            self.node_index[v].discard(b)
            self.node_index[v].add(a)
            self.communities[a].add(v)
        touched: set[int] = set()
        for v in self.communities[a]:
            touched.update(self.node_index[v])
        touched.discard(a)
        return touched

    def as_sets(self) -> list[frozenset[int]]:
        """Communities in id order."""
        return [frozenset(self.communities[cid]) for cid in self.ids()]

    def check(self) -> None:
        """Raise AssertionError if the two indexes disagree or a community is empty."""
        for cid, members in self.communities.items():
            assert members, f"community {cid} is empty"
            for v in members:
                assert cid in self.node_index[v], f"node {v} missing back-reference to {cid}"
        for v, cids in enumerate(self.node_index):
            for cid in cids:
                assert v in self.communities.get(cid, ()), f"stale index {v} -> {cid}"
        assert sum(map(len, self.communities.values())) == sum(map(len, self.node_index))


def remove_node_from_all(cover: Cover, v: int) -> frozenset[int]:
    return cover.remove_node_from_all(v)


def neighboring_communities(cover: Cover, graph: Graph, v: int) -> set[int]:
    return cover.neighboring_communities(graph, v)


def merge_overlapping(cover: Cover, alpha: float) -> bool:
    return cover.merge_overlapping(alpha)


def read_cover(stream: IO[str] | Iterable[str]) -> list[list[str]]:
    """Parse a cover file: one community per line, whitespace-separated labels."""
    communities = []
    for line in stream:
        tokens = line.split()
        if tokens and not tokens[0].startswith("#"):
            communities.append(list(dict.fromkeys(tokens)))
    return communities


def write_cover(stream: IO[str], cover: Cover, labels: tuple[str, ...] | list[str]) -> None:
    """Write communities with original labels.

    Output is canonical: members ascend by node id, lines are ordered by their
    member id lists, so equal covers produce identical bytes.
    """
    rows = sorted(sorted(members) for members in cover.communities.values())
    for row in rows:
        stream.write(" ".join(labels[v] for v in row) + "\n")

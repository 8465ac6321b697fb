"""Extended modularity and WOCC: whole-cover values, per-node gains, selection."""

from __future__ import annotations

import enum
from collections.abc import Collection

from .cover import Cover
from .graph import Graph

DEFAULT_TR_RATE = 5.0


class ObjectiveKind(str, enum.Enum):
    QEXT = "qext"
    WOCC = "wocc"


class MembershipError(RuntimeError):
    """A gain was requested for a node that still holds memberships."""


def select_objective(graph: Graph, tr_rate: float = DEFAULT_TR_RATE) -> ObjectiveKind:
    """WOCC when the graph has at least ``tr_rate`` distinct triangles per node.

    Counting each triangle once (not once per corner) keeps sparse
    average-degree-10 benchmark graphs, whose rate is about 2-3.5, on
    extended modularity.
    """
    if tr_rate <= 0:
        raise ValueError(f"tr_rate must be positive, got {tr_rate}")
    rate = graph.distinct_triangle_rate()
    return ObjectiveKind.WOCC if rate >= tr_rate else ObjectiveKind.QEXT


# --- extended modularity -------------------------------------------------------

def q_ext(graph: Graph, cover: Cover) -> float:
    """Extended modularity of ``cover``.

    The inner sum runs over ordered pairs including i == j, so a partition
    gives exactly the standard modularity. Nodes in no community count as
    singletons.
    """
    m2 = 2 * graph.edge_count
    if m2 == 0:
        raise ValueError("extended modularity is undefined on a graph with no edges")
    adj, deg = graph.adj, graph.degree
    inv_o = [1.0 / len(c) if c else 1.0 for c in cover.node_index]
    total = 0.0
    for cid in cover.ids():
        members = cover.members(cid)
        internal = 0.0
        weighted = 0.0
        for i in members:
            weighted += deg[i] * inv_o[i]
            internal += inv_o[i] * sum(inv_o[j] for j in adj[i] if j in members)
        total += internal - weighted * weighted / m2
    for v, c in enumerate(cover.node_index):
        if not c:
            total -= deg[v] * deg[v] / m2
    return total / m2


def delta_q_ext(graph: Graph, cover: Cover, v: int, cid: int) -> float:
    """Surrogate gain of adding a detached node ``v`` to community ``cid``:
    ``sum_{i in C} (A_iv - k_i k_v / 2|E|) / O_i``.
    """
    if cover.memberships(v):
        raise MembershipError(f"node {v} must be detached before computing gains")
    m2 = 2 * graph.edge_count
    if m2 == 0:
        raise ValueError("extended modularity is undefined on a graph with no edges")
    adj_v, k_v, deg = graph.adj[v], graph.degree[v], graph.degree
    gain = 0.0
    for i in sorted(cover.members(cid)):
        a = 1.0 if i in adj_v else 0.0
        gain += (a - deg[i] * k_v / m2) / cover.overlap_count(i)
    return gain


# --- WCC / WOCC ----------------------------------------------------------------

def _wcc_term(t_s: int, t_v: int, vt_v: int, others: int, partners_in: int) -> float:
    # others = |S \ {v}|, partners_in = vt(v, S); vt(v, V \ S) = vt_v - partners_in
    if t_v == 0 or t_s == 0:
        return 0.0
    return (t_s / t_v) * vt_v / (others + vt_v - partners_in)


def wcc_node(graph: Graph, v: int, nodes: Collection[int]) -> float:
    """How strongly ``v``'s triangles concentrate inside ``nodes``, in [0, 1]."""
    s = set(nodes)
    s.discard(v)
    return _wcc_term(
        graph.triangles_in_set(v, s),
        graph.node_triangles[v],
        len(graph.triangle_partners[v]),
        len(s),
        graph.partners_in_set(v, s),
    )


def wcc_community(graph: Graph, nodes: Collection[int]) -> float:
    if not nodes:
        raise ValueError("WCC of an empty community is undefined")
    s = set(nodes)
    return sum(wcc_node(graph, v, s) for v in sorted(s)) / len(s)


def _unnormalized(graph: Graph, nodes: Collection[int]) -> float:
    s = set(nodes)
    return sum(wcc_node(graph, u, s) for u in sorted(s))


def wocc_cover(graph: Graph, cover: Cover) -> float:
    """Size-weighted mean community WCC, normalised by the total membership count."""
    total_size = sum(cover.size(cid) for cid in cover.ids())
    if total_size == 0:
        raise ValueError("WOCC of an empty cover is undefined")
    return sum(_unnormalized(graph, cover.members(cid)) for cid in cover.ids()) / total_size


def delta_wocc(graph: Graph, cover: Cover, v: int, cid: int) -> float:
    """Change of ``sum_{u in C} WCC(u, C)`` when detached ``v`` joins ``cid``."""
    if cover.memberships(v):
        raise MembershipError(f"node {v} must be detached before computing gains")
    members = cover.members(cid)
    return _unnormalized(graph, members | {v}) - _unnormalized(graph, members)


# --- incremental gain trackers used by the search ------------------------------
#
# Both trackers own every membership change made during a run so their caches
# stay in sync with the cover. After bulk edits (merge) call rebuild().


class QExtTracker:
    """Maintains ``sum_{i in C} k_i / O_i`` per community."""

    kind = ObjectiveKind.QEXT

    def __init__(self, graph: Graph, cover: Cover):
        self.graph = graph
        self.cover = cover
        self.m2 = 2 * graph.edge_count
        self.rebuild()

    def rebuild(self) -> None:
        deg = self.graph.degree
        cover = self.cover
        self.weighted = {
            cid: sum(deg[i] / cover.overlap_count(i) for i in sorted(cover.members(cid)))
            for cid in cover.ids()
        }

    def _shift(self, v: int, sign: float) -> None:
        cids = self.cover.memberships(v)
        if cids:
            w = sign * self.graph.degree[v] / len(cids)
            for cid in cids:
                self.weighted[cid] += w

    def add(self, v: int, cid: int) -> None:
        self._shift(v, -1.0)
        self.cover.add_node(v, cid)
        self._shift(v, 1.0)

    def remove(self, v: int, cid: int) -> None:
        self._shift(v, -1.0)
        self.cover.remove_node(v, cid)
        if cid not in self.cover:
            del self.weighted[cid]
        self._shift(v, 1.0)

    def new_community(self, members: list[int], cid: int | None = None) -> int:
        for v in members:
            self._shift(v, -1.0)
        cid = self.cover.add_community(members, cid)
        self.weighted[cid] = 0.0
        for v in members:
            self._shift(v, 1.0)
        return cid

    def gains(self, v: int, own_overlap: int = 1) -> dict[int, float]:
        """Gain of ``v`` for every neighbouring community it is not in.

        Gains are divided by ``own_overlap`` (community-centric search passes
        the node's current O_v; node-centric uses 1).
        """
        if self.m2 == 0:
            return {}
        cover = self.cover
        own = cover.memberships(v)
        edge_part: dict[int, float] = {}
        for i in sorted(self.graph.adj[v]):
            cids = cover.memberships(i)
            if cids:
                w = 1.0 / len(cids)
                for cid in cids:
                    if cid not in own:
                        edge_part[cid] = edge_part.get(cid, 0.0) + w
        scale = self.graph.degree[v] / self.m2
        return {
            cid: (edge_part[cid] - scale * self.weighted[cid]) / own_overlap
            for cid in sorted(edge_part)
        }

    def gain(self, v: int, cid: int, own_overlap: int = 1) -> float:
        if self.m2 == 0:
            return 0.0
        cover = self.cover
        edge_part = sum(
            1.0 / cover.overlap_count(i) for i in sorted(self.graph.adj[v]) if cid in cover.memberships(i)
        )
        return (edge_part - self.graph.degree[v] / self.m2 * self.weighted[cid]) / own_overlap


class WoccTracker:
    """Caches t(u, C) and vt(u, C) for every member u of every community C."""

    kind = ObjectiveKind.WOCC

    def __init__(self, graph: Graph, cover: Cover):
        self.graph = graph
        self.cover = cover
        self.tri_total = graph.node_triangles
        self.partners = graph.triangle_partners
        self.partner_total = tuple(len(p) for p in self.partners)
        self.rebuild()

    def rebuild(self) -> None:
        self.tri: dict[int, dict[int, int]] = {}
        self.par: dict[int, dict[int, int]] = {}
        self.score: dict[int, float] = {}
        for cid in self.cover.ids():
            self._recount(cid)

    def _recount(self, cid: int) -> None:
        g = self.graph
        members = self.cover.members(cid)
        self.tri[cid] = {u: g.triangles_in_set(u, members) for u in members}
        self.par[cid] = {u: g.partners_in_set(u, members) for u in members}
        self._rescore(cid)

    def _term(self, u: int, t: int, p: int, others: int) -> float:
        return _wcc_term(t, self.tri_total[u], self.partner_total[u], others, p)

    def _rescore(self, cid: int) -> None:
        tri, par = self.tri[cid], self.par[cid]
        others = len(tri) - 1
        self.score[cid] = sum(self._term(u, tri[u], par[u], others) for u in sorted(tri))

    def _contacts(self, v: int, members: set[int]) -> dict[int, int]:
        """For each neighbour u of v inside ``members``: triangles (u, v, x), x in members."""
        adj = self.graph.adj
        common = adj[v] & members
        return {u: len(adj[u] & common) for u in common}

    def add(self, v: int, cid: int) -> None:
        members = self.cover.members(cid)
        contacts = self._contacts(v, members)
        tri, par, pv = self.tri[cid], self.par[cid], self.partners[v]
        for u, c in contacts.items():
            tri[u] += c
            if u in pv:
                par[u] += 1
        tri[v] = sum(contacts.values()) // 2
        par[v] = self.graph.partners_in_set(v, members)
        self.cover.add_node(v, cid)
        self._rescore(cid)

    def remove(self, v: int, cid: int) -> None:
        self.cover.remove_node(v, cid)
        if cid not in self.cover:
            del self.tri[cid], self.par[cid], self.score[cid]
            return
        contacts = self._contacts(v, self.cover.members(cid))
        tri, par, pv = self.tri[cid], self.par[cid], self.partners[v]
        for u, c in contacts.items():
            tri[u] -= c
            if u in pv:
                par[u] -= 1
        del tri[v], par[v]
        self._rescore(cid)

    def new_community(self, members: list[int], cid: int | None = None) -> int:
        cid = self.cover.add_community(members, cid)
        self._recount(cid)
        return cid

    def gain(self, v: int, cid: int, own_overlap: int = 1) -> float:
        members = self.cover.members(cid)
        contacts = self._contacts(v, members)
        tri, par, pv = self.tri[cid], self.par[cid], self.partners[v]
        others = len(members)
        total = self._term(v, sum(contacts.values()) // 2, self.graph.partners_in_set(v, members), others)
        for u in sorted(members):
            t = tri[u] + contacts.get(u, 0)
            p = par[u] + (1 if u in pv else 0)
            total += self._term(u, t, p, others)
        return total - self.score[cid]

    def gains(self, v: int, own_overlap: int = 1) -> dict[int, float]:
        own = self.cover.memberships(v)
        cids = self.cover.neighboring_communities(self.graph, v) - own
        return {cid: self.gain(v, cid) for cid in sorted(cids)}


def make_tracker(kind: ObjectiveKind, graph: Graph, cover: Cover) -> QExtTracker | WoccTracker:
    return QExtTracker(graph, cover) if kind is ObjectiveKind.QEXT else WoccTracker(graph, cover)


def objective_value(kind: ObjectiveKind, graph: Graph, cover: Cover) -> float:
    """Whole-cover value of the chosen objective (0.0 for an edgeless graph)."""
    if graph.edge_count == 0:
        return 0.0
    if kind is ObjectiveKind.QEXT:
        return q_ext(graph, cover)
    return wocc_cover(graph, cover)

"""Local-search driver: node-centric main loop, community-centric variant, beta sweep."""

from __future__ import annotations

import enum
import logging
import random
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .cover import Cover
from .graph import Graph
from .objectives import (
    DEFAULT_TR_RATE,
    ObjectiveKind,
    make_tracker,
    objective_value,
    select_objective,
)

log = logging.getLogger(__name__)


class SearchMode(str, enum.Enum):
    NODE = "node"
    COMMUNITY = "community"


@dataclass(frozen=True)
class AlgorithmConfig:
    beta: float = 1.0
    alpha: float = 0.8
    max_iter: int = 20
    tr_rate: float = DEFAULT_TR_RATE
    objective: ObjectiveKind | None = None  # None: pick by triangle rate
    mode: SearchMode = SearchMode.NODE
    rng_seed: int = 0

    def __post_init__(self):
        if not self.beta >= 1:
            raise ValueError(f"beta must be >= 1, got {self.beta}")
        if not 0 < self.alpha <= 1:
            raise ValueError(f"alpha must lie in (0, 1], got {self.alpha}")
        if self.max_iter < 1:
            raise ValueError(f"max_iter must be >= 1, got {self.max_iter}")
        if not self.tr_rate > 0:
            raise ValueError(f"tr_rate must be positive, got {self.tr_rate}")


@dataclass
class RunReport:
    cover: Cover
    iterations: int
    converged: bool
    objective: ObjectiveKind
    objective_value: float
    beta: float


def initialize_cover(graph: Graph, objective: ObjectiveKind) -> Cover:
    """Singletons for extended modularity; clustering-coefficient seeding for WOCC."""
    cover = Cover(graph.n)
    if objective is ObjectiveKind.QEXT:
        for v in range(graph.n):
            cover.add_community([v])
        return cover
    order = sorted(range(graph.n), key=lambda v: (-graph.clustering_coefficient(v), v))
    placed = [False] * graph.n
    for v in order:
        if placed[v]:
            continue
        members = [v] + [u for u in graph.neighbors(v) if not placed[u]]
        for u in members:
            placed[u] = True
        cover.add_community(members)
    return cover


def resolve_objective(graph: Graph, config: AlgorithmConfig) -> ObjectiveKind:
    if config.objective is not None:
        return config.objective
    return select_objective(graph, config.tr_rate)


def run(graph: Graph, config: AlgorithmConfig) -> RunReport:
    """Run the search in the mode given by ``config``."""
    if graph.n == 0:
        raise ValueError("cannot detect communities in an empty graph")
    kind = resolve_objective(graph, config)
    cover = initialize_cover(graph, kind)
    tracker = make_tracker(kind, graph, cover)
    rng = random.Random(config.rng_seed)
    sweep = _node_pass if config.mode is SearchMode.NODE else _community_pass

    iterations = 0
    stable = 0
    while True:
        stable = sweep(graph, tracker, config.beta, rng)
        if cover.merge_overlapping(config.alpha):
            stable = 0
        # Incremental float caches are refreshed once per external iteration.
        tracker.rebuild()
        iterations += 1
        if stable == graph.n or iterations == config.max_iter:
            break

    converged = stable == graph.n
    value = objective_value(kind, graph, cover)
    log.debug("beta=%g: %d iterations, converged=%s, %s=%.6f",
              config.beta, iterations, converged, kind.value, value)
    return RunReport(cover, iterations, converged, kind, value, config.beta)


def _choose(gains: dict[int, float], beta: float) -> list[int]:
    """Communities whose gain is within a factor ``beta`` of the best positive gain."""
    if not gains:
        return []
    best = max(gains.values())
    if best <= 0:
        return []
    return [cid for cid, g in gains.items() if g * beta >= best]


def _node_pass(graph: Graph, tracker, beta: float, rng: random.Random) -> int:
    cover = tracker.cover
    order = list(range(graph.n))
    rng.shuffle(order)
    stable = 0
    for v in order:
        prior = frozenset(cover.memberships(v))
        # An emptied singleton is re-created under its old id if v ends up alone again.
        own_singleton = next((cid for cid in prior if cover.size(cid) == 1), None)
        for cid in sorted(prior):
            tracker.remove(v, cid)
        chosen = _choose(tracker.gains(v), beta)
        if chosen:
            for cid in chosen:
                tracker.add(v, cid)
        else:
            tracker.new_community([v], own_singleton)
        if frozenset(cover.memberships(v)) == prior:
            stable += 1
    return stable


def _community_pass(graph: Graph, tracker, beta: float, rng: random.Random) -> int:
    cover = tracker.cover
    before = [frozenset(c) for c in cover.node_index]
    visit = cover.ids()
    rng.shuffle(visit)
    adj = graph.adj
    for cid in visit:
        if cid not in cover:
            continue
        members = cover.members(cid)
        frontier: set[int] = set()
        for u in members:
            frontier.update(adj[u])
        frontier -= members
        gains = {
            v: tracker.gain(v, cid, max(cover.overlap_count(v), 1))
            for v in sorted(frontier)
        }
        for v in _choose(gains, beta):
            tracker.add(v, cid)
        _clean_up(tracker, cid)

    return sum(1 for v in range(graph.n) if frozenset(cover.node_index[v]) == before[v])


def _clean_up(tracker, cid: int) -> None:
    """Single eviction pass: members whose rejoin gain is no longer positive leave."""
    cover = tracker.cover
    for u in sorted(cover.members(cid)):
        if cid not in cover or cover.size(cid) == 1:
            return
        tracker.remove(u, cid)
        gain = tracker.gain(u, cid, max(cover.overlap_count(u), 1))
        if gain > 0:
            tracker.add(u, cid)
        elif not cover.memberships(u):
            tracker.new_community([u])


def run_community_centric(graph: Graph, config: AlgorithmConfig) -> RunReport:
    return run(graph, _with(config, mode=SearchMode.COMMUNITY))


def _with(config: AlgorithmConfig, **changes) -> AlgorithmConfig:
    fields = {**config.__dict__, **changes}
    return AlgorithmConfig(**fields)


def default_betas(kind: ObjectiveKind) -> list[float]:
    """12 log-spaced values on [1.1, 20] for WOCC; 13 linear on [1.01, 1.4] for Q^E."""
    if kind is ObjectiveKind.WOCC:
        return [float(b) for b in np.geomspace(1.1, 20.0, 12)]
    return [float(b) for b in np.linspace(1.01, 1.4, 13)]


def sweep_reports(
    graph: Graph, config: AlgorithmConfig, betas: Sequence[float] | None = None
) -> list[RunReport]:
    """One run per beta; run ``i`` uses seed ``rng_seed + i``."""
    kind = resolve_objective(graph, config)
    if betas is None:
        betas = default_betas(kind)
    if not betas:
        raise ValueError("beta list must be nonempty")
    return [
        run(graph, _with(config, beta=b, objective=kind, rng_seed=config.rng_seed + i))
        for i, b in enumerate(betas)
    ]


def best_report(reports: Sequence[RunReport]) -> RunReport:
    best = reports[0]
    for report in reports[1:]:
        if report.objective_value > best.objective_value:
            best = report
    return best


def beta_sweep(
    graph: Graph, config: AlgorithmConfig, betas: Sequence[float] | None = None
) -> RunReport:
    """Best run (by whole-cover objective value) over a grid of beta values."""
    return best_report(sweep_reports(graph, config, betas))

"""Cover comparison: overlapping NMI, Omega index, average F1, ground-truth matching.

Covers are plain sequences of node collections; nodes may be any hashable.
"""

from __future__ import annotations

import math
from collections import Counter
from collections.abc import Collection, Hashable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

CoverLike = Sequence[Collection[Hashable]]


@dataclass(frozen=True)
class EvaluationReport:
    nmi: float
    omega: float
    avg_f1: float
    matched_cover_size: int


def _universe_check(a: CoverLike, b: CoverLike, n: int) -> None:
    seen: set[Hashable] = set()
    for cover in (a, b):
        for community in cover:
            seen.update(community)
    if len(seen) > n:
        raise ValueError(f"covers mention {len(seen)} distinct nodes but the universe has {n}")


# --- NMI -------------------------------------------------------------------------

def _h(p: float) -> float:
    return -p * math.log2(p) if p > 0 else 0.0


def _entropy(size: int, n: int) -> float:
    return _h(size / n) + _h((n - size) / n)


def _normalized_conditional(xs: list[frozenset], ys: list[frozenset], n: int) -> float:
    """Mean over X_k of H(X_k | Y) / H(X_k), with the complement-matching guard."""
    total = 0.0
    for x in xs:
        hx = _entropy(len(x), n)
        best = None
        for y in ys:
            n11 = len(x & y)
            n10 = len(x) - n11
            n01 = len(y) - n11
            n00 = n - n11 - n10 - n01
            p11, p10, p01, p00 = n11 / n, n10 / n, n01 / n, n00 / n
            if _h(p11) + _h(p00) < _h(p01) + _h(p10):
                continue
            cond = _h(p11) + _h(p10) + _h(p01) + _h(p00) - _entropy(len(y), n)
            if best is None or cond < best:
                best = cond
        if hx == 0:
            # empty or full-universe community: only an identical partner explains it
            total += 0.0 if any(y == x for y in ys) else 1.0
        elif best is None:
            total += 1.0
        else:
            total += max(best, 0.0) / hx
    return total / len(xs)


def nmi(cover_a: CoverLike, cover_b: CoverLike, n: int) -> float:
    """Overlapping NMI over ``n`` nodes."""
    _universe_check(cover_a, cover_b, n)
    xs = [frozenset(c) for c in cover_a]
    ys = [frozenset(c) for c in cover_b]
    if not xs or not ys:
        raise ValueError("NMI needs two nonempty covers")
    if any(not c for c in xs + ys):
        raise ValueError("covers must not contain empty communities")
    value = 1.0 - 0.5 * (_normalized_conditional(xs, ys, n) + _normalized_conditional(ys, xs, n))
    return min(1.0, max(0.0, value))


# --- Omega index -----------------------------------------------------------------

def _pair_counts(cover: CoverLike) -> Counter:
    counts: Counter = Counter()
    for community in cover:
        members = sorted(set(community), key=repr)
        counts.update(combinations(members, 2))
    return counts


def omega(cover_a: CoverLike, cover_b: CoverLike, n: int) -> float:
    """Omega index: chance-corrected agreement on per-pair co-membership counts."""
    if n < 2:
        raise ValueError("omega needs at least two nodes")
    _universe_check(cover_a, cover_b, n)
    pairs = n * (n - 1) // 2
    ca, cb = _pair_counts(cover_a), _pair_counts(cover_b)

    touched = ca.keys() | cb.keys()
    agree = pairs - len(touched) + sum(1 for p in touched if ca[p] == cb[p])

    hist_a = Counter(ca.values())
    hist_b = Counter(cb.values())
    hist_a[0] = pairs - len(ca)
    hist_b[0] = pairs - len(cb)
    expected_num = sum(hist_a[j] * hist_b[j] for j in hist_a)

    if expected_num == pairs * pairs:
        if agree == pairs:
            return 1.0
        raise ValueError("omega index is undefined: expected agreement is 1")
    # (observed - expected) / (1 - expected) with both scaled by pairs^2: one rounding
    return (agree * pairs - expected_num) / (pairs * pairs - expected_num)


# --- average F1 ------------------------------------------------------------------

def _f1_ratio(c1: frozenset, c2: frozenset) -> Fraction:
    # harmonic mean of precision and recall = 2|c1 & c2| / (|c1| + |c2|)
    return Fraction(2 * len(c1 & c2), len(c1) + len(c2))


def f1_score(c1: Collection[Hashable], c2: Collection[Hashable]) -> float:
    a, b = frozenset(c1), frozenset(c2)
    if not a and not b:
        return 0.0
    return 2 * len(a & b) / (len(a) + len(b))


def _best_f1(community: frozenset, other: list[frozenset]) -> Fraction:
    best = max(other, key=lambda c: f1_score(community, c))
    return _f1_ratio(community, best)


def avg_f1(cover_a: CoverLike, cover_b: CoverLike) -> float:
    """Mean of the two directional best-match F1 averages, computed exactly."""
    a = [frozenset(c) for c in cover_a]
    b = [frozenset(c) for c in cover_b]
    if not a or not b:
        raise ValueError("average F1 needs two nonempty covers")
    if any(not c for c in a + b):
        raise ValueError("covers must not contain empty communities")
    left = sum((_best_f1(c, b) for c in a), Fraction(0)) / (2 * len(a))
    right = sum((_best_f1(c, a) for c in b), Fraction(0)) / (2 * len(b))
    return float(left + right)


def match_ground_truth(detected: CoverLike, truth: CoverLike) -> list[frozenset]:
    """For each truth community keep the detected community of highest F1.

    Ties go to the earliest detected community; duplicates are dropped and the
    result keeps detected order.
    """
    found = [frozenset(c) for c in detected]
    if not found:
        raise ValueError("detected cover is empty")
    picked: set[int] = set()
    for g in truth:
        g = frozenset(g)
        scores = [f1_score(g, c) for c in found]
        picked.add(max(range(len(found)), key=lambda i: (scores[i], -i)))
    return [found[i] for i in sorted(picked)]


def evaluate(
    detected: CoverLike, truth: CoverLike, n: int | None = None, match: bool = False
) -> EvaluationReport:
    """Score ``detected`` against ``truth``; ``n`` defaults to the node union."""
    if n is None:
        n = len({v for cover in (detected, truth) for c in cover for v in c})
    if match:
        detected = match_ground_truth(detected, truth)
    return EvaluationReport(
        nmi=nmi(detected, truth, n),
        omega=omega(detected, truth, n),
        avg_f1=avg_f1(detected, truth),
        matched_cover_size=len(detected),
    )

"""Brute-force minimum-lp-norm t-spanner oracle and greedy-ratio checks.

The oracle enumerates edge subsets, so it is the independent ground truth
the rest of the package is validated against.  Exhaustive mode walks every
subset; branch-and-bound mode prunes on two sound tests (the norm of the
degrees already forced, and spannability of each excluded edge inside the
still-available graph) and re-verifies every surviving leaf, so both modes
return the same optimum.  Ties break to the lexicographically smallest kept
edge set, making results reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .graph_core import (
    Graph,
    INFINITY,
    hop_distance_bounded,
    layer_profile,
    lp_norm,
    weighted_distance_bounded,
)
from .greedy import Spanner, greedy_spanner, verify_stretch

__all__ = [
    "BallGrowthReport",
    "OracleResult",
    "OracleSizeError",
    "ball_growth_check",
    "greedy_ratio",
    "optimal_spanner",
    "two_path_count",
]

EXHAUSTIVE_EDGE_LIMIT = 24
PRUNED_EDGE_LIMIT = 40


class OracleSizeError(ValueError):
    """Instance too large for exhaustive search."""


@dataclass(frozen=True)
class OracleResult:
    optimum: Spanner
    optimum_norm: float
    explored: int
    pruned: int


def _norm_of_degrees(degrees, p) -> float:
    if p is INFINITY:
        return float(max(degrees, default=0))
    total = math.fsum(d ** float(p) for d in degrees if d)
    return total ** (1.0 / float(p)) if total else 0.0


def optimal_spanner(g: Graph, t: int, p, prune: bool = True) -> OracleResult:
    """Globally minimum-norm t-spanner by exhaustive search.

    ``prune=False`` forces plain subset enumeration (only up to 24 edges);
    ``prune=True`` adds branch-and-bound and stretches to 40 edges.  Edges
    are ordered with the greedy spanner's complement first, which lets the
    norm bound bite early.
    """
    m = g.m
    if prune and m > PRUNED_EDGE_LIMIT:
        raise OracleSizeError(f"{m} edges exceeds the pruned limit {PRUNED_EDGE_LIMIT}")
    if not prune and m > EXHAUSTIVE_EDGE_LIMIT:
        raise OracleSizeError(
            f"{m} edges exceeds the exhaustive limit {EXHAUSTIVE_EDGE_LIMIT}"
        )
    greedy_edges = set(greedy_spanner(g, t).kept_edges)
    order = [e for e in g.edges if e not in greedy_edges] + [
        e for e in g.edges if e in greedy_edges
    ]

    best_norm = math.inf
    best_edges: tuple | None = None
    explored = 0
    pruned = 0

    def consider(kept: tuple) -> None:
        nonlocal best_norm, best_edges
        sub = g.subgraph(kept)
        norm = lp_norm(sub, p)
        if norm > best_norm:
            return
        if not verify_stretch(g, Spanner(g, tuple(sorted(kept)), t, "ORACLE"), t):
            return
        canon = tuple(sorted(kept))
        if norm < best_norm - 1e-15 or (
            math.isclose(norm, best_norm, rel_tol=1e-12)
            and (best_edges is None or canon < best_edges)
        ):
            best_norm = min(norm, best_norm)
            best_edges = canon

    if not prune:
        for mask in range(1 << m):
            explored += 1
            kept = tuple(order[i] for i in range(m) if mask >> i & 1)
            consider(kept)
    else:
        # start from the greedy solution as the incumbent
        consider(tuple(greedy_edges))
        explored += 1
        degrees = [0] * g.n
        kept: list = []

        def excluded_still_spannable(idx: int) -> bool:
            # the edge order[idx] was dropped; it must be spannable using the
            # kept edges plus every undecided one
            u, v = order[idx]
            avail = kept + order[idx + 1 :]
            adj: dict[int, list[int]] = {}
            for a, b in avail:
                adj.setdefault(a, []).append(b)
                adj.setdefault(b, []).append(a)
            adj.setdefault(u, [])
            adj.setdefault(v, [])
            if g.weighted:
                w = g.edge_length(u, v)
                lengths = g.lengths
                budget = t * w
                return (
                    weighted_distance_bounded(
                        _PaddedAdj(adj, g.n), lengths, u, v, budget
                    )
                    <= budget * (1 + 1e-12)
                )
            return hop_distance_bounded(_PaddedAdj(adj, g.n), u, v, t) <= t

        def dfs(idx: int) -> None:
            nonlocal explored, pruned
            explored += 1
            partial_norm = _norm_of_degrees(degrees, p)
            if partial_norm > best_norm + 1e-12:
                pruned += 1
                return
            if idx == m:
                consider(tuple(kept))
                return
            u, v = order[idx]
            # branch 1: drop the edge (complement-first order favors drops)
            if excluded_still_spannable(idx):
                dfs(idx + 1)
            else:
                pruned += 1
            # branch 2: keep the edge
            kept.append(order[idx])
            degrees[u] += 1
            degrees[v] += 1
            dfs(idx + 1)
            degrees[u] -= 1
            degrees[v] -= 1
            kept.pop()

        dfs(0)

    assert best_edges is not None, "the full graph always spans itself"
    spanner = Spanner(base=g, kept_edges=best_edges, t=t, provenance="ORACLE")
    return OracleResult(
        optimum=spanner,
        optimum_norm=best_norm,
        explored=explored,
        pruned=pruned,
    )


class _PaddedAdj:
    """Adjacency view over a dict that tolerates untouched vertex ids."""

    def __init__(self, adj: dict, n: int):
        self._adj = adj
        self._n = n

    def __getitem__(self, v: int):
        return self._adj.get(v, ())

    def __len__(self) -> int:
        return self._n


def greedy_ratio(g: Graph, t: int, p) -> float:
    """Norm ratio of the greedy spanner to the oracle optimum (>= 1)."""
    greedy_norm = lp_norm(greedy_spanner(g, t).graph(), p)
    result = optimal_spanner(g, t, p)
    if result.optimum_norm == 0:
        return 1.0
    return greedy_norm / result.optimum_norm


@dataclass(frozen=True)
class BallGrowthReport:
    alpha: float
    inductive_violations: tuple
    optimal_bound_violations: tuple

    @property
    def inductive_ok(self) -> bool:
        return not self.inductive_violations


def ball_growth_check(h: Spanner | Graph, p2_norm: float, r_max: int) -> BallGrowthReport:
    """Ball growth against the 2-norm: report, never raise.

    Per vertex and radius: the base case |B(v,1)| <= 1 + ||h||_2 (the +1 is
    the center itself), the average-degree step
    |B(v,r+1)| <= sqrt(|B(v,r)|) * ||h||_2 for r >= 1 (exact for any graph
    with an edge), and the stronger 1 + n**((2 - 2**(1-r)) alpha) bound that
    only holds for minimum-2-norm spanners (reported, so callers assert it
    when they know h is optimal).
    """
    hg = h.graph() if isinstance(h, Spanner) else h
    n = hg.n
    alpha = math.log(p2_norm, n) if p2_norm > 0 and n > 1 else 0.0
    inductive = []
    optimal = []
    for v in range(n):
        counts = layer_profile(hg, v, r_max + 1).counts
        balls = []
        acc = 0
        for c in counts:
            acc += c
            balls.append(acc)
        if p2_norm > 0:
            if balls[1] > 1 + p2_norm * (1 + 1e-12):
                inductive.append((v, 1, balls[1], 1 + p2_norm))
            for r in range(1, r_max):
                bound = math.sqrt(balls[r]) * p2_norm
                if balls[r + 1] > bound * (1 + 1e-12):
                    inductive.append((v, r + 1, balls[r + 1], bound))
        for r in range(1, min(r_max, len(balls) - 1) + 1):
            bound = 1 + n ** ((2 - 2 ** (1 - r)) * alpha)
            if balls[r] > bound * (1 + 1e-12):
                optimal.append((v, r, balls[r], bound))
    return BallGrowthReport(
        alpha=alpha,
        inductive_violations=tuple(inductive),
        optimal_bound_violations=tuple(optimal),
    )


def two_path_count(h: Graph) -> int:
    """Number of ordered 2-walks counted by their middle vertex: sum d(v)^2.

    The count includes immediate backtracks (u = v), which makes the
    middle-vertex identity unconditional.  When the girth is at least 5,
    distinct-endpoint 2-walks biject with ordered pairs at distance exactly
    2, and the function cross-checks sum d(v)^2 == #(distance-2 pairs) + 2|E|
    by endpoint enumeration before returning.
    """
    middle = sum(d * d for d in h.degrees())
    from .graph_core import girth_at_least

    if girth_at_least(h, 5):
        distance2 = 0
        for v in range(h.n):
            distance2 += layer_profile(h, v, 2).d(2)
        assert middle == distance2 + 2 * h.m, (
            f"2-walk counts disagree on a girth >= 5 graph: {middle} vs "
            f"{distance2} + {2 * h.m}"
        )
    return middle

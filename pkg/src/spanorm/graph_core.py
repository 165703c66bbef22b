"""Immutable undirected graphs, hop-layer profiles, girth, and lp degree norms.

Vertices are dense integer ids ``0..n-1``.  Edges are unordered pairs with
optional strictly positive lengths; a graph without lengths is treated as
unit-length.  Hop layers (``layer_profile``) always ignore edge lengths,
even on weighted graphs; weighted shortest paths are a separate code path
(``shortest_paths`` with ``use_lengths=True``).
"""

from __future__ import annotations

import heapq
import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

__all__ = [
    "Graph",
    "GraphError",
    "INFINITY",
    "LayerProfile",
    "UNBOUNDED",
    "girth",
    "girth_at_least",
    "hop_distance_bounded",
    "layer_profile",
    "lp_norm",
    "parse_edge_list",
    "format_edge_list",
    "shortest_paths",
    "subset_norm",
    "weighted_distance_bounded",
]

# Relative tolerance for comparisons between weighted (float) distances.
LENGTH_RTOL = 1e-12

# Girth of a forest.  Compares naturally against any finite cycle length.
UNBOUNDED = math.inf


class GraphError(ValueError):
    """Raised for malformed graphs or out-of-range vertex ids."""


class _Infinity:
    """Distinguished lp-norm parameter for the max-degree norm."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "INFINITY"


INFINITY = _Infinity()


class Graph:
    """Immutable undirected graph on vertex ids ``0..n-1``.

    No self-loops, no parallel edges.  ``lengths`` maps each edge to a
    strictly positive length; ``None`` means unit lengths throughout.
    """

    __slots__ = ("n", "edges", "lengths", "_adj", "_degrees")

    def __init__(
        self,
        n: int,
        edges: Iterable[tuple[int, int]],
        lengths: Mapping[tuple[int, int], float] | None = None,
    ) -> None:
        if n < 0:
            raise GraphError(f"vertex count must be non-negative, got {n}")
        canon = []
        seen = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise GraphError(f"parallel edge {e}")
            seen.add(e)
            canon.append(e)
        canon.sort()
        self.n = n
        self.edges = tuple(canon)
        if lengths is not None:
            norm_len = {}
            for (u, v), w in lengths.items():
                e = (u, v) if u < v else (v, u)
                if e not in seen:
                    raise GraphError(f"length given for non-edge {e}")
                if not w > 0:
                    raise GraphError(f"non-positive length {w} on edge {e}")
                norm_len[e] = float(w)
            missing = seen - set(norm_len)
            if missing:
                raise GraphError(f"missing lengths for {len(missing)} edges")
            self.lengths = norm_len
        else:
            self.lengths = None
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        self._adj = tuple(tuple(a) for a in adj)
        self._degrees = tuple(len(a) for a in self._adj)

    # -- basic accessors ------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def weighted(self) -> bool:
        return self.lengths is not None

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        return self._adj

    def degree(self, v: int) -> int:
        return self._degrees[v]

    def degrees(self) -> tuple[int, ...]:
        """Degree vector indexed by vertex id (sum is always even)."""
        return self._degrees

    def edge_length(self, u: int, v: int) -> float:
        e = (u, v) if u < v else (v, u)
        if self.lengths is None:
            return 1.0
        return self.lengths[e]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def subgraph(self, keep_edges: Iterable[tuple[int, int]]) -> "Graph":
        """Graph on the same vertex set containing only ``keep_edges``."""
        kept = [(u, v) if u < v else (v, u) for u, v in keep_edges]
        own = set(self.edges)
        for e in kept:
            if e not in own:
                raise GraphError(f"{e} is not an edge of the base graph")
        if self.lengths is None:
            return Graph(self.n, kept)
        return Graph(self.n, kept, {e: self.lengths[e] for e in kept})

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return (
            self.n == other.n
            and self.edges == other.edges
            and self.lengths == other.lengths
        )

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        kind = "weighted" if self.weighted else "unit"
        return f"Graph(n={self.n}, m={self.m}, {kind})"


@dataclass(frozen=True)
class LayerProfile:
    """Hop-layer sizes ``d_0(v), d_1(v), ..., d_r(v)`` around ``source``."""

    source: int
    counts: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.counts or self.counts[0] != 1:
            raise GraphError("layer profile must start with d_0 = 1")

    def d(self, i: int) -> int:
        """Number of vertices exactly ``i`` hops away (0 beyond the radius)."""
        return self.counts[i] if i < len(self.counts) else 0

    def ball_size(self, r: int | None = None) -> int:
        if r is None:
            return sum(self.counts)
        return sum(self.counts[: r + 1])


# -- norms --------------------------------------------------------------


def _check_p(p) -> None:
    if p is INFINITY:
        return
    if not p >= 1:
        raise GraphError(f"norm parameter must satisfy p >= 1, got {p}")


def lp_norm(g: Graph, p) -> float:
    """lp norm of the degree vector of ``g``; 0 for an edgeless graph.

    ``p`` is a real >= 1 or the distinguished ``INFINITY`` (max degree).
    ``lp_norm(g, 1)`` equals exactly twice the edge count.
    """
    _check_p(p)
    degs = g.degrees()
    if p is INFINITY:
        return float(max(degs, default=0))
    if not g.edges:
        return 0.0
    if p == 1:
        return float(sum(degs))
    return math.fsum(d**p for d in degs if d) ** (1.0 / p)


def subset_norm(g: Graph, s: Iterable[int], p) -> float:
    """lp norm of the degree subvector of the vertices in ``s``.

    Degrees are taken in ``g`` itself, not in the induced subgraph.
    """
    _check_p(p)
    vs = list(s)
    for v in vs:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range for n={g.n}")
    degs = [g.degree(v) for v in vs]
    if p is INFINITY:
        return float(max(degs, default=0))
    if p == 1:
        return float(sum(degs))
    total = math.fsum(d**p for d in degs if d)
    return total ** (1.0 / p) if total else 0.0


# -- hop layers and distances --------------------------------------------


def layer_profile(g: Graph, v: int, r: int) -> LayerProfile:
    """BFS layer sizes around ``v`` by hop count, truncated at radius ``r``.

    Edge lengths are ignored here by definition.
    """
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range for n={g.n}")
    if r < 0:
        raise GraphError(f"radius must be non-negative, got {r}")
    counts = [1]
    seen = bytearray(g.n)
    seen[v] = 1
    frontier = [v]
    adj = g.adjacency()
    for _ in range(r):
        nxt = []
        for x in frontier:
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = 1
                    nxt.append(y)
        counts.append(len(nxt))
        frontier = nxt
    return LayerProfile(source=v, counts=tuple(counts))


def layer_counts(g: Graph, v: int, r: int) -> tuple[int, ...]:
    """Convenience: just the counts of ``layer_profile(g, v, r)``."""
    return layer_profile(g, v, r).counts


def shortest_paths(g: Graph, v: int, use_lengths: bool = True) -> list[float]:
    """Exact single-source distances from ``v``, ``math.inf`` if unreachable.

    With ``use_lengths=False`` (or on unit graphs) this is plain BFS hop
    distance; otherwise Dijkstra over the positive edge lengths.
    """
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range for n={g.n}")
    adj = g.adjacency()
    if not (use_lengths and g.weighted):
        # hop distances are exact integers; only "unreachable" is a float
        dist: list = [math.inf] * g.n
        dist[v] = 0
        q = deque([v])
        while q:
            x = q.popleft()
            dx = dist[x] + 1
            for y in adj[x]:
                if dist[y] == math.inf:
                    dist[y] = dx
                    q.append(y)
        return dist
    dist = [math.inf] * g.n
    dist[v] = 0.0
    heap = [(0.0, v)]
    while heap:
        dx, x = heapq.heappop(heap)
        if dx > dist[x]:
            continue
        for y in adj[x]:
            nd = dx + g.edge_length(x, y)
            if nd < dist[y]:
                dist[y] = nd
                heapq.heappush(heap, (nd, y))
    return dist


def hop_distance_bounded(
    adj: Sequence[Sequence[int]], u: int, v: int, cap: int
) -> float:
    """Hop distance from ``u`` to ``v`` if it is <= cap, else ``math.inf``.

    Works on a raw adjacency structure so callers can query evolving graphs
    (the greedy loop) without rebuilding Graph objects.
    """
    if u == v:
        return 0.0
    dist = {u: 0}
    frontier = [u]
    d = 0
    while frontier and d < cap:
        d += 1
        nxt = []
        for x in frontier:
            for y in adj[x]:
                if y not in dist:
                    if y == v:
                        return float(d)
                    dist[y] = d
                    nxt.append(y)
        frontier = nxt
    return math.inf


def weighted_distance_bounded(
    adj: Sequence[Sequence[int]],
    length: Mapping[tuple[int, int], float],
    u: int,
    v: int,
    cap: float,
) -> float:
    """Dijkstra distance from ``u`` to ``v`` if <= cap (with tolerance), else inf."""
    bound = cap * (1.0 + LENGTH_RTOL)
    dist = {u: 0.0}
    heap = [(0.0, u)]
    while heap:
        dx, x = heapq.heappop(heap)
        if x == v:
            return dx
        if dx > dist.get(x, math.inf) or dx > bound:
            continue
        for y in adj[x]:
            e = (x, y) if x < y else (y, x)
            nd = dx + length[e]
            if nd <= bound and nd < dist.get(y, math.inf):
                dist[y] = nd
                heapq.heappush(heap, (nd, y))
    return math.inf


# -- girth ----------------------------------------------------------------


def girth(g: Graph):
    """Length (edge count) of a shortest cycle; ``UNBOUNDED`` for forests.

    BFS from every vertex; any non-tree edge (x,y) closes a walk of length
    dist[x]+dist[y]+1 that contains a cycle no longer than itself, and for a
    root on a shortest cycle the bound is attained, so the minimum over all
    roots is exact.
    """
    best = math.inf
    adj = g.adjacency()
    n = g.n
    for s in range(n):
        dist = [-1] * n
        parent = [-1] * n
        dist[s] = 0
        q = deque([s])
        while q:
            x = q.popleft()
            if 2 * dist[x] + 1 >= best:
                break
            for y in adj[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    q.append(y)
                elif parent[x] != y and parent[y] != x:
                    cand = dist[x] + dist[y] + 1
                    if cand < best:
                        best = cand
    return best if best < math.inf else UNBOUNDED


def girth_at_least(g: Graph, k: int) -> bool:
    """True iff ``g`` has no cycle shorter than ``k`` edges.

    Truncated variant of :func:`girth` (search stops at depth k/2), so it
    stays cheap on large sparse graphs.
    """
    if k <= 3:
        return True
    limit = k - 1  # largest forbidden cycle length
    adj = g.adjacency()
    n = g.n
    dist = [-1] * n
    parent = [-1] * n
    stamp = [0] * n
    tick = 0
    for s in range(n):
        tick += 1
        dist[s] = 0
        parent[s] = -1
        stamp[s] = tick
        q = deque([s])
        while q:
            x = q.popleft()
            if 2 * dist[x] + 1 > limit:
                break
            for y in adj[x]:
                if stamp[y] != tick:
                    stamp[y] = tick
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    q.append(y)
                elif parent[x] != y and parent[y] != x:
                    if dist[x] + dist[y] + 1 <= limit:
                        return False
    return True


# -- edge-list interchange format ----------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse the interchange format: header ``n m`` then ``u v [w]`` lines.

    Comment lines start with ``#``.  A weight on any edge requires weights
    on all edges.
    """
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise GraphError("empty edge-list input")
    head = lines[0].split()
    if len(head) != 2:
        raise GraphError(f"expected header 'n m', got {lines[0]!r}")
    n, m = int(head[0]), int(head[1])
    if len(lines) - 1 != m:
        raise GraphError(f"header promises {m} edges, found {len(lines) - 1}")
    edges = []
    lengths: dict[tuple[int, int], float] = {}
    any_weight = False
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) not in (2, 3):
            raise GraphError(f"bad edge line {ln!r}")
        u, v = int(parts[0]), int(parts[1])
        e = (u, v) if u < v else (v, u)
        edges.append(e)
        if len(parts) == 3:
            any_weight = True
            lengths[e] = float(parts[2])
    if any_weight:
        if len(lengths) != len(edges):
            raise GraphError("mixed weighted and unweighted edge lines")
        return Graph(n, edges, lengths)
    return Graph(n, edges)


def format_edge_list(g: Graph) -> str:
    """Inverse of :func:`parse_edge_list`; deterministic edge order."""
    out = [f"{g.n} {g.m}"]
    for u, v in g.edges:
        if g.weighted:
            w = g.lengths[(u, v)]
            out.append(f"{u} {v} {w:.12g}")
        else:
            out.append(f"{u} {v}")
    return "\n".join(out) + "\n"

"""Shared brute-force oracles and tiny graph builders for the test suite.

Everything here is deliberately independent of the library internals it is
used to check: distances come from Floyd-Warshall, girth from exhaustive
simple-cycle search, and so on.
"""

from __future__ import annotations

import itertools
import math
import random

from spanorm.graph_core import Graph


def path_graph(k: int) -> Graph:
    return Graph(k, [(i, i + 1) for i in range(k - 1)])


def cycle_graph(k: int) -> Graph:
    return Graph(k, [(i, (i + 1) % k) for i in range(k)])


def complete_graph(k: int) -> Graph:
    return Graph(k, list(itertools.combinations(range(k), 2)))


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, 5 + i) for i in range(5)]
    return Graph(10, outer + inner + spokes)


def random_connected_graph(rng: random.Random, n: int, m: int) -> Graph:
    """Random connected graph: random spanning tree plus random extra edges."""
    assert m >= n - 1
    edges = set()
    order = list(range(n))
    rng.shuffle(order)
    for i in range(1, n):
        u = order[i]
        v = order[rng.randrange(i)]
        edges.add((min(u, v), max(u, v)))
    all_pairs = list(itertools.combinations(range(n), 2))
    rng.shuffle(all_pairs)
    for u, v in all_pairs:
        if len(edges) >= m:
            break
        edges.add((u, v))
    return Graph(n, sorted(edges))


def floyd_warshall(g: Graph) -> list[list[float]]:
    """All-pairs distances, independent of the library's BFS/Dijkstra."""
    n = g.n
    dist = [[math.inf] * n for _ in range(n)]
    for v in range(n):
        dist[v][v] = 0.0
    for u, v in g.edges:
        w = g.edge_length(u, v)
        dist[u][v] = min(dist[u][v], w)
        dist[v][u] = min(dist[v][u], w)
    for k in range(n):
        dk = dist[k]
        for i in range(n):
            dik = dist[i][k]
            if dik == math.inf:
                continue
            di = dist[i]
            for j in range(n):
                alt = dik + dk[j]
                if alt < di[j]:
                    di[j] = alt
    return dist


def brute_force_girth(g: Graph) -> float:
    """Shortest cycle length by DFS over all simple cycles (small graphs)."""
    best = math.inf
    adj = g.adjacency()

    def dfs(start: int, current: int, visited: set[int], depth: int) -> None:
        nonlocal best
        if depth >= best:
            return
        for nxt in adj[current]:
            if nxt == start and depth >= 2:
                best = min(best, depth + 1)
            elif nxt > start and nxt not in visited:
                visited.add(nxt)
                dfs(start, nxt, visited, depth + 1)
                visited.remove(nxt)

    for s in range(g.n):
        dfs(s, s, {s}, 0)
    return best


def is_t_spanner_all_pairs(g: Graph, h: Graph, t: float) -> bool:
    """All-pairs stretch check via Floyd-Warshall on both graphs."""
    dg = floyd_warshall(g)
    dh = floyd_warshall(h)
    for u in range(g.n):
        for v in range(g.n):
            if dg[u][v] == math.inf:
                if dh[u][v] != math.inf:
                    return False
            elif dh[u][v] > t * dg[u][v] * (1 + 1e-9):
                return False
    return True

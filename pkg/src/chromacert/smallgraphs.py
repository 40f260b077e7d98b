"""Exhaustive catalogues of small graphs up to isomorphism.

Canonical labelling is a refinement + branch-and-bound search: vertices are
partitioned by iterated neighbour-colour refinement, then a minimal adjacency
string is taken over all class-respecting orders.  That is slow in theory but
entirely adequate for the n <= 8 catalogues the test-suite consumes.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations_with_replacement, permutations

from .graphs import Graph, bipartition, is_connected


def _refine(adj: tuple[tuple[int, ...], ...], colors: list[int]) -> list[int]:
    n = len(adj)
    while True:
        keys = [
            (colors[v], tuple(sorted(colors[u] for u in adj[v]))) for v in range(n)
        ]
        order = {k: i for i, k in enumerate(sorted(set(keys)))}
        new = [order[k] for k in keys]
        if new == colors:
            return colors
        colors = new


def canonical_form(g: Graph) -> tuple:
    """A complete isomorphism invariant for small graphs."""
    n = g.n
    if n == 0:
        return (0,)
    adj = tuple(g.neighbors(v) for v in range(n))
    colors = _refine(adj, [g.degree(v) for v in range(n)])

    best: list[int] | None = None

    def rows_for(perm: list[int]) -> list[int]:
        rows = []
        for i, v in enumerate(perm):
            row = 0
            for j in range(i):
                row = (row << 1) | (1 if g.has_edge(v, perm[j]) else 0)
            rows.append(row)
        return rows

    # candidates at position i: unplaced vertices of the smallest colour
    def search(perm: list[int], rows: list[int], placed: set[int]) -> None:
        nonlocal best
        i = len(perm)
        if best is not None and rows > best[:i]:
            return
        if i == n:
            if best is None or rows < best:
                best = rows[:]
            return
        rem = [v for v in range(n) if v not in placed]
        c = min(colors[v] for v in rem)
        for v in rem:
            if colors[v] != c:
                continue
            row = 0
            for j in range(i):
                row = (row << 1) | (1 if g.has_edge(v, perm[j]) else 0)
            perm.append(v)
            rows.append(row)
            placed.add(v)
            search(perm, rows, placed)
            placed.discard(v)
            rows.pop()
            perm.pop()

    search([], [], set())
    assert best is not None
    return (n, tuple(best))


def canonical_graph(g: Graph) -> Graph:
    """Rebuild g from its canonical form (a canonical representative)."""
    n, rows = canonical_form(g)
    edges = []
    for i in range(n):
        row = rows[i]
        for j in range(i):
            if (row >> (i - 1 - j)) & 1:
                edges.append((j, i))
    return Graph(n, edges)


def are_isomorphic(g: Graph, h: Graph) -> bool:
    return canonical_form(g) == canonical_form(h)


@lru_cache(maxsize=None)
def all_graphs(n: int) -> tuple[Graph, ...]:
    """All graphs on n vertices up to isomorphism (canonical representatives)."""
    if n < 0:
        raise ValueError("negative vertex count")
    if n == 0:
        return (Graph(0, []),)
    if n == 1:
        return (Graph(1, []),)
    out: dict[tuple, Graph] = {}
    for g in all_graphs(n - 1):
        base = list(g.edges)
        for mask in range(1 << (n - 1)):
            edges = base + [(v, n - 1) for v in range(n - 1) if (mask >> v) & 1]
            h = Graph(n, edges)
            key = canonical_form(h)
            if key not in out:
                out[key] = canonical_graph(h)
    return tuple(out[k] for k in sorted(out))


def connected_graphs(n: int) -> tuple[Graph, ...]:
    return tuple(g for g in all_graphs(n) if is_connected(g))


def connected_graphs_upto(n: int) -> list[Graph]:
    out: list[Graph] = []
    for k in range(1, n + 1):
        out.extend(connected_graphs(k))
    return out


def _bipartite_split_graphs(a: int, b: int) -> list[Graph]:
    """Graphs assembled from an a x b biadjacency matrix, deduplicated under
    row and column permutations."""
    if a == 0:
        return [Graph(b, [])]
    if a == 1:
        # a single row is canonical by its popcount
        return [
            Graph(1 + b, [(0, 1 + j) for j in range(k)]) for k in range(b + 1)
        ]
    # per-permutation lookup tables: new mask bit k = old bit perm[k]
    tables = []
    for perm in permutations(range(b)):
        t = [0] * (1 << b)
        for mask in range(1 << b):
            t[mask] = sum(((mask >> perm[k]) & 1) << k for k in range(b))
        tables.append(t)
    seen = set()
    out = []
    for rows in combinations_with_replacement(range(1 << b), a):
        best = min(tuple(sorted(t[r] for r in rows)) for t in tables)
        if best in seen:
            continue
        seen.add(best)
        edges = [
            (i, a + j)
            for i, r in enumerate(best)
            for j in range(b)
            if (r >> j) & 1
        ]
        out.append(Graph(a + b, edges))
    return out


@lru_cache(maxsize=None)
def bipartite_graphs(n: int) -> tuple[Graph, ...]:
    """All bipartite graphs on n vertices up to isomorphism."""
    out: dict[tuple, Graph] = {}
    for a in range(0, n // 2 + 1):
        for g in _bipartite_split_graphs(a, n - a):
            key = canonical_form(g)
            if key not in out:
                out[key] = g
    return tuple(out[k] for k in sorted(out))


def bipartite_graphs_upto(n: int) -> list[Graph]:
    out: list[Graph] = []
    for k in range(1, n + 1):
        out.extend(bipartite_graphs(k))
    return out

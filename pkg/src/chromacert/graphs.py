"""Graph representation, structural predicates, named graphs and graph6 I/O.

Graphs are immutable simple undirected graphs on the dense vertex set
``{0..n-1}``.  Adjacency is additionally kept as per-vertex bitmasks, which
the counting and colouring engines rely on for speed.
"""

from __future__ import annotations

import json
from typing import Iterable, Optional


class Graph6Error(ValueError):
    """Malformed graph6 record; carries the offending byte offset."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


class UnknownGraphError(KeyError):
    """A zoo lookup with a name that resolves to nothing."""


class Graph:
    """Immutable simple undirected graph on vertices 0..n-1."""

    __slots__ = ("n", "edges", "_adj", "_masks")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        seen = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            seen.add((u, v) if u < v else (v, u))
        self.n = n
        self.edges = tuple(sorted(seen))
        masks = [0] * n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        self._masks = tuple(masks)
        self._adj = tuple(
            tuple(v for v in range(n) if (masks[u] >> v) & 1) for u in range(n)
        )

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def neighbor_mask(self, v: int) -> int:
        return self._masks[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self._adj)

    @property
    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    @property
    def min_degree(self) -> int:
        return min(self.degrees(), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return (self._masks[u] >> v) & 1 == 1

    def num_edges(self) -> int:
        return len(self.edges)

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={len(self.edges)})"


# ---------------------------------------------------------------------------
# graph6 (McKay bit-packed format)
# ---------------------------------------------------------------------------


def _g6_encode_n(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126, ((n >> 12) & 63) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63])
    if n <= 68719476735:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise ValueError("graph too large for graph6")


def _g6_decode_n(data: bytes) -> tuple[int, int]:
    """Return (n, header_length)."""
    if not data:
        raise Graph6Error("empty record", 0)
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] != 126:
        if len(data) < 4:
            raise Graph6Error("truncated extended vertex count", len(data))
        vals = [b - 63 for b in data[1:4]]
        return (vals[0] << 12) | (vals[1] << 6) | vals[2], 4
    if len(data) < 8:
        raise Graph6Error("truncated long vertex count", len(data))
    vals = [b - 63 for b in data[2:8]]
    n = 0
    for v in vals:
        n = (n << 6) | v
    return n, 8


def encode_graph6(g: Graph) -> str:
    """Encode a graph as a graph6 string (upper triangle, column by column)."""
    bits = []
    for j in range(1, g.n):
        mj = g.neighbor_mask(j)
        for i in range(j):
            bits.append((mj >> i) & 1)
    out = bytearray(_g6_encode_n(g.n))
    for k in range(0, len(bits), 6):
        chunk = bits[k : k + 6]
        chunk += [0] * (6 - len(chunk))
        val = 0
        for b in chunk:
            val = (val << 1) | b
        out.append(val + 63)
    return out.decode("ascii")


def parse_graph6(text: str) -> Graph:
    """Parse one graph6 record; raises Graph6Error with a byte offset."""
    s = text.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<") :]
    try:
        data = s.encode("latin-1")
    except UnicodeEncodeError as exc:
        raise Graph6Error("non-byte character in record", exc.start) from None
    for off, b in enumerate(data):
        if not (63 <= b <= 126):
            raise Graph6Error(f"byte {b} out of graph6 range", off)
    n, hdr = _g6_decode_n(data)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(data) - hdr != nbytes:
        raise Graph6Error(
            f"expected {nbytes} edge bytes for n={n}, found {len(data) - hdr}",
            len(data),
        )
    bits = []
    for b in data[hdr:]:
        v = b - 63
        bits.extend(((v >> s) & 1) for s in (5, 4, 3, 2, 1, 0))
    for extra in bits[nbits:]:
        if extra:
            raise Graph6Error("nonzero padding bits", len(data) - 1)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return Graph(n, edges)


def graph_to_json_dict(g: Graph) -> dict:
    return {"n": g.n, "edges": [[u, v] for u, v in g.edges]}


def graph_from_json_dict(d: dict) -> Graph:
    return Graph(int(d["n"]), [(int(u), int(v)) for u, v in d["edges"]])


def graph_to_json(g: Graph) -> str:
    return json.dumps(graph_to_json_dict(g), sort_keys=True)


def graph_from_json(s: str) -> Graph:
    return graph_from_json_dict(json.loads(s))


# ---------------------------------------------------------------------------
# structural predicates
# ---------------------------------------------------------------------------


def is_triangle_free(g: Graph) -> bool:
    """True iff g contains no K3 subgraph."""
    for u, v in g.edges:
        if g.neighbor_mask(u) & g.neighbor_mask(v):
            return False
    return True


def is_c4_free(g: Graph) -> bool:
    """True iff g contains no 4-cycle subgraph.

    A C4 exists exactly when two distinct vertices share two common
    neighbours.
    """
    for u in range(g.n):
        mu = g.neighbor_mask(u)
        for v in range(u + 1, g.n):
            common = mu & g.neighbor_mask(v)
            if common and common & (common - 1):
                return False
    return True


def bipartition(g: Graph) -> Optional[tuple[list[int], list[int]]]:
    """Return parts (A, B) of a 2-colouring, or None if g is not bipartite."""
    color = [-1] * g.n
    for s in range(g.n):
        if color[s] != -1:
            continue
        color[s] = 0
        queue = [s]
        while queue:
            u = queue.pop()
            for w in g.neighbors(u):
                if color[w] == -1:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return None
    return (
        [v for v in range(g.n) if color[v] == 0],
        [v for v in range(g.n) if color[v] == 1],
    )


def odd_closed_walk(g: Graph) -> Optional[list[int]]:
    """An odd closed walk witnessing non-bipartiteness, or None."""
    color = [-1] * g.n
    parent: dict[int, Optional[int]] = {}
    for s in range(g.n):
        if color[s] != -1:
            continue
        color[s] = 0
        parent[s] = None
        queue = [s]
        while queue:
            u = queue.pop(0)
            for w in g.neighbors(u):
                if color[w] == -1:
                    color[w] = 1 - color[u]
                    parent[w] = u
                    queue.append(w)
                elif color[w] == color[u]:
                    # walk u -> root -> w plus the edge wu; its length
                    # dist(u)+dist(w)+1 is odd since u and w share a colour
                    up, wp = [], []
                    x: Optional[int] = u
                    while x is not None:
                        up.append(x)
                        x = parent[x]
                    x = w
                    while x is not None:
                        wp.append(x)
                        x = parent[x]
                    return up + list(reversed(wp))[1:] + [u]
    return None


def is_bipartite(g: Graph) -> bool:
    return bipartition(g) is not None


def connected_components(g: Graph) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for s in range(g.n):
        if seen[s]:
            continue
        stack, comp = [s], []
        seen[s] = True
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in g.neighbors(u):
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) <= 1


def girth(g: Graph) -> Optional[int]:
    """Length of a shortest cycle, or None for a forest."""
    best: Optional[int] = None
    for s in range(g.n):
        dist = {s: 0}
        par = {s: -1}
        queue = [s]
        while queue:
            u = queue.pop(0)
            for w in g.neighbors(u):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    par[w] = u
                    queue.append(w)
                elif par[u] != w:
                    cyc = dist[u] + dist[w] + 1
                    if best is None or cyc < best:
                        best = cyc
    return best


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph with dense relabeling; returns (graph, old->new map)."""
    vs = sorted(set(vertices))
    remap = {v: i for i, v in enumerate(vs)}
    edges = [
        (remap[u], remap[v]) for u, v in g.edges if u in remap and v in remap
    ]
    return Graph(len(vs), edges), remap


def remove_vertices(g: Graph, drop: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    dropped = set(drop)
    return induced_subgraph(g, (v for v in range(g.n) if v not in dropped))


# ---------------------------------------------------------------------------
# derived constructions
# ---------------------------------------------------------------------------


def line_graph_edge_order(g: Graph) -> tuple[tuple[int, int], ...]:
    """The edge numbering used by line_graph: lexicographic on (min, max)."""
    return g.edges


def line_graph(g: Graph) -> Graph:
    """Vertices are the edges of g in lexicographic order; adjacency is
    sharing an endpoint."""
    es = g.edges
    m = len(es)
    out = []
    for i in range(m):
        u1, v1 = es[i]
        for j in range(i + 1, m):
            u2, v2 = es[j]
            if u1 == u2 or u1 == v2 or v1 == u2 or v1 == v2:
                out.append((i, j))
    return Graph(m, out)


def regularize(g: Graph, target_degree: int) -> Graph:
    """Embed g into a triangle-free target_degree-regular supergraph.

    One round takes two disjoint copies and joins every deficient vertex to
    its own mirror image; the cross edges form a matching between the copies,
    so no new triangle can arise.  The original graph stays as the induced
    subgraph on vertices 0..g.n-1.
    """
    if target_degree < g.max_degree:
        raise ValueError("target_degree below the maximum degree")
    h = g
    while h.n and h.min_degree < target_degree:
        n = h.n
        edges = list(h.edges)
        edges += [(u + n, v + n) for u, v in h.edges]
        for v in range(n):
            if h.degree(v) < target_degree:
                edges.append((v, v + n))
        h = Graph(2 * n, edges)
    return h


# ---------------------------------------------------------------------------
# the zoo
# ---------------------------------------------------------------------------


def cycle_graph(m: int) -> Graph:
    """Cycle 0-1-...-(m-1)-0."""
    if m < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return Graph(m, [(i, (i + 1) % m) for i in range(m)])


def odd_cycle(m: int) -> Graph:
    if m % 2 == 0:
        raise ValueError("odd cycle length must be odd")
    return cycle_graph(m)


def path_graph(m: int) -> Graph:
    """Path on m vertices 0-1-...-(m-1)."""
    if m < 1:
        raise ValueError("path needs at least one vertex")
    return Graph(m, [(i, i + 1) for i in range(m - 1)])


def star_graph(leaves: int) -> Graph:
    """Centre 0 joined to leaves 1..leaves."""
    if leaves < 0:
        raise ValueError("negative leaf count")
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_graph(m: int) -> Graph:
    return Graph(m, [(i, j) for i in range(m) for j in range(i + 1, m)])


def complete_bipartite_graph(a: int, b: int) -> Graph:
    """Parts {0..a-1} and {a..a+b-1}."""
    if a < 0 or b < 0:
        raise ValueError("negative part size")
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def petersen_graph() -> Graph:
    """Outer 5-cycle 0..4, inner pentagram 5..9 (i+5 ~ ((i+2) mod 5)+5),
    spokes i ~ i+5."""
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, 5 + ((i + 2) % 5)) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    return Graph(10, edges)


def chvatal_graph() -> Graph:
    """The 12-vertex 4-regular triangle-free 4-chromatic graph."""
    edges = [
        (0, 1), (0, 4), (0, 6), (0, 9),
        (1, 2), (1, 5), (1, 7),
        (2, 3), (2, 6), (2, 8),
        (3, 4), (3, 7), (3, 9),
        (4, 5), (4, 8),
        (5, 10), (5, 11),
        (6, 10), (6, 11),
        (7, 8), (7, 11),
        (8, 10),
        (9, 10), (9, 11),
    ]
    return Graph(12, edges)


def clebsch_graph() -> Graph:
    """Folded 5-cube: vertices are 4-bit words, adjacent when they differ in
    exactly one coordinate or in all four."""
    edges = []
    for x in range(16):
        for y in range(x + 1, 16):
            w = (x ^ y).bit_count()
            if w == 1 or w == 4:
                edges.append((x, y))
    return Graph(16, edges)


def zoo(name: str) -> Graph:
    """Resolve a graph name.

    Accepted forms: chvatal, petersen, clebsch, c<m> (cycle), path<m>,
    star<m> (leaf count), k<a>,<b> or k<a>x<b> (complete bipartite),
    k<m> (complete), line:<name>.
    """
    s = name.strip().lower()
    if s == "chvatal":
        return chvatal_graph()
    if s == "petersen":
        return petersen_graph()
    if s == "clebsch":
        return clebsch_graph()
    if s.startswith("line:"):
        return line_graph(zoo(s[5:]))
    try:
        if s.startswith("c") and s[1:].isdigit():
            return cycle_graph(int(s[1:]))
        if s.startswith("path") and s[4:].isdigit():
            return path_graph(int(s[4:]))
        if s.startswith("star") and s[4:].isdigit():
            return star_graph(int(s[4:]))
        if s.startswith("k"):
            body = s[1:]
            for sep in (",", "x"):
                if sep in body:
                    a, b = body.split(sep, 1)
                    return complete_bipartite_graph(int(a), int(b))
            if len(body) == 2 and body.isdigit():
                return complete_bipartite_graph(int(body[0]), int(body[1]))
            if body.isdigit():
                return complete_graph(int(body))
    except ValueError as exc:
        raise UnknownGraphError(f"bad graph name {name!r}: {exc}") from exc
    raise UnknownGraphError(f"unknown graph name {name!r}")

"""Exact counting, colouring and choosability decisions at desk scale.

Counting is exact over arbitrary-precision integers: colours are mapped to
bit positions, lists become bitmasks, and a backtracking search over a
minimum-remaining-values vertex order does the work component by component.
Choosability ("every k-list-assignment admits a colouring") is decided by
enumerating adversarial assignments up to colour-permutation symmetry, with a
dedicated faster search for bipartite graphs.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .graphs import Graph, bipartition, connected_components

DEFAULT_COUNT_CAP = 64
DEFAULT_CHOOSABILITY_CAP = 12


class SizeCapError(ValueError):
    """Instance exceeds the configured desk-scale cap."""


class NoColoringExists(ValueError):
    """Raised by the sampler when the instance has no proper colouring."""


# ---------------------------------------------------------------------------
# list assignments
# ---------------------------------------------------------------------------


class ListAssignment:
    """Per-vertex finite sets of non-negative integer colours."""

    def __init__(self, lists: Mapping[int, Iterable[int]] | Sequence[Iterable[int]]):
        if isinstance(lists, Mapping):
            items = lists.items()
        else:
            items = enumerate(lists)
        self.lists: dict[int, frozenset[int]] = {}
        for v, colors in items:
            v = int(v)
            cs = frozenset(int(c) for c in colors)
            if any(c < 0 for c in cs):
                raise ValueError("colours must be non-negative integers")
            self.lists[v] = cs

    def __getitem__(self, v: int) -> frozenset[int]:
        return self.lists[v]

    def __contains__(self, v: int) -> bool:
        return v in self.lists

    def covers(self, g: Graph) -> bool:
        return all(v in self.lists for v in range(g.n))

    def require_cover(self, g: Graph) -> None:
        if not self.covers(g):
            missing = [v for v in range(g.n) if v not in self.lists]
            raise ValueError(f"list assignment misses vertices {missing}")

    def sizes(self) -> dict[int, int]:
        return {v: len(s) for v, s in self.lists.items()}

    @classmethod
    def uniform(cls, g: Graph, colors: Iterable[int]) -> "ListAssignment":
        cs = frozenset(colors)
        return cls({v: cs for v in range(g.n)})

    def to_json_dict(self) -> dict:
        return {"lists": {str(v): sorted(s) for v, s in sorted(self.lists.items())}}

    @classmethod
    def from_json_dict(cls, d: dict) -> "ListAssignment":
        return cls({int(v): s for v, s in d["lists"].items()})

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    def __repr__(self) -> str:
        return f"ListAssignment({{{', '.join(f'{v}: {sorted(s)}' for v, s in sorted(self.lists.items()))}}})"


PartialColoring = dict  # vertex -> colour


def is_proper(g: Graph, coloring: Mapping[int, int]) -> bool:
    """Properness of a partial colouring on its domain."""
    for u, v in g.edges:
        if u in coloring and v in coloring and coloring[u] == coloring[v]:
            return False
    return True


def respects_lists(L: ListAssignment, coloring: Mapping[int, int]) -> bool:
    return all(v in L and c in L[v] for v, c in coloring.items())


def residual_list(g: Graph, L: ListAssignment, c: Mapping[int, int], v: int) -> frozenset[int]:
    """Colours of L(v) not used by v's coloured neighbours (v's own colour,
    if any, is not removed)."""
    L.require_cover(g)
    used = {c[u] for u in g.neighbors(v) if u in c}
    return L[v] - used


# ---------------------------------------------------------------------------
# k-specifications
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class KSpec:
    """Non-decreasing positive-integer list-size function of the degree.

    kind 'affine' evaluates ceil((a*x + b) / c) + offset; the named variants
    are fixed shapes used throughout, plus 'two_thirds_doubled' which carries
    an outer factor of 2 and 'constant'.
    """

    kind: str
    a: int = 0
    b: int = 0
    c: int = 1
    offset: int = 0

    def __post_init__(self):
        if self.kind not in ("affine", "two_thirds_doubled", "constant"):
            raise ValueError(f"unknown KSpec kind {self.kind!r}")
        if self.kind == "affine":
            if self.a < 0 or self.c < 1:
                raise ValueError("affine KSpec needs a >= 0 and c >= 1")
            if self(0) < 1:
                raise ValueError("KSpec must be positive at 0")
        if self.kind == "constant" and self.b < 1:
            raise ValueError("constant KSpec must be >= 1")

    def __call__(self, x: int) -> int:
        if x < 0:
            raise ValueError("degree must be non-negative")
        if self.kind == "constant":
            return self.b
        if self.kind == "two_thirds_doubled":
            return 2 * ((x + 2 + 2) // 3)
        return (self.a * x + self.b + self.c - 1) // self.c + self.offset

    @classmethod
    def half(cls) -> "KSpec":
        """x -> ceil((x+1)/2) + 1."""
        return cls("affine", a=1, b=1, c=2, offset=1)

    @classmethod
    def three_quarter(cls) -> "KSpec":
        """x -> ceil(3(x+1)/4)."""
        return cls("affine", a=3, b=3, c=4, offset=0)

    @classmethod
    def two_thirds_doubled(cls) -> "KSpec":
        """x -> 2 * ceil((x+2)/3)."""
        return cls("two_thirds_doubled")

    @classmethod
    def constant(cls, k: int) -> "KSpec":
        return cls("constant", b=k)

    @classmethod
    def halved_degree(cls) -> "KSpec":
        """x -> ceil(x/2) + 1 (the bipartite orientation shape)."""
        return cls("affine", a=1, b=0, c=2, offset=1)

    @classmethod
    def parse(cls, text: str) -> "KSpec":
        s = text.strip().lower().replace("_", "-")
        if s == "half":
            return cls.half()
        if s == "three-quarter":
            return cls.three_quarter()
        if s in ("two-thirds", "two-thirds-doubled"):
            return cls.two_thirds_doubled()
        if s in ("halved-degree", "half-degree"):
            return cls.halved_degree()
        if s.startswith("const:"):
            return cls.constant(int(s.split(":", 1)[1]))
        raise ValueError(f"unknown k-specification {text!r}")

    def label(self) -> str:
        if self.kind == "constant":
            return f"const:{self.b}"
        if self.kind == "two_thirds_doubled":
            return "two-thirds"
        if self == KSpec.half():
            return "half"
        if self == KSpec.three_quarter():
            return "three-quarter"
        if self == KSpec.halved_degree():
            return "halved-degree"
        return f"affine({self.a},{self.b},{self.c})+{self.offset}"

    def linear_lower_bound(self) -> tuple["Fraction", "Fraction"]:
        """(slope, intercept) with k(x) >= slope*x + intercept for x >= 0."""
        from fractions import Fraction

        if self.kind == "constant":
            return Fraction(0), Fraction(self.b)
        if self.kind == "two_thirds_doubled":
            return Fraction(2, 3), Fraction(4, 3)
        return Fraction(self.a, self.c), Fraction(self.b, self.c) + self.offset

    def linear_upper_bound(self) -> tuple["Fraction", "Fraction"]:
        """(slope, intercept) with k(x) <= slope*x + intercept for x >= 0."""
        from fractions import Fraction

        if self.kind == "constant":
            return Fraction(0), Fraction(self.b)
        if self.kind == "two_thirds_doubled":
            return Fraction(2, 3), Fraction(8, 3)
        return (
            Fraction(self.a, self.c),
            Fraction(self.b + self.c - 1, self.c) + self.offset,
        )


def degree_list_assignment(
    g: Graph,
    k: KSpec,
    universe_policy: str = "shared-prefix",
    seed: int = 0,
    universe_size: Optional[int] = None,
) -> ListAssignment:
    """Lists of size k(deg(v)) per vertex.

    'shared-prefix' gives every vertex {1..size}; 'randomized-from-universe'
    draws each list uniformly from {1..universe_size} with the given seed.
    """
    sizes = {v: k(g.degree(v)) for v in range(g.n)}
    if universe_policy == "shared-prefix":
        return ListAssignment({v: range(1, s + 1) for v, s in sizes.items()})
    if universe_policy == "randomized-from-universe":
        need = max(sizes.values(), default=0)
        m = universe_size if universe_size is not None else 2 * need
        if m < need:
            raise ValueError("universe smaller than the largest list")
        rng = random.Random(seed)
        return ListAssignment(
            {v: rng.sample(range(1, m + 1), s) for v, s in sizes.items()}
        )
    raise ValueError(f"unknown universe policy {universe_policy!r}")


# ---------------------------------------------------------------------------
# exact counting
# ---------------------------------------------------------------------------


def _palette(L: ListAssignment, vertices: Iterable[int]) -> dict[int, int]:
    colors = sorted(set().union(*(L[v] for v in vertices)) if vertices else set())
    return {c: i for i, c in enumerate(colors)}


def _list_masks(L: ListAssignment, vertices: Iterable[int], palette: dict[int, int]) -> dict[int, int]:
    out = {}
    for v in vertices:
        m = 0
        for c in L[v]:
            m |= 1 << palette[c]
        out[v] = m
    return out


def _count_rec(adj: Sequence[int], masks: list[int], remaining: int, mrv: bool) -> int:
    if remaining == 0:
        return 1
    if mrv:
        best, bestc = -1, 1 << 30
        m = remaining
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            c = masks[v].bit_count()
            if c < bestc:
                best, bestc = v, c
                if c == 0:
                    return 0
    else:
        best = (remaining & -remaining).bit_length() - 1
        if masks[best] == 0:
            return 0
    rem2 = remaining & ~(1 << best)
    nbrs = adj[best] & rem2
    total = 0
    avail = masks[best]
    while avail:
        bit = avail & -avail
        avail &= avail - 1
        new_masks = masks[:]
        m = nbrs
        while m:
            u = (m & -m).bit_length() - 1
            m &= m - 1
            new_masks[u] = masks[u] & ~bit
        total += _count_rec(adj, new_masks, rem2, mrv)
    return total


def count_list_colorings(
    g: Graph,
    L: ListAssignment,
    *,
    max_vertices: int = DEFAULT_COUNT_CAP,
    allow_slow: bool = False,
    order: str = "mrv",
) -> int:
    """Exact number of proper colourings with every colour from its list.

    Computed per connected component and multiplied.  ``order`` selects the
    branching heuristic ('mrv' or 'index'); the result is order-independent.
    """
    L.require_cover(g)
    if g.n > max_vertices and not allow_slow:
        raise SizeCapError(f"n={g.n} exceeds counting cap {max_vertices}")
    mrv = order == "mrv"
    total = 1
    for comp in connected_components(g):
        palette = _palette(L, comp)
        masks_by_v = _list_masks(L, comp, palette)
        local = {v: i for i, v in enumerate(comp)}
        adj = [0] * len(comp)
        for v in comp:
            for u in g.neighbors(v):
                if u in local:
                    adj[local[v]] |= 1 << local[u]
        masks = [masks_by_v[v] for v in comp]
        total *= _count_rec(adj, masks, (1 << len(comp)) - 1, mrv)
        if total == 0:
            return 0
    return total


def _enumerate_rec(adj, masks, order_idx, assignment, pos) -> Iterator[list[int]]:
    if pos == len(order_idx):
        yield assignment[:]
        return
    v = order_idx[pos]
    avail = masks[v]
    while avail:
        bit = avail & -avail
        avail &= avail - 1
        saved = []
        m = adj[v]
        ok = True
        while m:
            u = (m & -m).bit_length() - 1
            m &= m - 1
            saved.append((u, masks[u]))
            masks[u] &= ~bit
        assignment[v] = bit.bit_length() - 1
        yield from _enumerate_rec(adj, masks, order_idx, assignment, pos + 1)
        for u, old in saved:
            masks[u] = old
    assignment[v] = -1


def enumerate_list_colorings(g: Graph, L: ListAssignment, restrict_to: Optional[Iterable[int]] = None) -> Iterator[dict[int, int]]:
    """Yield every proper L-colouring (of the induced subgraph on
    ``restrict_to`` when given) as a vertex -> colour dict."""
    L.require_cover(g)
    verts = sorted(restrict_to) if restrict_to is not None else list(range(g.n))
    if not verts:
        yield {}
        return
    palette = _palette(L, verts)
    inv = {i: c for c, i in palette.items()}
    masks_by_v = _list_masks(L, verts, palette)
    local = {v: i for i, v in enumerate(verts)}
    adj = [0] * len(verts)
    for v in verts:
        for u in g.neighbors(v):
            if u in local:
                adj[local[v]] |= 1 << local[u]
    masks = [masks_by_v[v] for v in verts]
    assignment = [-1] * len(verts)
    for assign in _enumerate_rec(adj, masks, list(range(len(verts))), assignment, 0):
        yield {verts[i]: inv[assign[i]] for i in range(len(verts))}


def is_L_colorable(g: Graph, L: ListAssignment) -> Optional[dict[int, int]]:
    """A total proper L-colouring witness, or None."""
    L.require_cover(g)
    for c in enumerate_list_colorings(g, L):
        return c
    return None


# ---------------------------------------------------------------------------
# chromatic number
# ---------------------------------------------------------------------------


def _greedy_clique(g: Graph) -> int:
    best = 1 if g.n else 0
    for s in sorted(range(g.n), key=g.degree, reverse=True)[:8]:
        clique_mask = 1 << s
        size = 1
        cand = g.neighbor_mask(s)
        while cand:
            # pick the candidate with most candidate-neighbours
            bestv, bestd = -1, -1
            m = cand
            while m:
                v = (m & -m).bit_length() - 1
                m &= m - 1
                d = (g.neighbor_mask(v) & cand).bit_count()
                if d > bestd:
                    bestv, bestd = v, d
            clique_mask |= 1 << bestv
            size += 1
            cand &= g.neighbor_mask(bestv)
        best = max(best, size)
    return best


def _k_colorable(g: Graph, k: int) -> Optional[list[int]]:
    """Backtracking k-colourability with DSATUR ordering and colour-symmetry
    breaking (a vertex may open at most one fresh colour)."""
    n = g.n
    colors = [-1] * n
    neighbor_cols = [0] * n  # bitmask of colours used in the neighbourhood

    def pick() -> int:
        best, key = -1, (-1, -1)
        for v in range(n):
            if colors[v] == -1:
                sat = neighbor_cols[v].bit_count()
                cand = (sat, g.degree(v))
                if cand > key:
                    best, key = v, cand
        return best

    def rec(used: int) -> bool:
        v = pick()
        if v == -1:
            return True
        limit = min(k, used + 1)
        forbidden = neighbor_cols[v]
        for c in range(limit):
            if (forbidden >> c) & 1:
                continue
            colors[v] = c
            touched = []
            for u in g.neighbors(v):
                if colors[u] == -1 and not (neighbor_cols[u] >> c) & 1:
                    neighbor_cols[u] |= 1 << c
                    touched.append(u)
            if rec(max(used, c + 1)):
                return True
            for u in touched:
                neighbor_cols[u] &= ~(1 << c)
            colors[v] = -1
        return False

    if n == 0:
        return []
    return colors[:] if rec(0) else None


def chromatic_number(g: Graph, *, max_vertices: int = DEFAULT_COUNT_CAP, allow_slow: bool = False) -> int:
    """Least k admitting a proper k-colouring, found exactly."""
    if g.n > max_vertices and not allow_slow:
        raise SizeCapError(f"n={g.n} exceeds cap {max_vertices}")
    if g.n == 0:
        return 0
    if not g.edges:
        return 1
    for k in range(_greedy_clique(g), g.n + 1):
        if _k_colorable(g, k) is not None:
            return k
    raise AssertionError("unreachable: n colours always suffice")


# ---------------------------------------------------------------------------
# choosability
# ---------------------------------------------------------------------------


def _canonical_prefix_assignments(sizes: Sequence[int]) -> Iterator[tuple[list[tuple[int, ...]], int]]:
    """All list assignments for an ordered vertex sequence, canonical up to
    colour permutation.  Colours with equal membership signature so far are
    interchangeable, so only counts per signature class are branched on.
    Yields (lists, number_of_colours_used)."""
    n = len(sizes)

    def rec(i: int, lists: list[tuple[int, ...]], m: int) -> Iterator[tuple[list[tuple[int, ...]], int]]:
        if i == n:
            yield lists, m
            return
        k = sizes[i]
        sig: dict[frozenset[int], list[int]] = {}
        for c in range(m):
            s = frozenset(j for j in range(i) if c in lists[j])
            sig.setdefault(s, []).append(c)
        classes = sorted(sig.values())

        def choose(ci: int, left: int, chosen: list[int]) -> Iterator[tuple[list[tuple[int, ...]], int]]:
            if ci == len(classes):
                newlist = tuple(chosen + list(range(m, m + left)))
                yield from rec(i + 1, lists + [newlist], m + left)
                return
            cls = classes[ci]
            for take in range(min(left, len(cls)) + 1):
                yield from choose(ci + 1, left - take, chosen + cls[:take])

        yield from choose(0, k, [])

    yield from rec(0, [], 0)


def _find_bad_bipartite(
    part_a: Sequence[int], part_b: Sequence[int], g: Graph, sizes: Mapping[int, int]
) -> Optional[ListAssignment]:
    """Search for an uncolourable assignment of a bipartite graph.

    Lists on the independent part A are enumerated canonically; a bad
    completion on B exists iff one can choose per b a size-k(b) set S_b of
    used colours such that every A-choice tuple is 'killed' by some b
    (S_b inside the colours on N(b)).  That is an exact set-cover search over
    kill-masks, with dominated masks removed.
    """
    a_idx = {v: i for i, v in enumerate(part_a)}
    nbrs_in_a = {b: tuple(a_idx[u] for u in g.neighbors(b)) for b in part_b}
    size_seq = [sizes[v] for v in part_a]

    for lists_a, _m in _canonical_prefix_assignments(size_seq):
        tuples = list(product(*lists_a))
        nt = len(tuples)
        full = (1 << nt) - 1
        per_b: list[tuple[int, list[tuple[tuple[int, ...], int]]]] = []
        for b in part_b:
            kb = sizes[b]
            cov: dict[tuple[int, ...], int] = {}
            for xi, x in enumerate(tuples):
                seen_cols = sorted({x[a] for a in nbrs_in_a[b]})
                if len(seen_cols) < kb:
                    continue
                for S in combinations(seen_cols, kb):
                    cov[S] = cov.get(S, 0) | (1 << xi)
            items = sorted(cov.items(), key=lambda kv: -kv[1].bit_count())
            kept: list[tuple[tuple[int, ...], int]] = []
            for S, msk in items:
                if not any(msk | m2 == m2 for _, m2 in kept):
                    kept.append((S, msk))
            per_b.append((b, kept))

        nb = len(per_b)

        def dfs(covered: int, used: int, picks: list) -> Optional[list]:
            if covered == full:
                return picks
            rest = 0
            for bi in range(nb):
                if not (used >> bi) & 1:
                    for _, m2 in per_b[bi][1]:
                        rest |= m2
            if covered | rest != full:
                return None
            x = ((~covered) & full).bit_length() - 1
            for bi in range(nb):
                if (used >> bi) & 1:
                    continue
                for S, msk in per_b[bi][1]:
                    if (msk >> x) & 1:
                        r = dfs(covered | msk, used | (1 << bi), picks + [(bi, S)])
                        if r is not None:
                            return r
            return None

        picks = dfs(0, 0, [])
        if picks is not None:
            fresh = max((c for l in lists_a for c in l), default=-1) + 1
            lists = {v: set(lists_a[i]) for v, i in a_idx.items()}
            chosen = dict(picks)
            for bi, (b, _) in enumerate(per_b):
                if bi in chosen:
                    lists[b] = set(chosen[bi])
                else:
                    lists[b] = set(range(fresh, fresh + sizes[b]))
                    fresh += sizes[b]
            return ListAssignment(lists)
    return None


def _find_bad_generic(g: Graph, sizes: Mapping[int, int]) -> Optional[ListAssignment]:
    """Uncolourable-assignment search for general graphs.

    Enumerates canonical lists for all vertices but the last; the last vertex
    v* needs no enumeration: a bad list for it exists iff the intersection of
    the neighbour-colour sets over all colourings of G - v* has size >= k(v*).
    """
    if g.n == 0:
        return None
    v_star = max(range(g.n), key=lambda v: (sizes[v], g.degree(v)))
    rest = [v for v in range(g.n) if v != v_star]
    rest.sort(key=lambda v: (-g.degree(v), v))
    size_seq = [sizes[v] for v in rest]
    k_star = sizes[v_star]
    nbrs = [i for i, v in enumerate(rest) if g.has_edge(v, v_star)]
    local_edges = [
        (i, j)
        for i in range(len(rest))
        for j in range(i + 1, len(rest))
        if g.has_edge(rest[i], rest[j])
    ]
    h = Graph(len(rest), local_edges)

    for lists_rest, m in _canonical_prefix_assignments(size_seq):
        La = ListAssignment({i: lists_rest[i] for i in range(len(rest))})
        inter: Optional[set[int]] = None
        colorable = False
        for c in enumerate_list_colorings(h, La):
            colorable = True
            seen = {c[i] for i in nbrs}
            inter = seen if inter is None else (inter & seen)
            if len(inter) < k_star:
                break  # the intersection only shrinks; no bad list possible
        if not colorable:
            bad = {rest[i]: set(lists_rest[i]) for i in range(len(rest))}
            bad[v_star] = set(range(m, m + k_star))
            return ListAssignment(bad)
        if inter is not None and len(inter) >= k_star:
            bad = {rest[i]: set(lists_rest[i]) for i in range(len(rest))}
            bad[v_star] = set(sorted(inter)[:k_star])
            return ListAssignment(bad)
    return None


def find_uncolorable_assignment(g: Graph, sizes: Mapping[int, int] | Sequence[int]) -> Optional[ListAssignment]:
    """A list assignment with the given sizes admitting no proper colouring,
    or None when every such assignment is colourable."""
    if not isinstance(sizes, Mapping):
        sizes = {v: int(s) for v, s in enumerate(sizes)}
    if len(sizes) != g.n:
        raise ValueError("sizes must cover every vertex")
    if any(s < 1 for s in sizes.values()):
        raise ValueError("list sizes must be positive")
    parts = bipartition(g)
    if parts is not None:
        a, b = parts
        # enumerate the part with the smaller assignment tree
        cost_a = sum(sizes[v] for v in a), len(a)
        cost_b = sum(sizes[v] for v in b), len(b)
        if cost_b < cost_a:
            a, b = b, a
        return _find_bad_bipartite(a, b, g, sizes)
    return _find_bad_generic(g, sizes)


def is_choosable(
    g: Graph,
    sizes: Mapping[int, int] | Sequence[int],
    *,
    max_vertices: int = DEFAULT_CHOOSABILITY_CAP,
    allow_slow: bool = False,
) -> tuple[bool, Optional[ListAssignment]]:
    """Whether every assignment with the given list sizes is colourable.

    Returns (True, None) or (False, witness assignment).
    """
    if g.n > max_vertices and not allow_slow:
        raise SizeCapError(f"n={g.n} exceeds choosability cap {max_vertices}")
    bad = find_uncolorable_assignment(g, sizes)
    return (bad is None), bad


def list_chromatic_number(
    g: Graph,
    k_max: int = 4,
    *,
    max_vertices: int = DEFAULT_CHOOSABILITY_CAP,
    allow_slow: bool = False,
) -> int:
    """Least k <= k_max such that every k-list-assignment admits a colouring;
    returns k_max + 1 when no k <= k_max suffices."""
    if g.n > max_vertices and not allow_slow:
        raise SizeCapError(f"n={g.n} exceeds choosability cap {max_vertices}")
    if g.n == 0:
        return 0
    for k in range(1, k_max + 1):
        ok, _ = is_choosable(g, [k] * g.n, max_vertices=max_vertices, allow_slow=allow_slow)
        if ok:
            return k
    return k_max + 1


# ---------------------------------------------------------------------------
# exact uniform sampling (self-reducibility)
# ---------------------------------------------------------------------------


class ColoringSampler:
    """Exact uniform sampler over proper L-colourings.

    Vertices are coloured in index order; each colour is drawn with
    probability (number of completions) / (total completions), both counted
    exactly.  Counts are memoised on the residual-list state, so repeated
    sampling from the same instance is cheap.
    """

    def __init__(self, g: Graph, L: ListAssignment):
        L.require_cover(g)
        self.g = g
        self.L = L
        verts = list(range(g.n))
        self.palette = _palette(L, verts) if g.n else {}
        self.inv = {i: c for c, i in self.palette.items()}
        self.adj = [g.neighbor_mask(v) for v in range(g.n)]
        self.base_masks = [0] * g.n
        masks_by_v = _list_masks(L, verts, self.palette)
        for v in verts:
            self.base_masks[v] = masks_by_v[v]
        self._memo: dict[tuple[int, tuple[int, ...]], int] = {}
        self.total = self._count(0, tuple(self.base_masks))
        if self.total == 0:
            raise NoColoringExists("instance admits no proper colouring")

    def _count(self, i: int, masks: tuple[int, ...]) -> int:
        if i == self.g.n:
            return 1
        key = (i, masks[i:])
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        total = 0
        avail = masks[i]
        while avail:
            bit = avail & -avail
            avail &= avail - 1
            new = list(masks)
            mm = self.adj[i] & ~((1 << (i + 1)) - 1)
            while mm:
                w = (mm & -mm).bit_length() - 1
                mm &= mm - 1
                new[w] = masks[w] & ~bit
            total += self._count(i + 1, tuple(new))
        self._memo[key] = total
        return total

    def sample(self, rng: random.Random) -> dict[int, int]:
        masks = list(self.base_masks)
        out: dict[int, int] = {}
        for i in range(self.g.n):
            weights = []
            avail = masks[i]
            while avail:
                bit = avail & -avail
                avail &= avail - 1
                new = masks[:]
                mm = self.adj[i] & ~((1 << (i + 1)) - 1)
                while mm:
                    w = (mm & -mm).bit_length() - 1
                    mm &= mm - 1
                    new[w] = masks[w] & ~bit
                weights.append((bit, self._count(i + 1, tuple(new)), new))
            total = sum(w for _, w, _ in weights)
            pick = rng.randrange(total)
            for bit, w, new in weights:
                if pick < w:
                    out[i] = self.inv[bit.bit_length() - 1]
                    masks = new
                    break
                pick -= w
        return out


def uniform_sample_coloring(g: Graph, L: ListAssignment, seed: int) -> dict[int, int]:
    """One exact uniform sample from the proper L-colourings; deterministic
    for a given seed."""
    sampler = ColoringSampler(g, L)
    return sampler.sample(random.Random(seed))

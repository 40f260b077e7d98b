import random

from chromacert.graphs import (
    Graph,
    complete_bipartite_graph,
    cycle_graph,
    is_bipartite,
    is_connected,
    petersen_graph,
)
from chromacert.smallgraphs import (
    all_graphs,
    are_isomorphic,
    bipartite_graphs,
    canonical_form,
    connected_graphs,
)

# classical counts: graphs / connected graphs on n unlabeled vertices
ALL_COUNTS = {1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044}
CONNECTED_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853}


def test_catalog_counts():
    for n in range(1, 8):
        assert len(all_graphs(n)) == ALL_COUNTS[n]
        assert len(connected_graphs(n)) == CONNECTED_COUNTS[n]


def test_canonical_form_is_isomorphism_invariant():
    rng = random.Random(11)
    for _ in range(60):
        n = rng.randrange(2, 8)
        edges = [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.4]
        g = Graph(n, edges)
        perm = list(range(n))
        rng.shuffle(perm)
        h = Graph(n, [(perm[u], perm[v]) for u, v in edges])
        assert canonical_form(g) == canonical_form(h)


def test_canonical_form_separates_non_isomorphic():
    assert canonical_form(cycle_graph(6)) != canonical_form(
        Graph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)])
    )
    # same degree sequence, different graphs: C6 vs two triangles handled above;
    # K(3,3) vs the prism (both cubic on 6 vertices)
    prism = Graph(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)])
    assert canonical_form(complete_bipartite_graph(3, 3)) != canonical_form(prism)


def test_are_isomorphic_spot_checks():
    assert are_isomorphic(petersen_graph(), petersen_graph())
    relabel = [(u + 1) % 10 for u in range(10)]
    g = petersen_graph()
    h = Graph(10, [(relabel[u], relabel[v]) for u, v in g.edges])
    assert are_isomorphic(g, h)


def test_bipartite_catalog_agrees_with_filter():
    for n in range(1, 8):
        from_filter = sorted(canonical_form(g) for g in all_graphs(n) if is_bipartite(g))
        from_split = sorted(canonical_form(g) for g in bipartite_graphs(n))
        assert from_filter == from_split


def test_bipartite_catalog_members_are_bipartite():
    for n in range(1, 9):
        for g in bipartite_graphs(n):
            assert is_bipartite(g)


def test_connected_members_are_connected():
    for g in connected_graphs(6):
        assert is_connected(g)

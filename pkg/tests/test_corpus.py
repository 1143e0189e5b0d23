from collections import Counter

import pytest

from coppebbling.corpus import connected_graphs, induced_pairs, random_trees
from coppebbling.graph_core import induced_subgraph


def test_atlas_counts():
    # connected graphs up to isomorphism on 1..7 vertices (OEIS A001349)
    counts = Counter(g.n for g in connected_graphs(7))
    assert [counts[n] for n in range(1, 8)] == [1, 1, 2, 6, 21, 112, 853]
    assert all(g.is_connected for g in connected_graphs(5))


def test_atlas_limit():
    with pytest.raises(ValueError):
        list(connected_graphs(8))


def test_random_trees_reproducible():
    a = random_trees(9, 10, seed=3)
    b = random_trees(9, 10, seed=3)
    assert [t.edges for t in a] == [t.edges for t in b]
    assert all(t.is_tree and 5 <= t.n <= 9 for t in a)


def test_induced_pairs_connected():
    graphs = list(connected_graphs(5))
    pairs = list(induced_pairs(graphs, 30, seed=1))
    assert len(pairs) == 30
    for g, s in pairs:
        assert induced_subgraph(g, s).graph.is_connected

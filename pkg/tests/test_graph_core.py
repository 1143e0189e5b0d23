import math

import networkx as nx
import pytest
from hypothesis import given

from conftest import any_graphs, connected_graphs
from coppebbling.generators import complete, cycle, mcgee, path, star, theta
from coppebbling.graph_core import (
    INF,
    Graph,
    GraphError,
    ball,
    components,
    distances,
    girth,
    graph_key,
    induced_subgraph,
    is_chordal,
    is_corner,
    is_dismantlable,
    is_vertex_transitive,
    parse_edge_list,
)


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def test_rejects_loops_and_bad_vertices():
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(0, 0)])
    with pytest.raises(GraphError):
        Graph.from_edges(3, [(0, 3)])


def test_path_metrics():
    m = path(5).metrics
    assert (m.radius, m.diameter) == (2, 4)
    assert girth(path(5)) == INF


def test_disconnected_metrics_are_infinite():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    assert g.metrics.diameter == INF
    assert not g.is_connected
    assert [c.vertices for c in components(g)] == [(0, 1), (2, 3)]


def test_mcgee_facts():
    g = mcgee()
    assert g.n == 24 and g.edge_count == 36
    assert g.degree_sequence == (3,) * 24
    assert girth(g) == 7


@given(any_graphs())
def test_distances_match_networkx(g):
    h = to_nx(g)
    dist = g.metrics.dist
    for s, row in nx.all_pairs_shortest_path_length(h):
        for t in range(g.n):
            assert dist[s][t] == row.get(t, math.inf)
    if g.is_connected:
        assert g.metrics.radius == nx.radius(h)
        assert g.metrics.diameter == nx.diameter(h)


@given(any_graphs())
def test_girth_matches_networkx(g):
    assert girth(g) == nx.girth(to_nx(g))


@given(any_graphs())
def test_chordal_matches_networkx(g):
    assert is_chordal(g) == nx.is_chordal(to_nx(g))


@given(any_graphs())
def test_components_match_networkx(g):
    ours = sorted(tuple(c.vertices) for c in components(g))
    theirs = sorted(tuple(sorted(c)) for c in nx.connected_components(to_nx(g)))
    assert ours == theirs
    assert sum(c.graph.n for c in components(g)) == g.n


@given(connected_graphs(max_n=7))
def test_ball_is_distance_sublevel(g):
    for v in range(g.n):
        for d in range(3):
            assert ball(g, v, d) == {u for u in range(g.n) if g.metrics.dist[v][u] <= d}
            assert ball(g, v, d, closed=False) == {u for u in range(g.n) if g.metrics.dist[v][u] < d}


def _dismantlable_brute(g):
    """Try every deletion order of corners (tiny graphs only)."""
    if g.n <= 1:
        return True
    for u in range(g.n):
        if is_corner(g, u)[0]:
            rest = [v for v in range(g.n) if v != u]
            if _dismantlable_brute(induced_subgraph(g, rest).graph):
                return True
    return False


@given(connected_graphs(max_n=6))
def test_greedy_dismantling_agrees_with_exhaustive(g):
    ok, order = is_dismantlable(g)
    assert ok == _dismantlable_brute(g)
    if ok:
        assert len(order) == len(set(order)) == g.n - 1


def test_corner_examples():
    assert is_dismantlable(complete(4))[0]
    assert is_dismantlable(path(6))[0]
    assert not is_dismantlable(cycle(4))[0]
    assert not is_dismantlable(theta(3, 4))[0]
    assert is_corner(star(3), 1) == (True, 0)


@given(any_graphs())
def test_edge_list_round_trip(g):
    back = parse_edge_list(g.to_edge_list())
    assert back == g and graph_key(back) == graph_key(g)


def test_edge_list_parse_errors():
    with pytest.raises(GraphError, match="line 2"):
        parse_edge_list("0 1\n1 x\n")
    with pytest.raises(GraphError, match="duplicate"):
        parse_edge_list("0 1\n1 0\n")
    with pytest.raises(GraphError):
        parse_edge_list("# nothing\n")
    assert parse_edge_list("n 4\n0 1\n").n == 4


def test_graph_key_depends_on_numbering_only():
    a = Graph.from_edges(3, [(0, 1), (1, 2)])
    b = Graph.from_edges(3, [(1, 2), (0, 1)])
    c = Graph.from_edges(3, [(0, 2), (1, 2)])
    assert graph_key(a) == graph_key(b) != graph_key(c)


@pytest.mark.parametrize("g, expected", [
    (cycle(6), True), (complete(4), True), (path(3), False), (star(3), False),
    (Graph.from_edges(6, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]), True),
])
def test_vertex_transitivity(g, expected):
    assert is_vertex_transitive(g) == expected


@given(any_graphs(max_n=6))
def test_vertex_transitivity_matches_networkx(g):
    h = to_nx(g)
    gm = nx.algorithms.isomorphism.GraphMatcher(h, h)
    orbit0 = {iso[0] for iso in gm.isomorphisms_iter()}
    assert is_vertex_transitive(g) == (orbit0 == set(range(g.n)))


def test_distances_function_matches_property():
    g = theta(3, 4)
    assert distances(g).dist == g.metrics.dist

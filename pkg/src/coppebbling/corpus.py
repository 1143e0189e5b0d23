"""Small-graph corpora for property checks."""

from __future__ import annotations

import random
from typing import Iterator

from .generators import random_tree
from .graph_core import Graph

ATLAS_MAX_N = 7


def from_networkx(h, name: str = "") -> Graph:
    index = {v: i for i, v in enumerate(sorted(h.nodes()))}
    return Graph.from_edges(len(index), [(index[u], index[v]) for u, v in h.edges()], name=name)


def connected_graphs(max_n: int, min_n: int = 1) -> Iterator[Graph]:
    """One representative per isomorphism class of connected graphs, ``min_n <= n <= max_n``.

    Uses the networkx graph atlas, which lists every graph on up to 7 vertices.
    """
    if max_n > ATLAS_MAX_N:
        raise ValueError(f"the atlas corpus only covers n <= {ATLAS_MAX_N}")
    import networkx as nx

    for i, h in enumerate(nx.graph_atlas_g()):
        n = h.number_of_nodes()
        if n < max(1, min_n) or n > max_n:
            continue
        if nx.is_connected(h):
            yield from_networkx(h, name=f"G{i}")


def random_trees(max_n: int, samples: int, seed: int = 0, min_n: int = 5) -> list[Graph]:
    rng = random.Random(seed)
    lo = min(min_n, max_n)
    out = []
    for i in range(samples):
        g = random_tree(rng.randint(lo, max_n), rng)
        out.append(Graph(g.n, g.adjacency, name=f"tree{i}_n{g.n}"))
    return out


def induced_pairs(graphs: list[Graph], count: int, seed: int = 0) -> Iterator[tuple[Graph, frozenset[int]]]:
    """Sample (G, S) with S a nonempty proper-or-full vertex subset inducing a connected subgraph."""
    from .graph_core import induced_subgraph

    rng = random.Random(seed)
    produced = 0
    while produced < count:
        g = rng.choice(graphs)
        size = rng.randint(1, g.n)
        s = frozenset(rng.sample(range(g.n), size))
        if induced_subgraph(g, s).graph.is_connected:
            produced += 1
            yield g, s

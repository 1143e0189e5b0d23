"""Immutable simple graphs and exact metric computations.

Vertices are the dense indices ``0..n-1``.  Neighbourhoods are kept both as
sorted tuples (for deterministic iteration) and as integer bitmasks (for the
set algebra used by the search modules).
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

INF = math.inf


class GraphError(ValueError):
    """Raised for malformed graph input."""


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True, eq=False)
class Graph:
    """A simple undirected graph on vertices ``0..n-1``.

    ``transitive_hint`` is set by generators that know their output is
    vertex-transitive (cycles, complete graphs and products of those).
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...] | None = None
    name: str = ""
    transitive_hint: bool = False
    _masks: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        if self.n < 1:
            raise GraphError("a graph needs at least one vertex")
        if len(self.adjacency) != self.n:
            raise GraphError(f"expected {self.n} adjacency rows, got {len(self.adjacency)}")
        masks = []
        for v, row in enumerate(self.adjacency):
            mask = 0
            for u in row:
                if not 0 <= u < self.n:
                    raise GraphError(f"vertex {u} out of range in row {v}")
                if u == v:
                    raise GraphError(f"self-loop at {v}")
                mask |= 1 << u
            if mask.bit_count() != len(row):
                raise GraphError(f"parallel edge in row {v}")
            masks.append(mask)
        for v in range(self.n):
            for u in self.adjacency[v]:
                if not masks[u] >> v & 1:
                    raise GraphError(f"adjacency not symmetric for edge {v}-{u}")
        if self.labels is not None and len(self.labels) != self.n:
            raise GraphError("labels must have one entry per vertex")
        object.__setattr__(self, "_masks", tuple(masks))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]], **kw) -> "Graph":
        rows: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            rows[u].add(v)
            rows[v].add(u)
        return cls(n, tuple(tuple(sorted(r)) for r in rows), **kw)

    # -- basic structure -------------------------------------------------

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def neighbor_mask(self, v: int) -> int:
        return self._masks[v]

    def closed_mask(self, v: int) -> int:
        return self._masks[v] | (1 << v)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._masks[u] >> v & 1)

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((u, v) for u in range(self.n) for v in self.adjacency[u] if u < v)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @property
    def max_degree(self) -> int:
        return max(len(r) for r in self.adjacency)

    @property
    def min_degree(self) -> int:
        return min(len(r) for r in self.adjacency)

    @cached_property
    def degree_sequence(self) -> tuple[int, ...]:
        return tuple(sorted((len(r) for r in self.adjacency), reverse=True))

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels else str(v)

    @cached_property
    def metrics(self) -> "Metrics":
        return distances(self)

    @property
    def is_connected(self) -> bool:
        return self.metrics.connected

    @property
    def is_tree(self) -> bool:
        return self.is_connected and self.edge_count == self.n - 1

    def to_edge_list(self) -> str:
        lines = [f"n {self.n}"]
        lines += [f"{u} {v}" for u, v in self.edges]
        return "\n".join(lines) + "\n"

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adjacency == other.adjacency

    def __hash__(self):
        return hash((self.n, self.adjacency))

    def __repr__(self):
        tag = self.name or "Graph"
        return f"<{tag} n={self.n} m={self.edge_count}>"


@dataclass(frozen=True)
class Metrics:
    dist: tuple[tuple[float, ...], ...]
    radius: float
    diameter: float
    connected: bool

    def eccentricity(self, v: int) -> float:
        return max(self.dist[v])


def _bfs(g: Graph, source: int) -> list[float]:
    dist: list[float] = [INF] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for u in g.adjacency[v]:
            if dist[u] == INF:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def distances(g: Graph) -> Metrics:
    """All-pairs hop distances by BFS from every vertex."""
    rows = tuple(tuple(_bfs(g, v)) for v in range(g.n))
    ecc = [max(r) for r in rows]
    connected = ecc[0] != INF
    radius = min(ecc) if connected else INF
    diameter = max(ecc)
    return Metrics(rows, radius, diameter, connected)


def girth(g: Graph) -> float:
    """Length of a shortest cycle, ``INF`` for forests."""
    best = INF
    for s in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            if 2 * dist[v] + 1 >= best:
                break
            for u in g.adjacency[v]:
                if dist[u] < 0:
                    dist[u] = dist[v] + 1
                    parent[u] = v
                    queue.append(u)
                elif parent[v] != u:
                    best = min(best, dist[u] + dist[v] + 1)
    return best


def ball(g: Graph, v: int, d: int, closed: bool = True) -> frozenset[int]:
    """Vertices within distance ``d`` of ``v``; strict ``< d`` when ``closed`` is false."""
    row = g.metrics.dist[v]
    if closed:
        return frozenset(u for u in range(g.n) if row[u] <= d)
    return frozenset(u for u in range(g.n) if row[u] < d)


def ball_mask(g: Graph, v: int, d: int) -> int:
    row = g.metrics.dist[v]
    mask = 0
    for u in range(g.n):
        if row[u] <= d:
            mask |= 1 << u
    return mask


def _corner_witness(g: Graph, u: int, alive: int) -> int | None:
    nu = g.closed_mask(u) & alive
    for v in range(g.n):
        if v != u and alive >> v & 1 and nu & ~(g.closed_mask(v) & alive) == 0:
            return v
    return None


def is_corner(g: Graph, u: int) -> tuple[bool, int | None]:
    """Whether some ``v != u`` has ``N[u]`` inside ``N[v]``; smallest such ``v`` as witness."""
    w = _corner_witness(g, u, (1 << g.n) - 1)
    return w is not None, w


def is_dismantlable(g: Graph) -> tuple[bool, list[int] | None]:
    """Greedy corner deletion.  Returns the deletion order on success.

    Deleting a corner never destroys dismantlability, so greedy choice of the
    smallest-index corner is exact.
    """
    alive = (1 << g.n) - 1
    order: list[int] = []
    while alive.bit_count() > 1:
        for u in _bits(alive):
            if _corner_witness(g, u, alive) is not None:
                order.append(u)
                alive &= ~(1 << u)
                break
        else:
            return False, None
    return True, order


def is_chordal(g: Graph) -> bool:
    """Maximum cardinality search, then check the reverse order is a perfect elimination order."""
    n = g.n
    weight = [0] * n
    numbered = [False] * n
    order = []
    for _ in range(n):
        v = max((u for u in range(n) if not numbered[u]), key=lambda u: (weight[u], -u))
        numbered[v] = True
        order.append(v)
        for u in g.adjacency[v]:
            if not numbered[u]:
                weight[u] += 1
    # order[i] is visited i-th; elimination order is reversed
    position = {v: i for i, v in enumerate(order)}
    for v in order:
        earlier = [u for u in g.adjacency[v] if position[u] < position[v]]
        if not earlier:
            continue
        parent = max(earlier, key=position.__getitem__)
        for u in earlier:
            if u != parent and not g.has_edge(u, parent):
                return False
    return True


@dataclass(frozen=True)
class Component:
    graph: Graph
    vertices: tuple[int, ...]  # component index -> original vertex


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> Component:
    verts = tuple(sorted(set(vertices)))
    if not verts:
        raise GraphError("induced subgraph needs a nonempty vertex set")
    for v in verts:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range")
    index = {v: i for i, v in enumerate(verts)}
    rows = tuple(tuple(sorted(index[u] for u in g.adjacency[v] if u in index)) for v in verts)
    labels = tuple(g.label(v) for v in verts) if g.labels else None
    return Component(Graph(len(verts), rows, labels=labels), verts)


def components(g: Graph) -> list[Component]:
    seen = [False] * g.n
    out = []
    for s in range(g.n):
        if seen[s]:
            continue
        comp = []
        seen[s] = True
        queue = deque([s])
        while queue:
            v = queue.popleft()
            comp.append(v)
            for u in g.adjacency[v]:
                if not seen[u]:
                    seen[u] = True
                    queue.append(u)
        out.append(induced_subgraph(g, comp))
    return out


def parse_edge_list(text: str) -> Graph:
    """Parse the ``u v`` per line edge-list format (``#`` comments, optional ``n <count>`` header)."""
    n_declared = None
    edges = []
    first = True
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if first and parts[0] == "n":
            if len(parts) != 2 or not parts[1].isdigit():
                raise GraphError(f"line {lineno}: bad order declaration {raw!r}")
            n_declared = int(parts[1])
            first = False
            continue
        first = False
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise GraphError(f"line {lineno}: expected 'u v', got {raw!r}")
        edges.append((int(parts[0]), int(parts[1])))
    n = max((max(e) for e in edges), default=-1) + 1
    if n_declared is not None:
        if n_declared < n:
            raise GraphError(f"declared n={n_declared} but edge uses vertex {n - 1}")
        n = n_declared
    if n == 0:
        raise GraphError("empty edge list without an order declaration")
    if len(set(tuple(sorted(e)) for e in edges)) != len(edges):
        raise GraphError("duplicate edge in edge list")
    return Graph.from_edges(n, edges)


def load_edge_list(path: str | Path) -> Graph:
    return parse_edge_list(Path(path).read_text())


def graph_key(g: Graph) -> str:
    """Stable hash of ``n`` plus the sorted edge list (no isomorphism canonicalisation)."""
    import hashlib

    return hashlib.sha256(g.to_edge_list().encode()).hexdigest()[:24]


def relabel_bits(mask: int) -> list[int]:
    return _bits(mask)


def automorphism_mapping(g: Graph, source: int, target: int) -> list[int] | None:
    """Backtracking search for an automorphism sending ``source`` to ``target``."""
    n = g.n
    if g.degree(source) != g.degree(target):
        return None
    dist = g.metrics.dist
    profile = [tuple(sorted(dist[v])) for v in range(n)]
    if profile[source] != profile[target]:
        return None
    image = [-1] * n
    used = [False] * n
    image[source] = target
    used[target] = True
    # assign in BFS order from the source so adjacency constraints bite early
    order = sorted(range(n), key=lambda v: (dist[source][v], v))
    order.remove(source)

    def consistent(v: int, w: int) -> bool:
        if profile[v] != profile[w] or dist[source][v] != dist[target][w]:
            return False
        for u in g.adjacency[v]:
            if image[u] >= 0 and not g.has_edge(image[u], w):
                return False
        for u in range(n):
            if image[u] >= 0 and not g.has_edge(u, v) and g.has_edge(image[u], w):
                return False
        return True

    def extend(i: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for w in range(n):
            if not used[w] and consistent(v, w):
                image[v] = w
                used[w] = True
                if extend(i + 1):
                    return True
                image[v] = -1
                used[w] = False
        return False

    return image if extend(0) else None


def is_vertex_transitive(g: Graph) -> bool:
    return all(automorphism_mapping(g, 0, v) is not None for v in range(1, g.n))


def validate_vertex(g: Graph, v: int) -> int:
    if not 0 <= v < g.n:
        raise GraphError(f"vertex {v} out of range 0..{g.n - 1}")
    return v


def validate_vertices(g: Graph, vs: Sequence[int]) -> frozenset[int]:
    for v in vs:
        validate_vertex(g, v)
    return frozenset(vs)

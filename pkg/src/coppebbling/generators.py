"""Named graph families, products, unions and the generator expression language.

Grammar accepted by :func:`parse_spec` (whitespace and case insensitive)::

    expr   := family [":" int ("," int)*]
            | "prod(" expr "," expr ")"
            | "union(" expr ("," expr)* ")"
            | "file:" path

Canonical numberings:

* path / cycle: walk order.
* star: centre 0, leaves 1..k.
* spider S(k,d): centre 0, then leg ``i`` as ``1 + i*d .. (i+1)*d`` outward.
* theta Θ(k,l): endpoints x=0, y=1, then the ``l-1`` interior vertices of
  each path from x towards y.
* kary_tree: breadth-first.
* product: ``(u, v) -> u * n(H) + v``.
* mcgee: ``v_i -> i`` for ``i`` in Z_24.
* doubledom_example: x=0, z_1..z_k = 1..k, y_1..y_m = k+1..k+m.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass

from .graph_core import Graph, GraphError, load_edge_list


class SpecError(ValueError):
    """Bad generator expression or parameters."""


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    params: tuple[int, ...] = ()
    children: tuple["GeneratorSpec", ...] = ()
    path: str | None = None

    def __str__(self):
        if self.family in ("product", "union"):
            head = "prod" if self.family == "product" else "union"
            return f"{head}({','.join(map(str, self.children))})"
        if self.family == "file":
            return f"file:{self.path}"
        if self.params:
            return f"{self.family}:{','.join(map(str, self.params))}"
        return self.family


def path(n: int) -> Graph:
    if n < 1:
        raise SpecError("path needs n >= 1")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)], name=f"P{n}")


def cycle(n: int) -> Graph:
    if n < 3:
        raise SpecError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], name=f"C{n}", transitive_hint=True)


def complete(n: int) -> Graph:
    if n < 1:
        raise SpecError("complete graph needs n >= 1")
    edges = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return Graph.from_edges(n, edges, name=f"K{n}", transitive_hint=True)


def star(k: int) -> Graph:
    if k < 1:
        raise SpecError("star needs k >= 1 leaves")
    return Graph.from_edges(k + 1, [(0, i) for i in range(1, k + 1)], name=f"K1,{k}")


def spider(k: int, d: int) -> Graph:
    if k < 3 or d < 1:
        raise SpecError("spider needs k >= 3 legs and leg length d >= 1")
    edges = []
    for leg in range(k):
        prev = 0
        for step in range(d):
            v = 1 + leg * d + step
            edges.append((prev, v))
            prev = v
    return Graph.from_edges(k * d + 1, edges, name=f"S({k},{d})")


def theta(k: int, length: int) -> Graph:
    if k < 2 or length < 2:
        raise SpecError("theta needs k >= 2 paths of length >= 2")
    n = k * (length - 1) + 2
    edges = []
    nxt = 2
    for _ in range(k):
        prev = 0
        for _ in range(length - 1):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
        edges.append((prev, 1))
    return Graph.from_edges(n, edges, name=f"Theta({k},{length})")


def kary_tree(k: int, t: int) -> Graph:
    if k < 1 or t < 0:
        raise SpecError("kary_tree needs k >= 1 and depth t >= 0")
    edges = []
    frontier = [0]
    n = 1
    for _ in range(t):
        nxt = []
        for v in frontier:
            for _ in range(k):
                edges.append((v, n))
                nxt.append(n)
                n += 1
        frontier = nxt
    return Graph.from_edges(n, edges, name=f"T({k},{t})")


def mcgee() -> Graph:
    edges = set()
    for i in range(24):
        edges.add(tuple(sorted((i, (i + 1) % 24))))
        if i % 3 == 0:
            edges.add(tuple(sorted((i, (i + 12) % 24))))
        elif i % 3 == 1:
            edges.add(tuple(sorted((i, (i + 7) % 24))))
    return Graph.from_edges(24, sorted(edges), labels=tuple(f"v{i}" for i in range(24)), name="McGee")


def even_parts(m: int, k: int) -> list[int]:
    return [m // k + (1 if i < m % k else 0) for i in range(k)]


def doubledom_example(m: int, parts: list[int] | None = None) -> Graph:
    """Bipartite graph with ``gamma = k + 1`` but a double-domination pair of size ``k + 2``.

    ``parts`` are the sizes of the partition of Y; default is a single
    even split into ``m // 2`` parts.
    """
    if parts is None:
        parts = even_parts(m, max(1, m // 2))
    if sum(parts) != m:
        raise SpecError(f"part sizes {parts} do not sum to m={m}")
    if any(p < 2 for p in parts):
        raise SpecError("every part needs at least 2 vertices")
    k = len(parts)
    edges = [(0, k + 1 + i) for i in range(m)]
    y = k + 1
    for j, size in enumerate(parts):
        for _ in range(size):
            edges.append((1 + j, y))
            y += 1
    labels = ("x",) + tuple(f"z{j + 1}" for j in range(k)) + tuple(f"y{i + 1}" for i in range(m))
    return Graph.from_edges(1 + k + m, edges, labels=labels, name=f"DD({m};{','.join(map(str, parts))})")


def cartesian_product(g: Graph, h: Graph) -> Graph:
    nh = h.n
    edges = []
    for u in range(g.n):
        for v in range(nh):
            a = u * nh + v
            for w in g.adjacency[u]:
                if w > u:
                    edges.append((a, w * nh + v))
            for x in h.adjacency[v]:
                if x > v:
                    edges.append((a, u * nh + x))
    labels = tuple(f"({g.label(u)},{h.label(v)})" for u in range(g.n) for v in range(nh))
    return Graph.from_edges(
        g.n * nh,
        edges,
        labels=labels,
        name=f"{g.name or 'G'}x{h.name or 'H'}",
        transitive_hint=g.transitive_hint and h.transitive_hint,
    )


def grid(m: int, n: int) -> Graph:
    if m < 1 or n < 1:
        raise SpecError("grid sides must be >= 1")
    return cartesian_product(path(m), path(n))


def disjoint_union(graphs: list[Graph]) -> tuple[Graph, list[int]]:
    """Union with relabelled vertices; also returns each part's vertex offset."""
    if not graphs:
        raise SpecError("union needs at least one graph")
    offsets = []
    edges = []
    total = 0
    for g in graphs:
        offsets.append(total)
        edges += [(u + total, v + total) for u, v in g.edges]
        total += g.n
    name = "+".join(g.name or "G" for g in graphs)
    return Graph.from_edges(total, edges, name=name), offsets


def random_tree(n: int, rng: random.Random) -> Graph:
    """Uniform random labelled tree via Prüfer sequence decoding."""
    if n <= 2:
        return path(n)
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    for v in seq:
        leaf = min(u for u in range(n) if degree[u] == 1)
        edges.append((leaf, v))
        degree[leaf] -= 1
        degree[v] -= 1
    u, w = [x for x in range(n) if degree[x] == 1]
    edges.append((u, w))
    return Graph.from_edges(n, edges, name=f"tree{n}")


_ARITY = {
    "path": (1, 1),
    "cycle": (1, 1),
    "complete": (1, 1),
    "star": (1, 1),
    "spider": (2, 2),
    "theta": (2, 2),
    "kary_tree": (2, 2),
    "grid": (2, 2),
    "mcgee": (0, 0),
    "doubledom_example": (1, None),
}


def generate(spec: GeneratorSpec) -> Graph:
    fam = spec.family
    p = spec.params
    if fam == "product":
        if len(spec.children) != 2:
            raise SpecError("prod takes exactly two graphs")
        return cartesian_product(generate(spec.children[0]), generate(spec.children[1]))
    if fam == "union":
        return disjoint_union([generate(c) for c in spec.children])[0]
    if fam == "file":
        try:
            return load_edge_list(spec.path)
        except OSError as exc:
            raise SpecError(f"cannot read {spec.path}: {exc.strerror or exc}") from exc
        except GraphError as exc:
            raise SpecError(f"{spec.path}: {exc}") from exc
    lo, hi = _ARITY.get(fam, (None, None))
    if lo is None:
        raise SpecError(f"unknown family {fam!r}")
    if len(p) < lo or (hi is not None and len(p) > hi):
        want = str(lo) if lo == hi else f"at least {lo}"
        raise SpecError(f"{fam} takes {want} parameter(s), got {len(p)}")
    if fam == "path":
        return path(*p)
    if fam == "cycle":
        return cycle(*p)
    if fam == "complete":
        return complete(*p)
    if fam == "star":
        return star(*p)
    if fam == "spider":
        return spider(*p)
    if fam == "theta":
        return theta(*p)
    if fam == "kary_tree":
        return kary_tree(*p)
    if fam == "grid":
        return grid(*p)
    if fam == "mcgee":
        return mcgee()
    # doubledom_example: m | m,k | m,s1,...,sk (k >= 2 explicit sizes)
    m = p[0]
    if len(p) == 1:
        return doubledom_example(m)
    if len(p) == 2:
        if p[1] < 1:
            raise SpecError("doubledom_example needs k >= 1 parts")
        return doubledom_example(m, even_parts(m, p[1]))
    return doubledom_example(m, list(p[1:]))


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str):
        raise SpecError(f"{msg} at position {self.pos} in {self.text!r}")

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            self.error(f"expected {ch!r}")
        self.pos += 1

    def word(self) -> str:
        self.skip_ws()
        m = re.compile(r"[A-Za-z_][A-Za-z_0-9]*").match(self.text, self.pos)
        if not m:
            self.error("expected a family name")
        self.pos = m.end()
        return m.group().lower()

    def number(self) -> int:
        self.skip_ws()
        m = re.compile(r"\d+").match(self.text, self.pos)
        if not m:
            self.error("expected an integer")
        self.pos = m.end()
        return int(m.group())

    def expr(self) -> GeneratorSpec:
        name = self.word()
        if name in ("prod", "product", "union"):
            self.expect("(")
            children = [self.expr()]
            while self.peek() == ",":
                self.pos += 1
                children.append(self.expr())
            self.expect(")")
            return GeneratorSpec("product" if name != "union" else "union", children=tuple(children))
        if name == "file":
            self.expect(":")
            # path runs to the end of the expression or the next unbalanced ')' / ','
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos] not in ",)":
                self.pos += 1
            path_text = self.text[start:self.pos].strip()
            if not path_text:
                self.error("expected a path")
            return GeneratorSpec("file", path=path_text)
        if name not in _ARITY:
            self.error(f"unknown family {name!r}")
        params = []
        if self.peek() == ":":
            self.pos += 1
            params.append(self.number())
            # a comma followed by a digit continues this parameter list
            while self.peek() == ",":
                save = self.pos
                self.pos += 1
                self.skip_ws()
                if self.pos < len(self.text) and self.text[self.pos].isdigit():
                    params.append(self.number())
                else:
                    self.pos = save
                    break
        spec = GeneratorSpec(name, tuple(params))
        lo, hi = _ARITY[name]
        if len(params) < lo or (hi is not None and len(params) > hi):
            want = str(lo) if lo == hi else f"at least {lo}"
            self.error(f"{name} takes {want} parameter(s), got {len(params)}")
        return spec


def parse_spec(text: str) -> GeneratorSpec:
    parser = _Parser(text)
    spec = parser.expr()
    if parser.peek():
        parser.error("unexpected trailing input")
    return spec


def from_text(text: str) -> Graph:
    return generate(parse_spec(text))

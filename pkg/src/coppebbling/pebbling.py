"""Stationary-target pebbling: solvability, optimal pebbling number, fractional formula.

Configurations are plain tuples of non-negative counts, one per vertex.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil
from typing import Iterator, Sequence

from .domination import SearchRefused
from .graph_core import Graph, automorphism_mapping

Configuration = tuple[int, ...]

OPT_MAX_N = 12
TRANSITIVITY_CHECK_MAX_N = 10


class ConfigError(ValueError):
    pass


class NotTransitiveError(ValueError):
    pass


def parse_config(text: str, n: int | None = None) -> Configuration:
    try:
        counts = tuple(int(x) for x in text.replace(" ", "").split(","))
    except ValueError:
        raise ConfigError(f"bad configuration {text!r}: expected comma-separated counts") from None
    if any(c < 0 for c in counts):
        raise ConfigError("configuration counts must be non-negative")
    if n is not None and len(counts) != n:
        raise ConfigError(f"configuration has {len(counts)} entries but the graph has {n} vertices")
    return counts


def format_config(c: Sequence[int]) -> str:
    return ",".join(map(str, c))


def compositions(total: int, parts: int) -> Iterator[Configuration]:
    """All count vectors of length ``parts`` summing to ``total``, lexicographically ascending."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def pebbling_steps(g: Graph, c: Configuration) -> Iterator[Configuration]:
    """Configurations reachable by one pebbling step."""
    for u in range(g.n):
        if c[u] >= 2:
            for v in g.adjacency[u]:
                nxt = list(c)
                nxt[u] -= 2
                nxt[v] += 1
                yield tuple(nxt)


class _Weights:
    """Integer-scaled potentials ``sum c(u) 2^-dist(u,t)``; a target is unreachable below 1."""

    def __init__(self, g: Graph):
        dist = g.metrics.dist
        self.connected = g.is_connected
        self.scale = int(g.metrics.diameter) if self.connected else g.n
        self.factor = [
            [(1 << (self.scale - int(dist[t][u]))) if dist[t][u] <= self.scale else 0 for u in range(g.n)]
            for t in range(g.n)
        ]

    def enough(self, c: Configuration, t: int) -> bool:
        row = self.factor[t]
        return sum(ci * fi for ci, fi in zip(c, row) if ci) >= 1 << self.scale


class PebblingSolver:
    """Memoised solvability per target, shared across configurations of one graph."""

    def __init__(self, g: Graph):
        self.g = g
        self.weights = _Weights(g)
        self.memo: list[dict[Configuration, bool]] = [{} for _ in range(g.n)]
        self.steps_checked = 0

    def solvable(self, c: Configuration, target: int) -> bool:
        if c[target] >= 1:
            return True
        if not self.weights.enough(c, target):
            return False
        memo = self.memo[target]
        hit = memo.get(c)
        if hit is not None:
            return hit
        result = False
        before = sum(c)
        for nxt in pebbling_steps(self.g, c):
            self.steps_checked += 1
            assert sum(nxt) == before - 1
            if self.solvable(nxt, target):
                result = True
                break
        memo[c] = result
        return result

    def universal(self, c: Configuration) -> bool:
        # cheap potential test on every target before any search
        w = self.weights
        if not all(c[t] or w.enough(c, t) for t in range(self.g.n)):
            return False
        return all(self.solvable(c, t) for t in range(self.g.n))


def is_solvable(g: Graph, c: Configuration, target: int) -> bool:
    if len(c) != g.n:
        raise ConfigError("configuration length does not match the graph")
    return PebblingSolver(g).solvable(tuple(c), target)


@dataclass(frozen=True)
class FractionalResult:
    value: Fraction
    vertex: int
    status: str  # "verified", "generator", or "assumed-transitive"


def transitivity_status(g: Graph, max_n: int = TRANSITIVITY_CHECK_MAX_N) -> str | None:
    """``"generator"`` / ``"verified"`` when known transitive, ``"not-transitive"``, or None if unchecked."""
    if g.transitive_hint:
        return "generator"
    if g.n > max_n:
        return None
    ok = all(automorphism_mapping(g, 0, v) is not None for v in range(1, g.n))
    return "verified" if ok else "not-transitive"


def distance_mass(g: Graph, v: int) -> Fraction:
    return sum((Fraction(1, 2 ** int(d)) for d in g.metrics.dist[v]), Fraction(0))


def fractional_optimal_transitive(g: Graph, v: int = 0, force: bool = False,
                                  max_n: int = TRANSITIVITY_CHECK_MAX_N) -> FractionalResult:
    """``n / sum_u 2^-dist(u,v)``, the optimal fractional pebbling number of a vertex-transitive graph."""
    if not g.is_connected:
        raise ValueError("graph must be connected")
    status = transitivity_status(g, max_n)
    if status == "not-transitive" and not force:
        raise NotTransitiveError(f"{g!r} is not vertex-transitive")
    if status is None:
        if not force:
            raise NotTransitiveError(f"cannot verify vertex-transitivity of {g!r} (n > {max_n})")
    if force and status in (None, "not-transitive"):
        status = "assumed-transitive"
    return FractionalResult(Fraction(g.n) / distance_mass(g, v), v, status)


@dataclass(frozen=True)
class OptimalResult:
    value: int
    witness: Configuration
    start: int


def optimal_pebbling(g: Graph, max_n: int = OPT_MAX_N) -> OptimalResult:
    """Least m such that one size-m configuration can reach every target."""
    if not g.is_connected:
        raise ValueError("optimal pebbling needs a connected graph")
    if g.n > max_n:
        raise SearchRefused(f"exact search refused: n={g.n} exceeds optimal pebbling guard {max_n}")
    start = 1
    try:
        start = ceil(fractional_optimal_transitive(g).value)
    except NotTransitiveError:
        pass
    solver = PebblingSolver(g)
    for m in range(start, g.n + 1):
        for c in compositions(m, g.n):
            if solver.universal(c):
                return OptimalResult(m, c, start)
    raise AssertionError("unreachable: one pebble per vertex always works")

"""Exact distance-d domination, roman domination and double-domination pairs.

All searches work on integer bitmasks of closed balls.  ``SearchRefused`` is
raised when a graph is beyond the practical size guard instead of letting an
exponential search run unbounded.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .graph_core import Graph, ball_mask, relabel_bits

DEFAULT_MAX_N = 64


class SearchRefused(RuntimeError):
    """The instance exceeds a configured exact-search guard."""


@dataclass(frozen=True)
class DominationResult:
    value: int
    witness: tuple[int, ...]
    d: int = 1
    # second witness set (S' for double domination) or the 0/1/2 labelling for roman
    extra: tuple[int, ...] = ()


def _mask_of(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _guard(g: Graph, max_n: int):
    if g.n > max_n:
        raise SearchRefused(f"exact search refused: n={g.n} exceeds guard {max_n}")


def verify_dominating(g: Graph, s, d: int = 1, target=None) -> bool:
    """True iff every target vertex lies within distance ``d`` of some vertex of ``s``."""
    covered = 0
    for v in s:
        covered |= ball_mask(g, v, d)
    want = (1 << g.n) - 1 if target is None else _mask_of(target)
    return want & ~covered == 0


def _balls(g: Graph, d: int) -> list[int]:
    return [ball_mask(g, v, d) for v in range(g.n)]


def _greedy_cover(balls: list[int], full: int) -> list[int]:
    chosen = []
    uncovered = full
    while uncovered:
        best = max(range(len(balls)), key=lambda v: ((balls[v] & uncovered).bit_count(), -v))
        chosen.append(best)
        uncovered &= ~balls[best]
    return chosen


def _min_cover_size(balls: list[int], full: int) -> int:
    """Branch and bound on the lowest uncovered vertex; returns the optimum size."""
    n = len(balls)
    order = sorted(range(n), key=lambda v: (-balls[v].bit_count(), v))
    # covers[u]: vertices whose ball contains u, in exploration order
    covers = [[w for w in order if balls[w] >> u & 1] for u in range(n)]
    biggest = max(b.bit_count() for b in balls)
    best = len(_greedy_cover(balls, full))

    def search(uncovered: int, size: int):
        nonlocal best
        if not uncovered:
            best = min(best, size)
            return
        need = -(-uncovered.bit_count() // biggest)
        if size + need >= best:
            return
        u = (uncovered & -uncovered).bit_length() - 1
        for w in covers[u]:
            search(uncovered & ~balls[w], size + 1)

    search(full, 0)
    return best


def _lex_least_cover(balls: list[int], full: int, k: int) -> tuple[int, ...] | None:
    """Lexicographically least k-set of vertices whose balls cover ``full``."""
    n = len(balls)
    biggest = max(b.bit_count() for b in balls)
    # reach[i]: union of balls of vertices >= i
    reach = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        reach[i] = reach[i + 1] | balls[i]
    chosen: list[int] = []

    def search(start: int, uncovered: int) -> bool:
        left = k - len(chosen)
        if not uncovered:
            return True
        if left == 0 or uncovered.bit_count() > left * biggest:
            return False
        if uncovered & ~reach[start]:
            return False
        for v in range(start, n - left + 1):
            chosen.append(v)
            if search(v + 1, uncovered & ~balls[v]):
                return True
            chosen.pop()
            if uncovered & ~reach[v + 1]:
                return False
        return False

    if search(0, full):
        # pad with further vertices if the cover finished early
        extra = [v for v in range(n) if v not in chosen]
        while len(chosen) < k:
            chosen.append(extra.pop(0))
        return tuple(sorted(chosen))
    return None


def gamma_d(g: Graph, d: int = 1, max_n: int = DEFAULT_MAX_N) -> DominationResult:
    """Exact distance-d domination number with the lexicographically least optimal witness."""
    if d < 1:
        raise ValueError("distance d must be >= 1")
    _guard(g, max_n)
    balls = _balls(g, d)
    full = (1 << g.n) - 1
    value = _min_cover_size(balls, full)
    witness = _lex_least_cover(balls, full, value)
    assert witness is not None
    return DominationResult(value, witness, d)


def gamma(g: Graph, max_n: int = DEFAULT_MAX_N) -> DominationResult:
    return gamma_d(g, 1, max_n)


def _roman_cost(g: Graph, twos: int) -> int:
    covered = 0
    for v in relabel_bits(twos):
        covered |= g.closed_mask(v)
    return 2 * twos.bit_count() + (g.n - covered.bit_count())


def roman_labelling(g: Graph, twos) -> tuple[int, ...]:
    """0/1/2 labels with 2 on ``twos``, 0 on their other neighbours and 1 elsewhere."""
    covered = 0
    for v in twos:
        covered |= g.closed_mask(v)
    two_set = set(twos)
    return tuple(2 if v in two_set else (0 if covered >> v & 1 else 1) for v in range(g.n))


def is_roman_dominating(g: Graph, labels) -> bool:
    for v in range(g.n):
        if labels[v] not in (0, 1, 2):
            return False
        if labels[v] == 0 and not any(labels[u] == 2 for u in g.adjacency[v]):
            return False
    return True


def roman_domination(g: Graph, max_n: int = DEFAULT_MAX_N) -> DominationResult:
    """Minimum weight roman labelling, searched over the set of 2-labelled vertices.

    Branching is on the lowest vertex not yet settled: it is either labelled 1
    itself or covered by a 2 on some vertex of its closed neighbourhood.
    """
    _guard(g, max_n)
    n = g.n
    closed = [g.closed_mask(v) for v in range(n)]
    span = max(c.bit_count() for c in closed)
    order = sorted(range(n), key=lambda v: (-closed[v].bit_count(), v))
    covers = [[w for w in order if closed[w] >> u & 1] for u in range(n)]

    best_cost = n
    best_twos = 0
    # greedy start: repeatedly take the vertex covering most unsettled vertices while it pays
    twos, unsettled = 0, (1 << n) - 1
    while unsettled:
        w = max(range(n), key=lambda v: ((closed[v] & unsettled).bit_count(), -v))
        if (closed[w] & unsettled).bit_count() <= 2:
            break
        twos |= 1 << w
        unsettled &= ~closed[w]
    cost = _roman_cost(g, twos)
    if cost < best_cost:
        best_cost, best_twos = cost, twos

    def lower(unsettled: int) -> int:
        u = unsettled.bit_count()
        a = u // span
        return min(u, 2 * a + (u - a * span), 2 * (a + 1))

    def search(unsettled: int, twos: int, cost: int):
        nonlocal best_cost, best_twos
        if not unsettled:
            if cost < best_cost or (cost == best_cost and twos < best_twos):
                best_cost, best_twos = cost, twos
            return
        if cost + lower(unsettled) >= best_cost:
            return
        u = (unsettled & -unsettled).bit_length() - 1
        for w in covers[u]:
            if not twos >> w & 1:
                search(unsettled & ~closed[w], twos | 1 << w, cost + 2)
        search(unsettled & ~(1 << u), twos, cost + 1)

    search((1 << n) - 1, 0, 0)
    # the search may settle a vertex as 1 although a chosen 2 covers it later; normalise
    labels = roman_labelling(g, relabel_bits(best_twos))
    value = sum(labels)
    assert value == best_cost
    return DominationResult(value, tuple(relabel_bits(best_twos)), 1, labels)


def double_domination_pair(g: Graph, max_n: int = DEFAULT_MAX_N) -> DominationResult:
    """Minimum ``|S| + |S'|`` over dominating sets S with ``S' ⊆ S`` dominating ``V - S``.

    Given S', the cheapest S is S' plus every vertex not adjacent to S', so the
    search enumerates S' by increasing size until ``2|S'|`` alone is no better
    than the best pair found.  Returns S as ``witness`` and S' as ``extra``.
    """
    _guard(g, max_n)
    n = g.n
    full = (1 << n) - 1
    best = None
    for size in range(0, n + 1):
        if best is not None and 2 * size >= best[0]:
            break
        for sp in combinations(range(n), size):
            sp_mask = _mask_of(sp)
            nbr = 0
            for v in sp:
                nbr |= g.neighbor_mask(v)
            s_mask = sp_mask | (full & ~nbr)
            cost = s_mask.bit_count() + size
            if best is None or cost < best[0]:
                best = (cost, s_mask, sp)
    cost, s_mask, sp = best
    s = tuple(relabel_bits(s_mask))
    assert verify_dominating(g, s) and verify_dominating(g, sp, 1, set(range(n)) - set(s))
    return DominationResult(cost, s, 1, tuple(sp))

"""Classical cops and robbers with free moves: winner and capture time by retrograde analysis.

Turn order: cops place, robber places (on a cop is immediate capture), then
each round every cop moves to a neighbour or holds, capture is checked, and
the robber moves or holds.  Cop positions are a multiset.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement, product

from .domination import SearchRefused
from .graph_core import INF, Graph

MAX_COPS = 3
MAX_N = 40


@dataclass(frozen=True)
class CopGameState:
    cop_positions: tuple[int, ...]  # sorted multiset
    robber_position: int
    cops_to_move: bool = True


class CopGame:
    """Solved game for ``k`` cops on ``g``.

    ``rounds[(cops, r)]`` is the number of cop turns the cops need to capture
    when it is their move, INF if the robber escapes forever.
    """

    def __init__(self, g: Graph, k: int, max_cops: int = MAX_COPS, max_n: int = MAX_N):
        if k < 1:
            raise ValueError("need at least one cop")
        if not g.is_connected:
            raise ValueError("classical game needs a connected graph")
        if k > max_cops or g.n > max_n:
            raise SearchRefused(f"state guard exceeded (k={k}, n={g.n}; limits k<={max_cops}, n<={max_n})")
        self.g = g
        self.k = k
        self.placements = list(combinations_with_replacement(range(g.n), k))
        self.rounds = self._solve()

    def _cop_successors(self, cops: tuple[int, ...]) -> list[tuple[int, ...]]:
        options = [(c,) + self.g.adjacency[c] for c in cops]
        return sorted({tuple(sorted(p)) for p in product(*options)})

    def _solve(self) -> dict[tuple[tuple[int, ...], int], float]:
        g = self.g
        succ = {p: self._cop_successors(p) for p in self.placements}
        robber_opts = [(r,) + g.adjacency[r] for r in range(g.n)]
        rounds: dict[tuple[tuple[int, ...], int], float] = {}
        states = [(p, r) for p in self.placements for r in range(g.n) if r not in p]
        for s in states:
            rounds[s] = INF
        # value iteration: after pass t every state winnable within t rounds has its exact value
        t = 0
        changed = True
        while changed:
            t += 1
            changed = False
            updates = {}
            for cops, r in states:
                if rounds[(cops, r)] != INF:
                    continue
                for nxt in succ[cops]:
                    if r in nxt:
                        updates[(cops, r)] = t
                        break
                    # robber picks the safest reply; stepping onto a cop is never better
                    worst = 0
                    for r2 in robber_opts[r]:
                        if r2 in nxt:
                            continue
                        worst = max(worst, rounds[(nxt, r2)])
                        if worst >= t:
                            break
                    if worst < t:
                        updates[(cops, r)] = t
                        break
            if updates:
                changed = True
                rounds.update(updates)
        return rounds

    def value_from(self, cops: tuple[int, ...]) -> float:
        """Game length from a cop placement against the robber's best start."""
        free = [r for r in range(self.g.n) if r not in cops]
        if not free:
            return 0
        return max(self.rounds[(cops, r)] for r in free)

    def best_placement(self) -> tuple[tuple[int, ...], float]:
        best = min(self.placements, key=lambda p: (self.value_from(p), p))
        return best, self.value_from(best)


@lru_cache(maxsize=256)
def _solved(g: Graph, k: int) -> CopGame:
    return CopGame(g, k, max_cops=k, max_n=g.n)


def solve_game(g: Graph, k: int, max_cops: int = MAX_COPS, max_n: int = MAX_N) -> CopGame:
    """Guard check, then a cached solved game (graphs are immutable)."""
    if k > max_cops or g.n > max_n:
        raise SearchRefused(f"state guard exceeded (k={k}, n={g.n}; limits k<={max_cops}, n<={max_n})")
    return _solved(g, k)


def cop_wins_with(g: Graph, k: int, **guards) -> bool:
    return solve_game(g, k, **guards).best_placement()[1] != INF


def cop_number(g: Graph, max_cops: int = MAX_COPS, max_n: int = MAX_N) -> int:
    """Least k with a winning cop strategy; raises SearchRefused past the guard."""
    for k in range(1, max_cops + 1):
        if cop_wins_with(g, k, max_cops=max_cops, max_n=max_n):
            return k
    raise SearchRefused(f"cop number >= {max_cops + 1} (undecided within guard)")


def capture_time(g: Graph, k: int, **guards) -> int:
    _, value = solve_game(g, k, **guards).best_placement()
    if value == INF:
        raise ValueError(f"{k} cop(s) cannot capture the robber on {g!r}")
    return int(value)

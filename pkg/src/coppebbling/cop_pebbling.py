"""The cop-pebbling game: move generation, exact game solving and the cop pebbling number.

A cop turn is a nonempty set of simultaneous pebbling steps.  A stack of
``c`` cops at ``u`` may send up to ``c // 2`` steps, split freely among the
neighbours of ``u``; pebbles arriving this turn cannot move again this turn.
Every step removes a cop, so the game graph is acyclic and a game started
from ``|C|`` cops lasts at most ``|C| - 1`` cop turns.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator

from .classic_cops import cop_number
from .domination import SearchRefused
from .graph_core import INF, Graph, components
from .pebbling import Configuration, PebblingSolver, compositions, optimal_pebbling

PC_MAX_N = 8

Step = tuple[int, int, int]  # (source, destination, multiplicity)


class IllegalMove(ValueError):
    pass


class GuardExceeded(SearchRefused):
    """Exact search not attempted or abandoned; carries the best known bracket."""

    def __init__(self, message: str, lower: int | None, upper: int | None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper


@dataclass(frozen=True)
class CopMove:
    steps: tuple[Step, ...]

    @property
    def size(self) -> int:
        return sum(s for _, _, s in self.steps)

    def to_list(self) -> list[list[int]]:
        return [list(s) for s in self.steps]

    def __str__(self):
        return " ".join(f"{u}->{v}" + (f"x{s}" if s > 1 else "") for u, v, s in self.steps)


@dataclass(frozen=True)
class GameState:
    config: Configuration
    robber: int


@dataclass
class GameOutcome:
    winner: str  # "cops" or "robber"
    turns: int | None  # cop turns to capture; None when the robber wins
    principal_line: list[dict] = field(default_factory=list)


def _bounded_vectors(length: int, cap: int) -> list[tuple[int, ...]]:
    """Vectors of non-negative ints with sum <= cap, lexicographic."""
    if length == 0:
        return [()]
    out = []
    for first in range(cap + 1):
        for rest in _bounded_vectors(length - 1, cap - first):
            out.append((first,) + rest)
    return out


def legal_cop_moves(g: Graph, c: Configuration) -> list[CopMove]:
    """Every legal cop turn, sources ascending then per-source distributions lexicographic."""
    sources = [u for u in range(g.n) if c[u] >= 2]
    per_source = []
    for u in sources:
        nbrs = g.adjacency[u]
        options = []
        for vec in _bounded_vectors(len(nbrs), c[u] // 2):
            options.append(tuple((u, v, s) for v, s in zip(nbrs, vec) if s))
        per_source.append(options)
    moves = []
    for combo in product(*per_source):
        steps = tuple(st for part in combo for st in part)
        if steps:
            moves.append(CopMove(steps))
    return moves


def _apply_steps(c: Configuration, steps) -> Configuration:
    out = list(c)
    for u, v, s in steps:
        out[u] -= 2 * s
    for u, v, s in steps:
        out[v] += s
    return tuple(out)


def check_move(g: Graph, c: Configuration, m: CopMove):
    if not m.steps:
        raise IllegalMove("a cop turn needs at least one pebbling step")
    spent: dict[int, int] = {}
    for u, v, s in m.steps:
        if s < 1:
            raise IllegalMove(f"step multiplicity must be positive: {(u, v, s)}")
        if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
            raise IllegalMove(f"{u}-{v} is not an edge")
        spent[u] = spent.get(u, 0) + s
    for u, s in spent.items():
        if 2 * s > c[u]:
            raise IllegalMove(f"vertex {u} holds {c[u]} cops, cannot make {s} steps")


def apply_move(g: Graph, state: GameState, m: CopMove) -> tuple[GameState, bool]:
    check_move(g, state.config, m)
    nxt = _apply_steps(state.config, m.steps)
    assert sum(nxt) == sum(state.config) - m.size
    return GameState(nxt, state.robber), nxt[state.robber] >= 1


def robber_moves(g: Graph, state: GameState) -> list[int]:
    """Stay first, then the neighbours in ascending order."""
    return [state.robber, *g.adjacency[state.robber]]


class GameSolver:
    """Memoised AND-OR search for one graph.

    Memo tables are keyed on the exact count vector plus robber vertex and
    are shared between all games solved with this object (values depend only
    on the state).  ``reverse`` flips the move enumeration order, which must
    not change any result.
    """

    def __init__(self, g: Graph, reverse: bool = False):
        self.g = g
        self.reverse = reverse
        self._succ: dict[Configuration, list[Configuration]] = {}
        self._win: dict[tuple[Configuration, int], bool] = {}
        self._turns: dict[tuple[Configuration, int], float] = {}
        self._closed = [(r, *g.adjacency[r]) for r in range(g.n)]

    @property
    def states_solved(self) -> int:
        return len(self._win)

    def successors(self, c: Configuration) -> list[Configuration]:
        hit = self._succ.get(c)
        if hit is not None:
            return hit
        seen: dict[Configuration, None] = {}
        for m in legal_cop_moves(self.g, c):
            seen.setdefault(_apply_steps(c, m.steps), None)
        out = list(seen)
        if self.reverse:
            out.reverse()
        self._succ[c] = out
        return out

    def cops_win(self, c: Configuration, r: int) -> bool:
        """Cops to move, robber on an empty vertex ``r``."""
        key = (c, r)
        hit = self._win.get(key)
        if hit is not None:
            return hit
        result = False
        for nxt in self.successors(c):
            if nxt[r]:
                result = True
                break
            if all(nxt[r2] or self.cops_win(nxt, r2) for r2 in self._closed[r]):
                result = True
                break
        self._win[key] = result
        return result

    def turns(self, c: Configuration, r: int) -> float:
        """Cop turns to capture under optimal play (cops minimise, robber maximises); INF if none."""
        key = (c, r)
        hit = self._turns.get(key)
        if hit is not None:
            return hit
        best = INF
        if self.cops_win(c, r):
            for nxt in self.successors(c):
                best = min(best, self._after_cop_turn(nxt, r))
                if best == 1:
                    break
        self._turns[key] = best
        return best

    def _after_cop_turn(self, nxt: Configuration, r: int) -> float:
        if nxt[r]:
            return 1
        worst = 0
        for r2 in self._closed[r]:
            if not nxt[r2]:
                worst = max(worst, self.turns(nxt, r2))
                if worst == INF:
                    break
        return 1 + worst

    def captures_all(self, c: Configuration) -> bool:
        return all(c[r] or self.cops_win(c, r) for r in range(self.g.n))

    def principal_line(self, c: Configuration, r: int) -> list[dict]:
        """One optimal line.  Ties: cops take the smallest move by step tuple, robber the smallest vertex."""
        line = []
        turn = 0
        while not c[r]:
            moves = legal_cop_moves(self.g, c)
            if not moves:
                break
            target = self.turns(c, r)
            chosen = None
            for m in sorted(moves, key=lambda m: m.steps):
                nxt = _apply_steps(c, m.steps)
                if target == INF or self._after_cop_turn(nxt, r) == target:
                    chosen, c = m, nxt
                    break
            turn += 1
            record = {"turn": turn, "move": chosen.to_list(), "config": list(c), "robber": r}
            if not c[r]:
                replies = [r2 for r2 in self._closed[r] if not c[r2]]
                r = max(sorted(replies), key=lambda r2: self.turns(c, r2))
                record["robber"] = r
            else:
                record["captured"] = True
            line.append(record)
        return line


def game_winner(g: Graph, c: Configuration, robber_start: int, reverse: bool = False,
                solver: GameSolver | None = None, line: bool = True) -> GameOutcome:
    if not g.is_connected:
        raise ValueError("game_winner needs a connected graph; use pc_number for disconnected graphs")
    c = tuple(c)
    if len(c) != g.n or any(x < 0 for x in c):
        raise ValueError("configuration does not fit the graph")
    if not 0 <= robber_start < g.n:
        raise ValueError(f"robber vertex {robber_start} out of range")
    if c[robber_start]:
        return GameOutcome("cops", 0, [])
    solver = solver or GameSolver(g, reverse)
    t = solver.turns(c, robber_start)
    principal = solver.principal_line(c, robber_start) if line else []
    if t == INF:
        return GameOutcome("robber", None, principal)
    assert t <= sum(c) - 1
    return GameOutcome("cops", int(t), principal)


def config_captures_all(g: Graph, c: Configuration, solver: GameSolver | None = None) -> bool:
    if not g.is_connected:
        raise ValueError("config_captures_all needs a connected graph")
    return (solver or GameSolver(g)).captures_all(tuple(c))


def ladder_vertex(i: int, j: int) -> int:
    """Index of rung ``i``, side ``j`` in ``prod(path:m, complete:2)``."""
    return 2 * i + j


def ladder_config(m: int) -> Configuration:
    if m < 1:
        raise ValueError("ladder needs m >= 1")
    c = [0] * (2 * m)
    c[ladder_vertex(0, 0)] = 1
    for i in range(m):
        if i % 4 == 1:
            c[ladder_vertex(i, 1)] = 2
        elif i % 4 == 3:
            c[ladder_vertex(i, 0)] = 2
    if m % 2:
        c[ladder_vertex(m - 1, ((m + 1) // 2) % 2)] += 1
    assert sum(c) == m + 1
    return tuple(c)


@dataclass
class PcResult:
    value: int
    witness: Configuration
    lower_start: int = 1
    configs_examined: int = 0
    games_solved: int = 0
    shortcut: str | None = None


# worker-process state for parallel scans
_WORKER_SOLVERS: dict = {}


def _worker_scan(args) -> Configuration | None:
    adjacency, reverse, chunk = args
    key = (adjacency, reverse)
    pair = _WORKER_SOLVERS.get(key)
    if pair is None:
        g = Graph(len(adjacency), adjacency)
        pair = (PebblingSolver(g), GameSolver(g, reverse))
        _WORKER_SOLVERS[key] = pair
    pebbler, solver = pair
    for c in chunk:
        if pebbler.universal(c) and solver.captures_all(c):
            return c
    return None


def _chunks(items: Iterator[Configuration], size: int) -> Iterator[list[Configuration]]:
    buf = []
    for it in items:
        buf.append(it)
        if len(buf) == size:
            yield buf
            buf = []
    if buf:
        yield buf


def _connected_pc(g: Graph, *, reverse: bool, threads: int, lower_start: bool,
                  bound_shortcut: bool, deadline: float | None, max_cops: int | None) -> PcResult:
    n = g.n
    start = 1
    if lower_start and n >= 2:
        start = max(optimal_pebbling(g).value, cop_number(g) + 1)
    shortcut = None
    if bound_shortcut:
        from .bounds import constructive_upper_bounds

        shortcut = min(constructive_upper_bounds(g), key=lambda b: (b.value, b.name), default=None)
    cap = n if max_cops is None else min(n, max_cops)
    pebbler = PebblingSolver(g)
    solver = GameSolver(g, reverse)
    examined = 0
    for m in range(start, cap + 1):
        if shortcut is not None and m == shortcut.value and solver.captures_all(shortcut.witness):
            return PcResult(m, shortcut.witness, start, examined, solver.states_solved, shortcut.name)
        if threads > 1:
            found = None
            jobs = ((g.adjacency, reverse, chunk) for chunk in _chunks(compositions(m, n), 64))
            with ProcessPoolExecutor(max_workers=threads) as pool:
                for chunk_result in pool.map(_worker_scan, jobs):
                    if deadline is not None and time.monotonic() > deadline:
                        raise GuardExceeded("timeout", m, None)
                    if chunk_result is not None:
                        found = chunk_result
                        break
            if found is not None:
                return PcResult(m, found, start, examined, solver.states_solved)
            continue
        for c in compositions(m, n):
            examined += 1
            if deadline is not None and examined % 32 == 0 and time.monotonic() > deadline:
                raise GuardExceeded(f"timeout while scanning size {m}", m, None)
            if pebbler.universal(c) and solver.captures_all(c):
                return PcResult(m, c, start, examined, solver.states_solved)
    raise GuardExceeded(f"no winning configuration with at most {cap} cops", cap + 1, None)


def pc_number(g: Graph, *, max_n: int = PC_MAX_N, max_cops: int | None = None, threads: int = 1,
              reverse: bool = False, lower_start: bool = True, bound_shortcut: bool = False,
              timeout: float | None = None) -> PcResult:
    """Exact cop pebbling number with the lexicographically least witness at the optimum size.

    Disconnected graphs are solved per component and the values summed.
    ``lower_start`` begins the scan at max(pi*, c+1); turn it off to scan from
    one cop so that the lower bounds are checked rather than assumed.
    ``bound_shortcut`` accepts a verified constructive upper-bound witness
    once the scan reaches its size.
    """
    deadline = None if timeout is None else time.monotonic() + timeout
    threads = threads if threads > 0 else (os.cpu_count() or 1)
    parts = components(g)
    too_big = [p for p in parts if p.graph.n > max_n]
    if too_big:
        from .bounds import bracket

        lo, hi = bracket(g)
        raise GuardExceeded(f"exact search refused: component with n={too_big[0].graph.n} exceeds guard {max_n}",
                            lo, hi)
    witness = [0] * g.n
    total = 0
    examined = 0
    games = 0
    start = 0
    shortcut = None
    for part in parts:
        try:
            res = _connected_pc(part.graph, reverse=reverse, threads=threads, lower_start=lower_start,
                                bound_shortcut=bound_shortcut, deadline=deadline, max_cops=max_cops)
        except GuardExceeded as exc:
            from .bounds import bracket

            lo, hi = bracket(g)
            raise GuardExceeded(str(exc), lo, hi) from None
        total += res.value
        examined += res.configs_examined
        games += res.games_solved
        start += res.lower_start
        shortcut = shortcut or res.shortcut
        for i, v in enumerate(part.vertices):
            witness[v] = res.witness[i]
    return PcResult(total, tuple(witness), start, examined, games, shortcut)


def transcript_records(g: Graph, c: Configuration, robber: int, outcome: GameOutcome) -> list[dict]:
    """Record stream for a solved game: the start position then one record per cop turn."""
    records = [{"turn": 0, "config": list(c), "move": [], "robber": robber}]
    records += outcome.principal_line
    return records

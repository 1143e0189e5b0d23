"""Executable lower/upper bounds on the cop pebbling number and a sandwich verifier.

Every bound carries the hypothesis it was applied under; a bound whose
hypothesis fails is simply not emitted, and a bound whose ingredients are
beyond a search guard is listed under ``unavailable`` with the reason.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import ceil, comb

from . import classic_cops
from .domination import SearchRefused, double_domination_pair, gamma, gamma_d, roman_domination
from .graph_core import INF, Graph, components, girth, graph_key, is_chordal
from .pebbling import (Configuration, NotTransitiveError, fractional_optimal_transitive,
                       optimal_pebbling)


@dataclass
class Bound:
    name: str
    value: int
    note: str = ""
    witness: Configuration | None = None


@dataclass
class BoundReport:
    graph: str
    key: str
    n: int
    exact_pc: int | None
    bracket: tuple[int | None, int | None]
    witness: Configuration | None
    lower_bounds: list[Bound] = field(default_factory=list)
    upper_bounds: list[Bound] = field(default_factory=list)
    optimal_checks: list[Bound] = field(default_factory=list)
    unavailable: list[str] = field(default_factory=list)
    violations: list[str] = field(default_factory=list)
    deficiency: int | None = None
    meyniel_ratio: float | None = None
    optimal_pebbling: int | None = None

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_record(self) -> dict:
        rec = asdict(self)
        rec["ok"] = self.ok
        return rec


def _config_from(n: int, weights: dict[int, int]) -> Configuration:
    c = [0] * n
    for v, w in weights.items():
        c[v] += w
    return tuple(c)


def lower_bounds(g: Graph, unavailable: list[str] | None = None) -> list[Bound]:
    """Cop number (strict for n >= 2), optimal pebbling, and the fractional bound when transitive."""
    if not g.is_connected:
        raise ValueError("bounds are stated for connected graphs")
    skipped = unavailable if unavailable is not None else []
    out = []
    try:
        c = classic_cops.cop_number(g)
        if g.n >= 2:
            out.append(Bound("cop_number_strict", c + 1, f"c(G)={c}, strict since n>=2"))
        else:
            out.append(Bound("cop_number_strict", c, "K1: equality"))
    except SearchRefused as exc:
        skipped.append(f"cop_number_strict: {exc}")
    try:
        opt = optimal_pebbling(g)
        out.append(Bound("optimal_pebbling", opt.value, "pi*(G)", opt.witness))
    except SearchRefused as exc:
        skipped.append(f"optimal_pebbling: {exc}")
    try:
        frac = fractional_optimal_transitive(g)
        out.append(Bound("fractional_optimal", ceil(frac.value), f"ceil({frac.value}), transitivity {frac.status}"))
    except NotTransitiveError as exc:
        skipped.append(f"fractional_optimal: {exc}")
    return out


def _girth_depths(g: Graph) -> list[int]:
    """Distances d with gir(G) >= 4d - 1, capped at the radius."""
    gir = girth(g)
    radius = int(g.metrics.radius)
    top = radius if gir == INF else min(radius, int((gir + 1) // 4))
    return list(range(1, top + 1))


def upper_bounds(g: Graph, unavailable: list[str] | None = None) -> list[Bound]:
    if not g.is_connected:
        raise ValueError("bounds are stated for connected graphs")
    skipped = unavailable if unavailable is not None else []
    n = g.n
    out = []
    try:
        dd = double_domination_pair(g)
        twos = set(dd.extra)
        out.append(Bound("double_domination", dd.value, f"|S|+|S'| with S={list(dd.witness)}, S'={list(dd.extra)}",
                         _config_from(n, {v: 2 if v in twos else 1 for v in dd.witness})))
        gm = gamma(g)
        out.append(Bound("twice_domination", 2 * gm.value, f"2*gamma, gamma={gm.value}",
                         _config_from(n, {v: 2 for v in gm.witness})))
        rom = roman_domination(g)
        out.append(Bound("roman", rom.value, "gamma_R", tuple(rom.extra)))
    except SearchRefused as exc:
        skipped.append(f"domination bounds: {exc}")

    hub = min(range(n), key=lambda v: (-g.degree(v), v))
    far = {v: 1 for v in range(n) if v != hub and not g.has_edge(hub, v)}
    far[hub] = 2
    out.append(Bound("n_minus_maxdeg", n - g.max_degree + 1, f"hub vertex {hub}, Delta={g.max_degree}",
                     _config_from(n, far)))

    try:
        k = classic_cops.cop_number(g)
        game = classic_cops.solve_game(g, k)
        place, t = game.best_placement()
        t = int(t)
        out.append(Bound("capture", k * 2 ** t, f"c={k}, capt_{k}={t}",
                         _config_from(n, {}) if not place else
                         tuple(sum(2 ** t for p in place if p == v) for v in range(n))))
    except SearchRefused as exc:
        skipped.append(f"capture: {exc}")

    if is_chordal(g):
        r = int(g.metrics.radius)
        centre = min(v for v in range(n) if g.metrics.eccentricity(v) == r)
        out.append(Bound("chordal_radius", 2 ** r, f"chordal, radius {r}", _config_from(n, {centre: 2 ** r})))
    if g.is_tree:
        out.append(Bound("tree", ceil(2 * n / 3), "tree"))
    gir = girth(g)
    for d in _girth_depths(g):
        try:
            gd = gamma_d(g, d)
        except SearchRefused as exc:
            skipped.append(f"girth_d{d}: {exc}")
            continue
        out.append(Bound(f"girth_d{d}", 2 ** d * gd.value, f"gir={gir} >= {4 * d - 1}, gamma_{d}={gd.value}",
                         _config_from(n, {v: 2 ** d for v in gd.witness})))
    return out


def constructive_upper_bounds(g: Graph) -> list[Bound]:
    return [b for b in upper_bounds(g) if b.witness is not None]


def bracket(g: Graph) -> tuple[int | None, int | None]:
    """Best available [lower, upper] from bounds alone, summed over components."""
    lo_total, hi_total = 0, 0
    for part in components(g):
        h = part.graph
        if h.n == 1:
            lo_total += 1
            hi_total = None if hi_total is None else hi_total + 1
            continue
        lows = [b.value for b in lower_bounds(h)]
        highs = [b.value for b in upper_bounds(h)]
        lo_total += max(lows, default=1)
        hi_total = None if hi_total is None or not highs else hi_total + min(highs)
    return lo_total, hi_total


def optimal_girth_checks(g: Graph, opt: int | None) -> list[Bound]:
    """Evaluate 2^(2s) n / sigma_k(s) for every s >= 1 with gir >= 2s+1 (up to the radius)."""
    out = []
    gir = girth(g)
    k = g.min_degree
    radius = int(g.metrics.radius)
    top = radius if gir == INF else min(radius, int((gir - 1) // 2))
    for s in range(1, top + 1):
        value = Fraction(2 ** (2 * s) * g.n, sigma(k, s))
        out.append(Bound(f"opt_girth_s{s}", math.floor(value), f"2^{2 * s}*{g.n}/sigma_{k}({s}) = {value}"))
    return out


def sandwich_check(g: Graph, exact: int | None = None, witness: Configuration | None = None,
                   pc_options: dict | None = None, compute_exact: bool = True) -> BoundReport:
    """Combine every bound with the exact value and record violations.

    With no ``exact`` given the value is computed by a plain scan from one cop
    (no lower-bound start, no bound shortcut) so the bounds are tested, not assumed.
    """
    from .cop_pebbling import GuardExceeded, pc_number

    unavailable: list[str] = []
    lows = lower_bounds(g, unavailable)
    highs = upper_bounds(g, unavailable)
    if exact is None and compute_exact:
        opts = {"lower_start": False, "bound_shortcut": False}
        opts.update(pc_options or {})
        try:
            res = pc_number(g, **opts)
            exact, witness = res.value, res.witness
        except GuardExceeded as exc:
            unavailable.append(f"exact: {exc}")
    lo = max((b.value for b in lows), default=None)
    hi = min((b.value for b in highs), default=None)
    report = BoundReport(g.name or "graph", graph_key(g), g.n, exact, (lo, hi), witness, lows, highs,
                         unavailable=unavailable)
    opt = next((b.value for b in lows if b.name == "optimal_pebbling"), None)
    report.optimal_pebbling = opt
    if opt is not None:
        report.optimal_checks = optimal_girth_checks(g, opt)
        for b in report.optimal_checks:
            if opt > b.value:
                report.violations.append(f"pi*={opt} exceeds {b.name}={b.value}")
    if lo is not None and hi is not None and lo > hi:
        report.violations.append(f"lower bound {lo} exceeds upper bound {hi}")
    if exact is not None:
        for b in lows:
            if b.value > exact:
                report.violations.append(f"{b.name}={b.value} exceeds exact {exact}")
        for b in highs:
            if b.value < exact:
                report.violations.append(f"{b.name}={b.value} below exact {exact}")
        report.deficiency = g.n - exact
        report.meyniel_ratio = exact / (math.sqrt(g.n) * 2 ** math.sqrt(g.n))
    return report


# -- pure formula evaluators ------------------------------------------------


def grid_upper_bound(n: int, m: int) -> int:
    """2 floor((n+2)(m+2)/5) - 8, valid for grids with 16 <= n <= m."""
    if not 16 <= n <= m:
        raise ValueError("grid bound needs 16 <= n <= m")
    return 2 * ((n + 2) * (m + 2) // 5) - 8


def sigma(k: int, s: int) -> int:
    if k < 1 or s < 0:
        raise ValueError("sigma needs k >= 1 and s >= 0")
    return 1 + k * sum((k - 1) ** (i - 1) for i in range(1, s + 1))


def cop_vs_optimal_hypothesis(k: int, t: int) -> bool:
    """Whether (4/d)^(4t-2) (d+1)^(4t-1) <= d^t with d = k - 1, in exact arithmetic."""
    if k < 2 or t < 1:
        raise ValueError("needs k >= 2 and t >= 1")
    d = k - 1
    return 4 ** (4 * t - 2) * (d + 1) ** (4 * t - 1) <= d ** (5 * t - 2)


def graham_counter_margin(k: int, d: int) -> Fraction:
    """(2/3)^d * sum_{i=0}^{kd/2} C(i+k-1, k-1) 2^-i as an exact rational."""
    if k < 2 or d < 1:
        raise ValueError("needs k >= 2 and d >= 1")
    total = sum(Fraction(comb(i + k - 1, k - 1), 2 ** i) for i in range(k * d // 2 + 1))
    return Fraction(2, 3) ** d * total


def cop_girth_lower(d: int, t: int) -> int:
    """d^t, the cop-number lower bound for gir >= 8t-3 and min degree > d."""
    return d ** t


def cop_girth_hypothesis(g: Graph, d: int, t: int) -> bool:
    return girth(g) >= 8 * t - 3 and g.min_degree > d


def product_k_bound(pc_factor: int, t: int) -> int:
    """t * pi^c(G), an upper bound for G x K_t."""
    return t * pc_factor


def meyniel_ratio(pc: int, n: int) -> float:
    return pc / (math.sqrt(n) * 2 ** math.sqrt(n))

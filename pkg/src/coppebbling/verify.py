"""Corpus verification suites shared by the CLI ``verify`` command and the acceptance tests.

Each check yields a flat record ``{"suite", "graph", "check", "ok", ...}``.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from math import ceil
from typing import Callable, Iterable

from . import classic_cops
from .bounds import sandwich_check
from .cop_pebbling import config_captures_all, ladder_config, pc_number
from .domination import double_domination_pair, gamma, gamma_d, roman_domination
from .generators import cartesian_product, complete, path
from .graph_core import Graph, ball, is_chordal, is_dismantlable
from .pebbling import optimal_pebbling


def _rec(suite: str, g: Graph, check: str, ok: bool, **detail) -> dict:
    return {"suite": suite, "graph": g.name, "n": g.n, "edges": [list(e) for e in g.edges],
            "check": check, "ok": bool(ok), **detail}


def classical_checks(g: Graph) -> list[dict]:
    out = []
    dismantlable, _ = is_dismantlable(g)
    c = classic_cops.cop_number(g)
    out.append(_rec("classic", g, "copwin_iff_dismantlable", (c == 1) == dismantlable,
                    cop_number=c, dismantlable=dismantlable))
    if is_chordal(g):
        out.append(_rec("classic", g, "chordal_dismantlable", dismantlable))
        capt = classic_cops.capture_time(g, 1)
        radius = int(g.metrics.radius)
        out.append(_rec("classic", g, "chordal_capture_le_radius", capt <= radius, capture_time=capt, radius=radius))
    return out


def domination_checks(g: Graph, ds: Iterable[int] = (1, 2)) -> list[dict]:
    out = []
    n = g.n
    for d in ds:
        gd = gamma_d(g, d).value
        if n >= d + 1:  # the bound fails trivially below that (K1 has gamma 1)
            out.append(_rec("domination", g, f"gamma_{d}_le_n_over_{d + 1}", gd * (d + 1) <= n, value=gd))
        c = min(len(ball(g, v, d)) for v in range(n))
        g2d = gamma_d(g, 2 * d).value
        out.append(_rec("domination", g, f"gamma_{2 * d}_le_n_over_min_ball_{d}", g2d * c <= n, value=g2d, c=c))
    gm = gamma(g).value
    dd = double_domination_pair(g).value
    rom = roman_domination(g).value
    out.append(_rec("domination", g, "gamma_le_pair_le_2gamma", gm <= dd <= 2 * gm, gamma=gm, pair=dd))
    out.append(_rec("domination", g, "gamma_le_roman_le_2gamma", gm <= rom <= 2 * gm, gamma=gm, roman=rom))
    out.append(_rec("domination", g, "pair_equals_roman", dd == rom, pair=dd, roman=rom))
    return out


def pebbling_checks(g: Graph) -> list[dict]:
    opt = optimal_pebbling(g).value
    return [_rec("pebbling", g, "opt_le_ceil_2n_3", opt <= ceil(Fraction(2 * g.n, 3)), value=opt)]


def sandwich_records(g: Graph, pc_options: dict | None = None) -> list[dict]:
    report = sandwich_check(g, pc_options=pc_options)
    rec = _rec("sandwich", g, "bounds_sandwich", report.ok and report.exact_pc is not None,
               exact_pc=report.exact_pc, witness=list(report.witness or ()), bracket=list(report.bracket),
               violations=report.violations, deficiency=report.deficiency, meyniel_ratio=report.meyniel_ratio,
               lower={b.name: b.value for b in report.lower_bounds},
               upper={b.name: b.value for b in report.upper_bounds})
    out = [rec]
    if g.is_tree and report.exact_pc is not None:
        out.append(_rec("trees", g, "pc_equals_opt_on_trees", report.exact_pc == report.optimal_pebbling,
                        exact_pc=report.exact_pc, optimal=report.optimal_pebbling))
    return out


def full_checks(g: Graph, pc_options: dict | None = None) -> list[dict]:
    return sandwich_records(g, pc_options) + classical_checks(g) + domination_checks(g) + pebbling_checks(g)


def tree_checks(g: Graph, pc_options: dict | None = None) -> list[dict]:
    opts = {"max_n": max(g.n, 8)}
    opts.update(pc_options or {})
    pc = pc_number(g, **opts).value
    opt = optimal_pebbling(g).value
    return [_rec("trees", g, "pc_equals_opt_on_trees", pc == opt, exact_pc=pc, optimal=opt)]


def ladder_checks(m: int, exact_up_to: int = 3) -> list[dict]:
    g = cartesian_product(path(m), complete(2))
    g = Graph(g.n, g.adjacency, g.labels, name=f"P{m}xK2")
    c = ladder_config(m)
    out = [_rec("ladders", g, "ladder_config_captures_all", config_captures_all(g, c) and sum(c) == m + 1,
                config=list(c))]
    if m <= exact_up_to:
        pc = pc_number(g, max_n=max(8, g.n)).value
        opt = optimal_pebbling(g).value
        out.append(_rec("ladders", g, "ladder_pc_in_opt_to_m_plus_1", opt <= pc <= m + 1,
                        exact_pc=pc, optimal=opt))
    return out


def _apply(args):
    fn, g, opts = args
    return fn(g, opts)


def run_parallel(fn: Callable, graphs: list[Graph], pc_options: dict | None, threads: int) -> list[dict]:
    """Map ``fn`` over graphs, concatenating records in input order."""
    jobs = [(fn, g, pc_options) for g in graphs]
    if threads <= 1:
        results = map(_apply, jobs)
        return [r for chunk in results for r in chunk]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        return [r for chunk in pool.map(_apply, jobs, chunksize=4) for r in chunk]


__all__ = [
    "classical_checks",
    "domination_checks",
    "pebbling_checks",
    "sandwich_records",
    "full_checks",
    "tree_checks",
    "ladder_checks",
    "run_parallel",
]

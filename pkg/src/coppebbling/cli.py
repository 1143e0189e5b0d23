"""Command line interface.

Exit codes: 0 success, 2 input error, 3 search guard hit (bracket printed),
4 verification violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__, classic_cops
from .bounds import sandwich_check
from .cache import DEFAULT_PATH, ResultCache
from .cop_pebbling import GameSolver, GuardExceeded, game_winner, pc_number, transcript_records
from .corpus import connected_graphs, random_trees
from .domination import SearchRefused, gamma_d
from .generators import SpecError, from_text
from .graph_core import INF, Graph, GraphError, components, girth, graph_key, is_chordal, is_dismantlable
from .pebbling import ConfigError, format_config, parse_config
from . import verify as suites

EXIT_OK, EXIT_INPUT, EXIT_GUARD, EXIT_VIOLATION = 0, 2, 3, 4


class InputError(Exception):
    pass


def _fmt(x) -> str:
    return "inf" if x == INF else str(int(x)) if isinstance(x, float) else str(x)


class Output:
    """Human table on stdout, JSON-lines records on stdout and/or ``--out``."""

    def __init__(self, args):
        self.format = args.format
        self.out_path = Path(args.out) if args.out else None
        self._fh = None
        if self.out_path:
            self.out_path.parent.mkdir(parents=True, exist_ok=True)
            self._fh = self.out_path.open("w")

    def table(self, rows: list[tuple[str, object]]):
        if self.format != "table":
            return
        width = max((len(k) for k, _ in rows), default=0)
        for k, v in rows:
            print(f"{k:<{width}}  {v}")

    def line(self, text: str = ""):
        if self.format == "table":
            print(text)

    def record(self, rec: dict):
        text = json.dumps(rec, sort_keys=True, default=str)
        if self.format == "records":
            print(text)
        if self._fh:
            self._fh.write(text + "\n")

    def figure_dir(self, args) -> Path | None:
        if args.figures:
            return Path(args.figures)
        if self.out_path and not args.no_figures:
            return self.out_path.parent
        return None

    def close(self):
        if self._fh:
            self._fh.close()


def _load_graph(text: str) -> Graph:
    try:
        g = from_text(text)
    except (SpecError, GraphError) as exc:
        raise InputError(str(exc)) from None
    if not g.name:
        g = Graph(g.n, g.adjacency, g.labels, name=text, transitive_hint=g.transitive_hint)
    return g


def _cache(args) -> ResultCache | None:
    return None if args.no_cache else ResultCache(args.cache)


def cmd_info(args, out: Output) -> int:
    g = _load_graph(args.graph)
    m = g.metrics
    dis, order = is_dismantlable(g)
    parts = components(g)
    rec = {
        "graph": g.name, "key": graph_key(g), "n": g.n, "edges": g.edge_count,
        "min_degree": g.min_degree, "max_degree": g.max_degree,
        "regular": g.min_degree == g.max_degree,
        "radius": _fmt(m.radius), "diameter": _fmt(m.diameter), "girth": _fmt(girth(g)),
        "chordal": is_chordal(g), "dismantlable": dis, "components": [p.graph.n for p in parts],
    }
    if args.d:
        try:
            rec[f"gamma_{args.d}"] = gamma_d(g, args.d).value if g.is_connected else None
        except SearchRefused as exc:
            rec[f"gamma_{args.d}"] = str(exc)
    out.table([(k, v) for k, v in rec.items() if k != "key"])
    out.record(rec)
    return EXIT_OK


def cmd_solve(args, out: Output) -> int:
    g = _load_graph(args.graph)
    if args.config is None or args.robber is None:
        raise InputError("solve needs --config and --robber")
    try:
        c = parse_config(args.config, g.n)
    except ConfigError as exc:
        raise InputError(str(exc)) from None
    if not 0 <= args.robber < g.n:
        raise InputError(f"robber vertex {args.robber} out of range 0..{g.n - 1}")
    if not g.is_connected:
        raise InputError("solve needs a connected graph")
    outcome = game_winner(g, c, args.robber, reverse=args.reverse_moves)
    out.table([("graph", g.name), ("config", format_config(c)), ("robber", args.robber),
               ("winner", outcome.winner), ("turns", outcome.turns if outcome.turns is not None else "-")])
    for step in outcome.principal_line:
        moves = " ".join(f"{u}->{v}" + (f"x{s}" if s > 1 else "") for u, v, s in step["move"])
        tail = "captured" if step.get("captured") else f"robber {step['robber']}"
        out.line(f"  turn {step['turn']}: {moves:<16} config {format_config(step['config'])}  {tail}")
    for rec in transcript_records(g, c, args.robber, outcome):
        out.record({"graph": g.name, **rec})
    out.record({"graph": g.name, "winner": outcome.winner, "turns": outcome.turns})
    return EXIT_OK


def _pc_options(args) -> dict:
    opts = {"threads": args.threads, "reverse": args.reverse_moves}
    if args.max_n is not None:
        opts["max_n"] = args.max_n
    if args.max_cops is not None:
        opts["max_cops"] = args.max_cops
    if args.timeout_seconds is not None:
        opts["timeout"] = args.timeout_seconds
    return opts


def _cached_pc(g: Graph, cache: ResultCache | None):
    if cache is None:
        return None
    rec = cache.get(graph_key(g), "pc")
    if rec is None:
        return None
    witness = tuple(rec.witness)
    # cached entries are re-verified, not trusted
    parts_ok = all(GameSolver(p.graph).captures_all(tuple(witness[v] for v in p.vertices)) for p in components(g))
    if not parts_ok or sum(witness) != rec.value:
        return None
    return rec


def cmd_pc(args, out: Output) -> int:
    g = _load_graph(args.graph)
    cache = _cache(args)
    rec = _cached_pc(g, cache)
    if rec is not None:
        value, witness, stats = rec.value, tuple(rec.witness), {"cached": True}
    else:
        try:
            res = pc_number(g, **_pc_options(args))
        except GuardExceeded as exc:
            lo, hi = exc.lower, exc.upper
            out.table([("graph", g.name), ("status", str(exc)), ("bracket", f"[{lo}, {hi}]")])
            out.record({"graph": g.name, "key": graph_key(g), "status": "guard", "message": str(exc),
                        "bracket": [lo, hi]})
            return EXIT_GUARD
        value, witness = res.value, res.witness
        stats = {"cached": False, "lower_start": res.lower_start, "configs_examined": res.configs_examined,
                 "states_solved": res.games_solved}
        if cache is not None:
            cache.put(graph_key(g), "pc", value, list(witness))
    out.table([("graph", g.name), ("pc", value), ("witness", format_config(witness)),
               *((k, v) for k, v in stats.items())])
    out.record({"graph": g.name, "key": graph_key(g), "pc": value, "witness": list(witness), **stats})
    return EXIT_OK


def _report_rows(report) -> list[tuple[str, object]]:
    rows = [("graph", report.graph), ("n", report.n),
            ("exact", report.exact_pc if report.exact_pc is not None else "unavailable"),
            ("bracket", f"[{report.bracket[0]}, {report.bracket[1]}]")]
    rows += [(f"lower {b.name}", f"{b.value}  ({b.note})") for b in report.lower_bounds]
    rows += [(f"upper {b.name}", f"{b.value}  ({b.note})") for b in report.upper_bounds]
    rows += [(f"pi* check {b.name}", f"{b.value}  ({b.note})") for b in report.optimal_checks]
    if report.deficiency is not None:
        rows.append(("deficiency", report.deficiency))
        rows.append(("meyniel ratio", f"{report.meyniel_ratio:.4f}"))
    rows += [("unavailable", u) for u in report.unavailable]
    rows.append(("violations", "; ".join(report.violations) or "none"))
    return rows


def cmd_bounds(args, out: Output) -> int:
    g = _load_graph(args.graph)
    if not g.is_connected:
        raise InputError("bounds are defined for connected graphs; run pc on disconnected graphs")
    cache = _cache(args)
    rec = _cached_pc(g, cache)
    opts = _pc_options(args)
    opts.pop("threads", None)
    if rec is not None:
        report = sandwich_check(g, exact=rec.value, witness=tuple(rec.witness))
    else:
        report = sandwich_check(g, pc_options=opts)
        if cache is not None and report.exact_pc is not None:
            cache.put(graph_key(g), "pc", report.exact_pc, list(report.witness))
    out.table(_report_rows(report))
    out.record(report.to_record())
    fig_dir = out.figure_dir(args)
    if fig_dir is not None:
        from .plotting import plot_bound_report

        stem = out.out_path.stem if out.out_path else "bounds"
        path = plot_bound_report(report, fig_dir / f"{stem}_{graph_key(g)[:8]}.png")
        out.line(f"figure  {path}")
    return EXIT_OK if report.ok else EXIT_VIOLATION


def cmd_verify(args, out: Output) -> int:
    records: list[dict] = []
    pc_opts = {k: v for k, v in _pc_options(args).items() if k not in ("threads",)}
    threads = max(1, args.threads)
    if not (args.all_connected or args.trees or args.ladders):
        raise InputError("verify needs at least one of --all-connected, --trees, --ladders")
    if args.all_connected:
        if args.all_connected > 7:
            raise InputError("--all-connected supports n <= 7")
        graphs = list(connected_graphs(args.all_connected))
        pc_opts.setdefault("max_n", max(8, args.all_connected))
        records += suites.run_parallel(suites.full_checks, graphs, pc_opts, threads)
    if args.trees:
        trees = random_trees(args.trees, args.samples, seed=args.seed)
        records += suites.run_parallel(suites.tree_checks, trees, pc_opts, threads)
    if args.ladders:
        for m in range(1, args.ladders + 1):
            records += suites.ladder_checks(m)
    for rec in records:
        out.record(rec)
    failures = [r for r in records if not r["ok"]]
    by_check: dict[str, list[int]] = {}
    for r in records:
        tally = by_check.setdefault(f"{r['suite']}/{r['check']}", [0, 0])
        tally[0] += r["ok"]
        tally[1] += 1
    out.table([(name, f"{ok}/{total} passed") for name, (ok, total) in sorted(by_check.items())])
    for r in failures[:20]:
        out.line(f"FAIL {r['suite']}/{r['check']} on {r['graph']}: {r}")
    out.line(f"{len(records) - len(failures)}/{len(records)} checks passed")
    fig_dir = out.figure_dir(args)
    if fig_dir is not None:
        from .plotting import plot_corpus

        rows = [r for r in records if r["check"] == "bounds_sandwich"]
        stem = out.out_path.stem if out.out_path else "verify"
        for path in plot_corpus(rows, fig_dir, stem):
            out.line(f"figure  {path}")
    return EXIT_VIOLATION if failures else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", help="generator expression, e.g. path:5, prod(path:3,complete:2), file:g.txt")
    common.add_argument("--d", type=int, default=None, help="distance parameter for distance domination")
    common.add_argument("--max-n", type=int, default=None, help="largest component for exact cop pebbling search")
    common.add_argument("--max-cops", type=int, default=None, help="largest configuration size scanned")
    common.add_argument("--threads", type=int, default=1, help="worker processes (0 = all cores)")
    common.add_argument("--timeout-seconds", type=float, default=None)
    common.add_argument("--no-cache", action="store_true")
    common.add_argument("--cache", default=str(DEFAULT_PATH), help="cache file (JSON lines, append-only)")
    common.add_argument("--out", default=None, help="write records to this file")
    common.add_argument("--format", choices=("table", "records"), default="table")
    common.add_argument("--figures", default=None, help="directory for figures (default: next to --out)")
    common.add_argument("--no-figures", action="store_true")
    common.add_argument("--reverse-moves", action="store_true", help="reverse cop move enumeration (determinism check)")

    parser = argparse.ArgumentParser(prog="coppebbling", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("info", parents=[common], help="graph metrics")
    p = sub.add_parser("solve", parents=[common], help="solve one cop pebbling game")
    p.add_argument("--config", help="comma-separated cop counts")
    p.add_argument("--robber", type=int, help="robber start vertex")
    sub.add_parser("pc", parents=[common], help="exact cop pebbling number")
    sub.add_parser("bounds", parents=[common], help="every bound next to the exact value")
    p = sub.add_parser("verify", parents=[common], help="corpus verification")
    p.add_argument("--all-connected", type=int, default=0, metavar="N")
    p.add_argument("--trees", type=int, default=0, metavar="N", help="random trees with at most N vertices")
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ladders", type=int, default=0, metavar="M")
    return parser


COMMANDS = {"info": cmd_info, "solve": cmd_solve, "pc": cmd_pc, "bounds": cmd_bounds, "verify": cmd_verify}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.command != "verify" and not args.graph:
        print("error: --graph is required", file=sys.stderr)
        return EXIT_INPUT
    out = Output(args)
    try:
        return COMMANDS[args.command](args, out)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SearchRefused as exc:
        print(f"guard: {exc}", file=sys.stderr)
        return EXIT_GUARD
    finally:
        out.close()


if __name__ == "__main__":
    sys.exit(main())

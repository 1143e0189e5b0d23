"""Figures for bound reports and corpus runs, written next to the record output."""

from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

SMALL_SIZE = 7
MEDIUM_SIZE = 8
FIG_WIDTH = (3.4, 5.1, 6.9)
DPI = 200

_STYLE = {
    "font.size": MEDIUM_SIZE,
    "axes.titlesize": MEDIUM_SIZE,
    "axes.labelsize": MEDIUM_SIZE,
    "xtick.labelsize": SMALL_SIZE,
    "ytick.labelsize": SMALL_SIZE,
    "legend.fontsize": SMALL_SIZE,
    "lines.linewidth": 0.9,
    "axes.linewidth": 0.7,
}


def new(width: int = 1, aspect: float = 0.62, **kw):
    with plt.rc_context(_STYLE):
        fig, ax = plt.subplots(figsize=(FIG_WIDTH[width], FIG_WIDTH[width] * aspect), **kw)
    return fig, ax


def save(fig, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with plt.rc_context(_STYLE):
        fig.tight_layout()
        fig.savefig(path, dpi=DPI)
    plt.close(fig)
    return path


def plot_bound_report(report, path: Path) -> Path:
    """Horizontal bars for each bound, with the exact value as a vertical line."""
    rows = [(b.name, b.value, "lower") for b in report.lower_bounds]
    rows += [(b.name, b.value, "upper") for b in report.upper_bounds]
    fig, ax = new(1, aspect=0.25 + 0.07 * len(rows))
    colors = {"lower": "tab:blue", "upper": "tab:orange"}
    ys = range(len(rows))
    ax.barh(list(ys), [r[1] for r in rows], color=[colors[r[2]] for r in rows], height=0.6)
    ax.set_yticks(list(ys))
    ax.set_yticklabels([r[0] for r in rows])
    ax.invert_yaxis()
    if report.exact_pc is not None:
        ax.axvline(report.exact_pc, color="k", ls="--", label=f"exact = {report.exact_pc}")
        ax.legend(loc="lower right")
    ax.set_xlabel("cops")
    ax.set_title(f"{report.graph} (n={report.n})")
    return save(fig, path)


def plot_corpus(rows: list[dict], outdir: Path, stem: str = "corpus") -> list[Path]:
    """Exact values against n with the ceil(2n/3) curve, plus the Meyniel-style ratio."""
    outdir = Path(outdir)
    solved = [r for r in rows if r.get("exact_pc") is not None]
    if not solved:
        return []
    paths = []
    fig, ax = new(1)
    ns = [r["n"] for r in solved]
    ax.scatter(ns, [r["exact_pc"] for r in solved], s=10, alpha=0.5, label="exact")
    ax.scatter(ns, [r["bracket"][1] for r in solved], s=6, marker="x", alpha=0.5, label="best upper bound")
    xs = range(1, max(ns) + 1)
    ax.plot(list(xs), [math.ceil(2 * x / 3) for x in xs], color="k", lw=0.8, label="ceil(2n/3)")
    ax.set_xlabel("n")
    ax.set_ylabel("cop pebbling number")
    ax.legend()
    paths.append(save(fig, outdir / f"{stem}_pc_vs_n.png"))

    fig, ax = new(1)
    ax.scatter(ns, [r["meyniel_ratio"] for r in solved], s=10, alpha=0.6)
    ax.set_xlabel("n")
    ax.set_ylabel("pc / (sqrt(n) 2^sqrt(n))")
    paths.append(save(fig, outdir / f"{stem}_meyniel_ratio.png"))
    return paths

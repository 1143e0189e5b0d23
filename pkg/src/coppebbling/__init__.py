"""Exact solvers for cops-and-robbers pebbling and the graph invariants around it."""

__version__ = "0.1.0"

from .graph_core import Graph, INF  # noqa: E402
from .generators import parse_spec, generate, from_text  # noqa: E402
from .cop_pebbling import game_winner, config_captures_all, pc_number, ladder_config  # noqa: E402

__all__ = [
    "Graph",
    "INF",
    "parse_spec",
    "generate",
    "from_text",
    "game_winner",
    "config_captures_all",
    "pc_number",
    "ladder_config",
]

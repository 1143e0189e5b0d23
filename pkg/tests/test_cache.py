import json

from coppebbling import classic_cops
from coppebbling.cache import ResultCache
from coppebbling.cop_pebbling import pc_number
from coppebbling.corpus import connected_graphs
from coppebbling.domination import double_domination_pair, gamma_d, roman_domination
from coppebbling.graph_core import graph_key
from coppebbling.pebbling import optimal_pebbling

INVARIANTS = {
    "pc": lambda g: pc_number(g).value,
    "optimal_pebbling": lambda g: optimal_pebbling(g).value,
    "gamma_1": lambda g: gamma_d(g, 1).value,
    "gamma_2": lambda g: gamma_d(g, 2).value,
    "roman": lambda g: roman_domination(g).value,
    "double_pair": lambda g: double_domination_pair(g).value,
    "cop_number": lambda g: classic_cops.cop_number(g),
}


def smoke_corpus():
    graphs = list(connected_graphs(6, min_n=3))
    return graphs[:: max(1, len(graphs) // 20)][:20]


def test_round_trip_on_smoke_corpus(tmp_path):
    path = tmp_path / "cache.jsonl"
    graphs = smoke_corpus()
    assert len(graphs) == 20
    cache = ResultCache(path)
    by_key = {}
    for g in graphs:
        by_key[graph_key(g)] = g
        for name, fn in INVARIANTS.items():
            cache.put(graph_key(g), name, fn(g))
    reloaded = ResultCache(path)
    assert len(reloaded) == 20 * len(INVARIANTS)
    bad = reloaded.verify(lambda rec: INVARIANTS[rec.invariant](by_key[rec.graph_key]))
    assert bad == []


def test_verify_reports_tampering(tmp_path):
    path = tmp_path / "cache.jsonl"
    g = smoke_corpus()[0]
    cache = ResultCache(path)
    cache.put(graph_key(g), "pc", pc_number(g).value + 1)
    bad = ResultCache(path).verify(lambda rec: pc_number(g).value)
    assert len(bad) == 1


def test_later_record_wins_and_torn_line_ignored(tmp_path):
    path = tmp_path / "cache.jsonl"
    cache = ResultCache(path)
    cache.put("k", "pc", 3, [1, 2])
    cache.put("k", "pc", 4, [2, 2])
    with path.open("a") as fh:
        fh.write('{"graph_key": "k", "inva')
    again = ResultCache(path)
    assert again.get("k", "pc").value == 4
    assert again.get("k", "pc", {"x": 1}) is None
    lines = path.read_text().splitlines()
    assert json.loads(lines[0])["value"] == 3  # append-only

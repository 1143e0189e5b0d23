from math import ceil

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from conftest import as_plain, connected_graphs
from coppebbling.bounds import product_k_bound
from coppebbling.cop_pebbling import (
    CopMove,
    GameSolver,
    GameState,
    GuardExceeded,
    IllegalMove,
    apply_move,
    check_move,
    config_captures_all,
    game_winner,
    ladder_config,
    ladder_vertex,
    legal_cop_moves,
    pc_number,
    robber_moves,
    transcript_records,
)
from coppebbling.generators import complete, cycle, from_text, mcgee, path, spider, star
from coppebbling.graph_core import Graph, induced_subgraph
from coppebbling.pebbling import optimal_pebbling


def test_move_enumeration_examples():
    assert [m.steps for m in legal_cop_moves(path(2), (2, 0))] == [((0, 1, 1),)]
    moves = legal_cop_moves(path(3), (4, 0, 0))
    assert [m.steps for m in moves] == [((0, 1, 1),), ((0, 1, 2),)]
    assert legal_cop_moves(path(3), (1, 1, 1)) == []


@settings(max_examples=40)
@given(connected_graphs(max_n=5), st.data())
def test_successors_match_definition(g, data):
    c = tuple(data.draw(st.lists(st.integers(0, 5), min_size=g.n, max_size=g.n)))
    ours = set(GameSolver(g).successors(c))
    theirs = set(oracles.PebbleGame(*as_plain(g)).moves(c))
    assert ours == theirs


def test_apply_move_examples():
    p3 = path(3)
    state, captured = apply_move(p3, GameState((0, 2, 0), 0), CopMove(((1, 0, 1),)))
    assert captured and state.config == (1, 0, 0)
    state, captured = apply_move(path(2), GameState((2, 0), 1), CopMove(((0, 1, 1),)))
    assert captured
    state, captured = apply_move(p3, GameState((4, 0, 0), 2), CopMove(((0, 1, 2),)))
    assert not captured and state.config == (0, 2, 0)


@pytest.mark.parametrize("config, steps, fragment", [
    ((2, 0, 0), (), "at least one"),
    ((2, 0, 0), ((0, 2, 1),), "not an edge"),
    ((3, 0, 0), ((0, 1, 2),), "cannot make 2"),
    # chaining: the pebble arriving at 1 may not continue to 2 in the same turn
    ((2, 0, 0), ((0, 1, 1), (1, 2, 1)), "cannot make 1"),
    ((2, 0, 0), ((0, 1, 0),), "positive"),
])
def test_illegal_moves(config, steps, fragment):
    with pytest.raises(IllegalMove, match=fragment):
        check_move(path(3), config, CopMove(steps))


@given(connected_graphs(max_n=5), st.data())
def test_conservation(g, data):
    c = tuple(data.draw(st.lists(st.integers(0, 6), min_size=g.n, max_size=g.n)))
    for m in legal_cop_moves(g, c):
        state, _ = apply_move(g, GameState(c, 0), m)
        assert sum(state.config) == sum(c) - m.size


def test_robber_moves():
    assert robber_moves(path(3), GameState((0, 0, 0), 1)) == [1, 0, 2]
    assert robber_moves(Graph.from_edges(1, []), GameState((0,), 0)) == [0]
    assert robber_moves(cycle(4), GameState((0, 0, 0, 0), 0)) == [0, 1, 3]


def test_game_winner_examples():
    out = game_winner(path(3), (0, 2, 0), 0)
    assert (out.winner, out.turns) == ("cops", 1)
    assert game_winner(path(2), (1, 0), 1).winner == "robber"
    assert game_winner(path(5), (2, 0, 0, 0, 0), 4).winner == "robber"
    assert game_winner(path(3), (1, 0, 1), 1).winner == "robber"
    assert game_winner(path(3), (1, 0, 1), 0).turns == 0


def test_game_winner_rejects_disconnected():
    with pytest.raises(ValueError):
        game_winner(from_text("union(path:2,path:2)"), (2, 0, 2, 0), 1)


@settings(max_examples=40)
@given(connected_graphs(max_n=5), st.data())
def test_winner_matches_independent_solver(g, data):
    c = tuple(data.draw(st.lists(st.integers(0, 4), min_size=g.n, max_size=g.n)))
    r = data.draw(st.integers(0, g.n - 1))
    brute = oracles.PebbleGame(*as_plain(g))
    expected = "cops" if c[r] or brute.win(c, r) else "robber"
    out = game_winner(g, c, r)
    assert out.winner == expected
    assert game_winner(g, c, r, reverse=True).winner == expected
    if out.winner == "cops":
        assert out.turns <= max(0, sum(c) - 1)


@settings(max_examples=30)
@given(connected_graphs(max_n=5), st.data())
def test_extra_cop_never_hurts(g, data):
    c = list(data.draw(st.lists(st.integers(0, 3), min_size=g.n, max_size=g.n)))
    u = data.draw(st.integers(0, g.n - 1))
    solver = GameSolver(g)
    bigger = list(c)
    bigger[u] += 1
    for r in range(g.n):
        if not bigger[r] and solver.cops_win(tuple(c), r):
            assert solver.cops_win(tuple(bigger), r)


def test_principal_line_replays():
    g = spider(3, 2)
    c = (0, 2, 0, 2, 0, 0, 0)
    for r in range(g.n):
        out = game_winner(g, c, r)
        state = GameState(c, r)
        for step in out.principal_line:
            state, captured = apply_move(g, state, CopMove(tuple(tuple(s) for s in step["move"])))
            assert list(state.config) == step["config"]
            if captured:
                assert step.get("captured")
                break
            assert step["robber"] in robber_moves(g, state)
            state = GameState(state.config, step["robber"])
        if out.winner == "cops" and out.turns:
            assert len(out.principal_line) == out.turns
        recs = transcript_records(g, c, r, out)
        assert recs[0]["turn"] == 0 and recs[0]["config"] == list(c)


def test_captures_all_examples():
    # C6 construction: two cops at the centre of each of two disjoint P3s
    assert config_captures_all(cycle(6), (0, 2, 0, 0, 2, 0))
    assert config_captures_all(from_text("prod(path:3,complete:2)"), ladder_config(3))
    assert not config_captures_all(path(3), (1, 0, 1))


def test_dominating_vertex_pair_wins_in_one_turn():
    for g in (star(3), star(5), complete(4), complete(2)):
        c = tuple(2 if v == 0 else 0 for v in range(g.n))
        for r in range(1, g.n):
            assert game_winner(g, c, r).turns == 1


@pytest.mark.parametrize("m", range(1, 6))
def test_ladder_config(m):
    c = ladder_config(m)
    g = from_text(f"prod(path:{m},complete:2)")
    assert sum(c) == m + 1 and len(c) == g.n
    assert c[ladder_vertex(0, 0)] >= 1
    assert config_captures_all(g, c)


def test_ladder_config_shape():
    assert ladder_config(4) == (1, 0, 0, 2, 0, 0, 2, 0)
    with pytest.raises(ValueError):
        ladder_config(0)


@pytest.mark.parametrize("n", range(1, 8))
def test_paths(n):
    assert pc_number(path(n)).value == ceil(2 * n / 3)


@pytest.mark.parametrize("n", range(3, 8))
def test_cycles(n):
    assert pc_number(cycle(n)).value == ceil(2 * n / 3)


def test_named_values():
    assert pc_number(star(3)).value == 2
    assert pc_number(spider(3, 2)).value == 4
    assert pc_number(from_text("union(path:2,path:2)")).value == 4
    assert pc_number(Graph.from_edges(1, [])).value == 1


@settings(max_examples=25)
@given(connected_graphs(max_n=5))
def test_pc_matches_independent_solver(g):
    value, witness = oracles.PebbleGame(*as_plain(g)).pc()
    for lower_start in (True, False):
        res = pc_number(g, lower_start=lower_start)
        assert (res.value, res.witness) == (value, witness)


@settings(max_examples=15)
@given(connected_graphs(max_n=6))
def test_pc_is_order_independent(g):
    a = pc_number(g)
    b = pc_number(g, reverse=True)
    c = pc_number(g, lower_start=False, bound_shortcut=True)
    assert a.value == b.value == c.value
    assert a.witness == b.witness
    assert config_captures_all(g, c.witness) and sum(c.witness) == c.value


def test_threads_match_serial():
    for g in (path(6), cycle(7), spider(3, 2)):
        a = pc_number(g)
        b = pc_number(g, threads=3, reverse=True)
        assert (a.value, a.witness) == (b.value, b.witness)


@settings(max_examples=20)
@given(connected_graphs(min_n=2, max_n=6))
def test_bounds_by_optimal_and_cop_number(g):
    from coppebbling.classic_cops import cop_number

    v = pc_number(g, lower_start=False).value
    assert optimal_pebbling(g).value <= v
    assert cop_number(g) < v


def test_disconnected_sum():
    g = from_text("union(path:3,cycle:4,complete:1)")
    res = pc_number(g)
    assert res.value == pc_number(path(3)).value + pc_number(cycle(4)).value + 1
    assert res.witness[-1] == 1


def test_product_bound():
    for base in (path(2), path(3)):
        prod = from_text(f"prod(path:{base.n},complete:2)")
        assert pc_number(prod).value <= product_k_bound(pc_number(base).value, 2)


def test_induced_deficiency_on_spider():
    g = spider(3, 2)
    h = induced_subgraph(g, [0, 1, 2, 3, 4]).graph
    assert g.n - pc_number(g).value >= h.n - pc_number(h).value


def test_guard_carries_bracket():
    with pytest.raises(GuardExceeded) as info:
        pc_number(path(10))
    assert info.value.lower is not None and info.value.upper is not None
    assert info.value.lower <= ceil(20 / 3) <= info.value.upper
    with pytest.raises(GuardExceeded) as info:
        pc_number(mcgee())
    assert info.value.lower <= info.value.upper
    with pytest.raises(GuardExceeded):
        pc_number(cycle(6), max_cops=3)


def test_timeout():
    with pytest.raises(GuardExceeded, match="timeout"):
        pc_number(path(9), max_n=9, lower_start=False, timeout=0.0)

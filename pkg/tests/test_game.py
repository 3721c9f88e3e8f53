import random

import pytest

from deepwide.equiv import enumerate_graphs
from deepwide.game import (CopStrategy, GameError, Solver, cop_wins, escape, play_certificate,
                           solve, verify_strategy)
from deepwide.graph import LabelledGraph, cycle, grid, path
from deepwide.grid_strategy import grid_cop_strategy, grid_strategy_rounds


def test_path_threshold_small():
    assert not solve(path(7), 2, 3)
    assert solve(path(7), 2, 4)
    assert str(solve(path(7), 2, 3)) == "Robber wins"


def test_escape_space():
    g = path(5)
    assert escape(g, {2}, 0) == frozenset({0, 1})
    assert escape(g, {2}, 2) == frozenset({2})


def test_vertex_and_edge_games_agree():
    for g in enumerate_graphs(5, 2):
        if g.m == 0:
            continue
        for k in (1, 2, 3):
            for q in (1, 2, 3, 4):
                assert cop_wins(g, k, q, "CR") == cop_wins(g, k, q, "eCR"), (g, k, q)


def test_round_and_cop_monotonicity():
    for g in enumerate_graphs(5, 1):
        for k in (1, 2, 3):
            for q in (1, 2, 3, 4):
                if cop_wins(g, k, q):
                    assert cop_wins(g, k, q + 1) and cop_wins(g, k + 1, q)


@pytest.mark.parametrize("variant,board", [("CR", "G"), ("monCR", "G"), ("eCR", "G°"),
                                           ("moneCR", "G°"), ("eCR", "G")])
def test_solver_strategies_verify(variant, board):
    r = random.Random(11)
    for _ in range(40):
        n = r.randint(1, 6)
        g = LabelledGraph(n, tuple((u, v) for u in range(n) for v in range(u + 1, n)
                                   if r.random() < 0.45))
        if variant.endswith("eCR") and board == "G" and g.m == 0:
            continue
        k = r.randint(1, 3)
        res = Solver(g, k, variant, board).solve(6)
        if res.cop_wins:
            assert verify_strategy(g, res.strategy, k, res.rounds, variant, board).ok
            if res.rounds > 1:
                assert not Solver(g, k, variant, board).cop_wins(res.rounds - 1)
        else:
            # the robber certificate beats the best cop strategy for more rounds
            better = Solver(g, k, variant, board).solve(64)
            if better.cop_wins:
                assert play_certificate(res.certificate, better.strategy, 6)


def test_truncated_strategy_fails():
    res = solve(path(7), 2, 4)
    moves = dict(res.strategy.moves)
    moves.pop(next(iter(moves)))
    bad = CopStrategy(moves, 2)
    v = verify_strategy(path(7), bad, 2, 4)
    assert not v.ok and "undefined" in v.reason


def test_strategy_json_round_trip():
    res = solve(cycle(5), 3, 4)
    s = CopStrategy.from_json(res.strategy.to_json(), 3)
    assert verify_strategy(cycle(5), s, 3, 4).ok


def test_grid_examples():
    assert not solve(grid(2, 7), 3, 3)
    s = Solver(grid(2, 7), 4, "CR")
    assert s.value(8) == 6
    assert Solver(grid(2, 7), 4, "monCR").value(8) == 6


def test_grid_strategy_shape_checks():
    assert grid_strategy_rounds(4, 9) == 14
    with pytest.raises(GameError):
        grid_cop_strategy(3, 5)


def test_errors():
    with pytest.raises(GameError):
        Solver(path(3), 0)
    with pytest.raises(GameError):
        solve(path(3), 1, -1)

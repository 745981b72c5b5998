import random

from horsmc.games import ParityGame, solve, solve_progress, validate, winner_from
from horsmc.randgen import random_game

from oracles import brute_winners, all_small_games


def g(owner, priority, succ, start=None):
    return ParityGame(dict(owner), dict(priority), {k: tuple(v) for k, v in succ.items()}, start)


def test_self_loops():
    even = g({"v": 0}, {"v": 2}, {"v": ["v"]})
    assert solve(even).win == {"v": 0}
    odd = g({"v": 0}, {"v": 1}, {"v": ["v"]})
    assert solve(odd).win == {"v": 1}


def test_dead_end_loses_for_owner():
    # highest even priority but owned by player 0 with no moves: 0 still loses
    dead = g({"v": 0}, {"v": 2}, {"v": []})
    assert solve(dead).win == {"v": 1}
    dead1 = g({"v": 1}, {"v": 1}, {"v": []})
    assert solve(dead1).win == {"v": 0}


def test_dead_end_attraction():
    # player 1 can steer into player 0's dead end
    game = g(
        {"a": 1, "b": 0, "c": 0},
        {"a": 2, "b": 2, "c": 2},
        {"a": ["b", "c"], "b": [], "c": ["c"]},
    )
    sol = solve(game)
    assert sol.win["b"] == 1
    assert sol.win["a"] == 1
    assert sol.win["c"] == 0
    assert sol.strategy["a"] == "b"


def test_two_priorities_chain():
    # 0 must avoid the odd loop and park in the even one
    game = g(
        {"s": 0, "e": 0, "d": 1},
        {"s": 1, "e": 0, "d": 1},
        {"s": ["e", "d"], "e": ["e"], "d": ["d"]},
    )
    sol = solve(game)
    assert sol.win["s"] == 0
    assert sol.strategy["s"] == "e"


def test_validate():
    game = g({"a": 0}, {"a": 0}, {"a": ["b"]})
    assert validate(game)
    assert not validate(g({"a": 0}, {"a": 0}, {"a": ["a"]}))


def test_winner_from_uses_start():
    game = g({"a": 0, "b": 1}, {"a": 0, "b": 1}, {"a": ["a"], "b": ["b"]}, start="b")
    assert winner_from(game) == 1
    assert winner_from(game, "a") == 0


def test_exhaustive_tiny_games():
    for n in (1, 2):
        for game in all_small_games(n):
            expected = brute_winners(game)
            assert solve(game).win == expected, game
            assert solve_progress(game) == expected, game


def test_brute_agreement_small_random():
    rng = random.Random(7001)
    for _ in range(300):
        game = random_game(rng, max_nodes=4, max_priority=3)
        expected = brute_winners(game)
        assert solve(game).win == expected, game
        assert solve_progress(game) == expected, game


def test_solvers_agree_medium_random():
    rng = random.Random(7002)
    for _ in range(150):
        game = random_game(rng, max_nodes=30, max_priority=4)
        assert solve(game).win == solve_progress(game), game


def test_strategy_is_winning():
    # winner's positional strategy must beat random play by the loser
    rng = random.Random(7003)
    for _ in range(120):
        game = random_game(rng, max_nodes=12, max_priority=3)
        sol = solve(game)
        for v0 in game.owner:
            w = sol.win[v0]
            for _ in range(8):
                v, seen, seq = v0, {}, []
                while True:
                    if v in seen:
                        cyc = seq[seen[v]:]
                        assert max(game.priority[u] for u in cyc) % 2 == w, (game, v0)
                        break
                    seen[v] = len(seq)
                    seq.append(v)
                    if game.owner[v] == w:
                        assert v in sol.strategy, (game, v0, v)
                        v = sol.strategy[v]
                    else:
                        opts = [t for t in game.succ[v]]
                        if not opts:
                            break  # loser stuck: fine
                        v = rng.choice(opts)

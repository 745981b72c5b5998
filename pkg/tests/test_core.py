import pytest

from horsmc import core
from horsmc.core import (
    O, Arrow, BOT, App, Nt, PathWord, RecursionScheme, Rule, Sym, TreePrefix, Var,
    app, arrow, expand_value_tree, head_normalize, kind_check, kind_order,
    path_words, reduce_step, spine, subst,
)
from horsmc.randgen import all_trees


def example21() -> RecursionScheme:
    # infinite tree whose maximal branches spell a^{m+1} b^m c^m e
    oo = arrow(O, O)
    return RecursionScheme(
        terminals={"a": 2, "b": 1, "c": 1, "e": 0},
        kinds={"S": O, "F": arrow(oo, O, O), "I": oo, "C": arrow(oo, oo, O, O)},
        rules={
            "S": Rule((), app(Nt("F"), Nt("I"), Sym("e"))),
            "F": Rule(
                ("f", "x"),
                app(
                    Sym("a"),
                    App(Var("f"), Var("x")),
                    app(Nt("F"), app(Nt("C"), Sym("b"), Var("f")), App(Sym("c"), Var("x"))),
                ),
            ),
            "I": Rule(("x",), Var("x")),
            "C": Rule(("f", "g", "x"), App(Var("f"), App(Var("g"), Var("x")))),
        },
        start="S",
    )


def figure1_nodes(depth: int) -> dict:
    """Closed form of the example's tree: an a-spine whose k-th left branch
    spells b^k c^k e."""
    nodes = {}
    for k in range(depth + 1):
        spine_path = (2,) * k
        nodes[spine_path] = "a"
        path = spine_path + (1,)
        for lab in ["b"] * k + ["c"] * k + ["e"]:
            if len(path) > depth:
                break
            nodes[path] = lab
            path = path + (1,)
    return nodes


def test_kind_order():
    oo = arrow(O, O)
    assert kind_order(O) == 0
    assert kind_order(oo) == 1
    assert kind_order(arrow(oo, O, O)) == 2
    assert str(arrow(oo, O)) == "(o -> o) -> o"


def test_kind_check_clean():
    assert kind_check(example21()) == []
    assert example21().order() == 2


def test_kind_check_diagnostics():
    s = example21()
    s.rules["I"] = Rule(("x", "y"), Var("x"))
    assert any("parameters" in d for d in kind_check(s))
    s2 = example21()
    s2.rules["I"] = Rule(("x",), App(Var("x"), Sym("e")))
    assert any("ground head" in d for d in kind_check(s2))
    s3 = example21()
    s3.start = "Q"
    assert any("start" in d for d in kind_check(s3))


def test_subst_and_spine():
    t = app(Sym("a"), Var("x"), App(Nt("F"), Var("x")))
    r = subst(t, {"x": Sym("e")})
    head, args = spine(r)
    assert head == Sym("a")
    assert args == [Sym("e"), App(Nt("F"), Sym("e"))]


def test_reduce_step_set():
    s = example21()
    assert reduce_step(s, Nt("S")) == [app(Nt("F"), Nt("I"), Sym("e"))]
    t = app(Sym("a"), App(Nt("I"), Sym("e")), app(Nt("F"), Nt("I"), Sym("e")))
    reducts = reduce_step(s, t)
    assert len(reducts) == 2
    assert app(Sym("a"), Sym("e"), app(Nt("F"), Nt("I"), Sym("e"))) in reducts


def test_head_normalize_fuel():
    looping = RecursionScheme({"e": 0}, {"S": O}, {"S": Rule((), Nt("S"))}, "S")
    nf, steps = head_normalize(looping, Nt("S"), 50)
    assert nf is None and steps == 50


def test_expand_figure_prefix():
    for depth in (3, 6):
        got = expand_value_tree(example21(), depth)
        assert got.nodes == figure1_nodes(depth)
        assert got.complete is False  # spine is cut, never bottomed
        assert not got.warnings


def test_expand_bottom_and_warning():
    s = RecursionScheme(
        {"a": 2, "e": 0},
        {"S": O, "D": O},
        {"S": Rule((), app(Sym("a"), Nt("D"), Sym("e"))), "D": Rule((), Nt("D"))},
        "S",
    )
    t = expand_value_tree(s, 3, fuel=100)
    assert t.nodes[(1,)] == BOT
    assert t.nodes[(2,)] == "e"
    assert any("fuel" in w for w in t.warnings)
    words = path_words(t, 4)
    assert PathWord(("a", "e"), True) in words
    assert all(BOT not in w.labels for w in words)


def test_path_words_example():
    t = TreePrefix.from_nested({"f": 2, "a": 0, "b": 0}, ("f", "a", ("f", "a", "b")))
    words = path_words(t, 3)
    assert PathWord(("f", "f", "b"), True) in words
    assert PathWord(("f", "a"), True) in words
    assert PathWord(("f", "f", "a"), True) in words
    assert PathWord(("f",), False) in words


def test_closed_path_words_match_pattern():
    t = expand_value_tree(example21(), 8)
    closed = {w.labels for w in path_words(t, 8) if w.closed}
    expected = {
        tuple("a" * (m + 1) + "b" * m + "c" * m + "e") for m in range(3)
    }
    assert closed == expected


def test_tree_prefix_helpers():
    t = TreePrefix.from_nested({"a": 2, "e": 0}, ("a", "e", "e"))
    assert t.complete
    assert t.arity(()) == 2 and t.arity((1,)) == 0
    cut = TreePrefix({"a": 2, "e": 0}, {(): "a", (1,): "e"})
    assert cut.truncated_at(())
    assert not cut.complete
    assert "a" in cut.pretty()


def test_all_trees_enumeration():
    trees = all_trees({"a": 2, "b": 1, "e": 0}, 3)
    assert len(trees) == 4
    assert all(t.complete for t in trees)
    bigger = all_trees({"a": 2, "b": 1, "e": 0}, 8)
    distinct = {tuple(sorted(t.nodes.items())) for t in bigger}
    assert len(distinct) == len(bigger)
    assert all(len(t.nodes) <= 8 for t in bigger)


def test_terminal_arity_enforced():
    s = RecursionScheme({"a": 2, "e": 0}, {"S": O}, {"S": Rule((), App(Sym("a"), Sym("e")))}, "S")
    with pytest.raises(ValueError):
        expand_value_tree(s, 2)

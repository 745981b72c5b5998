import random

import pytest

from horsmc.automata import FALSE, TRUE, AndF, Apt, Atom, OrF, accept_bounded, classify
from horsmc.core import App, Nt, O, RecursionScheme, Rule, Sym, Var, app, arrow
from horsmc.randgen import random_apt, random_scheme
from horsmc.typecheck import (
    Binding, EngineLimit, EngineLimits, TArrow, TBase, atom_types,
    build_typability_game, derive_body, model_check, model_check_parity,
    model_check_trivial, restricted_count, surviving_bindings, type_conforms,
)

from test_core import example21

OO = arrow(O, O)


def single_state_apt(alphabet, delta_by_symbol, prio=0):
    delta = {("q", f): delta_by_symbol[f] for f in alphabet}
    return Apt(dict(alphabet), ("q",), delta, "q", {"q": prio})


def test_atom_types_ground():
    apt = single_state_apt({"e": 0}, {"e": TRUE})
    assert atom_types(O, apt) == [TBase("q")]


def test_restricted_count_matches_enumeration():
    # two states, two distinct priorities
    apt = Apt(
        {"a": 2, "e": 0},
        ("q0", "q1"),
        {(q, f): TRUE for q in ("q0", "q1") for f in ("a", "e")},
        "q0",
        {"q0": 0, "q1": 1},
    )
    for kind in (OO, arrow(O, O, O), arrow(O, O, O, O)):
        types = atom_types(kind, apt, restricted=True)
        assert len(types) == len(set(types)) == restricted_count(kind, apt)
    # k * |Q| * |P| * |Q| + |Q| by hand for k = 2: 2*2*2*2 + 2
    assert restricted_count(arrow(O, O, O), apt) == 18


def test_nullary_worked_example():
    sch = RecursionScheme({"a": 0}, {"S": O}, {"S": Rule((), Sym("a"))}, "S")
    apt = single_state_apt({"a": 0}, {"a": TRUE})
    assert model_check_trivial(sch, apt)
    assert model_check_parity(sch, apt)
    # the whole derivation needs no premises at all
    assert derive_body(sch, apt, "S", TBase("q")) == [frozenset()]


def test_identity_worked_example():
    sch = RecursionScheme(
        {"e": 0},
        {"S": O, "F": OO},
        {"S": Rule((), App(Nt("F"), Sym("e"))), "F": Rule(("x",), Var("x"))},
        "S",
    )
    apt = single_state_apt({"e": 0}, {"e": TRUE})
    assert model_check_trivial(sch, apt)
    needed = Binding("F", TArrow((frozenset({(TBase("q"), 0)}),), "q"), 0)
    choices = derive_body(sch, apt, "S", TBase("q"))
    assert frozenset({needed}) in choices
    assert needed in surviving_bindings(sch, apt)


def test_divergence_depends_on_start_parity():
    sch = RecursionScheme({"e": 0}, {"S": O}, {"S": Rule((), Nt("S"))}, "S")
    assert model_check_trivial(sch, single_state_apt({"e": 0}, {"e": TRUE}, prio=0))
    assert model_check_parity(sch, single_state_apt({"e": 0}, {"e": TRUE}, prio=2))
    assert not model_check_parity(sch, single_state_apt({"e": 0}, {"e": TRUE}, prio=1))


def reach_e_apt(abc):
    return Apt(
        dict(abc),
        ("q0",),
        {
            ("q0", "a"): OrF(Atom(1, "q0"), Atom(2, "q0")),
            ("q0", "b"): Atom(1, "q0"),
            ("q0", "c"): Atom(1, "q0"),
            ("q0", "e"): TRUE,
        },
        "q0",
        {"q0": 1},
    )


def test_example21_reaches_leaf():
    sch = example21()
    apt = reach_e_apt(sch.terminals)
    assert model_check_parity(sch, apt)
    assert model_check_parity(sch, apt, restricted=True)
    assert accept_bounded(apt, sch, 8) == "yes"


def test_example21_forbidden_letters():
    sch = example21()

    def never(sym):
        delta = {
            ("q0", "a"): AndF(Atom(1, "q0"), Atom(2, "q0")),
            ("q0", "b"): Atom(1, "q0"),
            ("q0", "c"): Atom(1, "q0"),
            ("q0", "e"): TRUE,
            ("q0", sym): FALSE,
        }
        return Apt(dict(sch.terminals), ("q0",), delta, "q0", {"q0": 0})

    for sym in ("b", "c"):
        apt = never(sym)
        assert not model_check_trivial(sch, apt)
        assert not model_check_parity(sch, apt)
        assert accept_bounded(apt, sch, 8) == "no"


def test_example21_every_path_finite_is_false():
    # demanding that every path hit the leaf fails on the infinite spine
    sch = example21()
    delta = {
        ("q0", "a"): AndF(Atom(1, "q0"), Atom(2, "q0")),
        ("q0", "b"): Atom(1, "q0"),
        ("q0", "c"): Atom(1, "q0"),
        ("q0", "e"): TRUE,
    }
    apt = Apt(dict(sch.terminals), ("q0",), delta, "q0", {"q0": 1})
    assert not model_check_parity(sch, apt)


def test_example21_infinite_paths_see_branching_forever():
    # on every infinite path the binary symbol recurs; finite paths end at e
    sch = example21()
    states = ("qa", "qo")
    delta = {}
    for q in states:
        delta[(q, "a")] = AndF(Atom(1, "qa"), Atom(2, "qa"))
        delta[(q, "b")] = Atom(1, "qo")
        delta[(q, "c")] = Atom(1, "qo")
        delta[(q, "e")] = TRUE
    apt = Apt(dict(sch.terminals), states, delta, "qa", {"qa": 2, "qo": 1})
    assert model_check_parity(sch, apt)


def test_restricted_needs_disjunctive():
    sch = example21()
    delta = {
        ("q0", "a"): AndF(Atom(1, "q0"), Atom(2, "q0")),
        ("q0", "b"): Atom(1, "q0"),
        ("q0", "c"): Atom(1, "q0"),
        ("q0", "e"): TRUE,
    }
    apt = Apt(dict(sch.terminals), ("q0",), delta, "q0", {"q0": 0})
    with pytest.raises(ValueError):
        model_check_parity(sch, apt, restricted=True)


def test_alphabet_mismatch_rejected():
    sch = example21()
    apt = single_state_apt({"e": 0}, {"e": TRUE})
    with pytest.raises(ValueError):
        model_check(sch, apt)


def test_work_budget_is_honoured():
    sch = example21()
    apt = reach_e_apt(sch.terminals)
    with pytest.raises(EngineLimit):
        model_check_parity(sch, apt, limits=EngineLimits(work_limit=40))


def test_typability_game_shape():
    sch = example21()
    apt = reach_e_apt(sch.terminals)
    tg = build_typability_game(sch, apt)
    g = tg.game
    assert g.start == tg.start
    assert tg.start == Binding("S", TBase("q0"), 1)
    for b in tg.bindings:
        assert g.owner[b] == 0
        assert g.priority[b] == b.tag
        assert type_conforms(b.ty, sch.kinds[b.nt])
        for pick in g.succ[b]:
            assert g.owner[pick] == 1
            assert all(isinstance(p, Binding) for p in g.succ[pick])


def test_seeded_corpus_checkers_agree():
    rng = random.Random(40)
    decisive = skipped = 0
    for i in range(60):
        sch = random_scheme(rng)
        apt = random_apt(rng, sch.terminals, max_states=2, max_priority=2, trivial=(i % 2 == 0))
        try:
            verdict = model_check(sch, apt)
            flags = classify(apt)
            if flags.trivial:
                assert verdict == model_check_parity(sch, apt)
            elif flags.disjunctive:
                assert verdict == model_check_parity(sch, apt, restricted=False)
        except EngineLimit:
            skipped += 1
            continue
        bounded = accept_bounded(apt, sch, 7)
        if bounded != "unknown":
            decisive += 1
            assert verdict == (bounded == "yes")
    assert decisive >= 20
    assert skipped <= 6

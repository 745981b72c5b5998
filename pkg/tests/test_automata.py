import random

import pytest

from horsmc.automata import (
    FALSE, TRUE, AndF, Apt, Atom, OrF, WordAutomaton,
    accept_bounded, accept_finite, accept_prefix, accepts_lasso, big_or, classify,
    complement_det_parity, eval_posbool, np_word_to_disjunctive, relabel_states,
    run_tree, satisfying_sets, simplify, validate, validate_word,
)
from horsmc.core import BOT, TreePrefix, path_words
from horsmc.randgen import all_trees, random_apt, random_posbool, random_tree, random_word_automaton

from oracles import oracle_accept, posbool_models_bruteforce

ABC = {"a": 2, "b": 1, "e": 0}


def test_satisfying_sets():
    f = AndF(Atom(1, "q"), OrF(Atom(2, "p"), Atom(2, "r")))
    assert satisfying_sets(f) == frozenset(
        {
            frozenset({Atom(1, "q"), Atom(2, "p")}),
            frozenset({Atom(1, "q"), Atom(2, "r")}),
        }
    )
    absorbed = OrF(Atom(1, "q"), AndF(Atom(1, "q"), Atom(2, "p")))
    assert satisfying_sets(absorbed) == frozenset({frozenset({Atom(1, "q")})})
    assert satisfying_sets(FALSE) == frozenset()
    assert satisfying_sets(TRUE) == frozenset({frozenset()})


def test_satisfying_sets_random_against_truth_tables():
    rng = random.Random(101)
    for _ in range(200):
        f = random_posbool(rng, 2, ("q0", "q1"), depth=3)
        assert satisfying_sets(f) == posbool_models_bruteforce(f)


def test_simplify():
    f = AndF(TRUE, OrF(FALSE, Atom(1, "q")))
    assert simplify(f) == Atom(1, "q")
    assert simplify(AndF(Atom(1, "q"), FALSE)) == FALSE
    assert simplify(OrF(TRUE, Atom(1, "q"))) == TRUE
    rng = random.Random(102)
    for _ in range(150):
        f = random_posbool(rng, 2, ("q0", "q1"), depth=3)
        g = simplify(f)
        atoms = [Atom(d, q) for d in (1, 2) for q in ("q0", "q1")]
        for mask in range(16):
            tv = {a for i, a in enumerate(atoms) if mask >> i & 1}
            assert eval_posbool(f, tv) == eval_posbool(g, tv)


def reach_apt(leaf_formula=TRUE):
    # one state chasing some path to e
    delta = {
        ("q0", "a"): OrF(Atom(1, "q0"), Atom(2, "q0")),
        ("q0", "b"): Atom(1, "q0"),
        ("q0", "e"): leaf_formula,
    }
    return Apt(dict(ABC), ("q0",), delta, "q0", {"q0": 1})


def test_validate():
    apt = reach_apt()
    assert validate(apt) == []
    broken = Apt(dict(ABC), ("q0",), dict(apt.delta), "zz", {"q0": 1})
    assert any("initial" in d for d in validate(broken))
    bad_dir = reach_apt()
    bad_dir.delta[("q0", "b")] = Atom(2, "q0")
    assert any("direction" in d for d in validate(bad_dir))
    partial = reach_apt()
    del partial.delta[("q0", "b")]
    assert any("no transition" in d for d in validate(partial))


def test_classify():
    assert classify(reach_apt()).disjunctive
    assert not classify(reach_apt()).trivial  # priority 1 is odd
    triv = Apt(dict(ABC), ("q0",), dict(reach_apt().delta), "q0", {"q0": 0})
    assert classify(triv).trivial
    conj = reach_apt()
    conj.delta[("q0", "a")] = AndF(Atom(1, "q0"), Atom(2, "q0"))
    assert not classify(conj).disjunctive


def test_accept_finite_basic():
    t = TreePrefix.from_nested(ABC, ("a", ("b", "e"), "e"))
    assert accept_finite(reach_apt(), t)
    assert not accept_finite(reach_apt(FALSE), t)


def test_accept_finite_against_oracle():
    rng = random.Random(103)
    trees = all_trees(ABC, 5)
    for _ in range(60):
        apt = random_apt(rng, ABC)
        for t in trees:
            assert accept_finite(apt, t) == oracle_accept(apt, t)


def test_run_tree_witness():
    rng = random.Random(104)
    trees = all_trees(ABC, 5)
    for _ in range(40):
        apt = random_apt(rng, ABC)
        for t in trees:
            rt = run_tree(apt, t)
            assert (rt is not None) == accept_finite(apt, t)
            if rt is None:
                continue
            stack = [rt]
            while stack:
                node = stack.pop()
                assert node.path in t.nodes
                got = frozenset(
                    Atom(k.path[-1], k.state) for k in node.children
                )
                assert got in satisfying_sets(apt.delta[(node.state, t.nodes[node.path])])
                stack.extend(node.children)


def test_accept_finite_requires_complete():
    cut = TreePrefix(ABC, {(): "a", (1,): "e"})
    with pytest.raises(ValueError):
        accept_finite(reach_apt(), cut)
    bot = TreePrefix(ABC, {(): "a", (1,): BOT, (2,): "e"})
    with pytest.raises(ValueError):
        accept_finite(reach_apt(), bot)


def test_accept_prefix_three_valued():
    bot = TreePrefix(ABC, {(): "a", (1,): BOT, (2,): "e"})
    assert accept_prefix(reach_apt(), bot) == "yes"  # right branch settles it
    never = Apt(dict(ABC), ("q0",), {("q0", f): FALSE for f in ABC}, "q0", {"q0": 0})
    assert accept_prefix(never, bot) == "no"
    all_bot = TreePrefix(ABC, {(): BOT})
    assert accept_prefix(reach_apt(), all_bot) == "unknown"


def test_accept_prefix_sound_on_truncations():
    rng = random.Random(105)
    for _ in range(80):
        apt = random_apt(rng, ABC)
        t = random_tree(rng, ABC, max_depth=4)
        cut_depth = rng.randint(0, 3)
        nodes = {p: l for p, l in t.nodes.items() if len(p) <= cut_depth}
        prefix = TreePrefix(ABC, nodes)
        verdict = accept_prefix(apt, prefix)
        truth = accept_finite(apt, t)
        if verdict == "yes":
            assert truth
        elif verdict == "no":
            assert not truth
    # complete prefixes are never 'unknown'
    for _ in range(20):
        apt = random_apt(rng, ABC)
        t = random_tree(rng, ABC, max_depth=3)
        assert accept_prefix(apt, t) == ("yes" if accept_finite(apt, t) else "no")


def test_accept_bounded():
    from test_core import example21

    scheme = example21()
    alphabet = dict(scheme.terminals)
    reach = Apt(
        alphabet,
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
    assert accept_bounded(reach, scheme, depth=2) == "yes"
    never = Apt(alphabet, ("q0",), {("q0", f): FALSE for f in alphabet}, "q0", {"q0": 0})
    assert accept_bounded(never, scheme, depth=2) == "no"


def test_relabel_states():
    rng = random.Random(106)
    trees = all_trees(ABC, 4)
    for _ in range(30):
        apt = random_apt(rng, ABC)
        renamed = relabel_states(apt)
        assert validate(renamed) == []
        assert all(isinstance(q, str) and q.startswith("q") for q in renamed.states)
        for t in trees:
            assert accept_finite(apt, t) == accept_finite(renamed, t)


def sigma_star_e():
    # accepts exactly words with a tail of e's
    return WordAutomaton(
        ("a", "b", "e"),
        ("u0", "u1"),
        {
            ("u0", "a"): ("u0",),
            ("u0", "b"): ("u0",),
            ("u0", "e"): ("u0", "u1"),
            ("u1", "e"): ("u1",),
        },
        "u0",
        {"u0": 1, "u1": 2},
    )


def test_accepts_lasso():
    w = sigma_star_e()
    assert validate_word(w) == []
    assert accepts_lasso(w, [], ["e"])
    assert accepts_lasso(w, ["a", "b"], ["e"])
    assert not accepts_lasso(w, ["e"], ["a", "e"])
    assert not accepts_lasso(w, [], ["a"])


def test_np_word_to_disjunctive_matches_path_semantics():
    alphabet = {"a": 2, "x": 0, "e": 0}
    w = WordAutomaton(
        ("a", "x", "e"),
        ("u0", "u1"),
        {
            ("u0", "a"): ("u0",),
            ("u0", "e"): ("u0", "u1"),
            ("u1", "e"): ("u1",),
        },
        "u0",
        {"u0": 1, "u1": 2},
    )
    apt = np_word_to_disjunctive(alphabet, w)
    assert classify(apt).disjunctive
    t_yes = TreePrefix.from_nested(alphabet, ("a", "x", "e"))
    t_no = TreePrefix.from_nested(alphabet, ("a", "x", "x"))
    assert accept_finite(apt, t_yes)
    assert not accept_finite(apt, t_no)


def test_np_word_to_disjunctive_random_against_paths():
    rng = random.Random(107)
    alphabet = {"a": 2, "b": 1, "e": 0, "x": 0}
    trees = all_trees(alphabet, 5)
    for _ in range(40):
        w = random_word_automaton(rng, ("a", "b", "e", "x"))
        apt = np_word_to_disjunctive(alphabet, w)
        assert classify(apt).disjunctive
        for t in trees:
            maximal = [p for p in path_words(t, 10) if p.closed]
            expected = any(
                accepts_lasso(w, list(p.labels[:-1]), [p.labels[-1]]) for p in maximal
            )
            assert accept_finite(apt, t) == expected, (w, t.nodes)


def test_np_word_to_disjunctive_alphabet_check():
    w = sigma_star_e()
    with pytest.raises(ValueError):
        np_word_to_disjunctive({"a": 2, "zz": 0}, w)


def test_complement_det_parity():
    det = WordAutomaton(
        ("a", "e"),
        ("d0", "d1"),
        {
            ("d0", "a"): ("d0",),
            ("d0", "e"): ("d1",),
            ("d1", "e"): ("d1",),
            ("d1", "a"): ("d0",),
        },
        "d0",
        {"d0": 1, "d1": 2},
        deterministic=True,
    )
    comp = complement_det_parity(det)
    for stem, cycle in ([[], ["e"]], [["a"], ["a", "e"]], [["e"], ["a"]]):
        assert accepts_lasso(det, stem, cycle) != accepts_lasso(comp, stem, cycle)
    with pytest.raises(ValueError):
        complement_det_parity(sigma_star_e())

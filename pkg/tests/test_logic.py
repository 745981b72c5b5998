import random

import pytest

from horsmc.automata import accept_finite, classify, validate
from horsmc.core import TreePrefix
from horsmc.logic import (
    And, Dia, EvalError, Ff, FixpointSystem, Mu, Nu, Or, Prop, Tt, Var,
    alpha_normalize, apt_to_system, binder_priorities, eval_finite,
    eval_system, formula_to_apt, fragment_of, free_vars,
)
from horsmc.randgen import all_trees, random_apt, random_formula

ABC = {"a": 2, "b": 1, "e": 0}


def t(shape):
    return TreePrefix.from_nested(ABC, shape)


def test_free_vars_and_alpha():
    phi = Nu("Z", Or(Var("Z"), Mu("Z", Var("Z"))))
    assert free_vars(phi) == frozenset()
    norm = alpha_normalize(phi)
    assert isinstance(norm, Nu) and isinstance(norm.sub.right, Mu)
    assert norm.var != norm.sub.right.var
    open_phi = Dia(1, Var("Y"))
    assert free_vars(open_phi) == {"Y"}


def test_fragment_of():
    assert fragment_of(Nu("Z", And(Prop("a"), Dia(1, Var("Z"))))) == "S"
    assert fragment_of(Mu("Z", Or(And(Prop("e"), Tt()), Dia(1, Var("Z"))))) == "D"
    # bare label test is fine for the safety fragment but not the disjunctive one
    assert fragment_of(Mu("Z", Or(Prop("e"), Dia(1, Var("Z"))))) == "general"
    assert fragment_of(Mu("Z", And(Var("Z"), Var("Z")))) == "general"


def test_binder_priorities():
    phi = Nu("X", Mu("Y", Or(Var("X"), Var("Y"))))
    pr = binder_priorities(phi)
    assert pr[()] == 2 and pr[(0,)] == 1
    phi2 = Mu("X", Nu("Y", Or(Var("X"), Var("Y"))))
    pr2 = binder_priorities(phi2)
    assert pr2[()] == 1 and pr2[(0,)] == 0
    phi3 = Mu("X", Nu("Y", Mu("Z", Var("Z"))))
    pr3 = binder_priorities(phi3)
    assert pr3[(0, 0)] == 1 and pr3[(0,)] == 2 and pr3[()] == 3


def test_eval_finite_hand():
    tree = t(("a", ("b", "e"), "e"))
    assert () in eval_finite(Prop("a"), tree)
    assert eval_finite(Prop("e"), tree) == frozenset({(1, 1), (2,)})
    assert () in eval_finite(Dia(2, Prop("e")), tree)
    assert () not in eval_finite(Dia(2, Prop("b")), tree)
    # no second child at a b-node
    assert (1,) not in eval_finite(Dia(2, Tt()), tree)
    reach_e = Mu("Z", Or(Prop("e"), Or(Dia(1, Var("Z")), Dia(2, Var("Z")))))
    assert eval_finite(reach_e, tree) == frozenset(tree.nodes)
    chain = Nu("Z", Dia(1, Var("Z")))
    assert eval_finite(chain, tree) == frozenset()


def test_eval_finite_free_variable():
    with pytest.raises(EvalError):
        eval_finite(Var("Z"), t("e"))


def test_formula_apt_flags():
    rng = random.Random(401)
    for _ in range(40):
        phi = random_formula(rng, ABC, "S", depth=3)
        apt = formula_to_apt(phi, ABC)
        assert validate(apt) == []
        assert classify(apt).trivial, phi
    for _ in range(40):
        phi = random_formula(rng, ABC, "D", depth=3)
        apt = formula_to_apt(phi, ABC)
        assert validate(apt) == []
        assert classify(apt).disjunctive, phi


def test_formula_apt_equivalence():
    rng = random.Random(402)
    trees = all_trees(ABC, 6)
    for _ in range(30):
        for fragment in ("S", "D", "general"):
            phi = random_formula(rng, ABC, fragment, depth=3)
            apt = formula_to_apt(phi, ABC)
            for tree in trees:
                want = () in eval_finite(phi, tree)
                assert accept_finite(apt, tree) == want, (phi, tree.nodes)


def test_formula_apt_rejects_open():
    with pytest.raises(EvalError):
        formula_to_apt(Var("Z"), ABC)


def test_apt_to_system_shape():
    rng = random.Random(403)
    for _ in range(20):
        apt = random_apt(rng, ABC)
        system = apt_to_system(apt)
        prios = [apt.priority[q] for q in sorted(
            system.state_var, key=lambda q: system.variables.index(system.state_var[q])
        )]
        assert prios == sorted(prios, reverse=True)
        for z in system.variables:
            q = next(q for q, v in system.state_var.items() if v == z)
            assert (system.signs[z] == "mu") == (apt.priority[q] % 2 == 1)
        assert system.initial_var == system.state_var[apt.initial]


def test_system_evaluation_matches_acceptance():
    rng = random.Random(404)
    trees = all_trees(ABC, 6)
    for _ in range(40):
        apt = random_apt(rng, ABC)
        system = apt_to_system(apt)
        for tree in trees:
            sol = eval_system(system, tree)
            assert (() in sol[system.initial_var]) == accept_finite(apt, tree)


def test_system_pretty_smoke():
    rng = random.Random(405)
    apt = random_apt(rng, ABC)
    text = apt_to_system(apt).pretty()
    assert "=_" in text and "P(a)" in text

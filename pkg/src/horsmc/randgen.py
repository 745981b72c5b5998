"""Seeded random instances for tests and the CLI selftest.

Every generator takes a random.Random so corpora are reproducible from a
single seed; nothing here touches global RNG state.
"""

from __future__ import annotations

import random

from . import core, hopda
from .automata import FALSE, TRUE, AndF, Apt, Atom, OrF, PosBool, WordAutomaton
from .games import ParityGame


def random_game(rng: random.Random, max_nodes: int = 30, max_priority: int = 4) -> ParityGame:
    n = rng.randint(1, max_nodes)
    names = [f"n{i}" for i in range(n)]
    owner = {v: rng.randint(0, 1) for v in names}
    priority = {v: rng.randint(0, max_priority) for v in names}
    succ = {}
    for v in names:
        k = rng.choice((0, 1, 1, 2, 2, 3))  # dead ends stay reasonably common
        succ[v] = tuple(rng.choice(names) for _ in range(k))
    return ParityGame(owner, priority, succ, start=names[0])


def all_trees(alphabet: dict[str, int], max_nodes: int) -> list[core.TreePrefix]:
    """Every complete tree over the alphabet with at most max_nodes nodes."""
    syms = sorted(alphabet)
    cache: dict[int, tuple] = {}

    def exact(k: int) -> tuple:
        if k in cache:
            return cache[k]
        out = []
        for f in syms:
            ar = alphabet[f]
            if ar == 0:
                if k == 1:
                    out.append((f,))
                continue
            if k < 1 + ar:
                continue
            for parts in _compositions(k - 1, ar):
                for kids in _product_lists([exact(p) for p in parts]):
                    out.append((f, *kids))
        cache[k] = tuple(out)
        return cache[k]

    shapes = [s for k in range(1, max_nodes + 1) for s in exact(k)]
    return [core.TreePrefix.from_nested(alphabet, s) for s in shapes]


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(1, total - parts + 2):
        for rest in _compositions(total - first, parts - 1):
            yield (first, *rest)


def _product_lists(lists):
    if not lists:
        yield ()
        return
    for head in lists[0]:
        for rest in _product_lists(lists[1:]):
            yield (head, *rest)


def random_posbool(
    rng: random.Random, arity: int, states: tuple, depth: int = 2
) -> PosBool:
    roll = rng.random()
    if depth == 0 or roll < 0.55 or arity == 0:
        if arity and roll < 0.8:
            return Atom(rng.randint(1, arity), rng.choice(states))
        return TRUE if rng.random() < 0.5 else FALSE
    ctor = AndF if rng.random() < 0.5 else OrF
    return ctor(
        random_posbool(rng, arity, states, depth - 1),
        random_posbool(rng, arity, states, depth - 1),
    )


def random_apt(
    rng: random.Random,
    alphabet: dict[str, int],
    max_states: int = 3,
    max_priority: int = 2,
    trivial: bool = False,
) -> Apt:
    n = rng.randint(1, max_states)
    states = tuple(f"q{i}" for i in range(n))
    delta = {
        (q, f): random_posbool(rng, ar, states)
        for q in states
        for f, ar in alphabet.items()
    }
    if trivial:
        priority = {q: 0 for q in states}
    else:
        priority = {q: rng.randint(0, max_priority) for q in states}
    return Apt(dict(alphabet), states, delta, rng.choice(states), priority)


def random_word_automaton(
    rng: random.Random, letters: tuple[str, ...], max_states: int = 3, max_priority: int = 3
) -> WordAutomaton:
    n = rng.randint(1, max_states)
    states = tuple(f"w{i}" for i in range(n))
    trans = {}
    for q in states:
        for a in letters:
            k = rng.choice((0, 1, 1, 1, 2))
            if k:
                trans[(q, a)] = tuple(rng.choice(states) for _ in range(k))
    return WordAutomaton(
        tuple(letters),
        states,
        trans,
        rng.choice(states),
        {q: rng.randint(0, max_priority) for q in states},
    )


def random_formula(
    rng: random.Random,
    alphabet: dict[str, int],
    fragment: str = "general",
    depth: int = 4,
    env: tuple = (),
):
    """Closed random formula inside the requested fragment."""
    from .logic import And, Dia, Ff, Mu, Nu, Or, Prop, Tt, Var

    syms = sorted(alphabet)
    max_dir = max(max(alphabet.values()), 1)

    def leaf():
        opts = [Tt(), Ff()]
        if fragment in ("S", "general"):
            opts.append(Prop(rng.choice(syms)))
        if env:
            opts.extend(Var(v) for v in env)
        return rng.choice(opts)

    if depth == 0 or rng.random() < 0.2:
        return leaf()
    kinds = ["or", "dia", "nu", "and"]
    if fragment in ("D", "general"):
        kinds.append("mu")
    k = rng.choice(kinds)
    sub = lambda e=env: random_formula(rng, alphabet, fragment, depth - 1, e)
    if k == "and":
        if fragment == "D":
            return And(Prop(rng.choice(syms)), sub())
        return And(sub(), sub())
    if k == "or":
        return Or(sub(), sub())
    if k == "dia":
        return Dia(rng.randint(1, max_dir), sub())
    z = f"Z{len(env)}"
    ctor = Nu if k == "nu" else Mu
    return ctor(z, random_formula(rng, alphabet, fragment, depth - 1, env + (z,)))


def random_eps_apt(
    rng: random.Random,
    alphabet: dict[str, int],
    max_states: int = 3,
    max_priority: int = 3,
):
    from .epsilon import EXIST, UNIV, EpsApt

    n = rng.randint(1, max_states)
    states = tuple(f"s{i}" for i in range(n))
    delta = {}
    for q in states:
        for f, ar in alphabet.items():
            moves = set()
            for _ in range(rng.choice((0, 1, 1, 2, 2, 3))):
                if ar and rng.random() < 0.6:
                    moves.add((rng.randint(1, ar), rng.choice(states)))
                else:
                    moves.add((None, rng.choice(states)))
            delta[(q, f)] = frozenset(moves)
    return EpsApt(
        dict(alphabet),
        states,
        {q: rng.choice((EXIST, UNIV)) for q in states},
        delta,
        rng.choice(states),
        {q: rng.randint(0, max_priority) for q in states},
    )


def random_tree(rng: random.Random, alphabet: dict[str, int], max_depth: int = 4) -> core.TreePrefix:
    leaves = [f for f, ar in alphabet.items() if ar == 0]
    if not leaves:
        raise ValueError("alphabet needs an arity-0 symbol")
    syms = sorted(alphabet)

    def grow(depth):
        f = rng.choice(leaves) if depth >= max_depth else rng.choice(syms)
        return (f, *(grow(depth + 1) for _ in range(alphabet[f])))

    return core.TreePrefix.from_nested(alphabet, grow(0))

_O = core.O
_KIND_MENU = (
    core.arrow(_O, _O),
    core.arrow(_O, _O, _O),
    core.arrow(core.arrow(_O, _O), _O),
    core.arrow(core.arrow(_O, _O), _O, _O),
)


def _head_uses(kind: core.Kind, target: core.Kind) -> list[tuple[int, list[core.Kind]]]:
    """Ways to apply a head of this kind to reach the target: each option is
    (argument count, argument kinds)."""
    opts = []
    supplied: list[core.Kind] = []
    k = kind
    while True:
        if k == target:
            opts.append((len(supplied), list(supplied)))
        if isinstance(k, core.Arrow):
            supplied.append(k.dom)
            k = k.cod
        else:
            return opts


def random_scheme(
    rng: random.Random,
    alphabet: dict[str, int] | None = None,
    max_rules: int = 4,
    max_order: int = 2,
    depth: int = 3,
) -> core.RecursionScheme:
    """Well-kinded scheme with ground start; bodies may diverge."""
    if alphabet is None:
        pool = [("a", 2), ("b", 1), ("c", 1), ("e", 0), ("d", 0)]
        rng.shuffle(pool)
        alphabet = dict(pool[: rng.randint(2, 4)])
        if not any(ar == 0 for ar in alphabet.values()):
            alphabet["e"] = 0
        if not any(ar >= 1 for ar in alphabet.values()):
            alphabet["b"] = 1
    n_extra = rng.randint(0, max_rules - 1)
    kinds = {"S": _O}
    for i in range(n_extra):
        menu = [k for k in _KIND_MENU if core.kind_order(k) <= max_order]
        kinds[f"F{i}"] = rng.choice(menu + [_O])

    def gen(target: core.Kind, env: dict[str, core.Kind], fuel: int) -> core.Term:
        heads: list[tuple] = []
        for a, ar in alphabet.items():
            for n, ks in _head_uses(core.terminal_kind(ar), target):
                heads.append((core.Sym(a), ks))
        for x, k in env.items():
            for n, ks in _head_uses(k, target):
                heads.append((core.Var(x), ks))
        for f, k in kinds.items():
            for n, ks in _head_uses(k, target):
                heads.append((core.Nt(f), ks))

        def cost(ks):
            if any(isinstance(k, core.Arrow) for k in ks):
                return 2
            return 1 if ks else 0

        if fuel <= 0:
            # wind down: no args if possible, else only ground args
            best = min(cost(ks) for _, ks in heads)
            heads = [h for h in heads if cost(h[1]) == best]
        head, ks = rng.choice(heads)
        t: core.Term = head
        for k in ks:
            t = core.App(t, gen(k, env, fuel - 1))
        return t

    rules = {}
    for f, kind in kinds.items():
        ks = core.arg_kinds(kind)
        params = tuple(f"x{i}" for i in range(len(ks)))
        env = dict(zip(params, ks))
        body = gen(_O, env, depth)
        rules[f] = core.Rule(params, body)
    scheme = core.RecursionScheme(dict(alphabet), kinds, rules, "S")
    assert not core.kind_check(scheme)
    return scheme


def random_apda(
    rng: random.Random,
    max_states: int = 3,
    order: int = 2,
    sigma: tuple[str, ...] = ("a", "b"),
    word_ready: bool = True,
) -> hopda.Apda:
    """Small alternating acceptor over the binary stack alphabet.

    word_ready repairs the move set so silent moves exclude input moves per
    (state, top symbol) and finals have no outgoing moves.
    """
    n = rng.randint(1, max_states)
    states = tuple(f"p{i}" for i in range(n))
    gamma = ("g0", "g1")
    polarity = {p: rng.choice((hopda.UNIV, hopda.EXIST)) for p in states}
    finals = frozenset(p for p in states if rng.random() < 0.3)
    ops = hopda.all_ops(order, gamma)
    trans = []
    for _ in range(rng.randint(1, 6)):
        t = (
            rng.choice(states),
            rng.choice(gamma),
            rng.choice((None,) + sigma + sigma),
            rng.choice(states),
            rng.choice(ops),
        )
        if t not in trans:
            trans.append(t)
    if word_ready:
        silent = {(p, g) for (p, g, x, _, _) in trans if x is None}
        trans = [
            t for t in trans
            if t[0] not in finals and (t[2] is None or (t[0], t[1]) not in silent)
        ]
    return hopda.Apda(
        order, states, polarity, states[0], gamma, sigma,
        tuple(trans), finals, "g0",
    )


def random_detpda(
    rng: random.Random,
    max_states: int = 3,
    order: int = 2,
    sigma: tuple[str, ...] = ("a", "b"),
) -> hopda.DetPda:
    """Small deterministic acceptor with a g0 bottom, stack-top ready."""
    n = rng.randint(1, max_states)
    states = tuple(f"p{i}" for i in range(n))
    gamma = ("g0", "g1")
    ops = hopda.all_ops(order, gamma)
    delta = {}
    for _ in range(rng.randint(1, 7)):
        key = (rng.choice(states), rng.choice((None,) + sigma), rng.choice(gamma))
        delta[key] = (rng.choice(states), rng.choice(ops))
    silent = {(p, g) for (p, x, g) in delta if x is None}
    delta = {
        k: v for k, v in delta.items()
        if k[1] is None or (k[0], k[2]) not in silent
    }
    finals = frozenset(p for p in states if rng.random() < 0.25)
    # a level-1 pop into a success state can succeed on an emptied stack,
    # which a stack-top reader cannot witness; keep the corpus clear of it
    delta = {
        k: (p2, op) for k, (p2, op) in delta.items()
        if not (op == ("pop", 1) and p2 in finals)
    }
    return hopda.DetPda(
        order, states, states[0], gamma, sigma, delta, finals, "g0"
    )


def random_program(
    rng: random.Random,
    max_defs: int = 3,
    letters: tuple[str, ...] = ("c", "r"),
    max_states: int = 2,
    depth: int = 4,
) -> "resource.Program":
    """Well-typed resource program; runs may loop, err, or end anywhere."""
    from . import resource

    states = tuple(f"q{i}" for i in range(1, rng.randint(1, max_states) + 1))
    delta = {}
    for q in states:
        for a in letters:
            if rng.random() < 0.6:
                delta[(q, a)] = rng.choice(states)
    finals = frozenset(q for q in states if rng.random() < 0.5)
    behavior = resource.Behavior(states, tuple(letters), delta, states[0], finals)

    n_defs = rng.randint(1, max_defs)
    names = ["S"] + [f"F{i}" for i in range(1, n_defs)]
    sigs: dict[str, tuple[str, ...]] = {"S": ()}
    for f in names[1:]:
        sigs[f] = tuple(rng.choice("oR") for _ in range(rng.randint(1, 2)))
    if len(names) > 1:
        # keep one unary resource consumer so new[q] always has a target
        sigs[names[1]] = ("R",)
    handles = [f for f in names[1:] if sigs[f] == ("R",)]

    def gen(env: list[tuple[str, str]], fuel: int) -> resource.Expr:
        o_vars = [x for x, t in env if t == "o"]
        r_vars = [x for x, t in env if t == "R"]
        moves = ["unit", "call"]
        if o_vars:
            moves.append("var")
        if fuel > 0:
            moves.append("choice")
            if r_vars:
                moves += ["access", "access"]
            if handles:
                moves.append("new")
        m = rng.choice(moves)
        if m == "unit":
            return resource.UNIT
        if m == "var":
            return resource.Var(rng.choice(o_vars))
        if m == "choice":
            return resource.Choice(gen(env, fuel - 1), gen(env, fuel - 1))
        if m == "access":
            rest = gen(env, fuel - 1)
            return resource.Access(rng.choice(letters), resource.Var(rng.choice(r_vars)), rest)
        if m == "new":
            return resource.New(rng.choice(states), resource.FunRef(rng.choice(handles)))
        f = rng.choice([g for g in names if all(t == "o" or r_vars for t in sigs[g])])
        e: resource.Expr = resource.FunRef(f)
        for t in sigs[f]:
            arg = gen(env, 0) if t == "o" else resource.Var(rng.choice(r_vars))
            e = resource.App(e, arg)
        return e

    defs = {}
    for f in names:
        params = tuple(f"y{i}" for i in range(len(sigs[f])))
        env = list(zip(params, sigs[f]))
        defs[f] = (params, gen(env, depth))
    p = resource.Program(defs, "S", behavior)
    diags, _ = resource.type_check_program(p)
    assert not diags
    return p

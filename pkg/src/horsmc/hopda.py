"""Nested pushdown stacks, alternating word acceptors over them, and
deterministic tree-generating pushdown machines.

An order-1 stack is a list of symbols; an order-(k+1) stack is a nonempty
list of order-k stacks.  Word acceptors branch existentially or universally
over their moves and accept by finite run trees.  Tree generators are
deterministic: a state either rewrites its stack or emits a tree node whose
children restart the machine on copies of the stack; stuck or diverging
configurations surface as bottom nodes with a warning.  The builders at the
bottom recast word problems as tree-acceptance problems, so that a run-tree
search can be cross-checked against a trivial-automaton verdict and
emptiness of a deterministic acceptor against three tree encodings of its
stack behaviour.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field

from . import core
from .automata import (
    FALSE, TRUE, Apt, Atom, WordAutomaton, big_and, big_or, classify,
    satisfying_sets,
)
from .core import BOT, TreePrefix

log = logging.getLogger(__name__)

EXIST = "E"
UNIV = "A"

Op = tuple  # ("push1", symbol) | ("push", level) | ("pop", level)


@dataclass(frozen=True)
class OrderNStack:
    """Nested stack: level 1 holds symbols, level k+1 holds level-k stacks."""

    order: int
    data: tuple

    def __str__(self):
        def show(d, lvl):
            if lvl == 1:
                return "[" + " ".join(d) + "]"
            return "[" + " ".join(show(x, lvl - 1) for x in d) + "]"

        return show(self.data, self.order)


def bottom_stack(order: int, symbol: str | None = None) -> OrderNStack:
    """Innermost stack empty, or holding one designated bottom symbol."""
    data: tuple = () if symbol is None else (symbol,)
    for _ in range(order - 1):
        data = (data,)
    return OrderNStack(order, data)


def top1(s: OrderNStack) -> str | None:
    """Topmost symbol, or None when some level on the way down is empty."""
    d = s.data
    for _ in range(s.order):
        if not d:
            return None
        d = d[-1]
    return d


def apply_op(op: Op, s: OrderNStack) -> OrderNStack:
    """Rewrite the stack; raises ValueError on an illegal pop."""
    return OrderNStack(s.order, _apply(op, s.data, s.order))


def _apply(op, data, level):
    kind = op[0]
    if level == 1:
        if kind == "push1":
            return data + (op[1],)
        if kind == "pop" and op[1] == 1:
            if not data:
                raise ValueError("pop 1 on an empty level-1 stack")
            return data[:-1]
        raise ValueError(f"op {op} does not apply at level 1")
    if kind == "push" and op[1] == level:
        return data + (data[-1],)
    if kind == "pop" and op[1] == level:
        if len(data) < 2:
            raise ValueError(f"pop {level} would empty a level-{level} stack")
        return data[:-1]
    return data[:-1] + (_apply(op, data[-1], level - 1),)


def all_ops(order: int, gamma) -> list[Op]:
    """Canonical op order: push1 per symbol, then push 2..n, then pop 1..n."""
    out: list[Op] = [("push1", g) for g in sorted(gamma)]
    out += [("push", i) for i in range(2, order + 1)]
    out += [("pop", i) for i in range(1, order + 1)]
    return out


def op_label(op: Op) -> str:
    if op[0] == "push1":
        return f"push1_{op[1]}"
    return f"{op[0]}{op[1]}"


def validate_op(op, order: int, gamma) -> str | None:
    if not isinstance(op, tuple) or len(op) != 2:
        return f"malformed op {op!r}"
    kind, x = op
    if kind == "push1":
        return None if x in gamma else f"push1 of unknown symbol {x!r}"
    if kind == "push":
        return None if 2 <= x <= order else f"push level {x} out of range"
    if kind == "pop":
        return None if 1 <= x <= order else f"pop level {x} out of range"
    return f"unknown op kind {kind!r}"


@dataclass
class Apda:
    """Alternating word acceptor over order-n stacks.

    Moves are tuples (state, top symbol, letter | None for silent, target,
    op); acceptance is by a finite run tree whose universal nodes carry the
    whole successor set and whose existential nodes pick one successor.
    """

    order: int
    states: tuple[str, ...]
    polarity: dict
    initial: str
    gamma: tuple[str, ...]
    sigma: tuple[str, ...]
    trans: tuple
    finals: frozenset
    bottom: str | None = None


def validate_apda(a: Apda) -> list[str]:
    diags = []
    if a.initial not in a.states:
        diags.append("initial state is not a state")
    if not set(a.finals) <= set(a.states):
        diags.append("final states outside the state set")
    if a.bottom is not None and a.bottom not in a.gamma:
        diags.append(f"bottom symbol {a.bottom!r} not in the stack alphabet")
    for p in a.states:
        if a.polarity.get(p) not in (EXIST, UNIV):
            diags.append(f"state {p!r} lacks a polarity")
    for t in a.trans:
        p, g, x, p2, op = t
        if p not in a.states or p2 not in a.states:
            diags.append(f"move {t} touches unknown states")
        if g not in a.gamma:
            diags.append(f"move {t} reads unknown stack symbol {g!r}")
        if x is not None and x not in a.sigma:
            diags.append(f"move {t} reads unknown letter {x!r}")
        bad = validate_op(op, a.order, a.gamma)
        if bad:
            diags.append(f"move {t}: {bad}")
    return diags


def _apda_moves(a: Apda, p, s, i, word):
    out = []
    top = top1(s)
    if top is None:
        return out
    for (q, g, x, p2, op) in a.trans:
        if q != p or g != top:
            continue
        if x is None:
            j = i
        elif i < len(word) and word[i] == x:
            j = i + 1
        else:
            continue
        try:
            out.append((p2, apply_op(op, s), j))
        except ValueError:
            continue  # illegal pop: this move is simply not enabled
    return out


def apda_accepts(a: Apda, word, budget: int = 200_000) -> str:
    """Three-valued run-tree search: 'yes', 'no' or 'unknown'.

    Explores the configuration graph breadth-first (budget counts explored
    configurations), then takes the least fixpoint of the finite-run-tree
    conditions over the explored part.  A witness found in a partial graph
    is still a witness; 'no' needs the graph exhausted.
    """
    word = tuple(word)
    start = (a.initial, bottom_stack(a.order, a.bottom), 0)
    succs: dict = {}
    queue, seen = deque([start]), {start}
    partial = False
    while queue:
        if len(succs) >= budget:
            partial = True
            break
        c = queue.popleft()
        if c[0] in a.finals and c[2] == len(word):
            succs[c] = []  # success leaf; what follows cannot matter
            continue
        out = _apda_moves(a, *c, word)
        succs[c] = out
        for d in out:
            if d not in seen:
                seen.add(d)
                queue.append(d)
    true_set: set = set()
    need: dict = {}
    preds: dict = {}
    ready: deque = deque()
    for c, out in succs.items():
        p, _, i = c
        uniq = set(out)
        if (p in a.finals and i == len(word)) or (a.polarity[p] == UNIV and not uniq):
            true_set.add(c)
            ready.append(c)
            continue
        if a.polarity[p] == UNIV:
            need[c] = len(uniq)
        for d in uniq:
            preds.setdefault(d, []).append(c)
    while ready:
        d = ready.popleft()
        for c in preds.get(d, ()):
            if c in true_set:
                continue
            if a.polarity[c[0]] == UNIV:
                need[c] -= 1
                if need[c]:
                    continue
            true_set.add(c)
            ready.append(c)
    if start in true_set:
        return "yes"
    return "unknown" if partial else "no"


def nondeterminacy(a: Apda) -> int:
    """Largest move fan-out of one configuration class: for a state, top
    symbol and letter, the silent moves plus that letter's moves."""
    best = 0
    for p in a.states:
        for g in a.gamma:
            eps = sum(1 for t in a.trans if t[0] == p and t[1] == g and t[2] is None)
            lets = [
                sum(1 for t in a.trans if t[0] == p and t[1] == g and t[2] == x)
                for x in a.sigma
            ]
            best = max(best, eps + max(lets, default=0))
    return best


@dataclass
class TreePda:
    """Deterministic tree generator over an order-n stack.

    delta maps (state, top symbol) to either ("step", state, op) or
    ("emit", terminal, successor states); every child of an emitted node
    continues from its own copy of the current stack.
    """

    order: int
    alphabet: dict[str, int]
    gamma: tuple[str, ...]
    states: tuple
    delta: dict
    initial: object
    bottom: str | None = None


def treepda_generate(pda: TreePda, fuel: int = 10_000) -> TreePrefix:
    """Unfold the generated tree breadth-first.

    Fuel counts configuration transitions, so silent step chains spend fuel
    but no tree depth.  Stuck configurations (no entry, empty stack top,
    illegal pop) and silent loops become bottom nodes with a warning.
    """
    nodes: dict[tuple[int, ...], str] = {}
    warnings: list[str] = []
    queue = deque([((), pda.initial, bottom_stack(pda.order, pda.bottom))])
    while queue:
        path, q, s = queue.popleft()
        chain: set = set()
        while True:
            if fuel <= 0:
                nodes[path] = BOT
                warnings.append(f"fuel exhausted at {path}")
                break
            if (q, s) in chain:
                nodes[path] = BOT
                warnings.append(f"silent loop at {path}")
                break
            top = top1(s)
            if top is None:
                nodes[path] = BOT
                warnings.append(f"stuck at {path}: empty stack top")
                break
            entry = pda.delta.get((q, top))
            if entry is None:
                nodes[path] = BOT
                warnings.append(f"stuck at {path}: no entry for ({q!r}, {top})")
                break
            fuel -= 1
            if entry[0] == "step":
                chain.add((q, s))
                _, q2, op = entry
                try:
                    s = apply_op(op, s)
                except ValueError as err:
                    nodes[path] = BOT
                    warnings.append(f"stuck at {path}: {err}")
                    break
                q = q2
            else:
                _, f, kids = entry
                nodes[path] = f
                for i, qk in enumerate(kids, start=1):
                    queue.append((path + (i,), qk, s))
                break
    for w in warnings:
        log.warning(w)
    return TreePrefix(dict(pda.alphabet), nodes, warnings)


# ---------------------------------------------------------------------------
# Word acceptance as acceptance of a generated tree.

RUN_WIN = "win"  # the simulated acceptor reached success on this branch
RUN_DEAD = "dead"  # padding / failed branch
RUN_UNIV = "univ"
RUN_EXIS = "exis"


def build_trPDA(a: Apda, word) -> TreePda:
    """Generator of the full run space of an acceptor on one word.

    Nodes alternate between polarity nodes (one child per enabled move,
    padded to the fan-out bound with win/dead leaves) and, at success
    configurations, win leaves.
    """
    word = tuple(word)
    n = nondeterminacy(a)
    alphabet = {RUN_UNIV: n, RUN_EXIS: n, RUN_WIN: 0, RUN_DEAD: 0}
    delta: dict = {}
    states: list = []
    applies: set = set()
    for p in a.states:
        for i in range(len(word) + 1):
            states.append(("sim", p, i))
    for g in a.gamma:
        for p in a.states:
            for i in range(len(word) + 1):
                if p in a.finals and i == len(word):
                    delta[(("sim", p, i), g)] = ("emit", RUN_WIN, ())
                    continue
                moves = []
                if i < len(word):
                    moves += [
                        (p2, i + 1, op)
                        for (q, gg, x, p2, op) in a.trans
                        if q == p and gg == g and x == word[i]
                    ]
                moves += [
                    (p2, i, op)
                    for (q, gg, x, p2, op) in a.trans
                    if q == p and gg == g and x is None
                ]
                kids = tuple(("apply", p2, j, op) for p2, j, op in moves)
                applies.update(kids)
                if a.polarity[p] == UNIV:
                    pad = (("win",),) * (n - len(kids))
                    delta[(("sim", p, i), g)] = ("emit", RUN_UNIV, kids + pad)
                else:
                    pad = (("dead",),) * (n - len(kids))
                    delta[(("sim", p, i), g)] = ("emit", RUN_EXIS, kids + pad)
        delta[(("win",), g)] = ("emit", RUN_WIN, ())
        delta[(("dead",), g)] = ("emit", RUN_DEAD, ())
    for st in applies:
        _, p2, j, op = st
        for g in a.gamma:
            delta[(st, g)] = ("step", ("sim", p2, j), op)
    states += sorted(applies, key=repr) + [("win",), ("dead",)]
    return TreePda(
        a.order, alphabet, a.gamma, tuple(states), delta,
        ("sim", a.initial, 0), a.bottom,
    )


def build_B_A(n: int) -> Apt:
    """Trivial automaton accepting run-space trees that witness failure:
    some branch of every universal node fails, all branches of some
    existential node fail."""
    if n < 1:
        raise ValueError("fan-out bound must be at least 1")
    q0 = "q0"
    delta = {
        (q0, RUN_UNIV): big_or(Atom(i, q0) for i in range(1, n + 1)),
        (q0, RUN_EXIS): big_and(Atom(i, q0) for i in range(1, n + 1)),
        (q0, RUN_WIN): FALSE,
        (q0, RUN_DEAD): TRUE,
    }
    alphabet = {RUN_UNIV: n, RUN_EXIS: n, RUN_WIN: 0, RUN_DEAD: 0}
    return Apt(alphabet, (q0,), delta, q0, {q0: 0})


def check_word_assumptions(a: Apda) -> list[str]:
    """Diagnostics for the word-independent generator's preconditions:
    silent moves exclude input moves per (state, top symbol), and final
    states have no outgoing moves."""
    diags = []
    silent = {(p, g) for (p, g, x, _, _) in a.trans if x is None}
    for t in a.trans:
        p, g, x, _, _ = t
        if x is not None and (p, g) in silent:
            diags.append(f"silent and input moves coexist at ({p!r}, {g!r})")
        if p in a.finals:
            diags.append(f"final state {p!r} has an outgoing move")
    out = []
    for d in diags:  # keep first occurrence order, drop repeats
        if d not in out:
            out.append(d)
    return out


def build_tPDA_prime(a: Apda) -> TreePda:
    """Word-independent run-space generator.

    READ nodes branch on every input letter (sorted), EPSILON nodes cover
    silent moves; below each letter sits a polarity node over that letter's
    moves, padded like build_trPDA.  Success states have no moves, so an
    existential one becomes an ACCEPT leaf (succeeds only with the input
    used up) and a universal one a win leaf (an empty obligation set
    succeeds wherever it occurs).
    """
    bad = check_word_assumptions(a)
    if bad:
        raise ValueError("; ".join(bad))
    n = nondeterminacy(a)
    letters = tuple(sorted(a.sigma))
    alphabet = {
        "READ": len(letters), "ACCEPT": 0, "EPSILON": 1,
        RUN_UNIV: n, RUN_EXIS: n, RUN_WIN: 0, RUN_DEAD: 0,
    }
    delta: dict = {}
    applies: set = set()
    silent = {(p, g) for (p, g, x, _, _) in a.trans if x is None}
    ins: list = []
    for g in a.gamma:
        for p in a.states:
            if p in a.finals:
                leaf = RUN_WIN if a.polarity[p] == UNIV else "ACCEPT"
                delta[(p, g)] = ("emit", leaf, ())
            elif (p, g) in silent:
                delta[(p, g)] = ("emit", "EPSILON", (("in", p, None),))
            else:
                delta[(p, g)] = (
                    "emit", "READ", tuple(("in", p, x) for x in letters)
                )
    for p in a.states:
        for x in (None,) + letters:
            st = ("in", p, x)
            ins.append(st)
            for g in a.gamma:
                moves = [
                    (p2, op)
                    for (q, gg, y, p2, op) in a.trans
                    if q == p and gg == g and y == x
                ]
                kids = tuple(("apply", p2, op) for p2, op in moves)
                applies.update(kids)
                if a.polarity[p] == UNIV:
                    pad = (("win",),) * (n - len(kids))
                    delta[(st, g)] = ("emit", RUN_UNIV, kids + pad)
                else:
                    pad = (("dead",),) * (n - len(kids))
                    delta[(st, g)] = ("emit", RUN_EXIS, kids + pad)
    for g in a.gamma:
        delta[(("win",), g)] = ("emit", RUN_WIN, ())
        delta[(("dead",), g)] = ("emit", RUN_DEAD, ())
    for st in sorted(applies, key=repr):
        _, p2, op = st
        for g in a.gamma:
            delta[(st, g)] = ("step", p2, op)
    states = (
        tuple(a.states) + tuple(ins) + tuple(sorted(applies, key=repr))
        + (("win",), ("dead",))
    )
    return TreePda(a.order, alphabet, a.gamma, states, delta, a.initial, a.bottom)


def build_B_w(word, sigma, n: int) -> Apt:
    """Trivial automaton tracking the input head through a word-independent
    run-space tree; accepts iff the word is not accepted.

    Reading past the end descends one step to inspect the polarity of the
    node below: with no input left the true successor set is empty, so a
    universal node is an accepting leaf (no failure) and an existential
    node is dead (failure witnessed).
    """
    word = tuple(word)
    letters = tuple(sorted(sigma))
    for x in word:
        if x not in letters:
            raise ValueError(f"word letter {x!r} outside the input alphabet")
    alphabet = {
        "READ": len(letters), "ACCEPT": 0, "EPSILON": 1,
        RUN_UNIV: n, RUN_EXIS: n, RUN_WIN: 0, RUN_DEAD: 0,
    }
    end = "end"
    states = tuple(range(len(word) + 1)) + (end,)
    delta: dict = {}
    for i in range(len(word) + 1):
        delta[(i, "EPSILON")] = Atom(1, i)
        if i < len(word):
            delta[(i, "READ")] = Atom(letters.index(word[i]) + 1, i + 1)
            delta[(i, "ACCEPT")] = TRUE
        else:
            delta[(i, "READ")] = Atom(1, end) if letters else TRUE
            delta[(i, "ACCEPT")] = FALSE
        delta[(i, RUN_UNIV)] = big_or(Atom(d, i) for d in range(1, n + 1))
        delta[(i, RUN_EXIS)] = big_and(Atom(d, i) for d in range(1, n + 1))
        delta[(i, RUN_WIN)] = FALSE
        delta[(i, RUN_DEAD)] = TRUE
    # past the end only polarity nodes are reachable; the rest mirrors |w|
    delta[(end, RUN_UNIV)] = FALSE
    delta[(end, RUN_EXIS)] = TRUE
    delta[(end, "EPSILON")] = Atom(1, end)
    delta[(end, "READ")] = Atom(1, end) if letters else TRUE
    delta[(end, "ACCEPT")] = FALSE
    delta[(end, RUN_WIN)] = FALSE
    delta[(end, RUN_DEAD)] = TRUE
    return Apt(alphabet, states, delta, 0, {q: 0 for q in states})


# ---------------------------------------------------------------------------
# Emptiness of deterministic acceptors as tree reachability.


@dataclass
class DetPda:
    """Deterministic word acceptor: delta maps (state, letter | None, top
    symbol) to at most one (state, op); acceptance is reaching a final."""

    order: int
    states: tuple[str, ...]
    initial: str
    gamma: tuple[str, ...]
    sigma: tuple[str, ...]
    delta: dict
    finals: frozenset
    bottom: str | None = None


def detpda_nonempty(det: DetPda, budget: int = 200_000) -> str:
    """Word-level emptiness: breadth-first search of the configuration
    graph for a reachable final state; the letters consumed on the way
    spell a witness word."""
    moves: dict = {}
    for (p, x, g), (p2, op) in det.delta.items():
        moves.setdefault((p, g), []).append((p2, op))
    start = (det.initial, bottom_stack(det.order, det.bottom))
    seen = {start}
    queue = deque([start])
    spent = 0
    while queue:
        if spent >= budget:
            return "unknown"
        p, s = queue.popleft()
        spent += 1
        if p in det.finals:
            return "yes"
        top = top1(s)
        if top is None:
            continue
        for p2, op in moves.get((p, top), ()):
            try:
                d = (p2, apply_op(op, s))
            except ValueError:
                continue
            if d not in seen:
                seen.add(d)
                queue.append(d)
    return "no"


def build_emptiness_instance(det: DetPda) -> tuple[TreePda, Apt]:
    """Tree of all interleaved input and silent moves with an `e` leaf at
    finals, paired with the reachability automaton that hunts for `e`."""
    oporder = {op: i for i, op in enumerate(all_ops(det.order, det.gamma))}
    moves: dict = {}
    for (p, x, g), (p2, op) in det.delta.items():
        moves.setdefault((p, g), set()).add((p2, op))
    delta: dict = {}
    applies: set = set()
    degrees = {2}
    for p in det.states:
        for g in det.gamma:
            if p in det.finals:
                delta[(p, g)] = ("emit", "e", ())
                continue
            out = sorted(moves.get((p, g), ()), key=lambda t: (oporder[t[1]], t[0]))
            degrees.add(len(out))
            kids = tuple(("apply", p2, op) for p2, op in out)
            applies.update(kids)
            delta[(p, g)] = ("emit", f"br{len(out)}", kids)
    for st in sorted(applies, key=repr):
        _, p2, op = st
        for g in det.gamma:
            delta[(st, g)] = ("step", p2, op)
    alphabet = {"e": 0}
    for m in range(max(degrees) + 1):
        alphabet[f"br{m}"] = m
    pda = TreePda(
        det.order, alphabet, det.gamma,
        tuple(det.states) + tuple(sorted(applies, key=repr)),
        delta, det.initial, det.bottom,
    )
    q0 = "q0"
    adelta = {(q0, "e"): TRUE}
    for m in range(max(degrees) + 1):
        adelta[(q0, f"br{m}")] = big_or(Atom(i, q0) for i in range(1, m + 1))
    apt = Apt(alphabet, (q0,), adelta, q0, {q0: 1})
    return pda, apt


def brm_expand(scheme: core.RecursionScheme) -> core.RecursionScheme:
    """Rewrite every br_m terminal with m > 2 into a cascade of binary
    branches, one fresh nonterminal per width; the value tree keeps the
    same leaf multisets under each branching node."""
    widths = sorted(
        ar for name, ar in scheme.terminals.items()
        if name == f"br{ar}" and ar > 2
    )
    if not widths:
        return scheme
    terminals = {
        name: ar for name, ar in scheme.terminals.items()
        if not (name == f"br{ar}" and ar > 2)
    }
    terminals.setdefault("br2", 2)
    fresh = {}
    for m in widths:
        name = f"Br{m}"
        while name in scheme.rules or name in terminals:
            name += "_"
        fresh[m] = name
    cascade = {f"br{m}": m for m in widths}

    def rewrite(t: core.Term) -> core.Term:
        if isinstance(t, core.App):
            return core.App(rewrite(t.fn), rewrite(t.arg))
        if isinstance(t, core.Sym) and t.name in cascade:
            return core.Nt(fresh[cascade[t.name]])
        return t

    kinds = dict(scheme.kinds)
    rules = {
        f: core.Rule(r.params, rewrite(r.body)) for f, r in scheme.rules.items()
    }
    for m in widths:
        params = tuple(f"x{i}" for i in range(1, m + 1))
        body: core.Term = core.app(
            core.Sym("br2"), core.Var(params[-2]), core.Var(params[-1])
        )
        for x in reversed(params[:-2]):
            body = core.app(core.Sym("br2"), core.Var(x), body)
        rules[fresh[m]] = core.Rule(params, body)
        kinds[fresh[m]] = core.arrow(*([core.O] * m + [core.O]))
    return core.RecursionScheme(terminals, kinds, rules, scheme.start)


# ---------------------------------------------------------------------------
# Emptiness via stack-top evolution trees.

STACKTOP_GAMMA = ("g0", "g1")


def _require_binary(det: DetPda):
    if tuple(sorted(det.gamma)) != STACKTOP_GAMMA:
        raise ValueError(
            f"stack alphabet must be {STACKTOP_GAMMA}, got {tuple(det.gamma)}"
        )
    if det.bottom != "g0":
        raise ValueError("initial stack top must be g0 to line up with the generator")


def stacktop_tree(order: int) -> TreePda:
    """Every node shows the current top symbol and has one child per stack
    op in canonical order; depends only on the order."""
    ops = all_ops(order, STACKTOP_GAMMA)
    k = len(ops)
    delta: dict = {}
    for g in STACKTOP_GAMMA:
        delta[(("show",), g)] = ("emit", g, tuple(("apply", i) for i in range(k)))
        for i, op in enumerate(ops):
            delta[(("apply", i), g)] = ("step", ("show",), op)
    states = (("show",),) + tuple(("apply", i) for i in range(k))
    return TreePda(
        order, {g: k for g in STACKTOP_GAMMA}, STACKTOP_GAMMA,
        states, delta, ("show",), "g0",
    )


def build_stacktop_instance(det: DetPda) -> tuple[TreePda, Apt]:
    """Order-only stack-top tree plus the automaton that replays one run of
    the acceptor along a branch, succeeding at finals."""
    _require_binary(det)
    ops = all_ops(det.order, STACKTOP_GAMMA)
    opindex = {op: i for i, op in enumerate(ops)}
    k = len(ops)
    moves: dict = {}
    for (p, x, g), (p2, op) in det.delta.items():
        moves.setdefault((p, g), set()).add((p2, op))
    delta: dict = {}
    for p in det.states:
        for g in STACKTOP_GAMMA:
            if p in det.finals:
                delta[(p, g)] = TRUE
            else:
                delta[(p, g)] = big_or(
                    Atom(opindex[op] + 1, p2)
                    for p2, op in sorted(moves.get((p, g), ()), key=lambda t: (opindex[t[1]], t[0]))
                )
    apt = Apt(
        {g: k for g in STACKTOP_GAMMA}, tuple(det.states), delta,
        det.initial, {p: 1 for p in det.states},
    )
    return stacktop_tree(det.order), apt


def stacktop_ops_tree(order: int) -> TreePda:
    """Stack-top tree variant that also spells out the op taken: below each
    top-symbol node, one unary op-label node per stack op."""
    ops = all_ops(order, STACKTOP_GAMMA)
    k = len(ops)
    labels = tuple(op_label(op) for op in ops)
    alphabet = {g: k for g in STACKTOP_GAMMA}
    alphabet.update({lab: 1 for lab in labels})
    delta: dict = {}
    for g in STACKTOP_GAMMA:
        delta[(("show",), g)] = ("emit", g, tuple(("pick", i) for i in range(k)))
        for i, op in enumerate(ops):
            delta[(("pick", i), g)] = ("emit", labels[i], (("apply", i),))
            delta[(("apply", i), g)] = ("step", ("show",), op)
    states = (
        (("show",),) + tuple(("pick", i) for i in range(k))
        + tuple(("apply", i) for i in range(k))
    )
    return TreePda(order, alphabet, STACKTOP_GAMMA, states, delta, ("show",), "g0")


def build_W_A(det: DetPda) -> WordAutomaton:
    """Parity word automaton over stack-top/op traces; a trace that drives
    the acceptor into a final state loops there with even priority, so the
    path language of the ops tree meets this language iff some word is
    accepted."""
    _require_binary(det)
    ops = all_ops(det.order, STACKTOP_GAMMA)
    labels = tuple(op_label(op) for op in ops)
    alphabet = STACKTOP_GAMMA + labels
    states = tuple(det.states) + tuple(
        ("read", p, g) for p in det.states for g in STACKTOP_GAMMA
    )
    trans: dict = {}
    for p in det.states:
        if p in det.finals:
            for sym in alphabet:
                trans[(p, sym)] = (p,)
            continue
        for g in STACKTOP_GAMMA:
            trans[(p, g)] = (("read", p, g),)
        for lab in labels:
            trans[(p, lab)] = (p,)
        for g in STACKTOP_GAMMA:
            for j, op in enumerate(ops):
                targets = sorted(
                    p2 for (q, x, gg), (p2, op2) in det.delta.items()
                    if q == p and gg == g and op2 == op
                )
                if targets:
                    trans[(("read", p, g), labels[j])] = tuple(targets)
    priority = {p: 2 if p in det.finals else 1 for p in det.states}
    priority.update({("read", p, g): 1 for p in det.states for g in STACKTOP_GAMMA})
    return WordAutomaton(alphabet, states, trans, det.initial, priority)


# ---------------------------------------------------------------------------
# Deciding disjunctive acceptance straight on the configuration graph.


def treepda_accepts_disjunctive(pda: TreePda, apt: Apt, budget: int = 200_000) -> str:
    """Three-valued acceptance of the generated tree by a disjunctive
    automaton, without materializing the tree.

    Disjunctive runs are single paths, so acceptance is a walk in the
    product of generator configurations and automaton states: a TRUE
    transition closes the run, and an even-priority lasso accepts.  The
    product may be infinite; exploration is budgeted.
    """
    if not classify(apt).disjunctive:
        raise ValueError("automaton is not disjunctive")
    start = (pda.initial, bottom_stack(pda.order, pda.bottom), apt.initial)
    edges: dict = {}
    seen = {start}
    queue = deque([start])
    partial = False
    while queue:
        if len(edges) >= budget:
            partial = True
            break
        node = queue.popleft()
        p, s, q = node
        out = []
        top = top1(s)
        if top is not None:
            entry = pda.delta.get((p, top))
            if entry is not None:
                if entry[0] == "step":
                    _, p2, op = entry
                    try:
                        out.append(((p2, apply_op(op, s), q), None))
                    except ValueError:
                        pass
                else:
                    _, f, kids = entry
                    for model in satisfying_sets(apt.delta[(q, f)]):
                        if not model:
                            return "yes"  # TRUE reached: the run closes here
                        (atom,) = tuple(model)
                        out.append((
                            (kids[atom.direction - 1], s, atom.state),
                            apt.priority[atom.state],
                        ))
        edges[node] = out
        for d, _ in out:
            if d not in seen:
                seen.add(d)
                queue.append(d)
    if _even_lasso(edges):
        return "yes"
    return "unknown" if partial else "no"


def _even_lasso(edges: dict) -> bool:
    """Reachable cycle whose maximal node-entering priority is even; silent
    step edges carry no priority and never make a lasso by themselves."""
    prios = {pr for outs in edges.values() for (_, pr) in outs if pr is not None}
    for d in sorted(p for p in prios if p % 2 == 0):
        keep = {
            n: [(m, pr) for (m, pr) in outs
                if (pr is None or pr <= d) and m in edges]
            for n, outs in edges.items()
        }
        comp = _sccs(keep)
        for n, outs in keep.items():
            for m, pr in outs:
                if pr == d and comp[n] == comp[m]:
                    return True
    return False


def _sccs(graph: dict) -> dict:
    """Iterative Tarjan; returns node -> component id."""
    index: dict = {}
    low: dict = {}
    comp: dict = {}
    stack: list = []
    on_stack: set = set()
    counter = [0]
    ncomp = [0]
    for root in graph:
        if root in index:
            continue
        work = [(root, iter(graph[root]))]
        index[root] = low[root] = counter[0]
        counter[0] += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            node, it = work[-1]
            advanced = False
            for m, _ in it:
                if m not in index:
                    index[m] = low[m] = counter[0]
                    counter[0] += 1
                    stack.append(m)
                    on_stack.add(m)
                    work.append((m, iter(graph[m])))
                    advanced = True
                    break
                if m in on_stack:
                    low[node] = min(low[node], index[m])
            if advanced:
                continue
            work.pop()
            if low[node] == index[node]:
                while True:
                    m = stack.pop()
                    on_stack.discard(m)
                    comp[m] = ncomp[0]
                    if m == node:
                        break
                ncomp[0] += 1
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[node])
    return comp

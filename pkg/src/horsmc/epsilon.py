"""Tree automata with silent moves and their elimination.

States carry a polarity instead of transition formulas: an existential state
picks one of its moves, a universal state must win with all of them.  Moves
either stay on the current tree node (silent) or descend to a child.
Elimination replays every silent walk, recording the walk as a state
sequence so the maximal priority crossed is remembered; a walk that revisits
a state closes a silent cycle, which is resolved on the spot by the parity
of the highest priority on the cycle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Hashable

from .automata import (
    FALSE, TRUE, AndF, Apt, Atom, Flags, OrF, PosBool, atoms_of, big_and,
    big_or, simplify,
)
from .core import TreePrefix
from .games import ParityGame, solve

State = Hashable
Move = tuple  # (direction | None, state); None = stay on the node

EXIST = "E"
UNIV = "A"


@dataclass
class EpsApt:
    alphabet: dict[str, int]
    states: tuple
    polarity: dict[State, str]
    delta: dict[tuple[State, str], frozenset]
    initial: State
    priority: dict[State, int]


def validate_eps(ea: EpsApt) -> list[str]:
    diags = []
    if ea.initial not in ea.states:
        diags.append("initial state is not a state")
    for q in ea.states:
        if ea.polarity.get(q) not in (EXIST, UNIV):
            diags.append(f"state {q!r} has polarity {ea.polarity.get(q)!r}")
        if q not in ea.priority:
            diags.append(f"state {q!r} has no priority")
        for f in ea.alphabet:
            if (q, f) not in ea.delta:
                diags.append(f"no move set for ({q!r}, {f})")
    for (q, f), moves in ea.delta.items():
        for d, t in moves:
            if d is not None and not 1 <= d <= ea.alphabet[f]:
                diags.append(f"direction {d} out of range in ({q!r}, {f})")
            if t not in ea.states:
                diags.append(f"move targets unknown state {t!r}")
    return diags


def classify_eps(ea: EpsApt) -> Flags:
    prios = set(ea.priority[q] for q in ea.states)
    trivial = len(prios) == 1 and next(iter(prios)) % 2 == 0
    disjunctive = all(
        len(moves) <= 1
        for (q, _), moves in ea.delta.items()
        if ea.polarity[q] == UNIV
    )
    return Flags(trivial, disjunctive)


def eps_accept_finite(ea: EpsApt, tree: TreePrefix) -> bool:
    """Acceptance on a complete finite tree, by the induced parity game.

    Positions pair a tree node with a state; the polarity owner moves, and
    getting stuck loses.  Infinite plays are silent cycles, settled by the
    usual max-parity rule.
    """
    if not tree.complete:
        raise ValueError("tree has bottom or truncated nodes")
    owner, priority, succ = {}, {}, {}
    work = [((), ea.initial)]
    while work:
        pos = work.pop()
        if pos in owner:
            continue
        path, q = pos
        owner[pos] = 0 if ea.polarity[q] == EXIST else 1
        priority[pos] = ea.priority[q]
        nxt = []
        for d, t in sorted(ea.delta[(q, tree.nodes[path])], key=repr):
            nxt.append((path if d is None else path + (d,), t))
        succ[pos] = tuple(nxt)
        work.extend(nxt)
    game = ParityGame(owner, priority, succ, start=((), ea.initial))
    return solve(game).win[((), ea.initial)] == 0


def apt_to_eps(apt: Apt) -> EpsApt:
    """One silent-move state per transition-formula node.

    Conjunction nodes become universal states, everything else existential;
    two shared sink states answer for the constants.  Fresh states take the
    least original priority, which never changes the maximum along a silent
    walk (every walk ends in an original state).
    """
    from .automata import FalseF, TrueF

    q_true = ("true",)
    q_false = ("false",)
    base = min(apt.priority[q] for q in apt.states)
    states: list = list(apt.states) + [q_true, q_false]
    polarity: dict[State, str] = {q: EXIST for q in apt.states}
    priority: dict[State, int] = {q: apt.priority[q] for q in apt.states}
    polarity[q_true] = UNIV
    polarity[q_false] = EXIST
    priority[q_true] = base
    priority[q_false] = base
    delta: dict[tuple[State, str], frozenset] = {}

    empty = {(q_true, f): frozenset() for f in apt.alphabet}
    empty.update({(q_false, f): frozenset() for f in apt.alphabet})
    delta.update(empty)

    for (q, f), form in apt.delta.items():

        def occ(pos):
            return ("occ", q, f, pos)

        def walk(node, pos):
            me = occ(pos)
            states.append(me)
            priority[me] = base
            if isinstance(node, AndF):
                polarity[me] = UNIV
                moves = {(None, occ(pos + (0,))), (None, occ(pos + (1,)))}
                walk(node.left, pos + (0,))
                walk(node.right, pos + (1,))
            elif isinstance(node, OrF):
                polarity[me] = EXIST
                moves = {(None, occ(pos + (0,))), (None, occ(pos + (1,)))}
                walk(node.left, pos + (0,))
                walk(node.right, pos + (1,))
            elif isinstance(node, Atom):
                polarity[me] = EXIST
                moves = {(node.direction, node.state)}
            elif isinstance(node, TrueF):
                polarity[me] = EXIST
                moves = {(None, q_true)}
            else:
                assert isinstance(node, FalseF)
                polarity[me] = EXIST
                moves = {(None, q_false)}
            for g in apt.alphabet:
                delta[(me, g)] = frozenset(moves) if g == f else frozenset()

        walk(form, ())
        delta[(q, f)] = frozenset({(None, occ(()))})

    return EpsApt(dict(apt.alphabet), tuple(states), polarity, delta, apt.initial, priority)


def eps_eliminate(ea: EpsApt) -> Apt:
    """Silent-move elimination; states of the result are walk sequences.

    A transition formula is built by exhausting every silent walk from the
    sequence's last state: direction moves become atoms whose target records
    the walk, a revisited state closes a cycle resolved by the parity of the
    maximal priority on it.  Only sequences reachable from the initial one
    are kept.
    """

    def expand(state, sym, prefix) -> PosBool:
        parts = []
        for d, t in sorted(ea.delta[(state, sym)], key=repr):
            if d is not None:
                parts.append(Atom(d, prefix + (t,)))
            elif t in prefix:
                seg = prefix[prefix.index(t):]
                top = max(ea.priority[s] for s in seg)
                parts.append(TRUE if top % 2 == 0 else FALSE)
            else:
                parts.append(expand(t, sym, prefix + (t,)))
        joined = big_or(parts) if ea.polarity[state] == EXIST else big_and(parts)
        return joined

    init = (ea.initial,)
    delta: dict[tuple, PosBool] = {}
    states: list = []
    seen = {init}
    work = [init]
    while work:
        seq = work.pop()
        states.append(seq)
        for sym in ea.alphabet:
            form = simplify(expand(seq[-1], sym, ()))
            delta[(seq, sym)] = form
            for a in atoms_of(form):
                if a.state not in seen:
                    seen.add(a.state)
                    work.append(a.state)
    priority = {seq: max(ea.priority[s] for s in seq) for seq in states}
    return Apt(dict(ea.alphabet), tuple(states), delta, init, priority)


def compress_states(apt: Apt) -> Apt:
    """Collapse walk-sequence states to (last state, maximal priority) pairs.

    Transition formulas only ever depend on the last state, so
    representatives agree; this is asserted while rebuilding.
    """
    def short(seq):
        return (seq[-1], apt.priority[seq])

    def remap(form: PosBool) -> PosBool:
        if isinstance(form, Atom):
            return Atom(form.direction, short(form.state))
        if isinstance(form, AndF):
            return AndF(remap(form.left), remap(form.right))
        if isinstance(form, OrF):
            return OrF(remap(form.left), remap(form.right))
        return form

    states: list = []
    delta: dict[tuple, PosBool] = {}
    priority: dict = {}
    for seq in apt.states:
        s = short(seq)
        if s not in priority:
            states.append(s)
            priority[s] = apt.priority[seq]
        for sym in apt.alphabet:
            form = remap(apt.delta[(seq, sym)])
            if (s, sym) in delta:
                assert delta[(s, sym)] == form, "compression collided"
            delta[(s, sym)] = form
    return Apt(dict(apt.alphabet), tuple(states), delta, short(apt.initial), priority)


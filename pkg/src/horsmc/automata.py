"""Alternating parity tree automata over ranked alphabets, plus the parity
word automata used for path properties.

Transition formulas are positive boolean combinations of (direction, state)
atoms.  Finite-tree acceptance needs no parity bookkeeping (runs cannot
loop), so it is a memoized and/or search; prefix acceptance is three-valued,
resolving bottom labels and cut-off children optimistically in one pass and
pessimistically in the other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Hashable, Iterable

from . import core
from .core import BOT, TreePrefix

State = Hashable


class PosBool:
    __slots__ = ()


@dataclass(frozen=True)
class TrueF(PosBool):
    def __str__(self):
        return "t"


@dataclass(frozen=True)
class FalseF(PosBool):
    def __str__(self):
        return "f"


@dataclass(frozen=True)
class Atom(PosBool):
    """Obligation: run state `state` on the child in direction `direction`."""

    direction: int
    state: State

    def __str__(self):
        return f"({self.direction},{self.state})"


@dataclass(frozen=True)
class AndF(PosBool):
    left: PosBool
    right: PosBool

    def __str__(self):
        return f"({self.left} /\\ {self.right})"


@dataclass(frozen=True)
class OrF(PosBool):
    left: PosBool
    right: PosBool

    def __str__(self):
        return f"({self.left} \\/ {self.right})"


TRUE = TrueF()
FALSE = FalseF()


def big_and(parts: Iterable[PosBool]) -> PosBool:
    out = None
    for p in parts:
        out = p if out is None else AndF(out, p)
    return TRUE if out is None else out


def big_or(parts: Iterable[PosBool]) -> PosBool:
    out = None
    for p in parts:
        out = p if out is None else OrF(out, p)
    return FALSE if out is None else out


def simplify(f: PosBool) -> PosBool:
    """Fold constants; keeps and/or structure otherwise."""
    if isinstance(f, AndF):
        l, r = simplify(f.left), simplify(f.right)
        if l == FALSE or r == FALSE:
            return FALSE
        if l == TRUE:
            return r
        if r == TRUE:
            return l
        return AndF(l, r)
    if isinstance(f, OrF):
        l, r = simplify(f.left), simplify(f.right)
        if l == TRUE or r == TRUE:
            return TRUE
        if l == FALSE:
            return r
        if r == FALSE:
            return l
        return OrF(l, r)
    return f


def atoms_of(f: PosBool) -> set[Atom]:
    if isinstance(f, Atom):
        return {f}
    if isinstance(f, (AndF, OrF)):
        return atoms_of(f.left) | atoms_of(f.right)
    return set()


def eval_posbool(f: PosBool, true_atoms: set[Atom]) -> bool:
    if isinstance(f, TrueF):
        return True
    if isinstance(f, FalseF):
        return False
    if isinstance(f, Atom):
        return f in true_atoms
    if isinstance(f, AndF):
        return eval_posbool(f.left, true_atoms) and eval_posbool(f.right, true_atoms)
    return eval_posbool(f.left, true_atoms) or eval_posbool(f.right, true_atoms)


def satisfying_sets(f: PosBool) -> frozenset[frozenset[Atom]]:
    """Minimal models, each a set of atoms assumed true."""

    def go(g) -> set[frozenset[Atom]]:
        if isinstance(g, TrueF):
            return {frozenset()}
        if isinstance(g, FalseF):
            return set()
        if isinstance(g, Atom):
            return {frozenset((g,))}
        if isinstance(g, OrF):
            return go(g.left) | go(g.right)
        return {l | r for l in go(g.left) for r in go(g.right)}

    models = go(f)
    minimal = {m for m in models if not any(o < m for o in models)}
    return frozenset(minimal)


@dataclass
class Flags:
    trivial: bool
    disjunctive: bool


@dataclass
class Apt:
    """Alternating parity tree automaton; max-parity acceptance."""

    alphabet: dict[str, int]
    states: tuple
    delta: dict[tuple[State, str], PosBool]
    initial: State
    priority: dict[State, int]

    def arity(self, sym: str) -> int:
        return self.alphabet[sym]


def validate(apt: Apt) -> list[str]:
    diags = []
    if apt.initial not in apt.states:
        diags.append("initial state is not a state")
    for q in apt.states:
        if q not in apt.priority:
            diags.append(f"state {q!r} has no priority")
        for f in apt.alphabet:
            if (q, f) not in apt.delta:
                diags.append(f"no transition for ({q!r}, {f})")
    for (q, f), form in apt.delta.items():
        if q not in apt.states:
            diags.append(f"transition from unknown state {q!r}")
        if f not in apt.alphabet:
            diags.append(f"transition on unknown symbol {f}")
            continue
        for a in atoms_of(form):
            if not 1 <= a.direction <= apt.alphabet[f]:
                diags.append(f"direction {a.direction} out of range in delta({q!r}, {f})")
            if a.state not in apt.states:
                diags.append(f"atom targets unknown state {a.state!r}")
    return diags


def _formula_disjunctive(f: PosBool) -> bool:
    if isinstance(f, AndF):
        return False
    if isinstance(f, OrF):
        return _formula_disjunctive(f.left) and _formula_disjunctive(f.right)
    return True


def classify(apt: Apt) -> Flags:
    prios = set(apt.priority[q] for q in apt.states)
    trivial = len(prios) == 1 and next(iter(prios)) % 2 == 0
    disjunctive = all(_formula_disjunctive(form) for form in apt.delta.values())
    return Flags(trivial, disjunctive)


@dataclass(frozen=True)
class RunTree:
    """Witness for finite-tree acceptance: one node per discharged obligation."""

    path: tuple[int, ...]
    state: State
    children: tuple["RunTree", ...]


def _require_complete(tree: TreePrefix):
    if not tree.complete:
        raise ValueError("tree has bottom or truncated nodes; use accept_prefix")


def accept_finite(apt: Apt, tree: TreePrefix) -> bool:
    """Acceptance on a complete finite tree (no parity needed: runs are finite)."""
    _require_complete(tree)
    memo: dict[tuple[tuple[int, ...], State], bool] = {}

    def go(path, q) -> bool:
        key = (path, q)
        if key in memo:
            return memo[key]
        form = apt.delta[(q, tree.nodes[path])]
        ok = any(
            all(go(path + (a.direction,), a.state) for a in model)
            for model in satisfying_sets(form)
        )
        memo[key] = ok
        return ok

    return go((), apt.initial)


def run_tree(apt: Apt, tree: TreePrefix) -> RunTree | None:
    """An accepting run on a complete finite tree, if one exists."""
    _require_complete(tree)
    memo: dict[tuple[tuple[int, ...], State], RunTree | None] = {}

    def go(path, q):
        key = (path, q)
        if key in memo:
            return memo[key]
        best = None
        for model in satisfying_sets(apt.delta[(q, tree.nodes[path])]):
            kids = []
            for a in sorted(model, key=lambda a: (a.direction, repr(a.state))):
                sub = go(path + (a.direction,), a.state)
                if sub is None:
                    break
                kids.append(sub)
            else:
                best = RunTree(path, q, tuple(kids))
                break
        memo[key] = best
        return best

    return go((), apt.initial)


def accept_prefix(apt: Apt, prefix: TreePrefix) -> str:
    """Three-valued acceptance on a tree prefix: 'yes', 'no' or 'unknown'.

    Bottom labels and cut-off children count for the automaton in the
    optimistic pass and against it in the pessimistic pass; a pessimistic
    win or an optimistic loss settles every completion of the prefix.
    """

    def go(path, q, optimistic, memo) -> bool:
        key = (path, q)
        if key in memo:
            return memo[key]
        lab = prefix.nodes[path]
        if lab == BOT:
            memo[key] = optimistic
            return optimistic
        form = apt.delta[(q, lab)]

        def child(a: Atom) -> bool:
            kid = path + (a.direction,)
            if kid not in prefix.nodes:
                return optimistic
            return go(kid, a.state, optimistic, memo)

        ok = any(all(child(a) for a in model) for model in satisfying_sets(form))
        memo[key] = ok
        return ok

    if go((), apt.initial, False, {}):
        return "yes"
    if not go((), apt.initial, True, {}):
        return "no"
    return "unknown"


def accept_bounded(
    apt: Apt, scheme: core.RecursionScheme, depth: int, fuel: int = 10_000
) -> str:
    """Expand the scheme to a depth and judge the prefix three-valued."""
    if set(scheme.terminals) - set(apt.alphabet):
        raise ValueError("scheme uses symbols the automaton does not know")
    return accept_prefix(apt, core.expand_value_tree(scheme, depth, fuel))


def relabel_states(apt: Apt, prefix: str = "q") -> Apt:
    """Rename states to q0..qn (stable: breadth-first from the initial state)."""
    order: list = [apt.initial]
    seen = {apt.initial}
    i = 0
    while i < len(order):
        q = order[i]
        i += 1
        for f in sorted(apt.alphabet):
            for a in sorted(atoms_of(apt.delta[(q, f)]), key=repr):
                if a.state not in seen:
                    seen.add(a.state)
                    order.append(a.state)
    for q in apt.states:  # unreachable states keep deterministic tail positions
        if q not in seen:
            seen.add(q)
            order.append(q)
    names = {q: f"{prefix}{i}" for i, q in enumerate(order)}

    def rename(form: PosBool) -> PosBool:
        if isinstance(form, Atom):
            return Atom(form.direction, names[form.state])
        if isinstance(form, AndF):
            return AndF(rename(form.left), rename(form.right))
        if isinstance(form, OrF):
            return OrF(rename(form.left), rename(form.right))
        return form

    return Apt(
        dict(apt.alphabet),
        tuple(names[q] for q in order),
        {(names[q], f): rename(form) for (q, f), form in apt.delta.items()},
        names[apt.initial],
        {names[q]: apt.priority[q] for q in apt.states},
    )


@dataclass
class WordAutomaton:
    """Nondeterministic parity automaton on infinite words (max parity)."""

    alphabet: tuple[str, ...]
    states: tuple
    trans: dict[tuple[State, str], tuple[State, ...]]
    initial: State
    priority: dict[State, int]
    deterministic: bool = False


def validate_word(w: WordAutomaton) -> list[str]:
    diags = []
    if w.initial not in w.states:
        diags.append("initial state is not a state")
    for q in w.states:
        if q not in w.priority:
            diags.append(f"state {q!r} has no priority")
    for (q, a), targets in w.trans.items():
        if q not in w.states or a not in w.alphabet:
            diags.append(f"transition ({q!r}, {a}) off the declared sets")
        for t in targets:
            if t not in w.states:
                diags.append(f"target {t!r} is not a state")
    if w.deterministic:
        for q in w.states:
            for a in w.alphabet:
                n = len(w.trans.get((q, a), ()))
                if n != 1:
                    diags.append(f"marked deterministic but |delta({q!r}, {a})| = {n}")
    return diags


def accepts_lasso(
    w: WordAutomaton, stem: list[str], cycle: list[str], start: State | None = None
) -> bool:
    """Does the automaton accept stem . cycle^omega (from `start`)?"""
    if not cycle:
        raise ValueError("empty cycle")
    current = {start if start is not None else w.initial}
    for a in stem:
        current = {t for q in current for t in w.trans.get((q, a), ())}
    n = len(cycle)
    # product of states with cycle positions; a run is a lasso in this graph
    nodes = {(q, i) for q in w.states for i in range(n)}
    succ = {
        (q, i): tuple((t, (i + 1) % n) for t in w.trans.get((q, cycle[i]), ()))
        for (q, i) in nodes
    }
    entry = {(q, 0) for q in current}
    reach = set(entry)
    work = list(entry)
    while work:
        v = work.pop()
        for t in succ[v]:
            if t not in reach:
                reach.add(t)
                work.append(t)
    prios = sorted({w.priority[q] for (q, _) in reach})
    for m in prios:
        if m % 2 == 1:
            continue
        sub = {v for v in reach if w.priority[v[0]] <= m}
        for v in sub:
            if w.priority[v[0]] != m:
                continue
            # cycle through v inside the <= m subgraph
            seen, work2 = set(), [t for t in succ[v] if t in sub]
            while work2:
                u = work2.pop()
                if u == v:
                    return True
                if u in seen:
                    continue
                seen.add(u)
                work2.extend(t for t in succ[u] if t in sub)
    return False


def np_word_to_disjunctive(alphabet: dict[str, int], w: WordAutomaton) -> Apt:
    """Disjunctive tree automaton accepting a tree iff some maximal path
    word lies in the word language.

    Path words of finite branches repeat their leaf symbol forever, so at an
    arity-0 symbol the transition is decided by a lasso check on that
    constant suffix from the current word state.
    """
    missing = set(alphabet) - set(w.alphabet)
    if missing:
        raise ValueError(f"word automaton lacks symbols: {sorted(missing)}")
    delta: dict[tuple[State, str], PosBool] = {}
    for q in w.states:
        for f, ar in alphabet.items():
            if ar == 0:
                delta[(q, f)] = TRUE if accepts_lasso(w, [], [f], start=q) else FALSE
            else:
                delta[(q, f)] = big_or(
                    Atom(i, t)
                    for i in range(1, ar + 1)
                    for t in w.trans.get((q, f), ())
                )
    return Apt(dict(alphabet), tuple(w.states), delta, w.initial, dict(w.priority))


def complement_det_parity(w: WordAutomaton) -> WordAutomaton:
    """Complement a deterministic, total parity word automaton by shifting
    priorities one up; raises on nondeterministic or partial input."""
    problems = [
        f"delta({q!r}, {a}) has {len(w.trans.get((q, a), ()))} targets"
        for q in w.states
        for a in w.alphabet
        if len(w.trans.get((q, a), ())) != 1
    ]
    if problems:
        raise ValueError("not deterministic and total: " + "; ".join(problems[:4]))
    return WordAutomaton(
        tuple(w.alphabet),
        tuple(w.states),
        dict(w.trans),
        w.initial,
        {q: p + 1 for q, p in w.priority.items()},
        deterministic=True,
    )

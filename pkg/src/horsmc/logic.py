"""Branching-time fixpoint formulas over ranked trees.

The formula-to-automaton translation goes through the silent-move automaton:
one state per subformula occurrence, variables hop silently back to their
binder, and binder states carry priorities from the alternation structure
(greatest fixpoints even, least odd, outer dominating inner).  Silent-move
elimination then yields an ordinary alternating automaton; the safety
fragment (no least fixpoints) lands in the single-even-priority class and
the disjunctive fragment (conjunction only against a label test) survives
constant folding as a disjunction-only automaton.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import epsilon
from .automata import AndF, Apt, Atom, FALSE, OrF, PosBool, TRUE, TrueF, FalseF, relabel_states
from .core import TreePrefix


class EvalError(Exception):
    pass


class MuFormula:
    __slots__ = ()


@dataclass(frozen=True)
class Tt(MuFormula):
    def __str__(self):
        return "true"


@dataclass(frozen=True)
class Ff(MuFormula):
    def __str__(self):
        return "false"


@dataclass(frozen=True)
class Prop(MuFormula):
    """Label test: the current node is labelled `sym`."""

    sym: str

    def __str__(self):
        return f"P({self.sym})"


@dataclass(frozen=True)
class Var(MuFormula):
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class And(MuFormula):
    left: MuFormula
    right: MuFormula

    def __str__(self):
        return f"({self.left} /\\ {self.right})"


@dataclass(frozen=True)
class Or(MuFormula):
    left: MuFormula
    right: MuFormula

    def __str__(self):
        return f"({self.left} \\/ {self.right})"


@dataclass(frozen=True)
class Dia(MuFormula):
    """Some i-th child satisfies the body (fails where there is no child i)."""

    direction: int
    sub: MuFormula

    def __str__(self):
        return f"<{self.direction}> {self.sub}"


@dataclass(frozen=True)
class Nu(MuFormula):
    var: str
    sub: MuFormula

    def __str__(self):
        return f"nu {self.var}. {self.sub}"


@dataclass(frozen=True)
class Mu(MuFormula):
    var: str
    sub: MuFormula

    def __str__(self):
        return f"mu {self.var}. {self.sub}"


def free_vars(phi: MuFormula) -> frozenset[str]:
    if isinstance(phi, Var):
        return frozenset((phi.name,))
    if isinstance(phi, (And, Or)):
        return free_vars(phi.left) | free_vars(phi.right)
    if isinstance(phi, Dia):
        return free_vars(phi.sub)
    if isinstance(phi, (Nu, Mu)):
        return free_vars(phi.sub) - {phi.var}
    return frozenset()


def alpha_normalize(phi: MuFormula) -> MuFormula:
    """Rename binders apart (fresh names only where a name is reused)."""
    used: set[str] = set()

    def go(f, env):
        if isinstance(f, Var):
            return Var(env.get(f.name, f.name))
        if isinstance(f, And):
            return And(go(f.left, env), go(f.right, env))
        if isinstance(f, Or):
            return Or(go(f.left, env), go(f.right, env))
        if isinstance(f, Dia):
            return Dia(f.direction, go(f.sub, env))
        if isinstance(f, (Nu, Mu)):
            name = f.var
            if name in used:
                i = 1
                while f"{f.var}_{i}" in used:
                    i += 1
                name = f"{f.var}_{i}"
            used.add(name)
            sub = go(f.sub, {**env, f.var: name})
            return type(f)(name, sub)
        return f

    return go(phi, {})


def fragment_of(phi: MuFormula) -> str:
    """'S' (no least fixpoints), 'D' (conjunction only as label-test /\\ body,
    no bare label tests), or 'general'."""

    def is_s(f):
        if isinstance(f, Mu):
            return False
        if isinstance(f, (And, Or)):
            return is_s(f.left) and is_s(f.right)
        if isinstance(f, (Dia, Nu)):
            return is_s(f.sub)
        return True

    def is_d(f):
        if isinstance(f, (Tt, Ff, Var)):
            return True
        if isinstance(f, And):
            return isinstance(f.left, Prop) and is_d(f.right)
        if isinstance(f, Or):
            return is_d(f.left) and is_d(f.right)
        if isinstance(f, Dia):
            return is_d(f.sub)
        if isinstance(f, (Nu, Mu)):
            return is_d(f.sub)
        return False  # bare label test (or anything new)

    if is_s(phi):
        return "S"
    if is_d(phi):
        return "D"
    return "general"


def binder_priorities(phi: MuFormula) -> dict[tuple, int]:
    """Priority per binder position: base 0 for nu / 1 for mu, lifted above
    the inner binders when their maximal priority has the wrong parity."""
    out: dict[tuple, int] = {}

    def go(f, pos) -> int:
        if isinstance(f, (And, Or)):
            return max(go(f.left, pos + (0,)), go(f.right, pos + (1,)))
        if isinstance(f, Dia):
            return go(f.sub, pos + (0,))
        if isinstance(f, (Nu, Mu)):
            sign = 0 if isinstance(f, Nu) else 1
            inner = go(f.sub, pos + (0,))
            pr = sign if inner < 0 else (inner if inner % 2 == sign else inner + 1)
            out[pos] = pr
            return pr
        return -1  # no binder below

    go(phi, ())
    return out


def formula_to_eps(phi: MuFormula, alphabet: dict[str, int]) -> epsilon.EpsApt:
    """Silent-move automaton with one state per subformula occurrence."""
    if free_vars(phi):
        raise EvalError(f"free variables: {sorted(free_vars(phi))}")
    prios = binder_priorities(phi)
    q_true = ("true",)
    states: list = [q_true]
    polarity = {q_true: epsilon.UNIV}
    priority = {q_true: 0}
    delta: dict[tuple, frozenset] = {(q_true, g): frozenset() for g in alphabet}

    def go(f, pos, env):
        me = ("phi", pos)
        states.append(me)
        priority[me] = prios.get(pos, 0)
        moves_by_sym = {}
        if isinstance(f, And) or isinstance(f, Or):
            polarity[me] = epsilon.UNIV if isinstance(f, And) else epsilon.EXIST
            targets = {(None, ("phi", pos + (0,))), (None, ("phi", pos + (1,)))}
            moves_by_sym = {g: targets for g in alphabet}
            go(f.left, pos + (0,), env)
            go(f.right, pos + (1,), env)
        elif isinstance(f, Dia):
            polarity[me] = epsilon.EXIST
            moves_by_sym = {
                g: ({(f.direction, ("phi", pos + (0,)))} if f.direction <= ar else set())
                for g, ar in alphabet.items()
            }
            go(f.sub, pos + (0,), env)
        elif isinstance(f, (Nu, Mu)):
            polarity[me] = epsilon.EXIST
            moves_by_sym = {g: {(None, ("phi", pos + (0,)))} for g in alphabet}
            go(f.sub, pos + (0,), {**env, f.var: me})
        elif isinstance(f, Var):
            polarity[me] = epsilon.EXIST
            moves_by_sym = {g: {(None, env[f.name])} for g in alphabet}
        elif isinstance(f, Prop):
            polarity[me] = epsilon.EXIST
            moves_by_sym = {
                g: ({(None, q_true)} if g == f.sym else set()) for g in alphabet
            }
        elif isinstance(f, Tt):
            polarity[me] = epsilon.EXIST
            moves_by_sym = {g: {(None, q_true)} for g in alphabet}
        else:
            assert isinstance(f, Ff)
            polarity[me] = epsilon.EXIST
            moves_by_sym = {g: set() for g in alphabet}
        for g in alphabet:
            delta[(me, g)] = frozenset(moves_by_sym[g])

    go(phi, (), {})
    return epsilon.EpsApt(
        dict(alphabet), tuple(states), polarity, delta, ("phi", ()), priority
    )


def formula_to_apt(phi: MuFormula, alphabet: dict[str, int]) -> Apt:
    """Closed formula to an equivalent alternating parity tree automaton."""
    ea = formula_to_eps(phi, alphabet)
    return relabel_states(epsilon.compress_states(epsilon.eps_eliminate(ea)))


def eval_finite(
    phi: MuFormula, tree: TreePrefix, env: dict[str, frozenset] | None = None
) -> frozenset:
    """Nodes of a complete finite tree satisfying the formula."""
    if not tree.complete:
        raise ValueError("tree has bottom or truncated nodes")
    nodes = frozenset(tree.nodes)

    def go(f, env) -> frozenset:
        if isinstance(f, Tt):
            return nodes
        if isinstance(f, Ff):
            return frozenset()
        if isinstance(f, Prop):
            return frozenset(p for p in nodes if tree.nodes[p] == f.sym)
        if isinstance(f, Var):
            if f.name not in env:
                raise EvalError(f"free variable {f.name}")
            return env[f.name]
        if isinstance(f, And):
            return go(f.left, env) & go(f.right, env)
        if isinstance(f, Or):
            return go(f.left, env) | go(f.right, env)
        if isinstance(f, Dia):
            sub = go(f.sub, env)
            return frozenset(p for p in nodes if p + (f.direction,) in sub)
        assert isinstance(f, (Nu, Mu))
        x = nodes if isinstance(f, Nu) else frozenset()
        while True:
            nxt = go(f.sub, {**env, f.var: x})
            if nxt == x:
                return x
            x = nxt

    return go(phi, dict(env) if env else {})


@dataclass
class FixpointSystem:
    """Equational form: one variable per automaton state, ordered by
    non-increasing priority; least sign exactly at odd priorities."""

    variables: tuple[str, ...]
    signs: dict[str, str]
    equations: dict[str, MuFormula]
    state_var: dict
    initial_var: str

    def pretty(self) -> str:
        lines = []
        for z in self.variables:
            lines.append(f"{z} =_{self.signs[z]} {self.equations[z]}")
        return "\n".join(lines)


def apt_to_system(apt: Apt) -> FixpointSystem:
    order = sorted(
        apt.states,
        key=lambda q: (-apt.priority[q], q != apt.initial, repr(q)),
    )
    names = {q: f"Z{i + 1}" for i, q in enumerate(order)}

    def embed(form: PosBool) -> MuFormula:
        if isinstance(form, TrueF):
            return Tt()
        if isinstance(form, FalseF):
            return Ff()
        if isinstance(form, Atom):
            return Dia(form.direction, Var(names[form.state]))
        if isinstance(form, AndF):
            return And(embed(form.left), embed(form.right))
        assert isinstance(form, OrF)
        return Or(embed(form.left), embed(form.right))

    equations = {}
    for q in order:
        parts = [
            And(Prop(f), embed(apt.delta[(q, f)])) for f in sorted(apt.alphabet)
        ]
        body: MuFormula = parts[0]
        for p in parts[1:]:
            body = Or(body, p)
        equations[names[q]] = body
    return FixpointSystem(
        tuple(names[q] for q in order),
        {names[q]: ("mu" if apt.priority[q] % 2 else "nu") for q in order},
        equations,
        {q: names[q] for q in order},
        names[apt.initial],
    )


def eval_system(system: FixpointSystem, tree: TreePrefix) -> dict[str, frozenset]:
    """Solve the nested fixpoints left to right (outermost first)."""
    if not tree.complete:
        raise ValueError("tree has bottom or truncated nodes")
    nodes = frozenset(tree.nodes)

    def solve(i: int, env: dict[str, frozenset]) -> dict[str, frozenset]:
        if i == len(system.variables):
            return {}
        z = system.variables[i]
        x = nodes if system.signs[z] == "nu" else frozenset()
        while True:
            inner = solve(i + 1, {**env, z: x})
            nxt = eval_finite(system.equations[z], tree, {**env, z: x, **inner})
            if nxt == x:
                return {z: x, **inner}
            x = nxt

    return solve(0, {})

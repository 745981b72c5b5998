"""A small call-by-name language with resource creation and access.

Programs are top-level function definitions plus a deterministic behavior
automaton saying how each resource may be accessed.  The module gives the
language simple types (type_check_program), a bounded interpreter over the
nondeterministic reduction relation (run_program), a compilation of a
program to a recursion scheme generating every resource-wise access
sequence plus a disjunctive automaton hunting for an invalid one
(program_to_scheme / program_to_apt), the resulting decision procedure
(verify), and the reverse embedding of terminal reachability in schemes
into resource safety (reach_to_resource).

Conventions: in the generated scheme the tracked/ignored instantiation of
a fresh resource is spelled with the unary terminals `i` and `k`, creation
in state q with the binary terminal `nu_q`, nondeterministic choice with
`br`, and finished runs with `unit`.  The alphabet covers only the names
that actually occur in the program.
"""

from dataclasses import dataclass, field
from collections import deque

from . import core
from .automata import Apt, Atom, FALSE, TRUE, big_or, satisfying_sets
from .typecheck import EngineLimits, model_check


# ---------------------------------------------------------------------------
# Programs.


@dataclass
class Behavior:
    """Deterministic word automaton over access names; moves may be missing."""

    states: tuple
    letters: tuple[str, ...]
    delta: dict[tuple, str]
    initial: str
    finals: frozenset

    def __str__(self):
        moves = ", ".join(f"{q} -{a}-> {p}" for (q, a), p in sorted(self.delta.items()))
        return f"behavior({moves or 'no moves'})"


def validate_behavior(b: Behavior) -> list[str]:
    diags = []
    if b.initial not in b.states:
        diags.append("initial state is not a state")
    for q in b.finals:
        if q not in b.states:
            diags.append(f"final state {q!r} is not a state")
    for (q, a), p in b.delta.items():
        if q not in b.states or p not in b.states:
            diags.append(f"move {q!r} -{a}-> {p!r} uses an unknown state")
        if a not in b.letters:
            diags.append(f"move on unknown access name {a!r}")
    return diags


class Expr:
    """Program expression."""


@dataclass(frozen=True)
class Unit(Expr):
    """The finished computation."""

    def __str__(self):
        return "()"


@dataclass(frozen=True)
class Var(Expr):
    """Parameter or resource handle."""

    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class FunRef(Expr):
    """Reference to a top-level definition."""

    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class App(Expr):
    """Application."""

    fn: Expr
    arg: Expr

    def __str__(self):
        return f"({self.fn} {self.arg})"


@dataclass(frozen=True)
class Choice(Expr):
    """Nondeterministic branch between two runs."""

    left: Expr
    right: Expr

    def __str__(self):
        return f"if {_wrap(self.left)} {_wrap(self.right)}"


@dataclass(frozen=True)
class New(Expr):
    """Create a resource starting in state `state`, pass it to `body`."""

    state: str
    body: Expr

    def __str__(self):
        return f"new[{self.state}] {_wrap(self.body)}"


@dataclass(frozen=True)
class Access(Expr):
    """Access the resource `res` with primitive `name`, then run `rest`."""

    name: str
    res: Expr
    rest: Expr

    def __str__(self):
        return f"acc[{self.name}] {_wrap(self.res)} {_wrap(self.rest)}"


def _wrap(e: Expr) -> str:
    # application prints its own parens; prefix forms need them as arguments
    if isinstance(e, (Choice, New, Access)):
        return f"({e})"
    return str(e)


UNIT = Unit()


@dataclass
class Program:
    """Top-level definitions, a main name, and the behavior automaton."""

    defs: dict[str, tuple[tuple[str, ...], Expr]]
    main: str
    behavior: Behavior

    def __str__(self):
        lines = [
            f"def {f} {' '.join(params)} = {body}".replace("  ", " ")
            for f, (params, body) in self.defs.items()
        ]
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# Simple types; `o` is the type of finished runs, `R` the type of resources.


@dataclass(frozen=True)
class ResType:
    """Simple type: base `o` or `R`, or an arrow."""

    tag: str  # "o", "R" or "->"
    left: "ResType | None" = None
    right: "ResType | None" = None

    def __str__(self):
        if self.tag != "->":
            return self.tag
        lhs = f"({self.left})" if self.left.tag == "->" else str(self.left)
        return f"{lhs} -> {self.right}"


VOID = ResType("o")
RESOURCE = ResType("R")


def fun(a: ResType, b: ResType) -> ResType:
    return ResType("->", a, b)


def type_order(t: ResType) -> int:
    if t.tag == "o":
        return 0
    if t.tag == "R":
        return 1
    return max(type_order(t.left) + 1, type_order(t.right))


class _TVar:
    """Inference variable (identity-based)."""

    __slots__ = ("hint",)

    def __init__(self, hint: str):
        self.hint = hint


class _Infer:
    """Union-find unification over ResType with inference variables."""

    def __init__(self):
        self.parent: dict = {}
        self.diags: list[str] = []

    def find(self, t):
        while t in self.parent:
            t = self.parent[t]
        return t

    def unify(self, a, b, where: str):
        a, b = self.find(a), self.find(b)
        if a is b or a == b:
            return
        if isinstance(a, _TVar):
            if self._occurs(a, b):
                self.diags.append(f"infinite type in {where}")
                return
            self.parent[a] = b
            return
        if isinstance(b, _TVar):
            self.unify(b, a, where)
            return
        if a.tag == "->" and b.tag == "->":
            self.unify(a.left, b.left, where)
            self.unify(a.right, b.right, where)
            return
        self.diags.append(f"type mismatch in {where}: {self.render(a)} vs {self.render(b)}")

    def _occurs(self, v, t):
        t = self.find(t)
        if t is v:
            return True
        if isinstance(t, _TVar) or t.tag != "->":
            return False
        return self._occurs(v, t.left) or self._occurs(v, t.right)

    def resolve(self, t) -> ResType:
        """Ground representative; free variables default to `o`."""
        t = self.find(t)
        if isinstance(t, _TVar):
            return VOID
        if t.tag != "->":
            return t
        return fun(self.resolve(t.left), self.resolve(t.right))

    def render(self, t) -> str:
        return str(self.resolve(t))


# types of the three expression-form constants, for the order measure
_CHOICE_TYPE = fun(VOID, fun(VOID, VOID))
_ACCESS_TYPE = fun(RESOURCE, fun(VOID, VOID))
_NEW_TYPE = fun(fun(RESOURCE, VOID), VOID)


def _infer(p: Program):
    """Type every definition; returns (diags, order, fn_types)."""
    inf = _Infer()
    occurring: list = []  # every typed occurrence, for the order measure
    fn_vars = {f: _TVar(f) for f in p.defs}

    def walk(e: Expr, env: dict, where: str):
        if isinstance(e, Unit):
            t = VOID
        elif isinstance(e, Var):
            if e.name not in env:
                inf.diags.append(f"unbound variable {e.name} in {where}")
                t = _TVar(e.name)
            else:
                t = env[e.name]
        elif isinstance(e, FunRef):
            if e.name not in p.defs:
                inf.diags.append(f"unknown function {e.name} in {where}")
                t = _TVar(e.name)
            else:
                t = fn_vars[e.name]
        elif isinstance(e, App):
            tf = walk(e.fn, env, where)
            ta = walk(e.arg, env, where)
            res = _TVar("app")
            inf.unify(tf, fun(ta, res), where)
            t = res
        elif isinstance(e, Choice):
            inf.unify(walk(e.left, env, where), VOID, where)
            inf.unify(walk(e.right, env, where), VOID, where)
            occurring.append(_CHOICE_TYPE)
            t = VOID
        elif isinstance(e, New):
            if e.state not in p.behavior.states:
                inf.diags.append(f"unknown resource state {e.state} in {where}")
            inf.unify(walk(e.body, env, where), fun(RESOURCE, VOID), where)
            occurring.append(_NEW_TYPE)
            t = VOID
        else:
            if e.name not in p.behavior.letters:
                inf.diags.append(f"unknown access name {e.name} in {where}")
            inf.unify(walk(e.res, env, where), RESOURCE, where)
            inf.unify(walk(e.rest, env, where), VOID, where)
            occurring.append(_ACCESS_TYPE)
            t = VOID
        occurring.append(t)
        return t

    for f, (params, body) in p.defs.items():
        env = {x: _TVar(x) for x in params}
        if len(env) != len(params):
            inf.diags.append(f"duplicate parameter in {f}")
        ret = walk(body, env, f)
        inf.unify(ret, VOID, f"body of {f}")  # bodies must finish, not return
        ty = VOID
        for x in reversed(params):
            ty = fun(env[x], ty)
        inf.unify(fn_vars[f], ty, f)
    if p.main not in p.defs:
        inf.diags.append(f"main {p.main} is not defined")
    elif p.defs[p.main][0]:
        inf.diags.append(f"main {p.main} must take no parameters")
    inf.diags.extend(validate_behavior(p.behavior))
    fn_types = {f: inf.resolve(v) for f, v in fn_vars.items()}
    order = max((type_order(inf.resolve(t)) for t in occurring), default=0)
    order = max([order] + [type_order(t) for t in fn_types.values()])
    return inf.diags, order, fn_types


def type_check_program(p: Program) -> tuple[list[str], int]:
    """Simple-type diagnostics and the largest order among occurring types."""
    diags, order, _ = _infer(p)
    return diags, order


# ---------------------------------------------------------------------------
# Operational semantics.


@dataclass(frozen=True)
class RunState:
    """Either the error state (expr is None) or a resource map + expression."""

    rho: tuple[tuple[str, str], ...] = ()
    expr: "Expr | None" = None

    @property
    def is_error(self):
        return self.expr is None

    def __str__(self):
        if self.is_error:
            return "error"
        inside = ", ".join(f"{x}:{q}" for x, q in self.rho)
        return f"({{{inside}}}, {self.expr})"


ERROR = RunState((), None)


def _spine(e: Expr):
    args: list[Expr] = []
    while isinstance(e, App):
        args.append(e.arg)
        e = e.fn
    return e, args[::-1]


def _subst(e: Expr, env: dict[str, Expr]) -> Expr:
    if isinstance(e, Var):
        return env.get(e.name, e)
    if isinstance(e, App):
        return App(_subst(e.fn, env), _subst(e.arg, env))
    if isinstance(e, Choice):
        return Choice(_subst(e.left, env), _subst(e.right, env))
    if isinstance(e, New):
        return New(e.state, _subst(e.body, env))
    if isinstance(e, Access):
        return Access(e.name, _subst(e.res, env), _subst(e.rest, env))
    return e


def step(p: Program, st: RunState) -> list[RunState]:
    """One-step successors; empty for error, unit and stuck states."""
    if st.is_error:
        return []
    head, args = _spine(st.expr)
    if isinstance(head, FunRef):
        params, body = p.defs[head.name]
        if len(args) != len(params):
            raise ValueError(f"{head.name} applied to {len(args)} of {len(params)} arguments")
        return [RunState(st.rho, _subst(body, dict(zip(params, args))))]
    if isinstance(head, Choice) and not args:
        return [RunState(st.rho, head.left), RunState(st.rho, head.right)]
    if isinstance(head, New) and not args:
        handle = Var(f"#{len(st.rho)}")  # counter-fresh: rho only ever grows
        rho = tuple(sorted(st.rho + ((handle.name, head.state),)))
        return [RunState(rho, App(head.body, handle))]
    if isinstance(head, Access) and not args:
        if not isinstance(head.res, Var):
            raise ValueError(f"access to a non-handle: {head.res}")
        bound = dict(st.rho)
        q = bound[head.res.name]
        q2 = p.behavior.delta.get((q, head.name))
        if q2 is None:
            return [ERROR]
        bound[head.res.name] = q2
        return [RunState(tuple(sorted(bound.items())), head.rest)]
    return []


@dataclass(frozen=True)
class RunOutcome:
    """Verdict of the bounded exploration, with a path for violations."""

    kind: str  # safe-so-far | error-found | final-state-violation | incomplete
    trace: tuple[RunState, ...] = ()


def run_program(p: Program, budget: int = 50_000) -> RunOutcome:
    """Explore all reductions from the main function breadth-first.

    Deduplicates on whole run states; `budget` counts expanded states.
    A finished run must leave every created resource in a final state.
    """
    start = RunState((), FunRef(p.main))
    parent: dict[RunState, RunState | None] = {start: None}
    queue = deque([start])

    def trace(st):
        out = [st]
        while parent[out[-1]] is not None:
            out.append(parent[out[-1]])
        return tuple(out[::-1])

    spent = 0
    while queue:
        if spent >= budget:
            return RunOutcome("incomplete")
        st = queue.popleft()
        spent += 1
        if st.is_error:
            return RunOutcome("error-found", trace(st))
        if st.expr == UNIT:
            if any(q not in p.behavior.finals for _, q in st.rho):
                return RunOutcome("final-state-violation", trace(st))
            continue
        for nxt in step(p, st):
            if nxt not in parent:
                parent[nxt] = st
                queue.append(nxt)
    return RunOutcome("safe-so-far")


# ---------------------------------------------------------------------------
# Compilation to a recursion scheme plus a disjunctive automaton.


def _occurring(p: Program):
    """Access names, creation states and choice use, in definition order."""
    accs: list[str] = []
    news: list[str] = []
    has_choice = False

    def walk(e):
        nonlocal has_choice
        if isinstance(e, App):
            walk(e.fn), walk(e.arg)
        elif isinstance(e, Choice):
            has_choice = True
            walk(e.left), walk(e.right)
        elif isinstance(e, New):
            if e.state not in news:
                news.append(e.state)
            walk(e.body)
        elif isinstance(e, Access):
            if e.name not in accs:
                accs.append(e.name)
            walk(e.res), walk(e.rest)

    for _, body in p.defs.values():
        walk(body)
    return accs, news, has_choice


def _alphabet(p: Program):
    """Shared terminal alphabet of the scheme and the automaton."""
    accs, news, has_choice = _occurring(p)
    alphabet: dict[str, int] = {"unit": 0}
    if has_choice:
        alphabet["br"] = 2
    for q in news:
        alphabet[f"nu_{q}"] = 2
    if news:
        alphabet["i"] = 1
        alphabet["k"] = 1
    for a in accs:
        alphabet[a] = 1
    return alphabet, accs, news, has_choice


def _kind_of_type(t: ResType) -> core.Kind:
    if t.tag == "o":
        return core.O
    if t.tag == "R":
        return core.arrow(core.O, core.O)
    return core.arrow(_kind_of_type(t.left), _kind_of_type(t.right))


def _fresh(base: str, taken) -> str:
    while base in taken:
        base += "_"
    return base


def program_to_scheme(p: Program) -> core.RecursionScheme:
    """Scheme whose tree spells every resource-wise access sequence.

    A creation node branches into a tracked (`i`-prefixed) and an ignored
    (`k`-prefixed) instantiation of the new resource; choices become `br`.
    """
    diags, _, fn_types = _infer(p)
    if diags:
        raise ValueError("; ".join(diags))
    alphabet, accs, news, has_choice = _alphabet(p)
    choice_nt = _fresh("If", p.defs)
    acc_nt = {a: _fresh(f"Acc_{a}", p.defs) for a in accs}
    new_nt = {q: _fresh(f"New_{q}", p.defs) for q in news}

    def enc(e: Expr) -> core.Term:
        if isinstance(e, Unit):
            return core.Sym("unit")
        if isinstance(e, Var):
            return core.Var(e.name)
        if isinstance(e, FunRef):
            return core.Nt(e.name)
        if isinstance(e, App):
            return core.App(enc(e.fn), enc(e.arg))
        if isinstance(e, Choice):
            return core.app(core.Nt(choice_nt), enc(e.left), enc(e.right))
        if isinstance(e, New):
            return core.app(core.Nt(new_nt[e.state]), enc(e.body))
        return core.app(core.Nt(acc_nt[e.name]), enc(e.res), enc(e.rest))

    kinds = {f: _kind_of_type(fn_types[f]) for f in p.defs}
    rules = {
        f: core.Rule(params, enc(body)) for f, (params, body) in p.defs.items()
    }
    oo = core.arrow(core.O, core.O)
    if has_choice:
        kinds[choice_nt] = core.arrow(core.O, core.O, core.O)
        rules[choice_nt] = core.Rule(
            ("x1", "x2"), core.app(core.Sym("br"), core.Var("x1"), core.Var("x2"))
        )
    for a in accs:
        kinds[acc_nt[a]] = core.arrow(oo, core.O, core.O)
        rules[acc_nt[a]] = core.Rule(
            ("x1", "x2"),
            core.App(core.Var("x1"), core.App(core.Sym(a), core.Var("x2"))),
        )
    for q in news:
        kinds[new_nt[q]] = core.arrow(core.arrow(oo, core.O), core.O)
        rules[new_nt[q]] = core.Rule(
            ("x1",),
            core.app(
                core.Sym(f"nu_{q}"),
                core.App(core.Var("x1"), core.Sym("i")),
                core.App(core.Var("x1"), core.Sym("k")),
            ),
        )
    return core.RecursionScheme(alphabet, kinds, rules, p.main)


def program_to_apt(p: Program) -> Apt:
    """Disjunctive automaton accepting trees with an invalid access path.

    One scanning state picks which creation node to track; behavior states
    then replay accesses of the tracked resource, skipping one symbol after
    each `k`.  Finishing at a non-final behavior state, or an access with
    no behavior move, closes the run; all priorities are odd, so infinite
    runs never accept.
    """
    alphabet, accs, news, _ = _alphabet(p)
    b = p.behavior
    scan = _fresh("scan", b.states)
    skip = {q: _fresh(f"skip_{q}", b.states) for q in b.states}
    states = (scan,) + tuple(b.states) + tuple(skip[q] for q in b.states)
    nu_state = {f"nu_{q}": q for q in news}
    delta: dict = {}
    for f, ar in alphabet.items():
        if f == "br":
            delta[(scan, f)] = big_or([Atom(1, scan), Atom(2, scan)])
        elif f in nu_state:
            delta[(scan, f)] = big_or([Atom(1, nu_state[f]), Atom(2, scan)])
        elif f == "unit":
            delta[(scan, f)] = FALSE
        else:
            delta[(scan, f)] = Atom(1, scan)
    for q in b.states:
        for f, ar in alphabet.items():
            if f == "br":
                delta[(q, f)] = big_or([Atom(1, q), Atom(2, q)])
            elif f == "i":
                delta[(q, f)] = Atom(1, q)
            elif f == "k":
                delta[(q, f)] = Atom(1, skip[q])
            elif f in nu_state:
                delta[(q, f)] = Atom(2, q)
            elif f == "unit":
                delta[(q, f)] = FALSE if q in b.finals else TRUE
            else:
                q2 = b.delta.get((q, f))
                delta[(q, f)] = TRUE if q2 is None else Atom(1, q2)
        for f, ar in alphabet.items():
            delta[(skip[q], f)] = Atom(1, q) if ar else FALSE
    priority = {s: 1 for s in states}
    return Apt(alphabet, states, delta, scan, priority)


# ---------------------------------------------------------------------------
# The decision procedure.


@dataclass(frozen=True)
class Witness:
    """One invalid access sequence: the tracked resource's creation state,
    its accesses in order, and how the run closed (an access with no
    behavior move, or `()` with `end_state` not final)."""

    created: str
    accesses: tuple[str, ...]
    end: str
    end_state: str

    def __str__(self):
        steps = " ".join(self.accesses) or "(no accesses)"
        return f"new[{self.created}]; {steps}; ends {self.end} at {self.end_state}"


def _accepting_path(prefix: core.TreePrefix, apt: Apt):
    """Search the product of a tree prefix and a disjunctive automaton.

    Returns ("yes", edges), ("no", None) when the whole prefix is refuted,
    or ("unknown", None) when only cut-off or bottom nodes remain.
    """
    start = ((), apt.initial)
    parent: dict = {start: None}
    queue = deque([start])
    hit_frontier = False
    while queue:
        path, q = queue.popleft()
        label = prefix.nodes.get(path)
        if label is None or label == core.BOT:
            hit_frontier = True
            continue
        for model in satisfying_sets(apt.delta[(q, label)]):
            if not model:
                edges = [(path, label, q, None)]
                cur = parent[(path, q)]
                while cur is not None:
                    pth, st = cur
                    edges.append((pth, prefix.nodes[pth], st, None))
                    cur = parent[cur]
                edges.reverse()
                for n in range(len(edges) - 1):
                    pth, lab, st, _ = edges[n]
                    edges[n] = (pth, lab, st, edges[n + 1][2])
                return "yes", edges
            for atom in model:
                nxt = (path + (atom.direction,), atom.state)
                if nxt not in parent:
                    parent[nxt] = (path, q)
                    queue.append(nxt)
    return ("unknown", None) if hit_frontier else ("no", None)


def _witness_from_edges(p: Program, edges) -> Witness:
    _, news, _ = _occurring(p)
    nu_state = {f"nu_{q}": q for q in news}
    behavior_states = set(p.behavior.states)
    scan = _fresh("scan", p.behavior.states)
    created = ""
    accesses: list[str] = []
    for path, label, q, q2 in edges[:-1]:
        if label in nu_state and q == scan and q2 in behavior_states:
            created = q2  # the scanning state committed to this resource
        elif q in behavior_states and label in p.behavior.letters:
            accesses.append(label)
    _, end_label, end_q, _ = edges[-1]
    end = "()" if end_label == "unit" else end_label
    return Witness(created, tuple(accesses), end, end_q)


def verify(p: Program, limits: EngineLimits = EngineLimits()):
    """Decide resource safety; returns ("safe", None) or ("unsafe", witness).

    Safety is model checking: the program is safe iff the access-sequence
    tree is rejected.  On "unsafe" the accepting path is recovered from a
    bounded tree prefix and folded back into an access trace; the witness
    is None only if no prefix within the search cap exhibits the path.
    """
    scheme = program_to_scheme(p)
    apt = program_to_apt(p)
    if not model_check(scheme, apt, limits):
        return "safe", None
    for depth in (6, 12, 24, 48):
        prefix = core.expand_value_tree(scheme, depth, fuel=40_000)
        verdict, edges = _accepting_path(prefix, apt)
        if verdict == "yes":
            return "unsafe", _witness_from_edges(p, edges)
        if verdict == "no":
            break
    return "unsafe", None


# ---------------------------------------------------------------------------
# Lower bound: terminal reachability as a resource-safety question.


def reach_to_resource(scheme: core.RecursionScheme, target: str) -> Program:
    """Program that is unsafe exactly when the scheme's tree contains the
    target terminal.

    Every target node becomes "create a resource and immediately access it"
    with an empty behavior automaton, so reaching it is the only way to
    fail; other terminals collapse to nondeterministic choice over their
    children (leaves end the run).  Terminals in argument position go
    through one wrapper definition each.
    """
    if target not in scheme.terminals:
        raise ValueError(f"target {target!r} is not a terminal of the scheme")
    bad = core.kind_check(scheme)
    if bad:
        raise ValueError("; ".join(bad))
    taken = set(scheme.rules) | set(scheme.kinds)
    hit = _fresh("Hit", taken)
    taken.add(hit)
    fail = _fresh("Fail", taken)
    taken.add(fail)
    wrapper: dict[str, str] = {}
    defs: dict[str, tuple[tuple[str, ...], Expr]] = {}

    def cascade(parts: list[Expr]) -> Expr:
        if not parts:
            return UNIT
        out = parts[-1]
        for e in parts[-2::-1]:
            out = Choice(e, out)
        return out

    def enc(t: core.Term) -> Expr:
        head, args = core.spine(t)
        if isinstance(head, core.Sym):
            arity = scheme.terminals[head.name]
            if len(args) == arity:
                if head.name == target:
                    return FunRef(hit)
                return cascade([enc(a) for a in args])
            if head.name not in wrapper:  # partially applied terminal
                wrapper[head.name] = _fresh(f"Node_{head.name}", taken)
                taken.add(wrapper[head.name])
                xs = tuple(f"x{n}" for n in range(1, arity + 1))
                body = FunRef(hit) if head.name == target else cascade(
                    [Var(x) for x in xs]
                )
                defs[wrapper[head.name]] = (xs, body)
            out: Expr = FunRef(wrapper[head.name])
            for a in args:
                out = App(out, enc(a))
            return out
        out = FunRef(head.name) if isinstance(head, core.Nt) else Var(head.name)
        for a in args:
            out = App(out, enc(a))
        return out

    for f, rule in scheme.rules.items():
        defs[f] = (rule.params, enc(rule.body))
    defs[hit] = ((), New("q", FunRef(fail)))
    defs[fail] = (("x",), Access("fail", Var("x"), UNIT))
    behavior = Behavior(("q",), ("fail",), {}, "q", frozenset(("q",)))
    return Program(defs, scheme.start, behavior)

"""Kinded recursion schemes and the trees they unfold into.

A scheme is one rewrite rule per nonterminal over a ranked terminal
alphabet.  Rewriting the start symbol forever produces a possibly infinite
tree; `expand_value_tree` computes its prefix up to a depth, labelling
positions that refuse to produce a terminal within the fuel budget with the
bottom marker.  Truncation is never silent: bottom nodes carry a warning and
`path_words` skips (and reports) paths through them.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field

log = logging.getLogger(__name__)

BOT = "⊥"


class KindError(Exception):
    pass


class Kind:
    __slots__ = ()


@dataclass(frozen=True)
class Ground(Kind):
    """The kind of trees."""

    def __str__(self):
        return "o"


@dataclass(frozen=True)
class Arrow(Kind):
    """Function kind; argument kinds are parenthesized when printed."""

    dom: Kind
    cod: Kind

    def __str__(self):
        d = f"({self.dom})" if isinstance(self.dom, Arrow) else str(self.dom)
        return f"{d} -> {self.cod}"


O = Ground()


def arrow(*kinds: Kind) -> Kind:
    """Right-nested arrow from the parts, last part the result."""
    out = kinds[-1]
    for k in reversed(kinds[:-1]):
        out = Arrow(k, out)
    return out


def kind_order(kind: Kind) -> int:
    if isinstance(kind, Ground):
        return 0
    return max(kind_order(kind.dom) + 1, kind_order(kind.cod))


def arg_kinds(kind: Kind) -> list[Kind]:
    """Argument kinds of the fully uncurried arrow (empty for ground)."""
    out = []
    while isinstance(kind, Arrow):
        out.append(kind.dom)
        kind = kind.cod
    return out


class Term:
    __slots__ = ()


@dataclass(frozen=True)
class Sym(Term):
    """Terminal occurrence."""

    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Nt(Term):
    """Nonterminal occurrence."""

    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Var(Term):
    """Rule parameter occurrence."""

    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class App(Term):
    fn: Term
    arg: Term

    def __str__(self):
        a = f"({self.arg})" if isinstance(self.arg, App) else str(self.arg)
        return f"{self.fn} {a}"


def app(head: Term, *args: Term) -> Term:
    out = head
    for a in args:
        out = App(out, a)
    return out


def spine(t: Term) -> tuple[Term, list[Term]]:
    """Head and argument list of a left-nested application."""
    args: list[Term] = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fn
    args.reverse()
    return t, args


def subst(t: Term, env: dict[str, Term]) -> Term:
    """Simultaneous substitution; replacement terms must be closed."""
    if isinstance(t, Var):
        return env.get(t.name, t)
    if isinstance(t, App):
        return App(subst(t.fn, env), subst(t.arg, env))
    return t


@dataclass
class Rule:
    params: tuple[str, ...]
    body: Term


@dataclass
class RecursionScheme:
    terminals: dict[str, int]
    kinds: dict[str, Kind]
    rules: dict[str, Rule]
    start: str

    def order(self) -> int:
        return max((kind_order(k) for k in self.kinds.values()), default=0)


def terminal_kind(arity: int) -> Kind:
    return arrow(*([O] * arity + [O]))


def kind_of(term: Term, scheme: RecursionScheme, env: dict[str, Kind]) -> Kind:
    if isinstance(term, Sym):
        if term.name not in scheme.terminals:
            raise KindError(f"unknown terminal {term.name}")
        return terminal_kind(scheme.terminals[term.name])
    if isinstance(term, Nt):
        if term.name not in scheme.kinds:
            raise KindError(f"unknown nonterminal {term.name}")
        return scheme.kinds[term.name]
    if isinstance(term, Var):
        if term.name not in env:
            raise KindError(f"unbound variable {term.name}")
        return env[term.name]
    fk = kind_of(term.fn, scheme, env)
    ak = kind_of(term.arg, scheme, env)
    if not isinstance(fk, Arrow):
        raise KindError(f"ground head applied in {term}")
    if fk.dom != ak:
        raise KindError(f"argument kind mismatch in {term}: want {fk.dom}, got {ak}")
    return fk.cod


def kind_check(scheme: RecursionScheme) -> list[str]:
    """All well-formedness diagnostics; empty means the scheme is usable."""
    diags: list[str] = []
    if scheme.start not in scheme.kinds:
        diags.append(f"start symbol {scheme.start} has no declared kind")
    elif scheme.kinds[scheme.start] != O:
        diags.append(f"start symbol {scheme.start} must have ground kind")
    for name in scheme.kinds:
        if name in scheme.terminals:
            diags.append(f"{name} is both terminal and nonterminal")
        if name not in scheme.rules:
            diags.append(f"nonterminal {name} has no rule")
    for name, rule in scheme.rules.items():
        if name not in scheme.kinds:
            diags.append(f"rule for undeclared nonterminal {name}")
            continue
        aks = arg_kinds(scheme.kinds[name])
        if len(rule.params) != len(aks):
            diags.append(
                f"{name}: {len(rule.params)} parameters but kind has {len(aks)} arguments"
            )
            continue
        if len(set(rule.params)) != len(rule.params):
            diags.append(f"{name}: duplicate parameter")
            continue
        env = dict(zip(rule.params, aks))
        try:
            bk = kind_of(rule.body, scheme, env)
        except KindError as e:
            diags.append(f"{name}: {e}")
            continue
        if bk != O:
            diags.append(f"{name}: rule body has kind {bk}, want o")
    return diags


def reduce_step(scheme: RecursionScheme, term: Term) -> list[Term]:
    """All one-step reducts, each rewriting one fully applied nonterminal."""
    out: list[Term] = []
    seen: set[Term] = set()

    def emit(t: Term):
        if t not in seen:
            seen.add(t)
            out.append(t)

    def walk(t: Term, rebuild):
        head, args = spine(t)
        if isinstance(head, Nt):
            rule = scheme.rules[head.name]
            if len(args) == len(rule.params):
                emit(rebuild(subst(rule.body, dict(zip(rule.params, args)))))
        for i, a in enumerate(args):
            walk(
                a,
                lambda r, i=i: rebuild(app(head, *args[:i], r, *args[i + 1 :])),
            )

    walk(term, lambda r: r)
    return out


def head_normalize(scheme: RecursionScheme, term: Term, fuel: int) -> tuple[Term | None, int]:
    """Rewrite at the head until a terminal surfaces.

    Returns (term, steps) on success, (None, fuel) when the budget runs out.
    The input must be ground and closed.
    """
    steps = 0
    while True:
        head, args = spine(term)
        if isinstance(head, Sym):
            return term, steps
        if isinstance(head, Var):
            raise ValueError(f"open term at head: {term}")
        rule = scheme.rules[head.name]
        # ground closed term: the head nonterminal is always fully applied
        if len(args) != len(rule.params):
            raise ValueError(f"under-applied head {head} in ground term")
        if steps >= fuel:
            return None, steps
        term = subst(rule.body, dict(zip(rule.params, args)))
        steps += 1


@dataclass(eq=False)
class TreePrefix:
    """Labelled tree prefix; nodes keyed by direction paths (1-based).

    Missing children of a non-bottom node mean "cut off here", the bottom
    label means "diverged or out of fuel".  Equality compares node maps only.
    """

    alphabet: dict[str, int]
    nodes: dict[tuple[int, ...], str]
    warnings: list[str] = field(default_factory=list)

    def __eq__(self, other):
        return isinstance(other, TreePrefix) and self.nodes == other.nodes

    def label(self, path: tuple[int, ...]) -> str | None:
        return self.nodes.get(path)

    def arity(self, path: tuple[int, ...]) -> int:
        lab = self.nodes[path]
        return 0 if lab == BOT else self.alphabet[lab]

    def truncated_at(self, path: tuple[int, ...]) -> bool:
        return any(path + (i,) not in self.nodes for i in range(1, self.arity(path) + 1))

    @property
    def complete(self) -> bool:
        """No bottom labels and no missing children anywhere."""
        return all(
            lab != BOT and not self.truncated_at(p) for p, lab in self.nodes.items()
        )

    @classmethod
    def from_nested(cls, alphabet: dict[str, int], shape) -> "TreePrefix":
        """Build from nested tuples (label, child, ...); a bare label is a leaf."""
        nodes: dict[tuple[int, ...], str] = {}

        def walk(sh, path):
            if isinstance(sh, str):
                sh = (sh,)
            nodes[path] = sh[0]
            for i, kid in enumerate(sh[1:], start=1):
                walk(kid, path + (i,))

        walk(shape, ())
        return cls(dict(alphabet), nodes)

    def pretty(self) -> str:
        lines: list[str] = []

        def walk(path, indent):
            lab = self.nodes[path]
            mark = "" if lab == BOT or not self.truncated_at(path) else " ..."
            lines.append("  " * indent + lab + mark)
            for i in range(1, self.arity(path) + 1):
                if path + (i,) in self.nodes:
                    walk(path + (i,), indent + 1)
        if () in self.nodes:
            walk((), 0)
        return "\n".join(lines)


def expand_value_tree(scheme: RecursionScheme, depth: int, fuel: int = 10_000) -> TreePrefix:
    """Prefix of the scheme's tree with nodes at depth <= depth.

    Fuel bounds head rewriting per node; exhaustion yields a bottom node and
    a warning on the result.
    """
    nodes: dict[tuple[int, ...], str] = {}
    warnings: list[str] = []
    work: deque[tuple[tuple[int, ...], Term]] = deque([((), Nt(scheme.start))])
    while work:
        path, term = work.popleft()
        nf, _ = head_normalize(scheme, term, fuel)
        if nf is None:
            nodes[path] = BOT
            where = ".".join(map(str, path)) or "root"
            warnings.append(f"fuel exhausted at node {where}")
            continue
        head, args = spine(nf)
        assert isinstance(head, Sym)
        if len(args) != scheme.terminals[head.name]:
            raise ValueError(f"terminal {head.name} applied to {len(args)} arguments")
        nodes[path] = head.name
        if len(path) < depth:
            for i, a in enumerate(args, start=1):
                work.append((path + (i,), a))
    for w in warnings:
        log.warning(w)
    return TreePrefix(dict(scheme.terminals), nodes, warnings)


@dataclass(frozen=True)
class PathWord:
    """Label sequence along a root-to-node path; closed = ends at a leaf symbol."""

    labels: tuple[str, ...]
    closed: bool


def path_words(prefix: TreePrefix, max_len: int) -> set[PathWord]:
    """Words spelled by root-to-node paths of length <= max_len.

    Paths through bottom nodes are dropped (and logged); a word is closed
    when its last symbol has arity 0.
    """
    out: set[PathWord] = set()
    dropped = 0

    def walk(path, labels):
        nonlocal dropped
        lab = prefix.nodes[path]
        if lab == BOT:
            dropped += 1
            return
        labels = labels + (lab,)
        if len(labels) > max_len:
            return
        out.add(PathWord(labels, prefix.alphabet[lab] == 0))
        for i in range(1, prefix.arity(path) + 1):
            if path + (i,) in prefix.nodes:
                walk(path + (i,), labels)

    if () in prefix.nodes:
        walk((), ())
    if dropped:
        log.warning("path_words: dropped %d path(s) through bottom nodes", dropped)
    return out

"""Intersection-type model checking of recursion schemes against
alternating parity tree automata.

A binding (F, type, tag) says nonterminal F inhabits an automaton-refined
type, with a tag recording the largest state priority crossed since the
binding was demanded.  Checking is typability: for single-even-priority
automata a greatest-fixpoint deletion over bindings, in general a parity
game where the verifier picks a derivation of the body and the refuter
picks which premise to doubt.

Argument types at nonterminal heads are inferred rather than enumerated:
judging a callee's body with its parameters held symbolic records the
(type, tag) pairs each parameter is actually used at, and those recorded
sets become the premise types at call sites.  The table of used sets is
seeded all-empty because recursion may support itself, then the whole
computation reruns until the table stops growing.  Guard rails on pool,
combination and total work sizes raise EngineLimit rather than silently
truncating the search; defaults are generous for desk-scale instances.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product
from typing import Hashable

from . import core
from .automata import Apt, classify, satisfying_sets
from .core import App, Arrow, Ground, Kind, Nt, RecursionScheme, Sym, Term, Var, arg_kinds, kind_order, spine
from .games import ParityGame, solve


class EngineLimit(Exception):
    """A type-space enumeration outgrew its guard."""


_SYM = object()  # marks a parameter whose demanded types are being inferred


class AtomicType:
    __slots__ = ()


@dataclass(frozen=True)
class TBase(AtomicType):
    """Refinement of the ground kind by an automaton state."""

    state: Hashable

    def __str__(self):
        return str(self.state)


@dataclass(frozen=True)
class TArrow(AtomicType):
    """Refinement of an arrow kind: one (type, tag) set per argument."""

    args: tuple  # of frozenset[(AtomicType, int)]
    cod: Hashable

    def __str__(self):
        def s(a):
            inner = ",".join(f"({t},{m})" for t, m in sorted(a, key=_enc_pair))
            return "{" + inner + "}"

        return "->".join([*(s(a) for a in self.args), str(self.cod)])


_ENC_CACHE: dict = {}


def _enc(ty) -> tuple:
    got = _ENC_CACHE.get(ty)
    if got is None:
        if isinstance(ty, TBase):
            got = ("b", repr(ty.state))
        else:
            got = (
                "a",
                tuple(tuple(sorted(map(_enc_pair, s))) for s in ty.args),
                repr(ty.cod),
            )
        _ENC_CACHE[ty] = got
    return got


def _enc_pair(pair) -> tuple:
    ty, m = pair
    return (_enc(ty), m)


@dataclass(frozen=True)
class Binding:
    """Nonterminal : type, tagged with the priority context it serves."""

    nt: str
    ty: AtomicType
    tag: int

    def __str__(self):
        return f"{self.nt} : {self.ty} @ {self.tag}"


_BENC_CACHE: dict = {}


def _enc_binding(b: Binding) -> tuple:
    got = _BENC_CACHE.get(b)
    if got is None:
        got = (b.nt, _enc(b.ty), b.tag)
        _BENC_CACHE[b] = got
    return got


def _alt_key(alt) -> tuple:
    prem, acc = alt
    return (
        len(prem) + len(acc),
        tuple(sorted(map(_enc_binding, prem))),
        tuple(sorted((x, _enc_pair(pr)) for x, pr in acc)),
    )


def priority_range(apt: Apt) -> tuple[int, ...]:
    return tuple(sorted(set(apt.priority[q] for q in apt.states)))


def type_conforms(ty: AtomicType, kind: Kind) -> bool:
    if isinstance(ty, TBase):
        return isinstance(kind, Ground)
    ks = arg_kinds(kind)
    if not isinstance(ty, TArrow) or len(ty.args) != len(ks):
        return False
    return all(
        all(type_conforms(t, k) for t, _ in s) for s, k in zip(ty.args, ks)
    )


def restricted_ok(ty: AtomicType, kind: Kind) -> bool:
    """The disjunctive shape: order-1 types carry at most one singleton
    argument set, the rest empty; higher orders recurse into members."""
    if isinstance(ty, TBase):
        return True
    ks = arg_kinds(kind)
    if kind_order(kind) == 1:
        sizes = [len(s) for s in ty.args]
        return sum(sizes) <= 1
    return all(
        restricted_ok(t, k) for s, k in zip(ty.args, ks) for t, _ in s
    )


def atom_types(
    kind: Kind, apt: Apt, restricted: bool = False, limit: int = 200_000
) -> list[AtomicType]:
    """Every refinement of the kind (restricted shapes only when asked).

    Deterministic order; raises EngineLimit when the space outgrows `limit`.
    """
    prios = priority_range(apt)
    states = sorted(apt.states, key=repr)

    def go(kind: Kind) -> list[AtomicType]:
        if isinstance(kind, Ground):
            return [TBase(q) for q in states]
        ks = arg_kinds(kind)
        if restricted and kind_order(kind) == 1:
            out: list[AtomicType] = [
                TArrow(tuple(frozenset() for _ in ks), q) for q in states
            ]
            for i in range(len(ks)):
                for q_arg in states:
                    for m in prios:
                        for q in states:
                            args = [frozenset() for _ in ks]
                            args[i] = frozenset({(TBase(q_arg), m)})
                            out.append(TArrow(tuple(args), q))
            return out
        per_arg = []
        for k in ks:
            inhab = go(k)
            pairs = [(t, m) for t in inhab for m in prios]
            if len(pairs) > 20:
                raise EngineLimit(
                    f"{len(pairs)} candidate pairs at argument kind {k}; "
                    "full enumeration is off the table"
                )
            subsets = [
                frozenset(c)
                for n in range(len(pairs) + 1)
                for c in combinations(pairs, n)
            ]
            per_arg.append(sorted(subsets, key=lambda s: tuple(sorted(map(_enc_pair, s)))))
        total = len(states)
        for s in per_arg:
            total *= len(s)
            if total > limit:
                raise EngineLimit(f"atom type space for {kind} exceeds {limit}")
        return [
            TArrow(args, q) for args in product(*per_arg) for q in states
        ]

    return go(kind)


def restricted_count(kind: Kind, apt: Apt) -> int:
    """Closed form for order-1 kinds: one singleton placement per argument
    position, state and tag, times codomains, plus the all-empty types."""
    if kind_order(kind) != 1:
        raise ValueError("closed form only covers order-1 kinds")
    k = len(arg_kinds(kind))
    nq = len(apt.states)
    np_ = len(priority_range(apt))
    return k * nq * np_ * nq + nq


@dataclass(frozen=True)
class EngineLimits:
    """Guard rails for the derivation search."""

    pool_limit: int = 512
    choice_limit: int = 200_000
    work_limit: int = 3_000_000


@dataclass
class TypabilityGame:
    game: ParityGame
    start: Binding
    bindings: tuple[Binding, ...]


class _Engine:
    """Derivation search with demand-driven premise types.

    A judgment alternative is (premises, accum): the nonterminal bindings it
    relies on, plus the (type, tag) pairs at which it used each symbolically
    treated parameter.  Premise types at applied nonterminal heads are drawn
    from the variants table: per callee, the exactly-used argument sets its
    body derivations accumulate.  The table is seeded with the all-empty
    tuple (recursion may be self-supporting) and grown to a fixpoint by
    rerunning the whole computation until nothing new appears; memoized
    results are discarded between rounds because they may quote a stale
    snapshot.

    Applied uses of a symbolic parameter do not invent argument sets; they
    pick whole types from the parameter's demand set, the feasible types of
    the actual arguments seen at call sites so far.  Demand only prunes the
    enumeration: rows are validated again when the premise binding's own
    body is derived, and consumers re-judge their arguments at row pairs.
    """

    def __init__(self, scheme: RecursionScheme, apt: Apt, restricted: bool, limits: EngineLimits):
        if dict(scheme.terminals) != dict(apt.alphabet):
            raise ValueError("scheme terminals and automaton alphabet differ")
        diags = core.kind_check(scheme)
        if diags:
            raise ValueError("scheme is not well kinded: " + "; ".join(diags))
        self.scheme = scheme
        self.apt = apt
        self.restricted = restricted
        self.limits = limits
        self.prios = priority_range(apt)
        self._judge_memo: dict = {}
        self._var_table: dict = {}
        self._var_busy: set = set()
        self._var_done: set = set()
        self._demand: dict = {}
        self._growth = False
        self._work = 0
        self._cur_nt: str | None = None
        self._models = lru_cache(maxsize=None)(
            lambda q, a: sorted(
                satisfying_sets(self.apt.delta[(q, a)]),
                key=lambda s: tuple(sorted((at.direction, repr(at.state)) for at in s)),
            )
        )

    def stable(self, thunk):
        """Run thunk until the variants table stops growing underneath it."""
        while True:
            self._growth = False
            self._var_done.clear()
            self._judge_memo.clear()
            out = thunk()
            if not self._growth:
                return out

    # -- derivations ---------------------------------------------------

    def derive_body(self, nt: str, ty: AtomicType) -> list[frozenset[Binding]]:
        kind = self.scheme.kinds[nt]
        if not type_conforms(ty, kind):
            raise ValueError(f"type {ty} does not refine kind of {nt}")
        rule = self.scheme.rules[nt]
        if isinstance(ty, TBase):
            tenv: dict = {}
            cod = ty.state
        else:
            tenv = dict(zip(rule.params, ty.args))
            cod = ty.cod
        alts = self._in_rule(nt, rule.body, TBase(cod), self.apt.priority[cod], tenv)
        assert all(not acc for _, acc in alts)
        return [prem for prem, _ in alts]

    def _in_rule(self, nt, term, ty, m, tenv):
        prev = self._cur_nt
        self._cur_nt = nt
        try:
            return self._judge(term, ty, m, tenv)
        finally:
            self._cur_nt = prev

    def variants(self, g: str, suffix: tuple, cod) -> list[tuple]:
        """Exactly-used argument sets for g's leading parameters, the trailing
        ones pinned to the given sets.  Self-referential computations see the
        current snapshot; stable() reruns until snapshots are truths."""
        key = (g, tuple(tuple(sorted(map(_enc_pair, s))) for s in suffix), repr(cod))
        rule = self.scheme.rules[g]
        ks = arg_kinds(self.scheme.kinds[g])
        n_sym = len(ks) - len(suffix)
        if key not in self._var_table:
            # all-empty seed: recursion may justify a premise all by itself
            self._var_table[key] = [tuple(frozenset() for _ in range(n_sym))]
        if key in self._var_busy or key in self._var_done:
            return self._var_table[key]
        self._var_busy.add(key)
        try:
            tenv = {}
            for i, p in enumerate(rule.params):
                tenv[p] = _SYM if i < n_sym else suffix[i - n_sym]
            alts = self._in_rule(g, rule.body, TBase(cod), self.apt.priority[cod], tenv)
            sym = rule.params[:n_sym]
            found = set(self._var_table[key])
            for _, acc in alts:
                per = {p: [] for p in sym}
                for p, pair in acc:
                    per[p].append(pair)
                found.add(tuple(frozenset(per[p]) for p in sym))
            if len(found) > len(self._var_table[key]):
                self._var_table[key] = sorted(
                    found,
                    key=lambda v: tuple(tuple(sorted(map(_enc_pair, s))) for s in v),
                )
                self._growth = True
        finally:
            self._var_busy.discard(key)
        self._var_done.add(key)
        return self._var_table[key]

    def _judge(self, term: Term, ty: AtomicType, m: int, tenv) -> list:
        key = (
            self._cur_nt,
            term,
            _enc(ty),
            m,
            tuple(
                sorted(
                    (x, "*" if s is _SYM else tuple(sorted(map(_enc_pair, s))))
                    for x, s in tenv.items()
                )
            ),
        )
        if key in self._judge_memo:
            return self._judge_memo[key]
        self._spend(20)
        out = self._malts(self._judge_raw(term, ty, m, tenv))
        self._judge_memo[key] = out
        return out

    def _judge_raw(self, term, ty, m, tenv) -> list:
        if self.restricted and not restricted_ok(ty, self._kind_of(term)):
            return []
        head, args = spine(term)
        if isinstance(head, Sym):
            return self._judge_terminal(head.name, args, ty, m, tenv)
        if isinstance(head, Var):
            return self._judge_var(head.name, args, ty, m, tenv)
        assert isinstance(head, Nt)
        return self._judge_nt(head.name, args, ty, m, tenv)

    def _judge_terminal(self, a, args, ty, m, tenv):
        if isinstance(ty, TBase):
            q, fixed = ty.state, {}
        else:
            q = ty.cod
            fixed = {len(args) + 1 + i: s for i, s in enumerate(ty.args)}
        out = []
        for model in self._models(q, a):
            obligations = []
            ok = True
            for at in sorted(model, key=lambda at: (at.direction, repr(at.state))):
                tag = max(m, self.apt.priority[at.state])
                if at.direction <= len(args):
                    obligations.append(
                        self._judge(args[at.direction - 1], TBase(at.state), tag, tenv)
                    )
                elif (TBase(at.state), tag) not in fixed[at.direction]:
                    ok = False
                    break
            if ok:
                out.extend(self._combine(obligations))
                out = self._compact(out)
        return out

    def _judge_var(self, x, args, ty, m, tenv):
        bound = tenv[x]
        if bound is _SYM:
            return self._judge_var_symbolic(x, args, ty, m, tenv)
        out = []
        want = _enc(ty)
        for (tx, mx) in sorted(bound, key=_enc_pair):
            if mx != m:
                continue
            sliced = _slice(tx, len(args))
            if sliced is None or _enc(sliced) != want:
                continue
            obligations = []
            hopeless = False
            for i in range(len(args)):
                for (t, mp) in sorted(tx.args[i], key=_enc_pair):
                    choices = self._judge(args[i], t, max(mp, m), tenv)
                    if not choices:
                        hopeless = True
                        break
                    obligations.append(choices)
                if hopeless:
                    break
            if not hopeless:
                out.extend(self._combine(obligations))
        return out

    def _judge_var_symbolic(self, x, args, ty, m, tenv):
        """A use of a parameter whose type set is being inferred.  Bare uses
        demand exactly the target; applied uses pick a whole type from the
        parameter's demand set, or one assembled from the argument terms:
        a parameter that is only ever received and applied, never passed at
        an applied call site, has an empty demand set, so demands alone
        would miss its derivations."""
        if not args:
            return [(frozenset(), frozenset({(x, (ty, m))}))]
        kind = self._kind_of(core.Var(x))
        out = []
        want = _enc(ty)
        cands = list(self._demand_types(self._cur_nt, x))
        if not cands:
            cands = self._assembled_types(args, kind, ty, m, tenv)
        seen: set = set()
        for tx in cands:
            e = _enc(tx)
            if e in seen:
                continue
            seen.add(e)
            sliced = _slice(tx, len(args))
            if sliced is None or _enc(sliced) != want:
                continue
            if self.restricted and not restricted_ok(tx, kind):
                continue
            obligations = []
            hopeless = False
            for i in range(len(args)):
                for (t, mp) in sorted(tx.args[i], key=_enc_pair):
                    choices = self._judge(args[i], t, max(mp, m), tenv)
                    if not choices:
                        hopeless = True
                        break
                    obligations.append(choices)
                if hopeless:
                    break
            if not hopeless:
                for prem, acc in self._combine(obligations):
                    out.append((prem, acc | {(x, (tx, m))}))
        return out

    def _assembled_types(self, args, kind, ty, m, tenv) -> list:
        """Whole types for a symbolically applied parameter nothing was
        demanded for, built from the feasible types of the argument terms it
        is applied to.  Used sets only ever hold types their argument is
        judgeable at, so this covers the passed-straight-through case the
        demand table is blind to.  Deterministic; capped, smallest sets
        first, once the per-use combination budget runs out."""
        ks = arg_kinds(kind)
        if isinstance(ty, TBase):
            suffix, cod = (), ty.state
        else:
            suffix, cod = ty.args, ty.cod
        singles = self.restricted and kind_order(kind) == 1
        per = []
        for arg, k in zip(args, ks):
            pairs = sorted(
                (
                    (t, mp)
                    for t in self._feasible_types(arg, k, m, tenv)
                    for mp in self.prios
                ),
                key=_enc_pair,
            )
            if singles:
                opts = [frozenset()] + [frozenset({pr}) for pr in pairs]
            else:
                opts = []
                for n in range(len(pairs) + 1):
                    for c in combinations(pairs, n):
                        opts.append(frozenset(c))
                        if len(opts) >= 512:
                            break
                    if len(opts) >= 512:
                        break
            per.append(opts)
        out = []
        for combo in product(*per):
            if len(out) >= 4096:
                break
            out.append(TArrow(tuple(combo) + tuple(suffix), cod))
        return out

    def _judge_nt(self, g, args, ty, m, tenv):
        ks = arg_kinds(self.scheme.kinds[g])
        n = len(args)
        if isinstance(ty, TBase):
            suffix: tuple = ()
            cod = ty.state
        else:
            suffix = ty.args
            cod = ty.cod
        if len(ks) != n + len(suffix):
            return []
        if n == 0:
            # bare reference: propose the premise, the closure validates it
            premise_ty: AtomicType = TArrow(suffix, cod) if ks else TBase(cod)
            if self.restricted and not restricted_ok(premise_ty, self.scheme.kinds[g]):
                return []
            return [(frozenset({Binding(g, premise_ty, m)}), frozenset())]
        gparams = self.scheme.rules[g].params
        for i, arg in enumerate(args):
            self._demand_add(g, gparams[i], self._feasible_types(arg, ks[i], m, tenv))
        out = []
        for used in self.variants(g, suffix, cod):
            premise_ty = TArrow(tuple(used) + tuple(suffix), cod)
            if self.restricted and not restricted_ok(premise_ty, self.scheme.kinds[g]):
                continue
            premise = Binding(g, premise_ty, m)
            obligations = []
            hopeless = False
            for i, s in enumerate(used):
                for (t, mp) in sorted(s, key=_enc_pair):
                    choices = self._judge(args[i], t, max(mp, m), tenv)
                    if not choices:
                        hopeless = True
                        break
                    obligations.append(choices)
                if hopeless:
                    break
            if hopeless:
                continue
            for prem, acc in self._combine(obligations):
                out.append((prem | {premise}, acc))
        return out

    def _feasible_types(self, arg, kind, m, tenv) -> list:
        """Candidate types one argument term may be judged at, filtered by
        actually judging it.  Feeds the callee parameter's demand set."""
        cands: list = []
        if isinstance(kind, Ground):
            cands = [TBase(q) for q in sorted(self.apt.states, key=repr)]
        else:
            head, inner = spine(arg)
            if isinstance(head, Sym):
                n = len(inner)
                for q in sorted(self.apt.states, key=repr):
                    for model in self._models(q, head.name):
                        for mhat in self.prios:
                            sets = []
                            for j in range(n + 1, self.scheme.terminals[head.name] + 1):
                                sets.append(
                                    frozenset(
                                        (TBase(at.state), max(self.apt.priority[at.state], mhat))
                                        for at in model
                                        if at.direction == j
                                    )
                                )
                            cands.append(TArrow(tuple(sets), q))
            elif isinstance(head, Var):
                bound = tenv[head.name]
                if bound is _SYM:
                    # a passed-through parameter offers what its own callers do
                    for tx in self._demand_types(self._cur_nt, head.name):
                        sliced = _slice(tx, len(inner))
                        if sliced is not None and type_conforms(sliced, kind):
                            cands.append(sliced)
                else:
                    for (tx, _) in sorted(bound, key=_enc_pair):
                        sliced = _slice(tx, len(inner))
                        if sliced is not None and type_conforms(sliced, kind):
                            cands.append(sliced)
            else:
                assert isinstance(head, Nt)
                gks = arg_kinds(self.scheme.kinds[head.name])
                hparams = self.scheme.rules[head.name].params
                for j, a in enumerate(inner):
                    self._demand_add(head.name, hparams[j], self._feasible_types(a, gks[j], m, tenv))
                for q in sorted(self.apt.states, key=repr):
                    for used in self.variants(head.name, (), q):
                        full = tuple(used)
                        cands.append(TArrow(full[len(inner):], q))
        seen = set()
        pool = []
        for t in cands:
            e = _enc(t)
            if e in seen:
                continue
            seen.add(e)
            if any(self._judge(arg, t, max(mp, m), tenv) for mp in self.prios):
                pool.append(t)
        if len(pool) > self.limits.pool_limit:
            raise EngineLimit(f"argument pool for {arg} exceeds {self.limits.pool_limit}")
        return sorted(pool, key=_enc)

    def _demand_types(self, nt, param) -> list:
        return self._demand.get((nt, param), [])

    def _demand_add(self, nt, param, types):
        key = (nt, param)
        cur = self._demand.setdefault(key, [])
        known = {_enc(t) for t in cur}
        added = False
        for t in types:
            e = _enc(t)
            if e not in known:
                known.add(e)
                cur.append(t)
                added = True
        if added:
            cur.sort(key=_enc)
            self._growth = True
        if len(cur) > self.limits.pool_limit:
            raise EngineLimit(
                f"demand set for {nt} parameter {param} exceeds {self.limits.pool_limit}"
            )

    def _combine(self, obligation_choices) -> list:
        """Cartesian combination of per-obligation alternatives."""
        out = [(frozenset(), frozenset())]
        for choices in obligation_choices:
            nxt = []
            for bp, ba in out:
                for cp, ca in choices:
                    nxt.append((bp | cp, ba | ca))
            self._spend(len(nxt))
            if len(nxt) > self.limits.choice_limit:
                raise EngineLimit("premise combination exploded")
            out = self._malts(nxt)
        return out

    def _malts(self, alts) -> list:
        """Drop alternatives dominated in both premises and accumulations."""
        uniq = sorted(set(alts), key=_alt_key)
        self._spend(len(uniq))
        out: list = []
        for i, (p, a) in enumerate(uniq):
            if i % 512 == 0:
                self._spend(len(out) * 64)
            if not any(op <= p and oa <= a for op, oa in out):
                out.append((p, a))
        return out

    def _spend(self, units: int):
        self._work += units
        if self._work > self.limits.work_limit:
            raise EngineLimit(
                f"work budget {self.limits.work_limit} exhausted; "
                "raise EngineLimits.work_limit for instances this rich"
            )

    def _kind_of(self, term):
        head, args = spine(term)
        if isinstance(head, Sym):
            k: Kind = core.terminal_kind(self.scheme.terminals[head.name])
        elif isinstance(head, Nt):
            k = self.scheme.kinds[head.name]
        else:
            rule = self.scheme.rules[self._cur_nt]
            param_kinds = dict(zip(rule.params, arg_kinds(self.scheme.kinds[self._cur_nt])))
            k = param_kinds[head.name]
        for _ in args:
            assert isinstance(k, Arrow)
            k = k.cod
        return k


def _slice(ty: AtomicType, n: int) -> AtomicType | None:
    """Type after consuming the first n arguments."""
    if n == 0:
        return ty
    if not isinstance(ty, TArrow) or len(ty.args) < n:
        return None
    if len(ty.args) == n:
        return TBase(ty.cod)
    return TArrow(ty.args[n:], ty.cod)


def derive_body(
    scheme: RecursionScheme,
    apt: Apt,
    nonterminal: str,
    target: AtomicType,
    restricted: bool = False,
    env: set[Binding] | None = None,
    limits: EngineLimits = EngineLimits(),
) -> list[frozenset[Binding]]:
    """Minimal premise sets supporting body(nonterminal) : target."""
    eng = _Engine(scheme, apt, restricted, limits)
    choices = eng.stable(lambda: eng.derive_body(nonterminal, target))
    if env is not None:
        choices = [c for c in choices if c <= env]
    return choices


def _closure(eng: _Engine, start: Binding):
    table: dict[Binding, list[frozenset[Binding]]] = {}
    work = [start]
    while work:
        b = work.pop()
        if b in table:
            continue
        choices = eng.derive_body(b.nt, b.ty)
        # premises inherit the caller's tag context in their own right
        table[b] = choices
        for c in choices:
            for p in c:
                if p not in table:
                    work.append(p)
    return table


def _trivial_alive(scheme, apt, limits):
    flags = classify(apt)
    if not flags.trivial:
        raise ValueError("automaton is not in the single-even-priority class")
    eng = _Engine(scheme, apt, False, limits)
    p0 = priority_range(apt)[0]
    start = Binding(scheme.start, TBase(apt.initial), p0)
    table = eng.stable(lambda: _closure(eng, start))
    alive = set(table)
    changed = True
    while changed:
        changed = False
        for b in list(alive):
            if not any(all(p in alive for p in c) for c in table[b]):
                alive.discard(b)
                changed = True
    return start, alive


def model_check_trivial(
    scheme: RecursionScheme, apt: Apt, limits: EngineLimits = EngineLimits()
) -> bool:
    """Greatest-fixpoint deletion for single-even-priority automata."""
    start, alive = _trivial_alive(scheme, apt, limits)
    return start in alive


def build_typability_game(
    scheme: RecursionScheme,
    apt: Apt,
    restricted: bool = False,
    limits: EngineLimits = EngineLimits(),
) -> TypabilityGame:
    """Verifier picks a derivation choice, refuter doubts one premise.

    Binding nodes carry their tag as priority; choice nodes sit at the least
    priority so they never decide a play.
    """
    eng = _Engine(scheme, apt, restricted, limits)
    start = Binding(scheme.start, TBase(apt.initial), apt.priority[apt.initial])
    table = eng.stable(lambda: _closure(eng, start))
    floor = min(priority_range(apt))
    floor -= floor % 2  # an even value no larger than every tag
    owner: dict = {}
    priority: dict = {}
    succ: dict = {}
    for b, choices in table.items():
        owner[b] = 0
        priority[b] = b.tag
        kids = []
        for i, c in enumerate(choices):
            node = ("pick", b, i)
            owner[node] = 1
            priority[node] = floor
            succ[node] = tuple(sorted(c, key=_enc_binding))
            kids.append(node)
        succ[b] = tuple(kids)
    game = ParityGame(owner, priority, succ, start=start)
    return TypabilityGame(game, start, tuple(table))


def model_check_parity(
    scheme: RecursionScheme,
    apt: Apt,
    restricted: bool = False,
    limits: EngineLimits = EngineLimits(),
) -> bool:
    if restricted and not classify(apt).disjunctive:
        raise ValueError("restriction requires a disjunction-only automaton")
    tg = build_typability_game(scheme, apt, restricted, limits)
    return solve(tg.game).win[tg.start] == 0


def model_check(
    scheme: RecursionScheme, apt: Apt, limits: EngineLimits = EngineLimits()
) -> bool:
    """Dispatch on the automaton class."""
    flags = classify(apt)
    if flags.trivial:
        return model_check_trivial(scheme, apt, limits)
    if flags.disjunctive:
        return model_check_parity(scheme, apt, restricted=True, limits=limits)
    return model_check_parity(scheme, apt, restricted=False, limits=limits)


def surviving_bindings(
    scheme: RecursionScheme, apt: Apt, limits: EngineLimits = EngineLimits()
) -> list[Binding]:
    """Witness for the greatest-fixpoint checker: the bindings that survive."""
    _, alive = _trivial_alive(scheme, apt, limits)
    return sorted(alive, key=_enc_binding)

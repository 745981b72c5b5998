"""Independent reference implementations the real code is tested against.

Everything here is deliberately brute force: small enough to eyeball, slow
enough that it must never be imported by the package itself.
"""

from __future__ import annotations

import itertools

from horsmc.automata import Apt, Atom, eval_posbool
from horsmc.core import TreePrefix
from horsmc.games import ParityGame


def brute_winners(game: ParityGame) -> dict:
    """Winner per node by enumerating positional strategies for both players.

    Only for tiny games: cost is |choices_0| * |choices_1| * nodes.
    """
    nodes = sorted(game.owner, key=repr)

    def strategies(player):
        owned = [v for v in nodes if game.owner[v] == player]
        pools = [game.succ[v] if game.succ[v] else (None,) for v in owned]
        for combo in itertools.product(*pools):
            yield dict(zip(owned, combo))

    def play(v, s0, s1):
        seen = {}
        seq = []
        while True:
            if v in seen:
                cyc = seq[seen[v]:]
                return max(game.priority[u] for u in cyc) % 2
            seen[v] = len(seq)
            seq.append(v)
            mv = (s0 if game.owner[v] == 0 else s1).get(v)
            if mv is None:
                return 1 - game.owner[v]
            v = mv

    s1_all = list(strategies(1))
    win = {}
    for v in nodes:
        won = False
        for s0 in strategies(0):
            if all(play(v, s0, s1) == 0 for s1 in s1_all):
                won = True
                break
        win[v] = 0 if won else 1
    return win


def posbool_models_bruteforce(f) -> frozenset:
    """Minimal models via the full truth table over the formula's atoms."""
    from horsmc.automata import atoms_of

    atoms = sorted(atoms_of(f), key=repr)
    models = set()
    for mask in range(1 << len(atoms)):
        tv = frozenset(a for i, a in enumerate(atoms) if mask >> i & 1)
        if eval_posbool(f, tv):
            models.add(tv)
    return frozenset(m for m in models if not any(o < m for o in models))


def oracle_accept(apt: Apt, tree: TreePrefix) -> bool:
    """Finite-tree acceptance by direct formula evaluation: an atom (i, q')
    is true iff the subtree in direction i is accepted from q'."""

    def go(path, q):
        form = apt.delta[(q, tree.nodes[path])]

        def ev(g):
            if isinstance(g, Atom):
                return go(path + (g.direction,), g.state)
            from horsmc.automata import AndF, FalseF, OrF, TrueF

            if isinstance(g, TrueF):
                return True
            if isinstance(g, FalseF):
                return False
            if isinstance(g, AndF):
                return ev(g.left) and ev(g.right)
            if isinstance(g, OrF):
                return ev(g.left) or ev(g.right)
            raise TypeError(g)

        return ev(form)

    return go((), apt.initial)


def all_small_games(n_nodes: int, max_priority: int = 2):
    """Every game on exactly n_nodes nodes with priorities <= max_priority."""
    names = tuple(f"g{i}" for i in range(n_nodes))
    succ_sets = list(itertools.chain.from_iterable(
        itertools.combinations(names, k) for k in range(n_nodes + 1)
    ))
    per_node = list(itertools.product((0, 1), range(max_priority + 1), succ_sets))
    for assignment in itertools.product(per_node, repeat=n_nodes):
        owner = {v: a[0] for v, a in zip(names, assignment)}
        priority = {v: a[1] for v, a in zip(names, assignment)}
        succ = {v: a[2] for v, a in zip(names, assignment)}
        yield ParityGame(owner, priority, succ, start=names[0])

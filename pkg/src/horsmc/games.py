"""Max-parity games: recursive solver plus a progress-measure cross-check.

Conventions: player 0 wins when the maximal priority seen infinitely often
is even; a player stuck at their own node loses there.  The recursive solver
peels dead ends off explicitly before the usual dominion recursion, since
the textbook recursion misreads an owner's dead end whose priority matches
their parity.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from typing import Hashable

Node = Hashable


@dataclass
class ParityGame:
    owner: dict[Node, int]
    priority: dict[Node, int]
    succ: dict[Node, tuple[Node, ...]]
    start: Node | None = None

    def nodes(self):
        return self.owner.keys()


def validate(game: ParityGame) -> list[str]:
    diags = []
    for n in game.owner:
        if n not in game.priority:
            diags.append(f"node {n!r} has no priority")
        if n not in game.succ:
            diags.append(f"node {n!r} has no successor list")
        if game.owner[n] not in (0, 1):
            diags.append(f"node {n!r} has owner {game.owner[n]!r}")
    for n, targets in game.succ.items():
        if n not in game.owner:
            diags.append(f"edge source {n!r} is not a node")
        for t in targets:
            if t not in game.owner:
                diags.append(f"edge {n!r} -> {t!r} leaves the node set")
    return diags


@dataclass
class Solution:
    win: dict[Node, int]
    strategy: dict[Node, Node] = field(default_factory=dict)

    def region(self, player: int) -> set[Node]:
        return {n for n, w in self.win.items() if w == player}


def _attractor(
    game: ParityGame,
    sub: frozenset,
    target: set,
    player: int,
    pred: dict,
    strategy: dict,
) -> set:
    """Player's attractor to target within sub; records player's pull edges."""
    attr = set(target)
    cnt = {}
    work = list(target)
    while work:
        v = work.pop()
        for u in pred.get(v, ()):
            if u not in sub or u in attr:
                continue
            if game.owner[u] == player:
                attr.add(u)
                if u not in strategy:
                    strategy[u] = v
                work.append(u)
            else:
                if u not in cnt:
                    cnt[u] = sum(1 for t in game.succ[u] if t in sub)
                cnt[u] -= 1
                if cnt[u] == 0:
                    attr.add(u)
                    work.append(u)
    return attr


def _preds(game: ParityGame) -> dict:
    pred: dict[Node, list[Node]] = {}
    for u, targets in game.succ.items():
        for v in targets:
            pred.setdefault(v, []).append(u)
    return pred


def solve(game: ParityGame) -> Solution:
    """Winning regions and a positional strategy for each winner's region."""
    pred = _preds(game)
    win: dict[Node, int] = {}
    strategy: dict[Node, Node] = {}
    limit = max(sys.getrecursionlimit(), 4 * len(game.owner) + 1000)
    old = sys.getrecursionlimit()
    sys.setrecursionlimit(limit)
    try:
        _zielonka(game, frozenset(game.owner), pred, win, strategy)
    finally:
        sys.setrecursionlimit(old)
    return Solution(win, strategy)


def _zielonka(game, sub: frozenset, pred, win, strategy):
    if not sub:
        return
    # dead ends lose for their owner; attract the opponent to them first
    for p in (0, 1):
        dead = {v for v in sub if game.owner[v] == p and not any(t in sub for t in game.succ[v])}
        if dead:
            sigma: dict = {}
            attr = _attractor(game, sub, dead, 1 - p, pred, sigma)
            for v in attr:
                win[v] = 1 - p
            strategy.update(sigma)
            _zielonka(game, sub - frozenset(attr), pred, win, strategy)
            return
    d = max(game.priority[v] for v in sub)
    p = d % 2
    top = {v for v in sub if game.priority[v] == d}
    sigma_a: dict = {}
    attr = _attractor(game, sub, top, p, pred, sigma_a)
    sub_win: dict = {}
    sub_strat: dict = {}
    _zielonka(game, sub - frozenset(attr), pred, sub_win, sub_strat)
    opp_region = {v for v, w in sub_win.items() if w == 1 - p}
    if not opp_region:
        for v in sub:
            win[v] = p
        strategy.update(sub_strat)
        strategy.update(sigma_a)
        for v in top:
            if game.owner[v] == p and v not in strategy:
                # any move staying inside the region keeps the cycle argument
                strategy[v] = next(t for t in game.succ[v] if t in sub)
        return
    sigma_b: dict = {}
    battr = _attractor(game, sub, opp_region, 1 - p, pred, sigma_b)
    for v in battr:
        win[v] = 1 - p
    for v, w in sub_win.items():
        if w == 1 - p and game.owner[v] == 1 - p and v in sub_strat:
            strategy[v] = sub_strat[v]
    strategy.update(sigma_b)
    _zielonka(game, sub - frozenset(battr), pred, win, strategy)


def winner_from(game: ParityGame, node: Node | None = None) -> int:
    node = game.start if node is None else node
    if node is None:
        raise ValueError("no start node")
    return solve(game).win[node]


def solve_progress(game: ParityGame) -> dict[Node, int]:
    """Winning regions by small progress measures (no strategies).

    Internally flips to min-parity (measure bookkeeping is cleaner there);
    the answer is in the max-parity convention shared with solve().
    """
    if not game.owner:
        return {}
    m = max(game.priority.values())
    m += m % 2  # even ceiling so the flip preserves parity
    pr = {v: m - game.priority[v] for v in game.owner}
    odd_prs = sorted({p for p in pr.values() if p % 2 == 1})
    counts = {p: sum(1 for v in game.owner if pr[v] == p) for p in odd_prs}
    ZERO = tuple(0 for _ in odd_prs)
    TOP = None  # ordered above every tuple

    def up(measure, p, strict):
        """Least measure >= (or >) the given one on components for priorities <= p."""
        if measure is TOP:
            return TOP
        base = [x if q <= p else 0 for x, q in zip(measure, odd_prs)]
        if not strict:
            return tuple(base)
        idx = [i for i, q in enumerate(odd_prs) if q <= p]
        for i in reversed(idx):  # carry from the least significant component
            if base[i] < counts[odd_prs[i]]:
                base[i] += 1
                return tuple(base)
            base[i] = 0
        return TOP

    rho: dict[Node, tuple | None] = {v: ZERO for v in game.owner}

    def best_for(v):
        options = [up(rho[w], pr[v], pr[v] % 2 == 1) for w in game.succ[v]]
        if game.owner[v] == 0:
            best = TOP  # stuck even player loses
            for o in options:
                if o is not TOP and (best is TOP or o < best):
                    best = o
            return best
        best = ZERO  # stuck odd player loses: measure stays bottom
        for o in options:
            if o is TOP:
                return TOP
            if o > best:
                best = o
        return best

    pred = _preds(game)
    work = set(game.owner)
    while work:
        v = work.pop()
        if rho[v] is TOP:
            continue
        new = best_for(v)
        if new is not TOP and new <= rho[v]:
            continue
        rho[v] = new
        work.update(u for u in pred.get(v, ()) if u in game.owner)
    return {v: (0 if rho[v] is not TOP else 1) for v in game.owner}

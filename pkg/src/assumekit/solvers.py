"""Sure-winning solvers for deterministic games.

Reachability and safety are solved directly through attractors; Buchi,
co-Buchi and parity go through Zielonka's recursive algorithm.  Strategy
extraction breaks ties by lexicographic successor id, so repeated runs give
identical strategies.  All winning conditions follow min-parity convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .errors import ValidationError
from .game import (
    GameGraph,
    MemorylessStrategy,
    Objective,
    ObjectiveKind,
    Owner,
)
from .graphs import backward_reachable, has_internal_edge, reachable, tarjan_scc


@dataclass(frozen=True)
class SolveResult:
    """Determined partition: win1/win2 cover the state space disjointly and
    each strategy is defined exactly on the owner's states inside its set."""

    win1: frozenset[str]
    win2: frozenset[str]
    strat1: MemorylessStrategy
    strat2: MemorylessStrategy


def _attract(
    nodes: set[str],
    succ_of: Callable[[str], Iterable[str]],
    owner: Mapping[str, Owner],
    player: Owner,
    targets: Iterable[str],
) -> tuple[set[str], dict[str, str]]:
    """Round-based attractor within ``nodes``.

    Newly attracted player states record the lexicographically least
    successor that was already attracted in an earlier round, which makes
    the induced strategy level-decreasing (hence target-reaching).
    """
    area = set(targets) & nodes
    strat: dict[str, str] = {}
    while True:
        added: list[tuple[str, str | None]] = []
        for v in sorted(nodes - area):
            succs = [t for t in succ_of(v) if t in nodes]
            if owner[v] is player:
                pick = next((t for t in succs if t in area), None)
                if pick is not None:
                    added.append((v, pick))
            elif succs and all(t in area for t in succs):
                added.append((v, None))
        if not added:
            return area, strat
        for v, pick in added:
            area.add(v)
            if pick is not None:
                strat[v] = pick


def attractor(g: GameGraph, player: Owner, target: Iterable[str]) -> frozenset[str]:
    if player not in (Owner.P1, Owner.P2):
        raise ValidationError("attractor: player must be P1 or P2")
    target = set(target)
    unknown = target - set(g.states)
    if unknown:
        raise ValidationError(f"attractor target mentions unknown state {sorted(unknown)[0]!r}")
    area, _ = _attract(set(g.states), g.succ, g.owner, player, target)
    return frozenset(area)


def _zielonka(
    nodes: set[str],
    succ_of: Callable[[str], Iterable[str]],
    owner: Mapping[str, Owner],
    prio: Mapping[str, int],
) -> tuple[set[str], set[str], dict[str, str], dict[str, str]]:
    """Returns (win P1, win P2, strategy P1, strategy P2) on ``nodes``."""
    if not nodes:
        return set(), set(), {}, {}
    m = min(prio[v] for v in nodes)
    fav = Owner.P1 if m % 2 == 0 else Owner.P2
    opp = Owner.P2 if fav is Owner.P1 else Owner.P1
    best = {v for v in nodes if prio[v] == m}

    area, area_strat = _attract(nodes, succ_of, owner, fav, best)
    sub_w1, sub_w2, sub_s1, sub_s2 = _zielonka(nodes - area, succ_of, owner, prio)
    sub_win = {Owner.P1: sub_w1, Owner.P2: sub_w2}
    sub_strat = {Owner.P1: sub_s1, Owner.P2: sub_s2}

    if not sub_win[opp]:
        # The favored player wins all of ``nodes``: recurse-winning states use
        # their subgame strategy, attracted states walk to ``best``, and on
        # ``best`` itself any move inside the node set does.
        strat_fav = dict(sub_strat[fav])
        strat_fav.update(area_strat)
        for v in sorted(best):
            if owner[v] is fav:
                strat_fav[v] = next(t for t in succ_of(v) if t in nodes)
        if fav is Owner.P1:
            return set(nodes), set(), strat_fav, {}
        return set(), set(nodes), {}, strat_fav

    trap, trap_strat = _attract(nodes, succ_of, owner, opp, sub_win[opp])
    rest_w1, rest_w2, rest_s1, rest_s2 = _zielonka(nodes - trap, succ_of, owner, prio)
    rest_win = {Owner.P1: rest_w1, Owner.P2: rest_w2}
    rest_strat = {Owner.P1: rest_s1, Owner.P2: rest_s2}

    strat_opp = dict(sub_strat[opp])
    strat_opp.update(trap_strat)
    strat_opp.update(rest_strat[opp])
    win_opp = rest_win[opp] | trap
    win_fav = rest_win[fav]
    if fav is Owner.P1:
        return win_fav, win_opp, rest_strat[fav], strat_opp
    return win_opp, win_fav, strat_opp, rest_strat[fav]


def _solve_reach(g: GameGraph, target: frozenset[str]) -> SolveResult:
    nodes = set(g.states)
    area, astrat = _attract(nodes, g.succ, g.owner, Owner.P1, target)
    strat1 = dict(astrat)
    for v in sorted(target):
        if g.owner[v] is Owner.P1:
            # Already at the target; any continuation keeps the visit.
            strat1[v] = g.succ(v)[0]
    strat2 = {}
    for v in sorted(nodes - area):
        if g.owner[v] is Owner.P2:
            strat2[v] = next(t for t in g.succ(v) if t not in area)
    return SolveResult(
        win1=frozenset(area),
        win2=frozenset(nodes - area),
        strat1=MemorylessStrategy(Owner.P1, strat1),
        strat2=MemorylessStrategy(Owner.P2, strat2),
    )


def _solve_safe(g: GameGraph, target: frozenset[str]) -> SolveResult:
    nodes = set(g.states)
    bad = nodes - target
    area, astrat = _attract(nodes, g.succ, g.owner, Owner.P2, bad)
    win1 = nodes - area
    strat1 = {}
    for v in sorted(win1):
        if g.owner[v] is Owner.P1:
            strat1[v] = next(t for t in g.succ(v) if t in win1)
    strat2 = dict(astrat)
    for v in sorted(bad):
        if g.owner[v] is Owner.P2:
            # Safety is already broken here; any move does.
            strat2[v] = g.succ(v)[0]
    return SolveResult(
        win1=frozenset(win1),
        win2=frozenset(area),
        strat1=MemorylessStrategy(Owner.P1, strat1),
        strat2=MemorylessStrategy(Owner.P2, strat2),
    )


def solve(g: GameGraph, objective: Objective) -> SolveResult:
    """Sure-winning partition with memoryless strategies for both players."""
    if not g.deterministic:
        raise ValidationError("solve: game has probabilistic states")
    objective.validate_against(g)
    if objective.kind is ObjectiveKind.REACH:
        return _solve_reach(g, objective.target)
    if objective.kind is ObjectiveKind.SAFE:
        return _solve_safe(g, objective.target)
    prio = objective.as_parity(g).priority
    w1, w2, s1, s2 = _zielonka(set(g.states), g.succ, g.owner, prio)
    return SolveResult(
        win1=frozenset(w1),
        win2=frozenset(w2),
        strat1=MemorylessStrategy(Owner.P1, {v: s1[v] for v in sorted(s1) if v in w1}),
        strat2=MemorylessStrategy(Owner.P2, {v: s2[v] for v in sorted(s2) if v in w2}),
    )


def cooperative_win(g: GameGraph, objective: Objective) -> frozenset[str]:
    """States from which the two players together can satisfy the objective.

    One-player analysis: ownership is irrelevant, only the edge relation
    matters.  For parity-class objectives a state qualifies iff it reaches a
    cycle whose minimal priority is even; per even priority k this is an SCC
    question on the subgraph of priorities >= k.
    """
    if not g.deterministic:
        raise ValidationError("cooperative_win: game has probabilistic states")
    objective.validate_against(g)
    succ = g.succ_map()
    nodes = list(g.states)
    if objective.kind is ObjectiveKind.REACH:
        return frozenset(backward_reachable(objective.target, nodes, succ))
    if objective.kind is ObjectiveKind.SAFE:
        core = set(objective.target)
        while True:
            keep = {s for s in core if any(t in core for t in succ[s])}
            if keep == core:
                return frozenset(core)
            core = keep
    prio = objective.as_parity(g).priority
    good: set[str] = set()
    for k in range(0, max(prio.values()) + 1, 2):
        high = [s for s in nodes if prio[s] >= k]
        high_set = set(high)
        sub = {s: [t for t in succ[s] if t in high_set] for s in high}
        for comp in tarjan_scc(high, sub):
            if has_internal_edge(comp, sub) and any(prio[s] == k for s in comp):
                good.update(comp)
    return frozenset(backward_reachable(good, nodes, succ))

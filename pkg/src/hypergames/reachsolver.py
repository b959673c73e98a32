"""Attractor-based solver for two-player turn-based reachability/safety games.

The solver works on any game-graph object exposing ``states``, ``owner``
(state -> 1 or 2) and ``transitions`` (state -> {action: successor}); arenas,
product games and hypergame-derived games all share this surface.

The reaching player is P1.  The attractor is computed with a worklist that
counts outstanding P2 successors, so a solve is linear in the number of
transitions.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Hashable, Iterable, Protocol

__all__ = ["GameGraph", "Regions", "Strategy", "solve_reachability"]

State = Hashable


class GameGraph(Protocol):
    states: tuple
    owner: dict
    transitions: dict


@dataclass(frozen=True)
class Regions:
    """Determinacy partition with attractor ranks for the reaching player."""

    win1: frozenset
    win2: frozenset
    level: dict

    def __contains__(self, state: State) -> bool:
        return state in self.win1 or state in self.win2


Strategy = dict  # state -> chosen action


def solve_reachability(
    game: GameGraph, target: Iterable[State]
) -> tuple[Regions, Strategy, Strategy]:
    """Solve the reachability game for P1 with the given target set.

    Returns the determinacy partition together with memoryless strategies:
    P1's strategy decreases the attractor level at every win1 state outside
    the target; P2's strategy stays inside win2 at every win2 state she owns.
    Ties are broken by the lexicographically smallest action identifier.
    """
    state_set = set(game.states)
    target = set(target)
    unknown = target - state_set
    if unknown:
        raise ValueError(f"target contains unknown states: {sorted(map(repr, unknown))[:3]}")

    preds: dict[State, list[tuple[State, str]]] = {s: [] for s in game.states}
    out_count: dict[State, int] = {}
    for s in game.states:
        succs = game.transitions[s]
        out_count[s] = len(succs)
        for a, dst in succs.items():
            preds[dst].append((s, a))

    level: dict[State, int] = {s: 0 for s in target}
    attractor = set(target)
    pending = dict(out_count)  # P2 successors not yet known to be attracted
    queue = deque((s, 0) for s in target)
    while queue:
        v, lv = queue.popleft()
        for s, _a in preds[v]:
            if s in attractor:
                continue
            if game.owner[s] == 1:
                attractor.add(s)
                level[s] = lv + 1
                queue.append((s, lv + 1))
            else:
                pending[s] -= 1
                if pending[s] == 0:
                    attractor.add(s)
                    level[s] = lv + 1
                    queue.append((s, lv + 1))

    win1 = frozenset(attractor)
    win2 = frozenset(state_set - attractor)

    strat1: Strategy = {}
    for s in win1 - target:
        if game.owner[s] != 1:
            continue
        best = min(
            a for a, dst in game.transitions[s].items()
            if dst in win1 and level[dst] < level[s]
        )
        strat1[s] = best
    strat2: Strategy = {}
    for s in win2:
        if game.owner[s] != 2 or not game.transitions[s]:
            continue
        best = min(a for a, dst in game.transitions[s].items() if dst in win2)
        strat2[s] = best

    return Regions(win1=win1, win2=win2, level=level), strat1, strat2

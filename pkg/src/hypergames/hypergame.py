"""Hypergame transition system and stealthy deceptive sure-winning synthesis.

The HTS tracks the arena state together with both automaton components:
``(s, q, p)`` where ``q`` follows the true labeling and ``p`` the labeling
perceived by the adversary.  P1 wins deceptively by steering the play into the
deception target while using only actions the adversary considers rational in
her own perceptual game; once there he abandons stealth and follows his true
winning strategy.

Two deliberate modeling choices (both match the worked example the golden
tests pin down):

* the restriction to subjectively-rationalizable actions is applied uniformly,
  at every state, rather than being lifted inside the deception target; inside
  the target the play is over for synthesis purposes, so this never changes
  the computed winning region, and it keeps the reachable fragment identical
  to the one the solved example enumerates;
* the deception target is the set of HTS states whose arena component is
  sure-winning for P1 in the true product game for *every* automaton state,
  so P1 can drop the deception there no matter how the play unfolded.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .arena import Arena, HypergameInput, StateId
from .product import ProductGame, build_product
from .reachsolver import Regions, Strategy, solve_reachability
from .speclang import Dfa

__all__ = [
    "Hts",
    "SrActionMap",
    "RestrictedGame",
    "sr_actions",
    "build_sr_map",
    "build_hts",
    "build_restricted_game",
    "solve_deceptive_sure",
]

HtsState = tuple  # (s, q, p)


def sr_actions(
    product2: ProductGame, regions2: Regions, state: tuple, player: int
) -> frozenset[str]:
    """Subjectively-rationalizable actions of ``player`` at L2-product state ``state``.

    If the state lies in the player's perceived winning region, only actions
    that stay inside that region are rationalizable; otherwise the player has
    already lost in the adversary's perception and any enabled action is.
    """
    if state not in product2.owner:
        raise ValueError(f"unknown L2-product state {state!r}")
    if player not in (1, 2):
        raise ValueError(f"player must be 1 or 2, got {player!r}")
    succs = product2.transitions[state]
    win = regions2.win1 if player == 1 else regions2.win2
    if state in win:
        return frozenset(a for a, dst in succs.items() if dst in win)
    return frozenset(succs)


@dataclass(frozen=True)
class SrActionMap:
    """Owner's subjectively-rationalizable action set at every L2-product state."""

    product2: ProductGame
    regions2: Regions
    by_state: dict[tuple, frozenset[str]]

    def owner_actions(self, s: StateId, p: str) -> frozenset[str]:
        return self.by_state[(s, p)]

    def for_player(self, player: int, s: StateId, p: str) -> frozenset[str]:
        return sr_actions(self.product2, self.regions2, (s, p), player)


def build_sr_map(product2: ProductGame, regions2: Regions) -> SrActionMap:
    by_state = {
        v: sr_actions(product2, regions2, v, product2.owner[v])
        for v in product2.states
    }
    return SrActionMap(product2=product2, regions2=regions2, by_state=by_state)


@dataclass(frozen=True)
class Hts:
    """Hypergame transition system over the full S x Q x Q space."""

    arena: Arena
    dfa: Dfa
    states: tuple[HtsState, ...]
    owner: dict[HtsState, int]
    transitions: dict[HtsState, dict[str, HtsState]]
    initial: HtsState
    target: frozenset
    reachable: frozenset
    robust_win: frozenset  # arena states winning in the true product for every q


def robust_winning_states(arena: Arena, dfa: Dfa, win11: Regions) -> frozenset:
    """Arena states ``s`` with ``(s, q)`` sure-winning for P1 for every DFA state."""
    return frozenset(
        s for s in arena.states if all((s, q) in win11.win1 for q in dfa.states)
    )


def build_hts(inp: HypergameInput, d: Dfa, win11: Regions) -> Hts:
    """Build the HTS of the level-2 hypergame.

    ``win11`` must be the solution of the true-labeling product of the same
    arena and DFA.  The target collects every triple whose arena component is
    robustly sure-winning in that product.
    """
    arena = inp.arena
    for s in arena.states:
        for q in d.states:
            if (s, q) not in win11.win1 and (s, q) not in win11.win2:
                raise ValueError(
                    "true-product regions do not cover this arena/DFA pair; "
                    f"missing {(s, q)!r}"
                )
    step1: dict[tuple[str, StateId], str] = {}
    step2: dict[tuple[str, StateId], str] = {}
    for s in arena.states:
        l1, l2 = arena.label(s, 1), arena.label(s, 2)
        for q in d.states:
            step1[(q, s)] = d.delta[(q, l1)]
            step2[(q, s)] = d.delta[(q, l2)]

    states: list[HtsState] = []
    owner: dict[HtsState, int] = {}
    transitions: dict[HtsState, dict[str, HtsState]] = {}
    for s in arena.states:
        for q in d.states:
            for p in d.states:
                v = (s, q, p)
                states.append(v)
                owner[v] = arena.owner[s]
                transitions[v] = {
                    a: (dst, step1[(q, dst)], step2[(p, dst)])
                    for a, dst in arena.transitions[s].items()
                }
    s0 = arena.initial
    initial = (s0, step1[(d.initial, s0)], step2[(d.initial, s0)])

    robust = robust_winning_states(arena, d, win11)
    target = frozenset(v for v in states if v[0] in robust)

    seen = {initial}
    queue = deque([initial])
    while queue:
        v = queue.popleft()
        for dst in transitions[v].values():
            if dst not in seen:
                seen.add(dst)
                queue.append(dst)

    return Hts(
        arena=arena,
        dfa=d,
        states=tuple(states),
        owner=owner,
        transitions=transitions,
        initial=initial,
        target=target,
        reachable=frozenset(seen),
        robust_win=robust,
    )


@dataclass(frozen=True)
class RestrictedGame:
    """HTS with both players confined to subjectively-rationalizable actions.

    Absent entries of ``transitions`` encode undefined moves; ``removed``
    keeps them for inspection and graph export.
    """

    hts: Hts
    states: tuple[HtsState, ...]
    owner: dict[HtsState, int]
    transitions: dict[HtsState, dict[str, HtsState]]
    removed: dict[HtsState, dict[str, HtsState]]
    initial: HtsState
    target: frozenset
    reachable_only: bool


def build_restricted_game(
    hts: Hts, sr: SrActionMap, reachable_only: bool = True
) -> RestrictedGame:
    """Restrict the HTS to subjectively-rationalizable actions of both players.

    By default the game is cut down to the fragment reachable from the initial
    state under the restricted dynamics, mirroring how the synthesis is meant
    to be used from the start of a play.
    """

    def allowed(v: HtsState) -> frozenset[str]:
        return sr.owner_actions(v[0], v[2])

    if reachable_only:
        seen = {hts.initial}
        queue = deque([hts.initial])
        while queue:
            v = queue.popleft()
            moves = hts.transitions[v]
            for a in allowed(v):
                dst = moves[a]
                if dst not in seen:
                    seen.add(dst)
                    queue.append(dst)
        states = tuple(v for v in hts.states if v in seen)
    else:
        states = hts.states

    transitions: dict[HtsState, dict[str, HtsState]] = {}
    removed: dict[HtsState, dict[str, HtsState]] = {}
    for v in states:
        keep = allowed(v)
        transitions[v] = {a: dst for a, dst in hts.transitions[v].items() if a in keep}
        dropped = {a: dst for a, dst in hts.transitions[v].items() if a not in keep}
        if dropped:
            removed[v] = dropped
    return RestrictedGame(
        hts=hts,
        states=states,
        owner={v: hts.owner[v] for v in states},
        transitions=transitions,
        removed=removed,
        initial=hts.initial,
        target=frozenset(v for v in states if v in hts.target),
        reachable_only=reachable_only,
    )


def solve_deceptive_sure(rg: RestrictedGame) -> tuple[Regions, Strategy]:
    """Stealthy deceptive sure-winning region and strategy for P1.

    The strategy decreases the attractor level outside the target and is
    undefined inside it, where P1 switches to his true winning strategy.
    """
    regions, strat1, _strat2 = solve_reachability(rg, rg.target)
    return regions, strat1

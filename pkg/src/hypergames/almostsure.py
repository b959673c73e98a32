"""Almost-sure deceptive winning via a one-player stochastic game.

When the adversary cannot reconstruct the full hypergame she is assumed to
randomize, with positive probability, over her subjectively-rationalizable
actions.  P1's choice states keep their (possibly restricted) actions, the
adversary's states become probabilistic with known support only, and the
deception target is absorbing.  The almost-sure winning region is computed by
the standard nested fixed point: reach the target with positive probability
while staying inside the candidate region with probability one.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .hypergame import Hts, HtsState, SrActionMap

__all__ = ["StochasticGame", "AswResult", "build_stochastic_game", "pre_step", "solve_asw"]


@dataclass(frozen=True)
class StochasticGame:
    """One-player stochastic game over HTS states.

    ``choice_actions`` holds P1's available actions at his non-target states;
    ``chance_actions`` holds the adversary's rationalizable actions at her
    non-target states (probabilities are known only to be positive, so just
    the support matters).  Target states are absorbing and carry a synthetic
    self-loop support.
    """

    hts: Hts
    states: tuple[HtsState, ...]
    choice_actions: dict[HtsState, dict[str, HtsState]]
    chance_actions: dict[HtsState, dict[str, HtsState]]
    support: dict[HtsState, frozenset]
    initial: HtsState
    target: frozenset

    def is_choice(self, v: HtsState) -> bool:
        return v in self.choice_actions


def build_stochastic_game(
    hts: Hts, sr: SrActionMap, reachable_only: bool = True
) -> StochasticGame:
    """Build the one-player stochastic game from the HTS.

    The state space defaults to the fragment reachable under the restricted
    dynamics (the same fragment the sure-winning solve uses); pass
    ``reachable_only=False`` for the full S x Q x Q space.
    """
    from .hypergame import build_restricted_game

    rg = build_restricted_game(hts, sr, reachable_only=reachable_only)
    choice_actions: dict[HtsState, dict[str, HtsState]] = {}
    chance_actions: dict[HtsState, dict[str, HtsState]] = {}
    support: dict[HtsState, frozenset] = {}
    for v in rg.states:
        if v in rg.target:
            support[v] = frozenset({v})  # sink
        elif rg.owner[v] == 1:
            choice_actions[v] = dict(rg.transitions[v])
        else:
            chance_actions[v] = dict(rg.transitions[v])
            support[v] = frozenset(rg.transitions[v].values())
    return StochasticGame(
        hts=hts,
        states=rg.states,
        choice_actions=choice_actions,
        chance_actions=chance_actions,
        support=support,
        initial=rg.initial,
        target=rg.target,
    )


def pre_step(Y: Iterable[HtsState], X: Iterable[HtsState], g: StochasticGame) -> set:
    """States that reach ``Y`` with positive probability while staying in ``X``
    with probability one.

    For a P1 state this needs some action into ``Y``; for a probabilistic
    state the whole support must lie in ``X`` and meet ``Y``.
    """
    Y, X = set(Y), set(X)
    out = set()
    for v, actions in g.choice_actions.items():
        if v in X and any(dst in Y for dst in actions.values()):
            out.add(v)
    for v, sup in g.support.items():
        if v in X and sup <= X and sup & Y:
            out.add(v)
    return out


@dataclass(frozen=True)
class AswResult:
    """Fixed point, inner level sets and the extracted almost-sure strategy."""

    x_star: frozenset
    levels: tuple[frozenset, ...]
    strategy: dict


def solve_asw(g: StochasticGame) -> AswResult:
    """Nested fixed-point computation of the almost-sure winning region.

    Outer loop: shrink the candidate region ``X`` to the states that can keep
    reaching the target inside ``X``.  Inner loop: grow level sets from the
    target.  The strategy maps every P1 choice state of ``Y_i \\ Y_{i-1}`` to
    an action whose successor lies one level down (lexicographically smallest
    such action); inside the target it is undefined, P1 having switched to
    his true winning strategy.
    """
    X = set(g.states)
    levels: list[set] = []
    while True:
        levels = [set(v for v in g.target if v in X)]
        while True:
            nxt = pre_step(levels[-1], X, g) | levels[-1]
            if nxt == levels[-1]:
                break
            levels.append(nxt)
        Y = levels[-1]
        if Y == X:
            break
        X = Y

    strategy: dict[HtsState, str] = {}
    for i in range(1, len(levels)):
        for v in levels[i] - levels[i - 1]:
            if v in g.choice_actions:
                strategy[v] = min(
                    a for a, dst in g.choice_actions[v].items() if dst in levels[i - 1]
                )
    return AswResult(
        x_star=frozenset(X),
        levels=tuple(frozenset(level) for level in levels),
        strategy=strategy,
    )

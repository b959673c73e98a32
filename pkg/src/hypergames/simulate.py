"""Validation of synthesized strategies.

* :func:`verify_sure` exhaustively explores every adversary reply in the
  restricted game and confirms (or refutes, with a counterexample play) that
  P1's strategy forces the target within a step bound.
* :func:`simulate_asw` Monte-Carlo-samples the one-player stochastic game with
  the adversary drawing rationalizable actions at random, and audits every
  trace for stealth.  Each trial's random stream is derived solely from
  ``(seed, trial index)``, so runs are reproducible regardless of ordering.
* :func:`audit_stealth` checks a single trace against the rationalizable
  action sets.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .almostsure import StochasticGame
from .hypergame import HtsState, RestrictedGame, SrActionMap
from .reachsolver import Strategy

__all__ = [
    "Trace",
    "SimulationStats",
    "VerificationReport",
    "verify_sure",
    "simulate_asw",
    "audit_stealth",
]


@dataclass(frozen=True)
class Trace:
    """An alternating state/action record of one play."""

    states: tuple[HtsState, ...]
    actions: tuple[str, ...]
    reached_target: bool


@dataclass(frozen=True)
class VerificationReport:
    verified: bool
    counterexample: Trace | None
    states_explored: int
    bound: int


def _p1_move(state: HtsState, moves: Mapping[str, HtsState], strat: Strategy) -> str:
    # Outside the winning region the strategy may be undefined; extend it
    # deterministically so exploration and counterexamples stay reproducible.
    action = strat.get(state)
    if action is None:
        action = min(moves)
    elif action not in moves:
        raise ValueError(f"strategy action {action!r} not available at {state!r}")
    return action


def verify_sure(
    rg: RestrictedGame, strat: Strategy, start: HtsState, bound: int | None = None
) -> VerificationReport:
    """Exhaustively check that ``strat`` forces the target from ``start``.

    All adversary choices in the restricted game are explored; the report is
    verified iff every play reaches the target within ``bound`` steps (default:
    the number of states of the restricted game).  Otherwise the first failing
    play, a cycle or an over-long path, is returned as a counterexample.
    """
    if start not in rg.transitions:
        raise ValueError(f"start state {start!r} is not in the restricted game")
    if bound is None:
        bound = len(rg.states)

    verified_states: set[HtsState] = set()
    explored = 0

    def explore(state: HtsState, path: list[HtsState], acts: list[str]) -> Trace | None:
        nonlocal explored
        explored += 1
        if state in rg.target:
            return None
        if state in verified_states:
            return None
        if state in path:
            return Trace(tuple(path + [state]), tuple(acts), reached_target=False)
        if len(path) >= bound:
            return Trace(tuple(path + [state]), tuple(acts), reached_target=False)
        moves = rg.transitions[state]
        if not moves:
            return Trace(tuple(path + [state]), tuple(acts), reached_target=False)
        if rg.owner[state] == 1:
            chosen = [_p1_move(state, moves, strat)]
        else:
            chosen = sorted(moves)
        path.append(state)
        for action in chosen:
            bad = explore(moves[action], path, acts + [action])
            if bad is not None:
                path.pop()
                return bad
        path.pop()
        verified_states.add(state)
        return None

    counterexample = explore(start, [], [])
    return VerificationReport(
        verified=counterexample is None,
        counterexample=counterexample,
        states_explored=explored,
        bound=bound,
    )


@dataclass(frozen=True)
class SimulationStats:
    trials: int
    wins: int
    losses_by_cap: int
    win_rate: float | None
    stealth_violations: int
    seed: int


def _trial_rng(seed: int, index: int) -> random.Random:
    return random.Random(f"{seed}:{index}")


def simulate_asw(
    g: StochasticGame,
    strat: Strategy,
    start: HtsState,
    trials: int,
    cap: int,
    seed: int,
    sr: SrActionMap,
    weights: Callable[[list[str]], list[float]] | None = None,
) -> SimulationStats:
    """Monte-Carlo validation of an almost-sure strategy from ``start``.

    At adversary states an action is sampled from the rationalizable support,
    uniformly unless ``weights`` supplies another positive distribution (the
    almost-sure property is distribution-free, so uniform is the
    least-assumption default).  A trial wins when the target is reached within
    ``cap`` steps; every trace is stealth-audited.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    if trials == 0:
        return SimulationStats(0, 0, 0, None, 0, seed)
    wins = 0
    violations = 0
    for index in range(trials):
        rng = _trial_rng(seed, index)
        trace = _run_trial(g, strat, start, cap, rng, weights)
        if trace.reached_target:
            wins += 1
        if not audit_stealth(trace, sr, g.target):
            violations += 1
    losses = trials - wins
    return SimulationStats(
        trials=trials,
        wins=wins,
        losses_by_cap=losses,
        win_rate=wins / trials,
        stealth_violations=violations,
        seed=seed,
    )


def _run_trial(
    g: StochasticGame,
    strat: Strategy,
    start: HtsState,
    cap: int,
    rng: random.Random,
    weights: Callable[[list[str]], list[float]] | None,
) -> Trace:
    states = [start]
    actions: list[str] = []
    state = start
    for _ in range(cap):
        if state in g.target:
            return Trace(tuple(states), tuple(actions), reached_target=True)
        if g.is_choice(state):
            moves = g.choice_actions[state]
            action = _p1_move(state, moves, strat)
        else:
            moves = g.chance_actions[state]
            names = sorted(moves)
            if weights is None:
                action = names[rng.randrange(len(names))]
            else:
                action = rng.choices(names, weights=weights(names), k=1)[0]
        state = moves[action]
        actions.append(action)
        states.append(state)
    reached = state in g.target
    return Trace(tuple(states), tuple(actions), reached_target=reached)


def audit_stealth(trace: Trace, sr: SrActionMap, target: Iterable[HtsState]) -> bool:
    """True iff every P1 action taken before first entering ``target`` is
    subjectively rationalizable for P1 at the corresponding perceived state."""
    target = set(target)
    arena = sr.product2.arena
    for state, action in zip(trace.states, trace.actions):
        if state in target:
            break
        s, _q, p = state
        if arena.owner[s] != 1:
            continue
        if action not in sr.for_player(1, s, p):
            return False
    return True

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypergames.reachsolver import solve_reachability

from oracles import attractor_oracle
from randgen import random_arena


def test_running_example_true_target(running_input, running_bundle):
    arena = running_input.arena
    dfa = running_bundle.dfa
    target = {s for s in arena.states if dfa.delta[("q0", arena.label(s, 1))] == "q1"}
    assert target == {5}
    regions, strat1, strat2 = solve_reachability(arena, target)
    assert regions.win1 == {5, 6, 7}
    assert regions.win2 == {0, 1, 2, 3, 4}
    assert regions.level[5] == 0
    assert strat1[6] == "6->5"
    # P2 at 4 must avoid 5
    assert strat2[4] == "4->3"


def test_unknown_target_rejected(running_input):
    with pytest.raises(ValueError, match="unknown"):
        solve_reachability(running_input.arena, {99})


def test_target_already_winning(running_input):
    regions, strat1, _ = solve_reachability(
        running_input.arena, set(running_input.arena.states)
    )
    assert regions.win1 == set(running_input.arena.states)
    assert strat1 == {}


@given(seed=st.integers(0, 100_000))
@settings(max_examples=150, deadline=None)
def test_matches_naive_fixed_point(seed):
    rng = random.Random(seed)
    arena = random_arena(rng, max_states=25)
    target = {s for s in arena.states if rng.random() < 0.2}
    regions, _, _ = solve_reachability(arena, target)
    assert regions.win1 == attractor_oracle(arena, target)
    assert regions.win1 | regions.win2 == set(arena.states)
    assert not regions.win1 & regions.win2


@given(seed=st.integers(0, 100_000))
@settings(max_examples=75, deadline=None)
def test_strategies_are_winning_and_spoiling(seed):
    rng = random.Random(seed)
    arena = random_arena(rng, max_states=20)
    target = {s for s in arena.states if rng.random() < 0.15}
    regions, strat1, strat2 = solve_reachability(arena, target)
    # P1's choice strictly decreases the attractor rank
    for s, a in strat1.items():
        dst = arena.transitions[s][a]
        assert dst in regions.win1
        assert regions.level[dst] < regions.level[s]
    # every P2 move from win1 stays in win1 (that is why the rank argument closes)
    for s in regions.win1 - target:
        if arena.owner[s] == 2:
            assert all(d in regions.win1 for d in arena.transitions[s].values())
    # P2's strategy never enters win1
    for s, a in strat2.items():
        assert arena.transitions[s][a] in regions.win2
    # and P1 has no escape from win2
    for s in regions.win2:
        if arena.owner[s] == 1:
            assert all(d in regions.win2 for d in arena.transitions[s].values())

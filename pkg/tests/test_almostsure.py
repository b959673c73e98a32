import random

import pytest

from hypergames.almostsure import build_stochastic_game, pre_step, solve_asw

from oracles import asw_oracle
from randgen import small_hypergame_input

GOLDEN_LEVELS = [
    {(5, "q1", "q0"), (6, "q1", "q0"), (7, "q1", "q0")},
    {(4, "q1", "q0"), (4, "q0", "q0")},
    {(1, "q0", "q0")},
    {(0, "q0", "q0")},
]


class TestStochasticGame:
    def test_partition_of_fragment(self, running_bundle):
        g = running_bundle.stochastic
        assert set(g.choice_actions) | set(g.chance_actions) | set(g.target) == set(
            g.states
        )
        assert not set(g.choice_actions) & set(g.chance_actions)
        assert not (set(g.choice_actions) | set(g.chance_actions)) & g.target

    def test_target_absorbing_support(self, running_bundle):
        g = running_bundle.stochastic
        for v in g.target:
            assert g.support[v] == {v}

    def test_chance_support_matches_rationalizable_moves(self, running_bundle):
        g = running_bundle.stochastic
        v = (1, "q0", "q0")
        assert set(g.chance_actions[v]) == {"1->0", "1->4"}
        assert g.support[v] == {(0, "q0", "q0"), (4, "q0", "q0")}


class TestPreStep:
    def test_choice_needs_one_edge_into_y(self, running_bundle):
        g = running_bundle.stochastic
        x = set(g.states)
        # (0,q0,q0) is the only non-target choice state; its single edge goes
        # to (1,q0,q0)
        assert (0, "q0", "q0") in pre_step({(1, "q0", "q0")}, x, g)
        assert (0, "q0", "q0") not in pre_step({(4, "q0", "q0")}, x, g)

    def test_chance_states_flow_through_support(self, running_bundle):
        g = running_bundle.stochastic
        x = set(g.states)
        out = pre_step({(5, "q1", "q0")}, x, g)
        # both 4-states have 4->5 as their only rationalizable move
        assert (4, "q1", "q0") in out and (4, "q0", "q0") in out

    def test_chance_needs_support_inside_x(self, running_bundle):
        g = running_bundle.stochastic
        v = (1, "q0", "q0")
        y = {(4, "q0", "q0")}
        assert v in pre_step(y, set(g.states), g)
        # shrinking X below the support kills the move
        assert v not in pre_step(y, y | {v}, g)


class TestSolveAsw:
    def test_golden_levels(self, running_bundle):
        levels = running_bundle.asw.levels
        assert len(levels) == 4
        expected = set()
        for i, delta in enumerate(GOLDEN_LEVELS):
            expected |= delta
            assert levels[i] == expected

    def test_x_star_is_whole_fragment(self, running_bundle):
        assert running_bundle.asw.x_star == set(running_bundle.stochastic.states)

    def test_strategy(self, running_bundle):
        # the only non-target choice state below the top level is the initial one
        assert running_bundle.asw.strategy == {(0, "q0", "q0"): "0->1"}

    def test_strategy_descends_levels(self, running_bundle):
        levels = running_bundle.asw.levels
        g = running_bundle.stochastic
        for v, a in running_bundle.asw.strategy.items():
            rank = min(i for i, lv in enumerate(levels) if v in lv)
            dst = g.choice_actions[v][a]
            assert dst in levels[rank - 1]

    @pytest.mark.parametrize("seed", range(8))
    def test_matches_enumeration_oracle(self, seed, running_bundle):
        from hypergames.cli import synthesize

        rng = random.Random(seed)
        inp = small_hypergame_input(rng)
        bundle = synthesize(inp)
        assert bundle.asw.x_star == asw_oracle(bundle.stochastic)

    def test_oracle_agrees_on_running_example(self, running_bundle):
        assert asw_oracle(running_bundle.stochastic) == running_bundle.asw.x_star

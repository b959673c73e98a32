import random

import pytest

from hypergames.hypergame import (
    build_hts,
    build_restricted_game,
    build_sr_map,
    robust_winning_states,
    solve_deceptive_sure,
    sr_actions,
)
from hypergames.cli import synthesize
from hypergames.arena import HypergameInput
from hypergames.speclang import parse_formula

from randgen import random_arena

GOLDEN_FRAGMENT = {
    (0, "q0", "q0"),
    (1, "q0", "q0"),
    (4, "q0", "q0"),
    (4, "q1", "q0"),
    (5, "q1", "q0"),
    (6, "q1", "q0"),
    (7, "q1", "q0"),
}

GOLDEN_SURE = {
    (4, "q0", "q0"),
    (4, "q1", "q0"),
    (5, "q1", "q0"),
    (6, "q1", "q0"),
    (7, "q1", "q0"),
}


class TestSrActions:
    def test_adversary_examples(self, running_bundle):
        sr = running_bundle.sr
        # at 1 the adversary thinks she is winning toward 2 and just must not
        # hand the play over: both 1->0 and 1->4 keep her inside her region
        assert sr.for_player(2, 1, "q0") == {"1->0", "1->4"}
        # at 4 she is the safety player and believes she is winning, but
        # 4->3 would hand P1 his perceived region, so only 4->5 survives
        assert sr.for_player(2, 4, "q0") == {"4->5"}
        assert sr.for_player(1, 3, "q0") == {"3->2"}

    def test_owner_map_matches_pointwise(self, running_bundle):
        sr = running_bundle.sr
        p2 = running_bundle.product_perceived
        for s, p in p2.states:
            assert sr.owner_actions(s, p) == sr.for_player(p2.owner[(s, p)], s, p)

    def test_unknown_state_rejected(self, running_bundle):
        with pytest.raises(ValueError):
            sr_actions(
                running_bundle.product_perceived,
                running_bundle.regions_perceived,
                (99, "q0"),
                1,
            )
        with pytest.raises(ValueError):
            running_bundle.sr.for_player(3, 1, "q0")

    @pytest.mark.parametrize("seed", range(10))
    def test_never_empty(self, seed):
        # a player in their perceived winning region always has a region-
        # preserving action, so the restriction never strands a state
        rng = random.Random(seed)
        arena = random_arena(rng, max_states=15, ap=("a",))
        inp = HypergameInput(arena, parse_formula("F a", arena.ap), "F a")
        bundle = synthesize(inp)
        for v in bundle.product_perceived.states:
            assert bundle.sr.by_state[v]


class TestHts:
    def test_dimensions_and_initial(self, running_bundle):
        hts = running_bundle.hts
        assert len(hts.states) == 8 * 2 * 2
        assert hts.initial == (0, "q0", "q0")
        assert hts.owner[(4, "q1", "q0")] == 2

    def test_components_update_independently(self, running_bundle):
        hts = running_bundle.hts
        # entering 5: true component advances, perceived stays
        assert hts.transitions[(4, "q0", "q0")]["4->5"] == (5, "q1", "q0")
        # entering 2: perceived component advances, true stays
        assert hts.transitions[(1, "q0", "q0")]["1->2"] == (2, "q0", "q1")

    def test_raw_reachable_count(self, running_bundle):
        assert len(running_bundle.hts.reachable) == 22

    def test_robust_states_and_target(self, running_bundle):
        hts = running_bundle.hts
        assert hts.robust_win == {5, 6, 7}
        assert hts.target == {v for v in hts.states if v[0] in {5, 6, 7}}
        assert robust_winning_states(
            hts.arena, hts.dfa, running_bundle.regions_true
        ) == {5, 6, 7}

    def test_incomplete_regions_rejected(self, running_bundle):
        from hypergames.reachsolver import Regions

        empty = Regions(win1=frozenset(), win2=frozenset(), level={})
        with pytest.raises(ValueError, match="cover"):
            build_hts(running_bundle.inp, running_bundle.dfa, empty)


class TestRestrictedGame:
    def test_reachable_fragment(self, running_bundle):
        assert set(running_bundle.restricted.states) == GOLDEN_FRAGMENT

    def test_removed_edges_tracked(self, running_bundle):
        rg = running_bundle.restricted
        # the adversary's irrational move 1 -> 2 is cut at (1, q0, q0)
        assert rg.removed[(1, "q0", "q0")] == {"1->2": (2, "q0", "q1")}
        assert "1->2" not in rg.transitions[(1, "q0", "q0")]

    def test_full_space_agrees_on_fragment(self, running_bundle):
        hts = running_bundle.hts
        full = build_restricted_game(hts, running_bundle.sr, reachable_only=False)
        assert set(full.states) == set(hts.states)
        regions_full, _ = solve_deceptive_sure(full)
        # the fragment is closed under the restricted dynamics, so the
        # fragment solve is the full solve restricted to it
        assert regions_full.win1 & GOLDEN_FRAGMENT == GOLDEN_SURE

    def test_sure_region_golden(self, running_bundle):
        assert running_bundle.sure_regions.win1 == GOLDEN_SURE
        assert (1, "q0", "q0") not in running_bundle.sure_regions.win1

    def test_sure_strategy_only_outside_target(self, running_bundle):
        for v in running_bundle.sure_strategy:
            assert v not in running_bundle.restricted.target
            assert running_bundle.restricted.owner[v] == 1

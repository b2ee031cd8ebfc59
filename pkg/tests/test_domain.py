"""Domain contract: walks, instance generation, capabilities."""

import numpy as np
import pytest

from xube.domain import (ProblemInstance, Transition, gen_prob_insts_forward, gen_prob_insts_reverse,
                         random_walk, replay_path, require, reverse_walk, sample_ks)
from xube.errors import ConfigError
from xube.grid import GridDomain, GridGoal, GridState
from xube.sliding_tile import SlidingTile, SlidingTileState, solved_tiles


class TestTransition:

    def test_negative_cost_rejected(self):
        with pytest.raises(ValueError):
            Transition("s", -1.0)

    def test_nan_cost_rejected(self):
        with pytest.raises(ValueError):
            Transition("s", float("nan"))


class TestRandomWalk:

    @pytest.mark.parametrize("domain", [SlidingTile(3), GridDomain(5, 4, max_terrain_weight=4, seed=2)],
                             ids=["stp3", "grid"])
    def test_walk_replays(self, domain):
        rng = np.random.default_rng(0)
        start = domain.samp_start_states(1, rng)[0]
        walk = random_walk(domain, start, 25, rng)
        assert len(walk) == 25
        assert len(walk.states) == 26
        for s, a, c, s2 in zip(walk.states, walk.actions, walk.costs, walk.states[1:]):
            tr = domain.next_state(s, a)
            assert tr.next_state == s2
            assert tr.cost == c
        state, cost = replay_path(domain, start, walk.actions)
        assert state == walk.states[-1]
        assert cost == walk.path_cost

    def test_zero_steps(self):
        domain = SlidingTile(3)
        state = SlidingTileState(solved_tiles(3), 3)
        walk = random_walk(domain, state, 0, np.random.default_rng(0))
        assert walk.states == [state]
        assert walk.path_cost == 0.0

    def test_negative_steps(self):
        with pytest.raises(ConfigError):
            random_walk(SlidingTile(3), SlidingTileState(solved_tiles(3), 3), -1, np.random.default_rng(0))

    def test_dead_end_stops_walk(self):
        # single free cell surrounded by obstacles
        obstacles = np.ones((3, 3), dtype=bool)
        obstacles[1, 1] = False
        domain = GridDomain(3, 3, obstacles=obstacles)
        walk = random_walk(domain, GridState(1, 1), 5, np.random.default_rng(0))
        assert walk.states == [GridState(1, 1)]
        assert len(walk) == 0


class TestReverseWalk:

    def test_actions_lead_back(self):
        domain = SlidingTile(3)
        rng = np.random.default_rng(3)
        goal_state, _ = domain.samp_goal_state_and_goal(rng)
        walk = reverse_walk(domain, goal_state, 30, rng)
        for j, a in enumerate(walk.actions):
            tr = domain.next_state(walk.states[j + 1], a)
            assert tr.next_state == walk.states[j]
            assert tr.cost == walk.costs[j]
        state, _ = replay_path(domain, walk.states[-1], walk.actions[::-1])
        assert state == goal_state


class TestInstanceGeneration:

    def test_forward_goal_reachable(self):
        domain = GridDomain(6, 6, obstacle_density=0.2, max_terrain_weight=3, seed=5)
        rng = np.random.default_rng(1)
        insts = gen_prob_insts_forward(domain, [0, 3, 7, 12], rng)
        assert [i.gen_steps for i in insts] == [0, 3, 7, 12]
        assert domain.is_solved(insts[0].start, insts[0].goal)

    def test_reverse_start_solves_by_reversal(self):
        domain = SlidingTile(3)
        insts = gen_prob_insts_reverse(domain, [0, 5, 10], np.random.default_rng(2))
        assert domain.is_solved(insts[0].start, insts[0].goal)
        for inst in insts:
            assert isinstance(inst, ProblemInstance)
            assert inst.goal.target == solved_tiles(3)

    def test_reverse_needs_capability(self):
        with pytest.raises(ConfigError, match="ReverseWalkable"):
            gen_prob_insts_reverse(GridDomain(3, 3), [1], np.random.default_rng(0))

    def test_same_seed_same_instances(self):
        domain = SlidingTile(3)
        a = domain.samp_prob_insts([4, 8, 15], np.random.default_rng(7))
        b = domain.samp_prob_insts([4, 8, 15], np.random.default_rng(7))
        assert a == b


class TestSampleKs:

    def test_range(self):
        ks = sample_ks(5, 1000, np.random.default_rng(0))
        assert min(ks) == 0
        assert max(ks) == 5

    def test_bad_arguments(self):
        with pytest.raises(ConfigError):
            sample_ks(-1, 3, np.random.default_rng(0))


class TestCapabilities:

    def test_sliding_tile(self):
        caps = SlidingTile(3).capabilities()
        for cap in ("ActsEnum", "FixedActsEnum", "GoalSampleableFromState", "ReverseWalkable",
                    "StringToAct", "Renderable", "BatchedTransition"):
            assert cap in caps

    def test_grid(self):
        caps = GridDomain(4, 4).capabilities()
        assert "ReverseWalkable" not in caps
        assert "BatchedTransition" not in caps
        assert "FixedActsEnum" in caps

    def test_require_message_names_capability(self):
        with pytest.raises(ConfigError, match="BatchedTransition"):
            require(GridDomain(4, 4), "BatchedTransition", "test")

    def test_goal_from_state_is_satisfied(self):
        domain = GridDomain(4, 4)
        assert domain.samp_goal_from_state(GridState(2, 3)) == GridGoal(2, 3)

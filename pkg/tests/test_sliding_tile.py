"""Sliding-tile puzzle: moves, solvability, batched transitions, codecs, encoder."""

import numpy as np
import pytest

from xube.errors import CodecError, ConfigError, InvalidActionError
from xube.nnet_input import encode_state_goal
from xube.sliding_tile import (ManhattanHeuristic, SlidingTile, SlidingTileGoal, SlidingTileOneHot,
                               SlidingTileState, is_solvable, solved_tiles)

from tests.oracles import stp3_distances


@pytest.fixture
def stp3():
    return SlidingTile(3)


def _state(*tiles):
    return SlidingTileState(tuple(tiles), 3)


class TestMoves:

    def test_corner_blank_has_two_actions(self, stp3):
        assert sorted(stp3.actions(_state(1, 2, 3, 4, 5, 6, 7, 8, 0))) == ["L", "U"]

    def test_center_blank_has_four_actions(self, stp3):
        assert stp3.actions(_state(1, 2, 3, 4, 0, 5, 6, 7, 8)) == ["U", "D", "L", "R"]

    def test_blank_moves_up(self, stp3):
        tr = stp3.next_state(_state(1, 2, 3, 4, 5, 6, 7, 8, 0), "U")
        assert tr.next_state == _state(1, 2, 3, 4, 5, 0, 7, 8, 6)
        assert tr.cost == 1.0

    def test_off_board_rejected(self, stp3):
        with pytest.raises(InvalidActionError):
            stp3.next_state(_state(1, 2, 3, 4, 5, 6, 7, 8, 0), "D")

    def test_reverse_action_undoes(self, stp3):
        s = _state(1, 2, 3, 4, 0, 5, 6, 7, 8)
        for a in stp3.actions(s):
            back = stp3.next_state(stp3.next_state(s, a).next_state, stp3.reverse_action(a))
            assert back.next_state == s

    def test_bad_side(self):
        with pytest.raises(ConfigError):
            SlidingTile(5)


class TestBatchedTransitions:

    def test_expand_matches_next_state(self, stp3):
        rng = np.random.default_rng(0)
        for s in stp3.samp_start_states(50, rng):
            batched = stp3.expand(s)
            assert [a for a, _ in batched] == stp3.actions(s)
            for a, tr in batched:
                assert tr == stp3.next_state(s, a)

    def test_next_states_batch(self, stp3):
        rng = np.random.default_rng(1)
        states = stp3.samp_start_states(30, rng)
        acts = [stp3.samp_state_act(s, rng) for s in states]
        assert stp3.next_states_batch(states, acts) == [stp3.next_state(s, a) for s, a in zip(states, acts)]

    def test_np_round_trip(self, stp3):
        states = stp3.samp_start_states(5, np.random.default_rng(2))
        assert stp3.np_to_states(stp3.states_to_np(states)) == states


class TestSolvability:

    def test_generated_states_solvable(self, stp3):
        dist = stp3_distances()
        for s in stp3.samp_start_states(200, np.random.default_rng(3)):
            assert is_solvable(s.tiles, 3)
            assert s.tiles in dist

    def test_swapped_pair_unsolvable(self):
        assert not is_solvable((2, 1, 3, 4, 5, 6, 7, 8, 0), 3)
        assert not is_solvable((1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 15, 14, 0), 4)

    def test_oracle_covers_half_of_permutations(self):
        assert len(stp3_distances()) == 181440

    def test_reverse_generation_within_k(self, stp3):
        dist = stp3_distances()
        ks = list(range(21))
        for inst, k in zip(stp3.samp_prob_insts(ks, np.random.default_rng(4)), ks):
            assert dist[inst.start.tiles] <= k
            assert dist[inst.start.tiles] % 2 == k % 2


class TestCodecs:

    def test_parse_action(self, stp3):
        assert stp3.parse_action(" up ") == "U"
        assert stp3.parse_action("r") == "R"
        with pytest.raises(CodecError):
            stp3.parse_action("sideways")

    def test_state_text(self, stp3):
        s = _state(8, 7, 6, 5, 4, 3, 2, 1, 0)
        assert stp3.state_from_text(stp3.state_to_text(s)) == s
        with pytest.raises(CodecError):
            stp3.state_from_text("1 1 2 3 4 5 6 7 8")

    def test_render(self, stp3):
        assert stp3.render_state(_state(1, 2, 3, 4, 5, 6, 7, 8, 0)) == "1 2 3\n4 5 6\n7 8 ."


class TestEncoderAndManhattan:

    def test_one_hot_shape(self, stp3):
        enc = SlidingTileOneHot(3)
        assert enc.input_dim == 162
        s = _state(1, 2, 3, 4, 5, 6, 7, 8, 0)
        x = enc.encode([s], [SlidingTileGoal(s.tiles)])
        assert x.shape == (1, 162)
        assert x.dtype == np.float32
        np.testing.assert_array_equal(x.sum(), 18)

    def test_encode_state_goal(self, stp3):
        rng = np.random.default_rng(4)
        seen = {}
        for inst in stp3.samp_prob_insts([12] * 200, rng):
            x = encode_state_goal(stp3, inst.start, inst.goal)
            assert x.shape == (162,)
            assert x.tobytes() == encode_state_goal(stp3, inst.start, inst.goal).tobytes()
            assert seen.setdefault(x.tobytes(), (inst.start, inst.goal)) == (inst.start, inst.goal)
        s = _state(1, 2, 3, 4, 5, 6, 7, 8, 0)
        x = encode_state_goal(stp3, s, SlidingTileGoal(s.tiles))
        np.testing.assert_array_equal(x[:81], x[81:])

    def test_manhattan_admissible(self, stp3):
        h = ManhattanHeuristic(3)
        dist = stp3_distances()
        goal = SlidingTileGoal(solved_tiles(3))
        states = stp3.samp_start_states(300, np.random.default_rng(5))
        hs = h(states, [goal] * len(states))
        assert all(v <= dist[s.tiles] for v, s in zip(hs, states))
        assert h([SlidingTileState(solved_tiles(3), 3)], [goal])[0] == 0

    def test_manhattan_consistent(self, stp3):
        h = ManhattanHeuristic(3)
        goal = SlidingTileGoal(solved_tiles(3))
        for s in stp3.samp_start_states(100, np.random.default_rng(6)):
            for _, tr in stp3.expand(s):
                assert h([s], [goal])[0] <= tr.cost + h([tr.next_state], [goal])[0]

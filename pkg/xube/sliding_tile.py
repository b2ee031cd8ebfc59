#--------------------------------------------------------------------------------------------------#
# sliding_tile.py                                                                                  #
#--------------------------------------------------------------------------------------------------#
# Description                                                                                      #
#--------------------------------------------------------------------------------------------------#
# n x n sliding-tile puzzle (n = 3 or 4). Unit costs, reversible moves of the blank                #
#--------------------------------------------------------------------------------------------------#
# History                                                                                          #
#--------------------------------------------------------------------------------------------------#
# coding 2026.10.19: 1st coding                                                                    #
# update 2026.10.21: numpy transitions, Manhattan heuristic                                        #
#--------------------------------------------------------------------------------------------------#

#--------------------------------------------------------------------------------------------------#
# Libraries                                                                                        #
#--------------------------------------------------------------------------------------------------#
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from xube.domain import (BatchedTransition, GoalSampleableFromState, Renderable, ReversibleActs,
                         StringToAct, Transition)
from xube.errors import CodecError, ConfigError, InvalidActionError
from xube.nnet_input import NNetInput

#--------------------------------------------------------------------------------------------------#
# Types                                                                                            #
#--------------------------------------------------------------------------------------------------#
MOVES = ("U", "D", "L", "R")          # direction the blank moves
MOVE_NAMES = {"UP": "U", "DOWN": "D", "LEFT": "L", "RIGHT": "R"}
_DR = np.array([-1, 1, 0, 0])
_DC = np.array([0, 0, -1, 1])
_REVERSE = {"U": "D", "D": "U", "L": "R", "R": "L"}


@dataclass(frozen=True)
class SlidingTileState:
    tiles: tuple[int, ...]            # row-major, 0 is the blank
    n: int


@dataclass(frozen=True)
class SlidingTileGoal:
    target: tuple[int, ...]


def solved_tiles(n: int) -> tuple[int, ...]:
    return tuple(range(1, n * n)) + (0,)


def is_solvable(tiles: Sequence[int], n: int) -> bool:
    """
    Standard solvability predicate relative to the canonical solved permutation

    Parameters
    ----------
    tiles: sequence of `int`
        row-major permutation of 0..n*n-1 (0 is the blank)
    n: `int`
        side length

    Returns
    -------
    solvable: `bool`
        True if the canonical solved permutation is reachable
    """
    values = [t for t in tiles if t != 0]
    inversions = sum(1 for i in range(len(values)) for j in range(i + 1, len(values))
                     if values[i] > values[j])
    if n % 2 == 1:
        return inversions % 2 == 0
    blank_row = list(tiles).index(0) // n
    return (inversions + blank_row) % 2 == (n - 1) % 2


#--------------------------------------------------------------------------------------------------#
# Domain                                                                                           #
#--------------------------------------------------------------------------------------------------#
class SlidingTile(BatchedTransition, GoalSampleableFromState, ReversibleActs, StringToAct, Renderable):
    """
    Sliding-tile puzzle

    Actions name the direction the blank moves ("U" swaps the blank with the tile above it).
    Moves off the board are not in actions(s). Problem instances are generated by reverse walks
    from the canonical solved permutation.
    """

    def __init__(self, n: int = 3):
        if n not in (3, 4):
            raise ConfigError(f"sliding-tile side length must be 3 or 4, got {n}")
        self.n = n
        self.name = f"stp{n}"

    # core
    def all_actions(self):
        return list(MOVES)

    def actions(self, state):
        r, c = divmod(state.tiles.index(0), self.n)
        return [m for m, dr, dc in zip(MOVES, _DR, _DC) if 0 <= r + dr < self.n and 0 <= c + dc < self.n]

    def next_state(self, state, action):
        if action not in _REVERSE:
            raise InvalidActionError(f"unknown sliding-tile action {action!r}")
        idx = MOVES.index(action)
        blank = state.tiles.index(0)
        r, c = divmod(blank, self.n)
        r2, c2 = r + int(_DR[idx]), c + int(_DC[idx])
        if not (0 <= r2 < self.n and 0 <= c2 < self.n):
            raise InvalidActionError(f"action {action} moves the blank off the board")
        tiles = list(state.tiles)
        tgt = r2 * self.n + c2
        tiles[blank], tiles[tgt] = tiles[tgt], 0
        return Transition(SlidingTileState(tuple(tiles), self.n), 1.0)

    def is_solved(self, state, goal):
        return state.tiles == goal.target

    def samp_prob_insts(self, ks, rng):
        return ReversibleActs.samp_prob_insts(self, ks, rng)

    # goal sampling
    def samp_start_states(self, num, rng):
        states = []
        for _ in range(num):
            tiles = [int(t) for t in rng.permutation(self.n * self.n)]
            if not is_solvable(tiles, self.n):
                i, j = [k for k, t in enumerate(tiles) if t != 0][:2]
                tiles[i], tiles[j] = tiles[j], tiles[i]
            states.append(SlidingTileState(tuple(tiles), self.n))
        return states

    def samp_goal_from_state(self, state, rng=None):
        return SlidingTileGoal(state.tiles)

    def samp_goal_state_and_goal(self, rng):
        state = SlidingTileState(solved_tiles(self.n), self.n)
        return state, SlidingTileGoal(state.tiles)

    def reverse_action(self, action):
        return _REVERSE[action]

    # text
    def parse_action(self, text):
        key = text.strip().upper()
        key = MOVE_NAMES.get(key, key)
        if key not in _REVERSE:
            raise CodecError(f"unknown action {text!r}; expected one of {'|'.join(MOVES)}")
        return key

    def _render(self, tiles):
        width = len(str(self.n * self.n - 1))
        lines = []
        for r in range(self.n):
            row = tiles[r * self.n:(r + 1) * self.n]
            lines.append(" ".join("." * width if t == 0 else str(t).rjust(width) for t in row))
        return "\n".join(lines)

    def render_state(self, state):
        return self._render(state.tiles)

    def render_goal(self, goal):
        return self._render(goal.target)

    def _parse_tiles(self, text):
        try:
            tiles = tuple(int(t) for t in text.split())
        except ValueError as e:
            raise CodecError(f"sliding-tile text must be integers: {text!r}") from e
        if sorted(tiles) != list(range(self.n * self.n)):
            raise CodecError(f"not a permutation of 0..{self.n * self.n - 1}: {text!r}")
        return tiles

    def state_to_text(self, state):
        return " ".join(str(t) for t in state.tiles)

    def state_from_text(self, text):
        return SlidingTileState(self._parse_tiles(text), self.n)

    def goal_to_text(self, goal):
        return " ".join(str(t) for t in goal.target)

    def goal_from_text(self, text):
        return SlidingTileGoal(self._parse_tiles(text))

    # numpy transitions
    def states_to_np(self, states):
        return np.array([s.tiles for s in states], dtype=np.int64).reshape(len(states), self.n * self.n)

    def np_to_states(self, arr):
        return [SlidingTileState(tuple(row), self.n) for row in arr.tolist()]

    def valid_acts_np(self, arr):
        r, c = np.divmod(np.argmax(arr == 0, axis=1), self.n)
        return np.stack([r > 0, r < self.n - 1, c > 0, c < self.n - 1], axis=1)

    def next_state_np(self, arr, act_idxs):
        act_idxs = np.asarray(act_idxs, dtype=np.int64)
        blank = np.argmax(arr == 0, axis=1)
        r, c = np.divmod(blank, self.n)
        r2, c2 = r + _DR[act_idxs], c + _DC[act_idxs]
        if np.any((r2 < 0) | (r2 >= self.n) | (c2 < 0) | (c2 >= self.n)):
            raise InvalidActionError("batched action moves the blank off the board")
        tgt = r2 * self.n + c2
        rows = np.arange(arr.shape[0])
        out = arr.copy()
        out[rows, blank] = arr[rows, tgt]
        out[rows, tgt] = 0
        return out, np.ones(arr.shape[0], dtype=np.float64)

    def default_encoder(self):
        return SlidingTileOneHot(self.n)


#--------------------------------------------------------------------------------------------------#
# Encoder & heuristic                                                                              #
#--------------------------------------------------------------------------------------------------#
class SlidingTileOneHot(NNetInput):
    """One-hot tile identity per cell for the state, then for the goal. Length 2*n^4."""

    def __init__(self, n: int):
        self.n = n
        self._eye = np.eye(n * n, dtype=np.float32)

    @property
    def input_dim(self):
        return 2 * self.n ** 4

    def encode(self, states, goals):
        num = len(states)
        s = np.array([st.tiles for st in states], dtype=np.int64).reshape(num, -1)
        g = np.array([gl.target for gl in goals], dtype=np.int64).reshape(num, -1)
        return np.concatenate([self._eye[s].reshape(num, -1), self._eye[g].reshape(num, -1)], axis=1)


class ManhattanHeuristic:
    """Sum of Manhattan distances of the non-blank tiles to their target cells. Consistent."""

    def __init__(self, n: int):
        self.n = n

    def __call__(self, states, goals):
        if len(states) == 0:
            return np.zeros(0)
        s = np.array([st.tiles for st in states], dtype=np.int64)
        g = np.array([gl.target for gl in goals], dtype=np.int64)
        pos_s = np.argsort(s, axis=1)
        pos_g = np.argsort(g, axis=1)
        dist = np.abs(pos_s // self.n - pos_g // self.n) + np.abs(pos_s % self.n - pos_g % self.n)
        return dist[:, 1:].sum(axis=1).astype(np.float64)

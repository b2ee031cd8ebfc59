#--------------------------------------------------------------------------------------------------#
# grid.py                                                                                          #
#--------------------------------------------------------------------------------------------------#
# Description                                                                                      #
#--------------------------------------------------------------------------------------------------#
# Weighted 4-connected grid navigation. Moving into a cell costs that cell's terrain weight        #
#--------------------------------------------------------------------------------------------------#
# History                                                                                          #
#--------------------------------------------------------------------------------------------------#
# coding 2026.10.19: 1st coding                                                                    #
#--------------------------------------------------------------------------------------------------#

#--------------------------------------------------------------------------------------------------#
# Libraries                                                                                        #
#--------------------------------------------------------------------------------------------------#
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from xube.domain import FixedActsEnum, GoalSampleableFromState, Renderable, StringToAct, Transition
from xube.errors import CodecError, ConfigError, InvalidActionError
from xube.nnet_input import NNetInput

#--------------------------------------------------------------------------------------------------#
# Types                                                                                            #
#--------------------------------------------------------------------------------------------------#
MOVES = ("U", "D", "L", "R")
MOVE_NAMES = {"UP": "U", "DOWN": "D", "LEFT": "L", "RIGHT": "R"}
DELTAS = {"U": (-1, 0), "D": (1, 0), "L": (0, -1), "R": (0, 1)}


@dataclass(frozen=True)
class GridState:
    row: int
    col: int


@dataclass(frozen=True)
class GridGoal:
    row: int
    col: int


#--------------------------------------------------------------------------------------------------#
# Domain                                                                                           #
#--------------------------------------------------------------------------------------------------#
class GridDomain(FixedActsEnum, GoalSampleableFromState, StringToAct, Renderable):
    """
    Weighted grid

    Parameters
    ----------
    width, height: `int`
        grid size, both >= 2
    obstacle_density: `float`
        fraction of blocked cells in [0, 0.4]. Default is 0.0
    max_terrain_weight: `int`
        terrain weights are drawn uniformly from 1..max_terrain_weight. Default is 1
    seed: `int`
        seed of the map generator. Default is 0
    terrain, obstacles: `np.ndarray` or None
        explicit (height, width) maps; replace the generated ones when given
    """
    name = "grid"

    def __init__(
            self,
            width: int = 8,
            height: int = 8,
            obstacle_density: float = 0.0,
            max_terrain_weight: int = 1,
            seed: int = 0,
            terrain: np.ndarray | None = None,
            obstacles: np.ndarray | None = None
            ):
        if width < 2 or height < 2:
            raise ConfigError(f"grid must be at least 2x2, got {width}x{height}")
        if not 0.0 <= obstacle_density <= 0.4:
            raise ConfigError(f"obstacle_density must be in [0, 0.4], got {obstacle_density}")
        if max_terrain_weight < 1:
            raise ConfigError(f"max_terrain_weight must be >= 1, got {max_terrain_weight}")

        map_rng = np.random.default_rng(seed)
        if obstacles is None:
            obstacles = map_rng.random((height, width)) < obstacle_density
        if terrain is None:
            terrain = map_rng.integers(1, max_terrain_weight + 1, size=(height, width))
        terrain = np.array(terrain, dtype=np.int64)
        obstacles = np.array(obstacles, dtype=bool)
        if terrain.shape != (height, width) or obstacles.shape != (height, width):
            raise ConfigError(f"terrain/obstacle maps must have shape ({height}, {width})")
        if np.any(terrain < 1):
            raise ConfigError("terrain weights must be >= 1")

        self.width, self.height = width, height
        self.terrain = terrain
        self.obstacles = obstacles
        self.terrain.flags.writeable = False
        self.obstacles.flags.writeable = False
        self.max_weight = int(terrain.max())
        self.free_cells = [GridState(int(r), int(c)) for r, c in np.argwhere(~obstacles)]
        if len(self.free_cells) == 0:
            raise ConfigError("degenerate grid: no free cells")

    def _free(self, r, c):
        return 0 <= r < self.height and 0 <= c < self.width and not self.obstacles[r, c]

    # core
    def all_actions(self):
        return list(MOVES)

    def actions(self, state):
        return [m for m in MOVES if self._free(state.row + DELTAS[m][0], state.col + DELTAS[m][1])]

    def next_state(self, state, action):
        if action not in DELTAS:
            raise InvalidActionError(f"unknown grid action {action!r}")
        r, c = state.row + DELTAS[action][0], state.col + DELTAS[action][1]
        if not self._free(r, c):
            raise InvalidActionError(f"action {action} from ({state.row},{state.col}) is blocked")
        return Transition(GridState(r, c), float(self.terrain[r, c]))

    def is_solved(self, state, goal):
        return state.row == goal.row and state.col == goal.col

    # goal sampling
    def samp_start_states(self, num, rng):
        idxs = rng.integers(len(self.free_cells), size=num)
        return [self.free_cells[int(i)] for i in idxs]

    def samp_goal_from_state(self, state, rng=None):
        return GridGoal(state.row, state.col)

    # text
    def parse_action(self, text):
        key = text.strip().upper()
        key = MOVE_NAMES.get(key, key)
        if key not in DELTAS:
            raise CodecError(f"unknown action {text!r}; expected one of {'|'.join(MOVES)}")
        return key

    def _render(self, marks):
        lines = []
        for r in range(self.height):
            row = []
            for c in range(self.width):
                if (r, c) in marks:
                    row.append(marks[(r, c)])
                elif self.obstacles[r, c]:
                    row.append("#")
                else:
                    w = int(self.terrain[r, c])
                    row.append(str(w) if w < 10 else "+")
            lines.append("".join(row))
        return "\n".join(lines)

    def render_state(self, state):
        return self._render({(state.row, state.col): "@"})

    def render_goal(self, goal):
        return self._render({(goal.row, goal.col): "G"})

    def _parse_cell(self, text):
        try:
            r, c = (int(v) for v in text.split(","))
        except ValueError as e:
            raise CodecError(f"grid cell text must be 'row,col', got {text!r}") from e
        if not self._free(r, c):
            raise CodecError(f"cell {text!r} is outside the grid or blocked")
        return r, c

    def state_to_text(self, state):
        return f"{state.row},{state.col}"

    def state_from_text(self, text):
        return GridState(*self._parse_cell(text))

    def goal_to_text(self, goal):
        return f"{goal.row},{goal.col}"

    def goal_from_text(self, text):
        return GridGoal(*self._parse_cell(text))

    def default_encoder(self):
        return GridFlatInput(self)


#--------------------------------------------------------------------------------------------------#
# Encoder                                                                                          #
#--------------------------------------------------------------------------------------------------#
class GridFlatInput(NNetInput):
    """Normalized (row, col) of position and target, then the terrain and obstacle maps."""

    def __init__(self, domain: GridDomain):
        self.h, self.w = domain.height, domain.width
        maps = np.concatenate([(domain.terrain / domain.max_weight).ravel(),
                               domain.obstacles.astype(np.float64).ravel()])
        self._maps = maps.astype(np.float32)

    @property
    def input_dim(self):
        return 4 + 2 * self.h * self.w

    def encode(self, states, goals):
        num = len(states)
        coords = np.array([[s.row / (self.h - 1), s.col / (self.w - 1), g.row / (self.h - 1),
                            g.col / (self.w - 1)] for s, g in zip(states, goals)],
                          dtype=np.float32).reshape(num, 4)
        return np.concatenate([coords, np.broadcast_to(self._maps, (num, self._maps.size))], axis=1)

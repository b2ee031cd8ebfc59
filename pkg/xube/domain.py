#--------------------------------------------------------------------------------------------------#
# domain.py                                                                                        #
#--------------------------------------------------------------------------------------------------#
# Description                                                                                      #
#--------------------------------------------------------------------------------------------------#
# Pathfinding-domain contract, capability mixins, random walks and problem-instance generation    #
#--------------------------------------------------------------------------------------------------#
# History                                                                                          #
#--------------------------------------------------------------------------------------------------#
# coding 2026.10.19: 1st coding                                                                    #
# update 2026.10.21: BatchedTransition mixin added                                                 #
#--------------------------------------------------------------------------------------------------#

#--------------------------------------------------------------------------------------------------#
# Libraries                                                                                        #
#--------------------------------------------------------------------------------------------------#
from __future__ import annotations

from abc import ABC, abstractmethod
from collections.abc import Hashable, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any

import numpy as np

from xube.errors import ConfigError, DeadEndError

#--------------------------------------------------------------------------------------------------#
# Types                                                                                            #
#--------------------------------------------------------------------------------------------------#
State = Hashable
Action = Hashable
Goal = Any


@dataclass(frozen=True)
class Transition:
    next_state: Any
    cost: float

    def __post_init__(self):
        if not self.cost >= 0:
            raise ValueError(f"transition cost must be >= 0, got {self.cost}")


@dataclass(frozen=True)
class ProblemInstance:
    start: Any
    goal: Any
    gen_steps: int = 0


@dataclass
class WalkRecord:
    """states[i+1] = next_state(states[i], actions[i]); costs[i] is that step's cost."""
    states: list = field(default_factory=list)
    actions: list = field(default_factory=list)
    costs: list = field(default_factory=list)

    @property
    def path_cost(self) -> float:
        return float(sum(self.costs))

    def __len__(self) -> int:
        return len(self.actions)


#--------------------------------------------------------------------------------------------------#
# Domain contract                                                                                  #
#--------------------------------------------------------------------------------------------------#
class Domain(ABC):
    """
    Black-box pathfinding domain

    Implementations must be pure: every method depends only on its inputs and the passed
    random generator, so a domain object can be shared by any number of workers.
    """
    name: str = "domain"

    @abstractmethod
    def samp_prob_insts(self, ks: Sequence[int], rng: np.random.Generator) -> list[ProblemInstance]:
        ...

    @abstractmethod
    def samp_state_act(self, state: State, rng: np.random.Generator) -> Action:
        """Sample an action valid in ``state``. Raises DeadEndError if there is none."""

    @abstractmethod
    def next_state(self, state: State, action: Action) -> Transition:
        ...

    @abstractmethod
    def is_solved(self, state: State, goal: Goal) -> bool:
        ...

    def action_to_str(self, action: Action) -> str:
        return str(action)

    def random_walk(self, state: State, steps: int, rng: np.random.Generator) -> WalkRecord:
        walk = WalkRecord(states=[state])
        for _ in range(steps):
            try:
                action = self.samp_state_act(walk.states[-1], rng)
            except DeadEndError:
                break
            tr = self.next_state(walk.states[-1], action)
            walk.states.append(tr.next_state)
            walk.actions.append(action)
            walk.costs.append(tr.cost)
        return walk

    def capabilities(self) -> list[str]:
        return [name for name, cls in CAPABILITIES.items() if isinstance(self, cls)]


class ActsEnum(Domain):
    """Domain whose valid actions in a state can be enumerated."""

    @abstractmethod
    def actions(self, state: State) -> list[Action]:
        ...

    def expand(self, state: State) -> list[tuple[Action, Transition]]:
        return [(a, self.next_state(state, a)) for a in self.actions(state)]

    def samp_state_act(self, state: State, rng: np.random.Generator) -> Action:
        acts = self.actions(state)
        if len(acts) == 0:
            raise DeadEndError(f"no action available in state {state!r}")
        return acts[int(rng.integers(len(acts)))]


class FixedActsEnum(ActsEnum):
    """actions(s) is always a subset of one fixed, ordered action set."""

    @abstractmethod
    def all_actions(self) -> list[Action]:
        ...

    @cached_property
    def _action_idx(self) -> dict:
        return {a: i for i, a in enumerate(self.all_actions())}

    def num_actions(self) -> int:
        return len(self.all_actions())

    def action_index(self, action: Action) -> int:
        return self._action_idx[action]


class GoalSampleableFromState(Domain):
    """Goals can be sampled from a state that must satisfy them. Enables forward generation."""

    @abstractmethod
    def samp_start_states(self, num: int, rng: np.random.Generator) -> list[State]:
        ...

    @abstractmethod
    def samp_goal_from_state(self, state: State, rng: np.random.Generator | None = None) -> Goal:
        """Return a goal g with is_solved(state, g) true."""

    def samp_prob_insts(self, ks, rng):
        return gen_prob_insts_forward(self, ks, rng)


class ReverseWalkable(Domain):
    """Goal states can be sampled and walked backwards. Enables reverse generation."""

    @abstractmethod
    def samp_goal_state_and_goal(self, rng: np.random.Generator) -> tuple[State, Goal]:
        ...

    @abstractmethod
    def reverse_step(self, state: State, rng: np.random.Generator) -> tuple[State, Action, float]:
        """
        Sample a predecessor of ``state``

        Returns
        -------
        prev_state, action, cost
            next_state(prev_state, action) == Transition(state, cost)
        """

    def samp_prob_insts(self, ks, rng):
        return gen_prob_insts_reverse(self, ks, rng)


class ReversibleActs(ReverseWalkable, ActsEnum):
    """Every action has an inverse, so a reverse step is a forward step from the state."""

    @abstractmethod
    def reverse_action(self, action: Action) -> Action:
        ...

    def reverse_step(self, state, rng):
        action = self.samp_state_act(state, rng)
        prev_state = self.next_state(state, action).next_state
        back = self.reverse_action(action)
        return prev_state, back, self.next_state(prev_state, back).cost


class StringToAct(Domain):

    @abstractmethod
    def parse_action(self, text: str) -> Action:
        """Inverse of action_to_str. Raises CodecError on unknown text."""


class Renderable(Domain):
    """Terminal rendering plus text codecs for states and goals."""

    @abstractmethod
    def render_state(self, state: State) -> str:
        ...

    @abstractmethod
    def render_goal(self, goal: Goal) -> str:
        ...

    @abstractmethod
    def state_to_text(self, state: State) -> str:
        ...

    @abstractmethod
    def state_from_text(self, text: str) -> State:
        ...

    @abstractmethod
    def goal_to_text(self, goal: Goal) -> str:
        ...

    @abstractmethod
    def goal_from_text(self, text: str) -> Goal:
        ...


class BatchedTransition(FixedActsEnum):
    """
    Transitions computed on flat numeric arrays

    The domain converts states to and from rows of an array and steps whole batches at once.
    ``expand`` and ``random_walk`` are overridden so the conversion happens once per call.
    """

    @abstractmethod
    def states_to_np(self, states: Sequence[State]) -> np.ndarray:
        ...

    @abstractmethod
    def np_to_states(self, arr: np.ndarray) -> list[State]:
        ...

    @abstractmethod
    def valid_acts_np(self, arr: np.ndarray) -> np.ndarray:
        """Boolean mask, shape (rows, num_actions)."""

    @abstractmethod
    def next_state_np(self, arr: np.ndarray, act_idxs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Apply action ``act_idxs[i]`` to row i. Returns (next rows, costs)."""

    def next_states_batch(self, states: Sequence[State], actions: Sequence[Action]) -> list[Transition]:
        if len(states) == 0:
            return []
        act_idxs = np.array([self.action_index(a) for a in actions], dtype=np.int64)
        nxt, costs = self.next_state_np(self.states_to_np(states), act_idxs)
        return [Transition(s, float(c)) for s, c in zip(self.np_to_states(nxt), costs)]

    def expand(self, state):
        arr = self.states_to_np([state])
        valid = np.flatnonzero(self.valid_acts_np(arr)[0])
        if valid.size == 0:
            return []
        nxt, costs = self.next_state_np(np.repeat(arr, valid.size, axis=0), valid)
        acts = self.all_actions()
        return [(acts[i], Transition(s, float(c)))
                for i, s, c in zip(valid, self.np_to_states(nxt), costs)]

    def random_walk(self, state, steps, rng):
        arr = self.states_to_np([state])
        rows, act_idxs, costs = [], [], []
        for _ in range(steps):
            valid = np.flatnonzero(self.valid_acts_np(arr)[0])
            if valid.size == 0:
                break
            idx = int(valid[int(rng.integers(valid.size))])
            arr, cost = self.next_state_np(arr, np.array([idx]))
            rows.append(arr[0])
            act_idxs.append(idx)
            costs.append(float(cost[0]))

        acts = self.all_actions()
        states = [state] + (self.np_to_states(np.stack(rows)) if rows else [])
        return WalkRecord(states=states, actions=[acts[i] for i in act_idxs], costs=costs)


CAPABILITIES = {
    "ActsEnum": ActsEnum,
    "FixedActsEnum": FixedActsEnum,
    "GoalSampleableFromState": GoalSampleableFromState,
    "ReverseWalkable": ReverseWalkable,
    "StringToAct": StringToAct,
    "Renderable": Renderable,
    "BatchedTransition": BatchedTransition,
}


def require(domain: Domain, capability: str, purpose: str) -> None:
    """Raise ConfigError naming ``capability`` if ``domain`` lacks it."""
    if not isinstance(domain, CAPABILITIES[capability]):
        raise ConfigError(f"{purpose} requires domain capability {capability}; "
                          f"{domain.name} has {', '.join(domain.capabilities()) or 'none'}")


#--------------------------------------------------------------------------------------------------#
# Walks & problem instance generation                                                              #
#--------------------------------------------------------------------------------------------------#
def random_walk(domain: Domain, state: State, steps: int, rng: np.random.Generator) -> WalkRecord:
    """
    Random walk of at most ``steps`` actions

    Parameters
    ----------
    domain: `Domain`
        pathfinding domain
    state: State
        first state of the walk
    steps: `int`
        number of actions to take
    rng: `numpy.random.Generator`
        random generator

    Returns
    -------
    walk: `WalkRecord`
        visited states, actions and costs. Shorter than ``steps`` if a dead end was reached
    """
    if steps < 0:
        raise ConfigError(f"walk length must be >= 0, got {steps}")
    return domain.random_walk(state, steps, rng)


def reverse_walk(domain: ReverseWalkable, goal_state: State, steps: int,
                 rng: np.random.Generator) -> WalkRecord:
    """
    Walk backwards from ``goal_state``

    states[j] is the state reached after j reverse steps and next_state(states[j+1], actions[j])
    leads back to states[j] at cost costs[j].
    """
    if steps < 0:
        raise ConfigError(f"walk length must be >= 0, got {steps}")
    walk = WalkRecord(states=[goal_state])
    for _ in range(steps):
        try:
            prev_state, action, cost = domain.reverse_step(walk.states[-1], rng)
        except DeadEndError:
            break
        walk.states.append(prev_state)
        walk.actions.append(action)
        walk.costs.append(cost)
    return walk


def gen_prob_insts_forward(domain: GoalSampleableFromState, ks: Sequence[int],
                           rng: np.random.Generator) -> list[ProblemInstance]:
    """Sample start states, walk ks[i] steps and sample each goal from the terminal state."""
    require(domain, "GoalSampleableFromState", "forward instance generation")
    starts = domain.samp_start_states(len(ks), rng)
    insts = []
    for start, k in zip(starts, ks):
        walk = random_walk(domain, start, int(k), rng)
        goal = domain.samp_goal_from_state(walk.states[-1], rng)
        insts.append(ProblemInstance(start=start, goal=goal, gen_steps=int(k)))
    return insts


def gen_prob_insts_reverse(domain: ReverseWalkable, ks: Sequence[int],
                           rng: np.random.Generator) -> list[ProblemInstance]:
    """Sample goal states, walk ks[i] steps in reverse and start from the terminal state."""
    require(domain, "ReverseWalkable", "reverse instance generation")
    insts = []
    for k in ks:
        goal_state, goal = domain.samp_goal_state_and_goal(rng)
        walk = reverse_walk(domain, goal_state, int(k), rng)
        insts.append(ProblemInstance(start=walk.states[-1], goal=goal, gen_steps=int(k)))
    return insts


def sample_ks(K: int, count: int, rng: np.random.Generator) -> list[int]:
    """Draw ``count`` walk lengths uniformly from {0, ..., K}."""
    if K < 0 or count < 0:
        raise ConfigError(f"sample_ks needs K >= 0 and count >= 0, got K={K}, count={count}")
    return [int(k) for k in rng.integers(0, K + 1, size=count)]


def replay_path(domain: Domain, start: State, actions: Sequence[Action]) -> tuple[State, float]:
    state, cost = start, 0.0
    for action in actions:
        tr = domain.next_state(state, action)
        state, cost = tr.next_state, cost + tr.cost
    return state, cost

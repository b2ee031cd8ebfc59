#--------------------------------------------------------------------------------------------------#
# supervised.py                                                                                    #
#--------------------------------------------------------------------------------------------------#
# Description                                                                                      #
#--------------------------------------------------------------------------------------------------#
# Supervised targets from random walks: the target of a visited state is the cost of the walk      #
# between it and the goal, so no target network is needed                                          #
#--------------------------------------------------------------------------------------------------#
# History                                                                                          #
#--------------------------------------------------------------------------------------------------#
# coding 2026.10.22: 1st coding                                                                    #
#--------------------------------------------------------------------------------------------------#

#--------------------------------------------------------------------------------------------------#
# Libraries                                                                                        #
#--------------------------------------------------------------------------------------------------#
from __future__ import annotations

from collections.abc import Sequence

import numpy as np

from xube.domain import Domain, random_walk, require, reverse_walk
from xube.errors import ConfigError
from xube.targets import ExampleBlock, ExampleBuilder

#--------------------------------------------------------------------------------------------------#
# Main                                                                                             #
#--------------------------------------------------------------------------------------------------#
def walk_examples(domain: Domain, k: int, direction: str, head: str, rng: np.random.Generator):
    """
    Examples of one random walk of length ``k``

    Parameters
    ----------
    domain: `Domain`
        GoalSampleableFromState for "forward", ReverseWalkable for "reverse"
    k: `int`
        walk length
    direction: `str`
        "forward" or "reverse"
    head: `str`
        "v" or "q"
    rng: `numpy.random.Generator`
        random generator

    Returns
    -------
    states, goals, targets, actions: `list`
        actions are None for heuristic-v. For heuristic-q each example's action is the walk edge
        leading toward the goal, and the goal end adds a zero target for each of its actions
    """
    if direction == "forward":
        require(domain, "GoalSampleableFromState", "forward supervised walks")
        start = domain.samp_start_states(1, rng)[0]
        walk = random_walk(domain, start, k, rng)
        goal = domain.samp_goal_from_state(walk.states[-1], rng)
        remaining = np.cumsum(np.asarray(walk.costs[::-1], dtype=np.float64))[::-1].tolist() + [0.0]
        goal_state = walk.states[-1]
        if head == "v":
            return walk.states, [goal] * len(walk.states), remaining, [None] * len(walk.states)
        states, targets, actions = list(walk.states[:-1]), remaining[:-1], list(walk.actions)

    elif direction == "reverse":
        require(domain, "ReverseWalkable", "reverse supervised walks")
        goal_state, goal = domain.samp_goal_state_and_goal(rng)
        walk = reverse_walk(domain, goal_state, k, rng)
        back = np.concatenate([[0.0], np.cumsum(np.asarray(walk.costs, dtype=np.float64))]).tolist()
        if head == "v":
            return walk.states, [goal] * len(walk.states), back, [None] * len(walk.states)
        # actions[j] leads states[j+1] back to states[j]
        states, targets, actions = list(walk.states[1:]), back[1:], list(walk.actions)

    else:
        raise ConfigError(f"walk direction must be 'forward' or 'reverse', got {direction!r}")

    require(domain, "FixedActsEnum", "supervised heuristic-q walks")
    end_acts = domain.actions(goal_state)
    states += [goal_state] * len(end_acts)
    targets += [0.0] * len(end_acts)
    actions += end_acts
    return states, [goal] * len(states), targets, actions


def sup_walk_train(
        domain: Domain,
        ks: Sequence[int],
        direction: str,
        head: str,
        encoder,
        rng: np.random.Generator
        ) -> ExampleBlock:
    """One random walk per entry of ``ks``; all their examples, encoded."""
    builder = ExampleBuilder(domain, encoder, head)
    for k in ks:
        states, goals, targets, actions = walk_examples(domain, int(k), direction, head, rng)
        builder.add(states, goals, targets, actions, int(k))
    return builder.build()

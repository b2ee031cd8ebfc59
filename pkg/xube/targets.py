#--------------------------------------------------------------------------------------------------#
# targets.py                                                                                       #
#--------------------------------------------------------------------------------------------------#
# Description                                                                                      #
#--------------------------------------------------------------------------------------------------#
# Value-iteration and Q-learning targets, tree backup targets, hindsight relabelling and the       #
# example blocks handed from workers to the trainer                                                #
#--------------------------------------------------------------------------------------------------#
# History                                                                                          #
#--------------------------------------------------------------------------------------------------#
# coding 2026.10.21: 1st coding                                                                    #
# update 2026.10.24: tree backup targets                                                           #
#--------------------------------------------------------------------------------------------------#

#--------------------------------------------------------------------------------------------------#
# Libraries                                                                                        #
#--------------------------------------------------------------------------------------------------#
from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from xube.domain import Domain, require
from xube.logs import get_logger
from xube.search import SearchResult, SearchTreeRecord, lhbl_backup

log = get_logger(__name__)

#--------------------------------------------------------------------------------------------------#
# Example blocks                                                                                   #
#--------------------------------------------------------------------------------------------------#
@dataclass
class ExampleBlock:
    """Encoded training examples. ``actions`` is -1 for heuristic-v examples."""
    inputs: np.ndarray
    targets: np.ndarray
    actions: np.ndarray
    ks: np.ndarray

    def __len__(self):
        return len(self.targets)

    @classmethod
    def empty(cls, input_dim: int) -> ExampleBlock:
        return cls(np.zeros((0, input_dim), dtype=np.float32), np.zeros(0), np.zeros(0, dtype=np.int64),
                   np.zeros(0, dtype=np.int64))

    @classmethod
    def concat(cls, blocks: Sequence[ExampleBlock], input_dim: int) -> ExampleBlock:
        if not blocks:
            return cls.empty(input_dim)
        return cls(np.concatenate([b.inputs for b in blocks]), np.concatenate([b.targets for b in blocks]),
                   np.concatenate([b.actions for b in blocks]), np.concatenate([b.ks for b in blocks]))


class ExampleBuilder:
    """Collects (state, goal, target, action, k) rows, drops non-finite targets, encodes once."""

    def __init__(self, domain: Domain, encoder, head: str):
        self.domain = domain
        self.encoder = encoder
        self.head = head
        self.states, self.goals, self.targets, self.actions, self.ks = [], [], [], [], []
        self.discarded = 0

    def __len__(self):
        return len(self.targets)

    def add(self, states, goals, targets, actions=None, k: int = 0) -> int:
        """Returns the number of rows kept."""
        kept = 0
        actions = actions if actions is not None else [None] * len(states)
        for s, g, t, a in zip(states, goals, targets, actions):
            if not math.isfinite(t):
                self.discarded += 1
                continue
            self.states.append(s)
            self.goals.append(g)
            self.targets.append(float(t))
            self.actions.append(-1 if a is None else self.domain.action_index(a))
            self.ks.append(k)
            kept += 1
        return kept

    def build(self) -> ExampleBlock:
        if self.discarded:
            log.warning("dead-end examples discarded", count=self.discarded)
        if not self.targets:
            return ExampleBlock.empty(self.encoder.input_dim)
        return ExampleBlock(self.encoder.encode(self.states, self.goals),
                            np.array(self.targets, dtype=np.float64),
                            np.array(self.actions, dtype=np.int64), np.array(self.ks, dtype=np.int64))


#--------------------------------------------------------------------------------------------------#
# One-step targets                                                                                 #
#--------------------------------------------------------------------------------------------------#
def vi_targets(domain: Domain, states: Sequence, goals: Sequence, target_h) -> np.ndarray:
    """
    Value-iteration targets

    Parameters
    ----------
    domain: `Domain`
        domain with the ActsEnum capability
    states, goals: sequences
        pairs to compute targets for
    target_h: HeuristicV
        target network

    Returns
    -------
    targets: `np.ndarray`
        0 at solved states, else min over actions of c(s,a) + target_h(T(s,a), g) where solved
        children count 0. +inf for unsolved dead ends
    """
    require(domain, "ActsEnum", "value-iteration targets")
    out = np.full(len(states), math.inf)
    owners, costs, child_states, child_goals, eval_mask = [], [], [], [], []
    for i, (s, g) in enumerate(zip(states, goals)):
        if domain.is_solved(s, g):
            out[i] = 0.0
            continue
        for _, tr in domain.expand(s):
            owners.append(i)
            costs.append(tr.cost)
            solved = domain.is_solved(tr.next_state, g)
            eval_mask.append(not solved)
            if not solved:
                child_states.append(tr.next_state)
                child_goals.append(g)
    if owners:
        vals = np.zeros(len(owners))
        mask = np.array(eval_mask)
        if child_states:
            vals[mask] = np.asarray(target_h(child_states, child_goals), dtype=np.float64)
        np.minimum.at(out, np.array(owners), np.array(costs) + vals)
    return out


def vi_target(domain: Domain, state, goal, target_h) -> float:
    return float(vi_targets(domain, [state], [goal], target_h)[0])


def ql_targets(domain: Domain, states: Sequence, goals: Sequence, actions: Sequence, target_q) -> np.ndarray:
    """
    Q-learning targets

    0 at solved states, else c(s,a) + min over a' of target_q(s', g, a') with s' = T(s,a). A solved
    s' contributes c(s,a). +inf when s' is an unsolved dead end.
    """
    require(domain, "FixedActsEnum", "q-learning targets")
    out = np.full(len(states), math.inf)
    pending = []
    for i, (s, g, a) in enumerate(zip(states, goals, actions)):
        if domain.is_solved(s, g):
            out[i] = 0.0
            continue
        tr = domain.next_state(s, a)
        if domain.is_solved(tr.next_state, g):
            out[i] = tr.cost
        else:
            pending.append((i, tr, g))
    if pending:
        qs = np.asarray(target_q([tr.next_state for _, tr, _ in pending], [g for _, _, g in pending]),
                        dtype=np.float64)
        for (i, tr, _), q in zip(pending, qs):
            idxs = [domain.action_index(a2) for a2 in domain.actions(tr.next_state)]
            if idxs:
                out[i] = tr.cost + float(q[idxs].min())
    return out


def ql_target(domain: Domain, state, goal, action, target_q) -> float:
    return float(ql_targets(domain, [state], [goal], [action], target_q)[0])


#--------------------------------------------------------------------------------------------------#
# Hindsight relabelling                                                                            #
#--------------------------------------------------------------------------------------------------#
def her_relabel(tree: SearchTreeRecord, domain: Domain, rng: np.random.Generator):
    """
    Relabel a search with a goal reached by its deepest node

    Returns
    -------
    path: list of `SearchNode`
        root to the deepest node (earliest inserted on ties)
    goal: Goal
        sampled from the deepest node's state, which satisfies it
    """
    require(domain, "GoalSampleableFromState", "hindsight relabelling")
    node = tree.deepest()
    return tree.path_to(node.node_id), domain.samp_goal_from_state(node.state, rng)


def her_examples(builder: ExampleBuilder, tree: SearchTreeRecord, rng, target_fn, k: int) -> int:
    domain = builder.domain
    path, goal = her_relabel(tree, domain, rng)
    states = [n.state for n in path]
    if builder.head == "v":
        return builder.add(states, [goal] * len(states), vi_targets(domain, states, [goal] * len(states),
                                                                    target_fn), k=k)
    acts = [n.action for n in path[1:]]
    kept = builder.add(states[:-1], [goal] * len(acts),
                       ql_targets(domain, states[:-1], [goal] * len(acts), acts, target_fn), acts, k)
    return kept + _solved_q_examples(builder, [path[-1].state], goal, k)


#--------------------------------------------------------------------------------------------------#
# Targets from a search tree                                                                       #
#--------------------------------------------------------------------------------------------------#
def _solved_q_examples(builder: ExampleBuilder, states, goal, k) -> int:
    kept = 0
    for s in states:
        acts = builder.domain.actions(s)
        kept += builder.add([s] * len(acts), [goal] * len(acts), [0.0] * len(acts), acts, k)
    return kept


def _untaken_values(domain, tree, head, target_fn):
    """Leaf values and best values over edges the search did not take, from the target network."""
    goal = tree.goal
    expanded = set(tree.expanded)
    leaf_ids = [nid for nid in tree.leaves if not tree.nodes[nid].is_goal]
    leaf_values: dict[int, float] = {}
    node_values: dict[int, float] = {}

    if head == "v":
        ids = [nid for nid in leaf_ids if not (nid in expanded and not domain.actions(tree.nodes[nid].state))]
        vals = np.asarray(target_fn([tree.nodes[i].state for i in ids], [goal] * len(ids)), dtype=np.float64) \
            if ids else []
        leaf_values = {nid: math.inf for nid in leaf_ids}
        leaf_values.update(zip(ids, (float(v) for v in vals)))

        rows = []
        for nid in sorted(expanded):
            node = tree.nodes[nid]
            if node.is_goal or not tree.children(nid):
                continue
            taken = {e.action for e in tree.children(nid)}
            for a, tr in domain.expand(node.state):
                if a not in taken:
                    rows.append((nid, tr))
        vals = np.zeros(len(rows))
        unsolved = [i for i, (_, tr) in enumerate(rows) if not domain.is_solved(tr.next_state, goal)]
        if unsolved:
            vals[unsolved] = np.asarray(target_fn([rows[i][1].next_state for i in unsolved],
                                                  [goal] * len(unsolved)), dtype=np.float64)
        for (nid, tr), v in zip(rows, vals):
            node_values[nid] = min(node_values.get(nid, math.inf), tr.cost + float(v))
        return leaf_values, node_values

    ids = [nid for nid in set(leaf_ids) | {n for n in expanded if not tree.nodes[n].is_goal}]
    ids.sort()
    qs = np.asarray(target_fn([tree.nodes[i].state for i in ids], [goal] * len(ids)), dtype=np.float64) \
        if ids else []
    for nid, q in zip(ids, qs):
        acts = domain.actions(tree.nodes[nid].state)
        taken = {e.action for e in tree.children(nid)}
        if not tree.children(nid):
            leaf_values[nid] = float(min((q[domain.action_index(a)] for a in acts), default=math.inf))
            continue
        untaken = [q[domain.action_index(a)] for a in acts if a not in taken]
        if untaken:
            node_values[nid] = float(min(untaken))
    return leaf_values, node_values


def tree_examples(
        builder: ExampleBuilder,
        result: SearchResult,
        target_fn,
        lhbl: bool = False,
        k: int = 0,
        node_estimates: bool = False
        ) -> int:
    """
    Add the training examples of one search

    heuristic-v: one example per expanded node. heuristic-q: one per traversed edge, plus zero
    targets for every action of a selected solved node. With ``lhbl`` the targets come from a
    backup over the whole tree, otherwise from one-step targets. The backup is over tree edges
    only, unless ``node_estimates`` also lets an internal node take the target-network value of
    an edge the search did not traverse.

    Returns
    -------
    kept: `int`
        number of examples added
    """
    domain = builder.domain
    tree = result.tree
    goal = tree.goal
    solved_ids = [nid for nid in tree.expanded if tree.nodes[nid].is_goal]

    if lhbl:
        leaf_values, node_values = _untaken_values(domain, tree, builder.head, target_fn)
        values = lhbl_backup(tree, leaf_values, node_values if node_estimates else None)
        if builder.head == "v":
            ids = list(dict.fromkeys(tree.expanded))
            return builder.add([tree.nodes[i].state for i in ids], [goal] * len(ids),
                               [values[i] for i in ids], k=k)
        edges = [e for e in tree.edges if not tree.nodes[e.parent].is_goal]
        kept = builder.add([tree.nodes[e.parent].state for e in edges], [goal] * len(edges),
                           [e.cost + values[e.child] for e in edges], [e.action for e in edges], k)
        return kept + _solved_q_examples(builder, [tree.nodes[i].state for i in solved_ids], goal, k)

    if builder.head == "v":
        ids = list(dict.fromkeys(tree.expanded))
        states = [tree.nodes[i].state for i in ids]
        return builder.add(states, [goal] * len(ids), vi_targets(domain, states, [goal] * len(ids), target_fn),
                           k=k)
    edges = [e for e in tree.edges if not tree.nodes[e.parent].is_goal]
    states = [tree.nodes[e.parent].state for e in edges]
    acts = [e.action for e in edges]
    kept = builder.add(states, [goal] * len(edges),
                       ql_targets(domain, states, [goal] * len(edges), acts, target_fn), acts, k)
    return kept + _solved_q_examples(builder, [tree.nodes[i].state for i in solved_ids], goal, k)

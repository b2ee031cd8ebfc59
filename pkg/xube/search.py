#--------------------------------------------------------------------------------------------------#
# search.py                                                                                        #
#--------------------------------------------------------------------------------------------------#
# Description                                                                                      #
#--------------------------------------------------------------------------------------------------#
# Batch weighted A* (BWAS), batch weighted Q* (BWQS), beam search and random rollouts over         #
# heuristic-v / heuristic-q functions. Every search returns the tree it built for training         #
#--------------------------------------------------------------------------------------------------#
# History                                                                                          #
#--------------------------------------------------------------------------------------------------#
# coding 2026.10.20: 1st coding                                                                    #
# update 2026.10.22: incumbent check for batched pops at weight 1                                  #
# update 2026.10.24: tree backup (lhbl_backup) moved here from training                            #
#--------------------------------------------------------------------------------------------------#

#--------------------------------------------------------------------------------------------------#
# Libraries                                                                                        #
#--------------------------------------------------------------------------------------------------#
from __future__ import annotations

import heapq
import math
import time
from collections import defaultdict
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from xube.domain import BatchedTransition, Domain, ProblemInstance, require
from xube.errors import ConfigError, DeadEndError, SearchInternalError
from xube.logs import get_logger

log = get_logger(__name__)

#--------------------------------------------------------------------------------------------------#
# Search tree                                                                                      #
#--------------------------------------------------------------------------------------------------#
@dataclass(slots=True)
class SearchNode:
    node_id: int                      # insertion order, root is 0
    state: Any
    parent: int | None
    action: Any
    g: float
    h: float
    depth: int
    is_goal: bool


@dataclass(frozen=True, slots=True)
class TreeEdge:
    parent: int
    action: Any
    child: int
    cost: float


class SearchTreeRecord:
    """
    Nodes and edges built by one search

    ``expanded`` lists nodes whose outgoing edges were generated or queued, plus solved nodes
    that were selected. ``edges`` are the traversed edges, parent id always below child id.
    """

    def __init__(self, goal: Any):
        self.goal = goal
        self.nodes: list[SearchNode] = []
        self.expanded: list[int] = []
        self.edges: list[TreeEdge] = []
        self._children: dict[int, list[TreeEdge]] = defaultdict(list)

    def __len__(self):
        return len(self.nodes)

    def add_root(self, state, is_goal: bool, h: float = math.nan) -> SearchNode:
        if self.nodes:
            raise SearchInternalError("search tree already has a root")
        node = SearchNode(0, state, None, None, 0.0, h, 0, is_goal)
        self.nodes.append(node)
        return node

    def add_child(self, parent_id: int, action, state, cost: float, is_goal: bool,
                  h: float = math.nan) -> SearchNode:
        parent = self.nodes[parent_id]
        node = SearchNode(len(self.nodes), state, parent_id, action, parent.g + cost, h,
                          parent.depth + 1, is_goal)
        self.nodes.append(node)
        edge = TreeEdge(parent_id, action, node.node_id, cost)
        self.edges.append(edge)
        self._children[parent_id].append(edge)
        return node

    def children(self, node_id: int) -> list[TreeEdge]:
        return self._children.get(node_id, [])

    @property
    def leaves(self) -> list[int]:
        return [n.node_id for n in self.nodes if not self._children.get(n.node_id)]

    def deepest(self) -> SearchNode:
        """Node of maximal depth; the earliest inserted wins ties."""
        if not self.nodes:
            raise SearchInternalError("empty search tree")
        return max(self.nodes, key=lambda n: (n.depth, -n.node_id))

    def path_to(self, node_id: int) -> list[SearchNode]:
        path = []
        nid = node_id
        while nid is not None:
            node = self.nodes[nid]
            path.append(node)
            if node.parent is not None and node.parent >= nid:
                raise SearchInternalError(f"node {nid} has parent {node.parent} inserted after it")
            nid = node.parent
        return path[::-1]

    def actions_to(self, node_id: int) -> list:
        return [n.action for n in self.path_to(node_id)[1:]]


@dataclass
class SearchResult:
    solved: bool
    path: list
    path_cost: float
    iterations: int
    nodes_generated: int
    wall_time: float
    tree: SearchTreeRecord = field(repr=False)
    nodes_per_itr: list[int] = field(default_factory=list, repr=False)
    goal_node: int | None = None


#--------------------------------------------------------------------------------------------------#
# Heuristic functions                                                                              #
#--------------------------------------------------------------------------------------------------#
class ZeroHeuristic:
    head = "v"

    def __call__(self, states, goals):
        return np.zeros(len(states))


class ZeroQ:
    head = "q"

    def __init__(self, num_actions: int):
        self.num_actions = num_actions

    def __call__(self, states, goals):
        return np.zeros((len(states), self.num_actions))


class NNetHeuristic:
    """
    Heuristic function backed by an encoder and an evaluator

    Parameters
    ----------
    encoder: `NNetInput`
        (state, goal) encoder
    evaluator: `Evaluator`
        approximator, snapshot or zero target
    head: `str`
        "v" returns shape (N,), "q" returns shape (N, |A|)
    """

    def __init__(self, encoder, evaluator, head: str = "v"):
        if head not in ("v", "q"):
            raise ConfigError(f"head must be 'v' or 'q', got {head!r}")
        self.encoder = encoder
        self.evaluator = evaluator
        self.head = head

    def __call__(self, states, goals):
        if len(states) == 0:
            return np.zeros(0) if self.head == "v" else np.zeros((0, self.evaluator.out_dim))
        out = np.asarray(self.evaluator.evaluate(self.encoder.encode(states, goals)), dtype=np.float64)
        return out[:, 0] if self.head == "v" else out


def zero_heuristic() -> ZeroHeuristic:
    return ZeroHeuristic()


def zero_q(num_actions: int) -> ZeroQ:
    return ZeroQ(num_actions)


def heuristic_head(heuristic) -> str:
    return getattr(heuristic, "head", "v")


def _eval_v(heuristic, states, goal) -> np.ndarray:
    if len(states) == 0:
        return np.zeros(0)
    return np.asarray(heuristic(states, [goal] * len(states)), dtype=np.float64).reshape(len(states))


def _eval_q(heuristic, states, goal, num_actions) -> np.ndarray:
    if len(states) == 0:
        return np.zeros((0, num_actions))
    out = np.asarray(heuristic(states, [goal] * len(states)), dtype=np.float64)
    if out.shape != (len(states), num_actions):
        raise ConfigError(f"heuristic-q returned shape {out.shape}, expected ({len(states)}, {num_actions})")
    return out


#--------------------------------------------------------------------------------------------------#
# Frontier                                                                                         #
#--------------------------------------------------------------------------------------------------#
class Frontier:
    """Min-priority queue on f; equal f pops in insertion order."""

    def __init__(self):
        self._heap: list[tuple[float, int, Any]] = []
        self._count = 0

    def __len__(self):
        return len(self._heap)

    def push(self, f: float, item) -> None:
        heapq.heappush(self._heap, (f, self._count, item))
        self._count += 1

    def pop(self, rng: np.random.Generator | None = None, eps: float = 0.0) -> tuple[float, Any]:
        if eps > 0 and rng.random() < eps:
            idx = int(rng.integers(len(self._heap)))
            f, _, item = self._heap[idx]
            last = self._heap.pop()
            if idx < len(self._heap):
                self._heap[idx] = last
                heapq.heapify(self._heap)
            return f, item
        f, _, item = heapq.heappop(self._heap)
        return f, item

    def min_f(self) -> float:
        return self._heap[0][0] if self._heap else math.inf


def _check_params(weight, batch_size, eps, max_itrs, tau=0.0):
    if not 0.0 <= weight <= 1.0:
        raise ConfigError(f"weight must be in [0, 1], got {weight}")
    if batch_size < 1:
        raise ConfigError(f"batch size must be >= 1, got {batch_size}")
    if not 0.0 <= eps <= 1.0:
        raise ConfigError(f"random-pop probability must be in [0, 1], got {eps}")
    if tau < 0:
        raise ConfigError(f"temperature must be >= 0, got {tau}")
    if max_itrs < 1:
        raise ConfigError(f"max iterations must be >= 1, got {max_itrs}")


def _log_itr(itr, frontier_size, fs, hs, generated):
    fs = np.asarray(fs, dtype=np.float64)
    hs = np.asarray(hs, dtype=np.float64)
    hs = hs[np.isfinite(hs)]
    log.info("search iteration", itr=itr, frontier=frontier_size,
             f_min=float(fs.min()) if fs.size else None, f_mean=float(fs.mean()) if fs.size else None,
             f_max=float(fs.max()) if fs.size else None, h_min=float(hs.min()) if hs.size else None,
             h_mean=float(hs.mean()) if hs.size else None, h_max=float(hs.max()) if hs.size else None,
             generated=generated)


def _result(tree, goal_node, itr, generated, per_itr, t_start) -> SearchResult:
    if goal_node is None:
        return SearchResult(False, [], math.inf, itr, generated, time.perf_counter() - t_start, tree,
                            per_itr, None)
    node = tree.nodes[goal_node]
    return SearchResult(True, tree.actions_to(goal_node), node.g, itr, generated,
                        time.perf_counter() - t_start, tree, per_itr, goal_node)


def _transitions(domain, states, actions):
    if isinstance(domain, BatchedTransition):
        return domain.next_states_batch(states, actions)
    return [domain.next_state(s, a) for s, a in zip(states, actions)]


def _bound_reached(incumbent: SearchNode | None, weight: float, unsolved_fs: Sequence[float]) -> bool:
    if incumbent is None:
        return False
    if weight < 1.0:
        return True
    return incumbent.g <= min(unsolved_fs, default=math.inf)


#--------------------------------------------------------------------------------------------------#
# BWAS                                                                                             #
#--------------------------------------------------------------------------------------------------#
def bwas(
        domain: Domain,
        inst: ProblemInstance,
        heuristic,
        weight: float = 1.0,
        batch_size: int = 1,
        eps: float = 0.0,
        max_itrs: int = 10000,
        rng: np.random.Generator | None = None,
        verbose: bool = False
        ) -> SearchResult:
    """
    Batch weighted A* search

    Parameters
    ----------
    domain: `Domain`
        domain with the ActsEnum capability
    inst: `ProblemInstance`
        start state and goal
    heuristic: HeuristicV
        callable (states, goals) -> values
    weight: `float`
        path-cost weight, f = weight * g + h. Default is 1.0
    batch_size: `int`
        nodes popped per iteration. Default is 1
    eps: `float`
        probability that a pop is uniform-random instead of minimal f. Default is 0.0
    max_itrs: `int`
        iteration cap. Default is 10000
    rng: `numpy.random.Generator`
        used only when eps > 0
    verbose: `bool`
        log one line per iteration

    Returns
    -------
    result: `SearchResult`
        path, cost, counters and the search tree
    """
    _check_params(weight, batch_size, eps, max_itrs)
    require(domain, "ActsEnum", "bwas")
    rng = rng if rng is not None else np.random.default_rng(0)
    t_start = time.perf_counter()
    goal = inst.goal

    tree = SearchTreeRecord(goal)
    root = tree.add_root(inst.start, domain.is_solved(inst.start, goal))
    root.h = float(_eval_v(heuristic, [inst.start], goal)[0])
    closed = {inst.start: 0.0}
    frontier = Frontier()
    frontier.push(root.h, root.node_id)

    itr, generated, per_itr = 0, 1, []
    incumbent: SearchNode | None = None
    while itr < max_itrs and len(frontier) > 0:
        itr += 1

        # pop
        popped: dict[Any, tuple[float, SearchNode]] = {}
        solved_pops = []
        while len(popped) + len(solved_pops) < batch_size and len(frontier) > 0:
            f, nid = frontier.pop(rng, eps)
            node = tree.nodes[nid]
            if node.g > closed[node.state]:
                continue
            if node.is_goal:
                solved_pops.append(node)
                tree.expanded.append(nid)
            elif node.state not in popped or node.g < popped[node.state][1].g:
                popped[node.state] = (f, node)

        for node in solved_pops:
            if incumbent is None or node.g < incumbent.g:
                incumbent = node
        if _bound_reached(incumbent, weight, [f for f, _ in popped.values()]):
            return _result(tree, incumbent.node_id, itr, generated, per_itr, t_start)

        # expand
        new_nodes = []
        for _, node in popped.values():
            tree.expanded.append(node.node_id)
            for action, tr in domain.expand(node.state):
                child = tree.add_child(node.node_id, action, tr.next_state, tr.cost,
                                       domain.is_solved(tr.next_state, goal))
                if child.g < closed.get(child.state, math.inf):
                    closed[child.state] = child.g
                    new_nodes.append(child)
        num_gen = len(tree.nodes) - generated
        generated = len(tree.nodes)
        per_itr.append(num_gen)

        # evaluate and push
        hs = _eval_v(heuristic, [n.state for n in new_nodes], goal)
        for node, h in zip(new_nodes, hs):
            node.h = float(h)
            frontier.push(weight * node.g + node.h, node.node_id)

        if verbose:
            _log_itr(itr, len(frontier), [f for f, _ in popped.values()],
                     [n.h for _, n in popped.values()], num_gen)

    return _result(tree, incumbent.node_id if incumbent is not None else None, itr, generated,
                   per_itr, t_start)


#--------------------------------------------------------------------------------------------------#
# BWQS                                                                                             #
#--------------------------------------------------------------------------------------------------#
def bwqs(
        domain: Domain,
        inst: ProblemInstance,
        heuristic,
        weight: float = 1.0,
        batch_size: int = 1,
        eps: float = 0.0,
        max_itrs: int = 10000,
        rng: np.random.Generator | None = None,
        verbose: bool = False
        ) -> SearchResult:
    """
    Batch weighted Q* search

    The frontier holds edges keyed by f = weight * g(parent) + q(parent, goal, action). Popping an
    edge generates its child, so at most ``batch_size`` nodes are generated per iteration.
    Parameters are as for `bwas`, with a heuristic-q function.
    """
    _check_params(weight, batch_size, eps, max_itrs)
    require(domain, "FixedActsEnum", "bwqs")
    rng = rng if rng is not None else np.random.default_rng(0)
    t_start = time.perf_counter()
    goal = inst.goal
    num_actions = domain.num_actions()

    tree = SearchTreeRecord(goal)
    root = tree.add_root(inst.start, domain.is_solved(inst.start, goal))
    if root.is_goal:
        return _result(tree, root.node_id, 0, 1, [], t_start)
    closed = {inst.start: 0.0}
    frontier = Frontier()

    def queue_edges(nodes):
        qs = _eval_q(heuristic, [n.state for n in nodes], goal, num_actions)
        for node, q in zip(nodes, qs):
            acts = domain.actions(node.state)
            node.h = float(min((q[domain.action_index(a)] for a in acts), default=math.nan))
            tree.expanded.append(node.node_id)
            for a in acts:
                frontier.push(weight * node.g + float(q[domain.action_index(a)]), (node.node_id, a))

    queue_edges([root])
    itr, generated, per_itr = 0, 1, []
    incumbent: SearchNode | None = None
    while itr < max_itrs and len(frontier) > 0:
        itr += 1

        popped = []
        while len(popped) < batch_size and len(frontier) > 0:
            f, (nid, action) = frontier.pop(rng, eps)
            parent = tree.nodes[nid]
            if parent.g > closed[parent.state]:
                continue
            popped.append((f, parent, action))

        trs = _transitions(domain, [p.state for _, p, _ in popped], [a for _, _, a in popped])
        unsolved_fs, new_nodes = [], []
        for (f, parent, action), tr in zip(popped, trs):
            child = tree.add_child(parent.node_id, action, tr.next_state, tr.cost,
                                   domain.is_solved(tr.next_state, goal))
            if child.is_goal:
                if incumbent is None or child.g < incumbent.g:
                    incumbent = child
                continue
            unsolved_fs.append(f)
            if child.g < closed.get(child.state, math.inf):
                closed[child.state] = child.g
                new_nodes.append(child)
        generated += len(popped)
        per_itr.append(len(popped))

        if _bound_reached(incumbent, weight, unsolved_fs):
            if incumbent is not None:
                tree.expanded.append(incumbent.node_id)
            return _result(tree, incumbent.node_id, itr, generated, per_itr, t_start)

        queue_edges(new_nodes)
        if verbose:
            _log_itr(itr, len(frontier), [f for f, _, _ in popped], [n.h for n in new_nodes],
                     len(popped))

    if incumbent is not None:
        tree.expanded.append(incumbent.node_id)
    return _result(tree, incumbent.node_id if incumbent is not None else None, itr, generated,
                   per_itr, t_start)


#--------------------------------------------------------------------------------------------------#
# Beam search                                                                                      #
#--------------------------------------------------------------------------------------------------#
def select_edges(
        scores: Sequence[float],
        beam_width: int,
        tau: float = 0.0,
        eps: float = 0.0,
        rng: np.random.Generator | None = None
        ) -> list[int]:
    """
    Choose up to ``beam_width`` edge indices by score

    tau = 0 takes the top scores (ties by index). tau > 0 draws without replacement from
    softmax(scores / tau). Each selection is then swapped for a uniform-random unselected edge
    with probability eps.
    """
    scores = np.asarray(scores, dtype=np.float64)
    num = min(beam_width, scores.size)
    if num == 0:
        return []
    if tau == 0:
        chosen = [int(i) for i in np.argsort(-scores, kind="stable")[:num]]
    else:
        avail = np.arange(scores.size)
        chosen = []
        for _ in range(num):
            z = scores[avail] / tau
            z = np.exp(z - z.max())
            pick = int(rng.choice(avail.size, p=z / z.sum()))
            chosen.append(int(avail[pick]))
            avail = np.delete(avail, pick)
    if eps > 0:
        for i in range(num):
            if rng.random() < eps:
                unselected = np.setdiff1d(np.arange(scores.size), chosen)
                if unselected.size > 0:
                    chosen[i] = int(unselected[int(rng.integers(unselected.size))])
    return chosen


def beam_search(
        domain: Domain,
        inst: ProblemInstance,
        heuristic,
        beam_width: int = 1,
        tau: float = 0.0,
        eps: float = 0.0,
        max_itrs: int = 10000,
        rng: np.random.Generator | None = None,
        verbose: bool = False
        ) -> SearchResult:
    """
    Beam search without a closed map

    Edges out of the beam are scored -(c + h(child)) with a heuristic-v function or -q with a
    heuristic-q function, and `select_edges` keeps ``beam_width`` of them.
    """
    _check_params(1.0, beam_width, eps, max_itrs, tau)
    require(domain, "ActsEnum", "beam search")
    rng = rng if rng is not None else np.random.default_rng(0)
    t_start = time.perf_counter()
    goal = inst.goal
    head = heuristic_head(heuristic)
    if head == "q":
        require(domain, "FixedActsEnum", "beam search with a heuristic-q function")

    tree = SearchTreeRecord(goal)
    root = tree.add_root(inst.start, domain.is_solved(inst.start, goal))
    if root.is_goal:
        return _result(tree, root.node_id, 0, 1, [], t_start)

    beam = [root]
    itr, generated, per_itr = 0, 1, []
    while itr < max_itrs:
        itr += 1
        edges = [(node, a, tr) for node in beam for a, tr in domain.expand(node.state)]
        tree.expanded.extend(n.node_id for n in beam)
        if not edges:
            break

        if head == "v":
            hs = _eval_v(heuristic, [tr.next_state for _, _, tr in edges], goal)
            scores = -np.array([tr.cost for _, _, tr in edges]) - hs
        else:
            qs = _eval_q(heuristic, [n.state for n in beam], goal, domain.num_actions())
            row = {n.node_id: i for i, n in enumerate(beam)}
            scores = -np.array([qs[row[n.node_id], domain.action_index(a)] for n, a, _ in edges])
            hs = -scores

        chosen = select_edges(scores, beam_width, tau, eps, rng)
        beam = []
        for i in chosen:
            node, a, tr = edges[i]
            child = tree.add_child(node.node_id, a, tr.next_state, tr.cost,
                                   domain.is_solved(tr.next_state, goal), float(hs[i]))
            beam.append(child)
        generated += len(beam)
        per_itr.append(len(beam))
        if verbose:
            _log_itr(itr, len(edges), -scores[chosen], hs[chosen], len(beam))

        solved = [n for n in beam if n.is_goal]
        if solved:
            best = min(solved, key=lambda n: (n.g, n.node_id))
            tree.expanded.append(best.node_id)
            return _result(tree, best.node_id, itr, generated, per_itr, t_start)

    return _result(tree, None, itr, generated, per_itr, t_start)


#--------------------------------------------------------------------------------------------------#
# Random rollout                                                                                   #
#--------------------------------------------------------------------------------------------------#
def random_rollout(
        domain: Domain,
        inst: ProblemInstance,
        max_itrs: int = 10000,
        rng: np.random.Generator | None = None,
        verbose: bool = False
        ) -> SearchResult:
    """Follow uniformly sampled actions until the goal or ``max_itrs`` steps."""
    _check_params(1.0, 1, 0.0, max_itrs)
    rng = rng if rng is not None else np.random.default_rng(0)
    t_start = time.perf_counter()
    goal = inst.goal

    tree = SearchTreeRecord(goal)
    node = tree.add_root(inst.start, domain.is_solved(inst.start, goal))
    if node.is_goal:
        return _result(tree, node.node_id, 0, 1, [], t_start)

    itr, per_itr = 0, []
    while itr < max_itrs:
        try:
            action = domain.samp_state_act(node.state, rng)
        except DeadEndError:
            break
        itr += 1
        tree.expanded.append(node.node_id)
        tr = domain.next_state(node.state, action)
        node = tree.add_child(node.node_id, action, tr.next_state, tr.cost,
                              domain.is_solved(tr.next_state, goal))
        per_itr.append(1)
        if verbose:
            log.info("rollout step", itr=itr, g=node.g)
        if node.is_goal:
            tree.expanded.append(node.node_id)
            return _result(tree, node.node_id, itr, len(tree), per_itr, t_start)

    return _result(tree, None, itr, len(tree), per_itr, t_start)


#--------------------------------------------------------------------------------------------------#
# Tree backup                                                                                      #
#--------------------------------------------------------------------------------------------------#
def lhbl_backup(
        tree: SearchTreeRecord,
        leaf_values: Mapping[int, float],
        node_values: Mapping[int, float] | None = None
        ) -> dict[int, float]:
    """
    Bellman backup over a whole search tree

    Parameters
    ----------
    tree: `SearchTreeRecord`
        search tree with goal flags set
    leaf_values: mapping node id -> `float`
        values of the unsolved leaves
    node_values: mapping node id -> `float` or None
        optional direct estimates at internal nodes; an internal node takes the smaller of its
        backed-up value and this estimate

    Returns
    -------
    values: `dict`
        node id -> backed-up cost-to-go. Solved nodes are 0
    """
    values: dict[int, float] = {}
    for node in reversed(tree.nodes):
        nid = node.node_id
        if node.is_goal:
            values[nid] = 0.0
            continue
        edges = tree.children(nid)
        if not edges:
            if nid not in leaf_values:
                raise ValueError(f"no leaf value for node {nid}")
            values[nid] = float(leaf_values[nid])
            continue
        best = math.inf
        for edge in edges:
            if edge.child <= nid or edge.child not in values:
                raise SearchInternalError(f"edge {nid} -> {edge.child} breaks insertion order")
            best = min(best, edge.cost + values[edge.child])
        if node_values is not None and nid in node_values:
            best = min(best, float(node_values[nid]))
        values[nid] = best
    return values


#--------------------------------------------------------------------------------------------------#
# Dispatch                                                                                         #
#--------------------------------------------------------------------------------------------------#
FAMILY_HEADS = {"graph_v": "v", "graph_q": "q", "beam_v": "v", "beam_q": "q"}


def pathfind(
        domain: Domain,
        inst: ProblemInstance,
        spec,
        heuristic=None,
        rng: np.random.Generator | None = None,
        verbose: bool = False
        ) -> SearchResult:
    """
    Run the pathfinding algorithm named by an `AlgoSpec`

    Parameters
    ----------
    domain: `Domain`
        pathfinding domain
    inst: `ProblemInstance`
        instance to solve
    spec: `AlgoSpec`
        algorithm family and parameters
    heuristic: HeuristicV, HeuristicQ or None
        None uses the zero function of the family's head
    rng: `numpy.random.Generator` or None
        random generator
    verbose: `bool`
        per-iteration logging

    Returns
    -------
    result: `SearchResult`
    """
    family = spec.family
    if family == "rollout":
        return random_rollout(domain, inst, spec.I, rng, verbose)
    if family not in FAMILY_HEADS:
        raise ConfigError(f"{family} is a training-only algorithm and cannot be used for search")

    head = FAMILY_HEADS[family]
    if heuristic is None:
        if head == "q":
            require(domain, "FixedActsEnum", family)
            heuristic = zero_q(domain.num_actions())
        else:
            heuristic = zero_heuristic()
    if heuristic_head(heuristic) != head:
        raise ConfigError(f"{family} needs a heuristic-{head} function, "
                          f"got heuristic-{heuristic_head(heuristic)}")

    if family == "graph_v":
        return bwas(domain, inst, heuristic, spec.W, spec.B, spec.E, spec.I, rng, verbose)
    if family == "graph_q":
        return bwqs(domain, inst, heuristic, spec.W, spec.B, spec.E, spec.I, rng, verbose)
    return beam_search(domain, inst, heuristic, spec.B, spec.T, spec.E, spec.I, rng, verbose)

#--------------------------------------------------------------------------------------------------#
# oracles.py                                                                                       #
#--------------------------------------------------------------------------------------------------#
# Independent reference solutions used by the tests: full 8-puzzle BFS, grid Dijkstra and a        #
# naive recursive tree backup                                                                      #
#--------------------------------------------------------------------------------------------------#
import heapq
import math
from collections import deque
from functools import lru_cache

import numpy as np

from xube.search import SearchTreeRecord
from xube.sliding_tile import solved_tiles


@lru_cache(maxsize=None)
def stp3_distances() -> dict:
    """Breadth-first distances of every solvable 8-puzzle permutation to the canonical goal."""
    n = 3
    goal = solved_tiles(n)
    dist = {goal: 0}
    queue = deque([goal])
    while queue:
        tiles = queue.popleft()
        d = dist[tiles]
        blank = tiles.index(0)
        r, c = divmod(blank, n)
        for dr, dc in ((-1, 0), (1, 0), (0, -1), (0, 1)):
            r2, c2 = r + dr, c + dc
            if 0 <= r2 < n and 0 <= c2 < n:
                t = list(tiles)
                j = r2 * n + c2
                t[blank], t[j] = t[j], 0
                t = tuple(t)
                if t not in dist:
                    dist[t] = d + 1
                    queue.append(t)
    return dist


def grid_dijkstra(domain, start) -> dict:
    """Cheapest cost from ``start`` to every reachable grid state."""
    dist = {start: 0.0}
    heap = [(0.0, 0, start)]
    count = 1
    while heap:
        d, _, s = heapq.heappop(heap)
        if d > dist[s]:
            continue
        for _, tr in domain.expand(s):
            nd = d + tr.cost
            if nd < dist.get(tr.next_state, math.inf):
                dist[tr.next_state] = nd
                heapq.heappush(heap, (nd, count, tr.next_state))
                count += 1
    return dist


def naive_backup(tree: SearchTreeRecord, leaf_values, node_values=None, nid: int = 0) -> float:
    node = tree.nodes[nid]
    if node.is_goal:
        return 0.0
    edges = tree.children(nid)
    if not edges:
        return float(leaf_values[nid])
    best = min(e.cost + naive_backup(tree, leaf_values, node_values, e.child) for e in edges)
    if node_values is not None and nid in node_values:
        best = min(best, float(node_values[nid]))
    return best


def random_tree(rng: np.random.Generator, max_nodes: int = 200):
    """Random search tree with integer states, goal flags, leaf values and internal estimates."""
    size = int(rng.integers(1, max_nodes + 1))
    tree = SearchTreeRecord(goal=None)
    tree.add_root(0, bool(rng.random() < 0.05))
    for i in range(1, size):
        parent = int(rng.integers(i))
        tree.add_child(parent, f"a{i}", i, float(rng.integers(0, 5)), bool(rng.random() < 0.1))
    leaf_values = {nid: float(rng.uniform(0, 20)) for nid in tree.leaves if not tree.nodes[nid].is_goal}
    node_values = {n.node_id: float(rng.uniform(0, 30)) for n in tree.nodes
                   if tree.children(n.node_id) and rng.random() < 0.3}
    return tree, leaf_values, node_values

"""Bidirectional RRT* building blocks: trees, shrinking radius, rewiring.

A Tree owns its nodes (config, parent, cost-to-root) plus an NN index keyed by
node id. extend_rewire implements the sample-steer-choose-parent-rewire step;
try_connect_trees is the per-iteration bridge attempt between the two trees.
"""

import math
from dataclasses import dataclass

import numpy as np

from .cspace import Path, distance, steer
from .nnindex import NnIndex

_REWIRE_EPS = 1e-12


def unit_ball_volume(d):
    """Lebesgue measure of the unit ball in R^d."""
    return math.pi ** (d / 2.0) / math.gamma(d / 2.0 + 1.0)


def gamma_star(d, mu_free_upper):
    """Lower bound on the radius constant for asymptotic optimality.

    2 * (1 + 1/d)^(1/d) * (mu(C_free) / xi_d)^(1/d), with mu(C_free) replaced
    by an upper bound (a bounding-box volume keeps the inequality valid).
    """
    return 2.0 * (1.0 + 1.0 / d) ** (1.0 / d) * (mu_free_upper / unit_ball_volume(d)) ** (1.0 / d)


@dataclass(frozen=True)
class RadiusSchedule:
    """Shrinking connection radius eps(n) = gamma * (log n / n)^(1/d)."""

    gamma: float
    dim: int
    mu_upper: float

    def __post_init__(self):
        bound = gamma_star(self.dim, self.mu_upper)
        if not self.gamma > bound:
            raise ValueError(
                f"gamma {self.gamma} must exceed gamma* = {bound:.5f} "
                f"(d={self.dim}, mu upper bound {self.mu_upper})"
            )

    @classmethod
    def default(cls, dim, mu_upper, margin=1.1):
        return cls(margin * gamma_star(dim, mu_upper), dim, mu_upper)


def connection_radius(n, sched):
    """eps(n) with n clamped to at least 2 so the radius is always positive."""
    n = max(int(n), 2)
    return sched.gamma * (math.log(n) / n) ** (1.0 / sched.dim)


class Tree:
    def __init__(self, root_config):
        root = np.asarray(root_config, dtype=np.float64)
        self.configs = [root]
        self.parent = [None]
        self.cost = [0.0]
        self.children = [[]]
        self.nn = NnIndex(root.shape[0])
        self.nn.insert(root, 0)

    @property
    def size(self):
        return len(self.configs)

    def config(self, i):
        return self.configs[i]

    def add_node(self, q, parent_id):
        i = len(self.configs)
        self.configs.append(np.asarray(q, dtype=np.float64))
        self.parent.append(parent_id)
        self.cost.append(self.cost[parent_id] + distance(self.configs[parent_id], q))
        self.children.append([])
        self.children[parent_id].append(i)
        self.nn.insert(self.configs[i], i)
        return i

    def reparent(self, node_id, new_parent, new_cost):
        old = self.parent[node_id]
        self.children[old].remove(node_id)
        self.parent[node_id] = new_parent
        self.children[new_parent].append(node_id)
        delta = new_cost - self.cost[node_id]
        self.cost[node_id] = new_cost
        stack = list(self.children[node_id])
        while stack:
            i = stack.pop()
            self.cost[i] += delta
            stack.extend(self.children[i])

    def path_to_root(self, node_id):
        """Configs from the root to node_id, root first."""
        out = []
        i = node_id
        while i is not None:
            out.append(self.configs[i])
            i = self.parent[i]
        out.reverse()
        return out

    def insert_with_rewire(self, q_new, checker, eps, known_valid_parent=None):
        """Choose-parent + rewire insertion of a config known to be valid.

        Candidate parents are the radius-eps neighbours (nearest node as
        fallback), tried in order of resulting cost; known_valid_parent, when
        given, is a node whose motion to q_new was already checked and skips
        its motion check. Returns the new node id, or None when no candidate
        motion validates.
        """
        q_new = np.asarray(q_new, dtype=np.float64)
        neighbors = self.nn.within_radius(q_new, eps)
        if not neighbors:
            nid, nd = self.nn.nearest(q_new)
            neighbors = [(nid, nd)]
        order = sorted(
            ((self.cost[i] + d, i, d) for i, d in neighbors),
            key=lambda t: (t[0], t[1]),
        )
        parent = None
        for c, i, d in order:
            if i == known_valid_parent or checker.motion_valid(self.configs[i], q_new):
                parent = (i, c)
                break
        if parent is None:
            return None
        new_id = self.add_node(q_new, parent[0])
        # rewire: reroute any neighbour whose cost drops through the new node
        for i, d in neighbors:
            if i == parent[0]:
                continue
            new_cost = self.cost[new_id] + d
            if new_cost < self.cost[i] - _REWIRE_EPS and checker.motion_valid(q_new, self.configs[i]):
                self.reparent(i, new_id, new_cost)
        return new_id


def extend_rewire(tree, q_rand, checker, sched, step):
    """One RRT* extension toward q_rand; returns (new_id, (parent_id, new_id)).

    Steers from the nearest node by at most step, requires the new config and
    the chosen parent motion to be valid; returns None for a blocked
    extension.
    """
    near_id, _ = tree.nn.nearest(q_rand)
    q_new = steer(tree.config(near_id), q_rand, step)
    if not checker.config_valid(q_new):
        return None
    eps = connection_radius(tree.size, sched)
    new_id = tree.insert_with_rewire(q_new, checker, eps)
    if new_id is None:
        return None
    return new_id, (tree.parent[new_id], new_id)


def try_connect_trees(tree_a, tree_b, bridge_id, checker):
    """Bridge from a node of tree_a to the nearest node of tree_b.

    On a valid bridge motion returns the root-to-root path
    (root_a .. bridge, nearest_b .. root_b); otherwise None.
    """
    q_bridge = tree_a.config(bridge_id)
    nb_id, _ = tree_b.nn.nearest(q_bridge)
    if not checker.motion_valid(q_bridge, tree_b.config(nb_id)):
        return None
    fwd = tree_a.path_to_root(bridge_id)
    back = tree_b.path_to_root(nb_id)
    return Path(tuple(fwd) + tuple(reversed(back)))


def path_cost(path):
    """Total length of a piecewise-linear path."""
    wps = path.waypoints if isinstance(path, Path) else path
    return float(sum(distance(a, b) for a, b in zip(wps[:-1], wps[1:])))

import math

import numpy as np
import pytest

from ltrstar.cspace import Path, SpaceBounds, ValidityChecker, distance
from ltrstar.geometry import ConvexPolygon, Disc
from ltrstar.tree import (
    RadiusSchedule,
    Tree,
    connection_radius,
    extend_rewire,
    gamma_star,
    path_cost,
    try_connect_trees,
    unit_ball_volume,
)
from ltrstar.world import PointRobot, World

BOUNDS = SpaceBounds([0.0, 0.0], [10.0, 10.0])


def point_world(obstacles=()):
    return World(bounds=BOUNDS, static_obstacles=tuple(obstacles), objects=(),
                 robot=PointRobot(start=np.array([5.0, 5.0])))


SCHED = RadiusSchedule(2.0, 2, 1.0)


def test_connection_radius_formula():
    # direct formula evaluation oracle
    assert connection_radius(100, SCHED) == pytest.approx(
        2.0 * (math.log(100) / 100) ** 0.5, rel=1e-12)
    assert connection_radius(100, SCHED) == pytest.approx(0.42920, abs=1e-4)


def test_connection_radius_clamps_small_n():
    assert connection_radius(1, SCHED) == connection_radius(2, SCHED)
    assert connection_radius(2, SCHED) > 0.0


def test_connection_radius_monotone_and_vanishing():
    vals = [connection_radius(n, SCHED) for n in range(3, 20_000, 7)]
    assert all(a >= b for a, b in zip(vals, vals[1:]))
    assert connection_radius(10_000_000, SCHED) < 0.01


def test_gamma_star_value_and_rejection():
    # direct evaluation with xi_2 = pi
    expect = 2.0 * math.sqrt(1.5) * math.sqrt(1.0 / math.pi)
    assert gamma_star(2, 1.0) == pytest.approx(expect, rel=1e-12)
    assert gamma_star(2, 1.0) == pytest.approx(1.38198, abs=1e-4)
    with pytest.raises(ValueError):
        RadiusSchedule(expect, 2, 1.0)
    with pytest.raises(ValueError):
        RadiusSchedule(1.0, 2, 1.0)
    RadiusSchedule(expect + 1e-9, 2, 1.0)


def test_unit_ball_volumes():
    assert unit_ball_volume(2) == pytest.approx(math.pi, rel=1e-12)
    assert unit_ball_volume(3) == pytest.approx(4.0 / 3.0 * math.pi, rel=1e-12)


def test_extend_toward_far_sample():
    w = point_world()
    checker = ValidityChecker(w, 0.05)
    sched = RadiusSchedule.default(2, BOUNDS.volume())
    tree = Tree(np.array([0.0, 0.0]))
    got = extend_rewire(tree, np.array([10.0, 0.0]), checker, sched, 1.0)
    assert got is not None
    new_id, edge = got
    assert np.allclose(tree.config(new_id), [1.0, 0.0])
    assert edge == (0, new_id)
    assert tree.cost[new_id] == pytest.approx(1.0, abs=1e-12)


def test_extend_blocked_inside_obstacle():
    w = point_world([Disc([1.0, 0.0], 0.6)])
    checker = ValidityChecker(w, 0.05)
    sched = RadiusSchedule.default(2, BOUNDS.volume())
    tree = Tree(np.array([0.0, 0.0]))
    got = extend_rewire(tree, np.array([1.0, 0.0]), checker, sched, 1.0)
    assert got is None
    assert tree.size == 1


def test_rewire_fixture_reparents_and_updates_cost():
    """Hand-built fixture: routing B through the new node C lowers B's cost.

    Root R=(0,0); A=(2,0) child of R; B=(2.4, 1.8) child of A
    (cost 2 + 3 = 5... wait |AB| = sqrt(0.16+3.24)=~1.84) -- use exact values:
    B=(2,3) child of A: cost 2 + 3 = 5. New node C=(0,2.5) steered from R;
    |RC| = 2.5, |CB| = sqrt(4+0.25) = 2.0615...; via C: 4.5615 < 5 -> rewire.
    """
    w = point_world()
    checker = ValidityChecker(w, 0.05)
    sched = RadiusSchedule(18.0, 2, BOUNDS.volume())  # radius big enough to see B
    tree = Tree(np.array([0.0, 0.0]))
    a = tree.add_node(np.array([2.0, 0.0]), 0)
    b = tree.add_node(np.array([2.0, 3.0]), a)
    assert tree.cost[b] == pytest.approx(5.0)
    got = extend_rewire(tree, np.array([0.0, 2.5]), checker, sched, 5.0)
    assert got is not None
    c, _ = got
    assert np.allclose(tree.config(c), [0.0, 2.5])
    assert tree.parent[b] == c
    expect = 2.5 + math.sqrt(2.0**2 + 0.5**2)
    assert tree.cost[b] == pytest.approx(expect, abs=1e-12)


def test_cost_invariant_after_random_growth():
    rng = np.random.default_rng(4)
    w = point_world([Disc([5.0, 5.0], 1.5)])
    checker = ValidityChecker(w, 0.1)
    sched = RadiusSchedule.default(2, BOUNDS.volume())
    tree = Tree(np.array([1.0, 1.0]))
    for _ in range(300):
        extend_rewire(tree, rng.uniform(0, 10, 2), checker, sched, 0.8)
    # recompute every cost from the parent chain
    for i in range(tree.size):
        c, j = 0.0, i
        seen = set()
        while tree.parent[j] is not None:
            assert j not in seen, "cycle in parent links"
            seen.add(j)
            c += distance(tree.config(j), tree.config(tree.parent[j]))
            j = tree.parent[j]
        assert j == 0
        assert tree.cost[i] == pytest.approx(c, abs=1e-9)


def test_tree_edges_were_validated():
    rng = np.random.default_rng(8)
    w = point_world([Disc([5.0, 5.0], 2.0)])
    checker = ValidityChecker(w, 0.05)
    sched = RadiusSchedule.default(2, BOUNDS.volume())
    tree = Tree(np.array([0.5, 0.5]))
    for _ in range(250):
        extend_rewire(tree, rng.uniform(0, 10, 2), checker, sched, 0.7)
    for i in range(1, tree.size):
        assert checker.motion_valid(tree.config(tree.parent[i]), tree.config(i))


def test_try_connect_single_roots():
    w = point_world()
    checker = ValidityChecker(w, 0.05)
    ta = Tree(np.array([1.0, 1.0]))
    tb = Tree(np.array([4.0, 5.0]))
    p = try_connect_trees(ta, tb, 0, checker)
    assert p is not None and len(p) == 2
    assert path_cost(p) == pytest.approx(5.0)


def test_try_connect_blocked_by_wall():
    wall = ConvexPolygon([[4.9, 0.0], [5.1, 0.0], [5.1, 10.0], [4.9, 10.0]])
    w = point_world([wall])
    checker = ValidityChecker(w, 0.05)
    ta = Tree(np.array([1.0, 5.0]))
    tb = Tree(np.array([9.0, 5.0]))
    assert try_connect_trees(ta, tb, 0, checker) is None


def test_connect_result_revalidates():
    w = point_world([Disc([5.0, 2.0], 1.0)])
    checker = ValidityChecker(w, 0.05)
    ta = Tree(np.array([1.0, 8.0]))
    tb = Tree(np.array([9.0, 8.0]))
    p = try_connect_trees(ta, tb, 0, checker)
    assert p is not None
    for u, v in zip(p.waypoints[:-1], p.waypoints[1:]):
        assert checker.motion_valid(u, v)


def test_path_cost_values():
    assert path_cost(Path((np.zeros(2), np.array([3.0, 4.0])))) == 5.0
    p = Path((np.zeros(2), np.array([1.0, 0.0]), np.array([1.0, 1.0])))
    assert path_cost(p) == 2.0


def test_path_cost_matches_pairwise_oracle():
    rng = np.random.default_rng(2)
    wps = rng.uniform(-3, 3, size=(10, 3))
    expect = sum(
        math.sqrt(sum((a - b) ** 2 for a, b in zip(w1, w2)))
        for w1, w2 in zip(wps[:-1], wps[1:])
    )
    assert path_cost(Path(tuple(wps))) == pytest.approx(expect, rel=1e-12)

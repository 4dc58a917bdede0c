import numpy as np
import pytest

from ltrstar.cspace import Path, SpaceBounds, ValidityChecker, distance
from ltrstar.egraph import ExperienceGraph
from ltrstar.geometry import ConvexPolygon, Disc
from ltrstar.planner import (
    PlannerState,
    PlanPreconditionError,
    assemble_bootstrap_path,
    plan_trajectory,
)
from ltrstar.tree import RadiusSchedule, Tree, path_cost
from ltrstar.world import PointRobot, World

BOUNDS = SpaceBounds([0.0, 0.0], [10.0, 10.0])
SCHED = RadiusSchedule.default(2, 100.0)


def point_world(obstacles=()):
    return World(bounds=BOUNDS, static_obstacles=tuple(obstacles), objects=(),
                 robot=PointRobot(start=np.array([5.0, 5.0])))


def plan(state, qi, qt, world, **kw):
    args = dict(budget_s=1e9, max_iters=300, sched=SCHED, step=0.6,
                resolution=0.08, seed=0)
    args.update(kw)
    return plan_trajectory(state, np.asarray(qi, float), np.asarray(qt, float),
                           world, **args)


def test_invalid_endpoint_raises():
    w = point_world([Disc([5.0, 5.0], 1.0)])
    state = PlannerState.fresh(2)
    with pytest.raises(PlanPreconditionError):
        plan(state, [5.0, 5.0], [1.0, 1.0], w)
    with pytest.raises(PlanPreconditionError):
        plan(state, [1.0, 1.0], [5.0, 5.0], w)


def test_plan_empty_world_finds_near_straight_path():
    w = point_world()
    state = PlannerState.fresh(2)
    out = plan(state, [1.0, 1.0], [9.0, 9.0], w)
    assert out.path is not None
    assert out.final_cost == pytest.approx(path_cost(out.path))
    assert out.final_cost >= distance([1.0, 1.0], [9.0, 9.0])
    assert out.final_cost <= 1.15 * distance([1.0, 1.0], [9.0, 9.0])
    assert out.first_solution_iters is not None
    assert out.source == "tree_tree"


def test_outcome_invariants_and_history_monotone():
    w = point_world([Disc([5.0, 5.0], 2.0)])
    state = PlannerState.fresh(2)
    out = plan(state, [1.0, 5.0], [9.0, 5.0], w)
    assert out.path is not None
    assert out.first_solution_time_s > 0.0
    costs = [c for _, c in out.cost_history]
    assert costs == sorted(costs, reverse=True)
    assert out.final_cost == pytest.approx(min(costs), abs=1e-9)


def test_returned_path_revalidates_eagerly():
    w = point_world([Disc([4.0, 4.0], 1.2), Disc([7.0, 7.0], 1.0)])
    state = PlannerState.fresh(2)
    out = plan(state, [1.0, 1.0], [9.0, 9.0], w)
    checker = ValidityChecker(w, 0.08)
    for a, b in zip(out.path.waypoints[:-1], out.path.waypoints[1:]):
        assert checker.motion_valid(a, b)


def test_merge_grows_persistent_graph():
    w = point_world()
    state = PlannerState.fresh(2)
    assert state.g.size == 0
    state.g.begin_epoch()
    plan(state, [1.0, 1.0], [9.0, 9.0], w, max_iters=80)
    n1 = state.g.size
    assert n1 > 2
    state.g.begin_epoch()
    plan(state, [9.0, 1.0], [1.0, 9.0], w, max_iters=80)
    assert state.g.size > n1


def test_second_plan_bootstraps_from_graph():
    wall = ConvexPolygon([[4.7, 0.0], [5.3, 0.0], [5.3, 7.0], [4.7, 7.0]])
    w = point_world([wall])
    state = PlannerState.fresh(2)
    state.g.begin_epoch()
    first = plan(state, [1.0, 3.0], [9.0, 3.0], w, max_iters=800,
                 first_solution_only=True)
    assert first.path is not None
    state.g.begin_epoch()
    second = plan(state, [1.2, 3.4], [8.8, 2.6], w, max_iters=800,
                  first_solution_only=True, seed=7)
    assert second.path is not None
    assert second.source == "graph_bootstrap"
    assert second.first_solution_iters < first.first_solution_iters


def test_bootstrap_speedup_median_over_seeds():
    wall = ConvexPolygon([[4.7, 0.0], [5.3, 0.0], [5.3, 7.0], [4.7, 7.0]])
    w = point_world([wall])
    warm, cold = [], []
    for seed in range(10):
        state = PlannerState.fresh(2)
        state.g.begin_epoch()
        a = plan(state, [1.0, 3.0], [9.0, 3.0], w, max_iters=1500,
                 first_solution_only=True, seed=seed)
        state.g.begin_epoch()
        b = plan(state, [1.0, 3.2], [9.0, 2.8], w, max_iters=1500,
                 first_solution_only=True, seed=seed + 1000)
        fresh = PlannerState.fresh(2)
        fresh.g.begin_epoch()
        c = plan(fresh, [1.0, 3.2], [9.0, 2.8], w, max_iters=1500,
                 first_solution_only=True, seed=seed + 1000)
        if a.path and b.path and c.path:
            warm.append(b.first_solution_iters)
            cold.append(c.first_solution_iters)
    assert len(warm) >= 8
    assert float(np.median(warm)) < float(np.median(cold))


def test_seeded_determinism():
    w = point_world([Disc([5.0, 4.0], 1.5)])
    outs = []
    for _ in range(2):
        state = PlannerState.fresh(2)
        state.g.begin_epoch()
        outs.append(plan(state, [1.0, 1.0], [9.0, 9.0], w, seed=31))
    a, b = outs
    assert a.final_cost == b.final_cost
    assert a.iterations == b.iterations
    assert a.collision_checks == b.collision_checks
    assert a.first_solution_iters == b.first_solution_iters
    assert all(np.array_equal(x, y) for x, y in zip(a.path.waypoints, b.path.waypoints))


# -- assemble_bootstrap_path -------------------------------------------------

def _two_node_tree(root, tip, world):
    t = Tree(np.asarray(root, float))
    checker = ValidityChecker(world, 0.1)
    nid = t.insert_with_rewire(np.asarray(tip, float), checker, eps=20.0)
    assert nid is not None
    return t, nid


def test_assemble_counts_waypoints():
    w = point_world()
    ta, a = _two_node_tree([0.0, 0.0], [1.0, 0.0], w)
    tb, b = _two_node_tree([4.0, 0.0], [3.0, 0.0], w)
    mid = Path((np.array([1.0, 0.0]), np.array([2.0, 0.0]), np.array([3.0, 0.0])))
    out = assemble_bootstrap_path(ta, a, mid, b, tb)
    # 2 + 3 + 2 waypoints with the 2 junction duplicates removed
    assert len(out) == 5
    assert np.array_equal(out.waypoints[0], [0.0, 0.0])
    assert np.array_equal(out.waypoints[-1], [4.0, 0.0])


def test_assemble_degenerate_bridge():
    w = point_world()
    ta, a = _two_node_tree([0.0, 0.0], [1.0, 0.0], w)
    tb, b = _two_node_tree([3.0, 0.0], [1.0, 0.0], w)
    q = np.array([1.0, 0.0])
    mid = Path((q, q))
    out = assemble_bootstrap_path(ta, a, mid, b, tb)
    assert len(out) == 3
    assert path_cost(out) == pytest.approx(3.0)


def test_assemble_cost_is_sum_of_segments():
    w = point_world()
    ta, a = _two_node_tree([0.0, 0.0], [1.0, 1.0], w)
    tb, b = _two_node_tree([5.0, 0.0], [4.0, 1.0], w)
    mid = Path((np.array([1.0, 1.0]), np.array([2.5, 2.0]), np.array([4.0, 1.0])))
    out = assemble_bootstrap_path(ta, a, mid, b, tb)
    expect = (distance([0, 0], [1, 1]) + path_cost(mid) + distance([4, 1], [5, 0]))
    assert path_cost(out) == pytest.approx(expect, rel=1e-12)


def test_assemble_junction_mismatch_rejected():
    w = point_world()
    ta, a = _two_node_tree([0.0, 0.0], [1.0, 0.0], w)
    tb, b = _two_node_tree([4.0, 0.0], [3.0, 0.0], w)
    mid = Path((np.array([1.5, 0.0]), np.array([3.0, 0.0])))
    with pytest.raises(ValueError):
        assemble_bootstrap_path(ta, a, mid, b, tb)

"""Comparison planners: Lazy-PRM* and plain bidirectional RRT*.

birrt_star_plan is literally the hybrid planning loop run with an empty,
discarded experience graph, so seeded runs of the two are comparable
vertex-for-vertex. lazy_prm_star_plan grows a persistent lazy roadmap by
rejection-sampled vertex insertion and answers queries with the same lazy
shortest-path search the hybrid planner uses for bootstrapping.
"""

import time

import numpy as np

from .cspace import ValidityChecker, sample_uniform
from .egraph import ExperienceGraph
from .planner import (
    PlanOutcome,
    PlannerState,
    PlanPreconditionError,
    plan_seed_streams,
    plan_trajectory,
)
from .tree import connection_radius, path_cost

_MAX_REJECTS = 1000


def birrt_star_plan(q_init, q_target, world, *, budget_s, max_iters, sched, step,
                    resolution, seed=0, first_solution_only=False, record_trace=False):
    """Bidirectional RRT*: the hybrid loop with no memory between calls."""
    state = PlannerState.fresh(world.config_dim())
    return plan_trajectory(
        state, q_init, q_target, world,
        budget_s=budget_s, max_iters=max_iters, sched=sched, step=step,
        resolution=resolution, seed=seed, first_solution_only=first_solution_only,
        record_trace=record_trace, merge=False,
    )


def _endpoint_vertex(g, q, eps):
    """Vertex id for an endpoint config, reusing an exact-coordinate match."""
    if g.size:
        vid, d = g.nn.nearest(q)
        if d == 0.0:
            return vid
    return g.add_vertex_lazy(q, eps)


def lazy_prm_star_plan(g, q_init, q_target, world, *, budget_s, max_iters, sched,
                       resolution, seed=0, cadence=50, first_solution_only=False,
                       **_ignored):
    """Lazy-PRM*: insert valid samples with lazy radius edges, query periodically.

    Vertices are rejection-sampled to be collision-free (edges stay lazy);
    every `cadence` insertions, and once more at the cap, a lazy shortest-path
    query between the endpoints runs. The call returns as soon as a query
    validates a path (classic lazy roadmap query behaviour; refinement happens
    across tasks through the persistent roadmap, not within a call). The
    roadmap g persists across calls; callers begin a fresh epoch per episode,
    mirroring the other planners.
    """
    t0 = time.perf_counter()
    checker = ValidityChecker(world, resolution)
    q_init = np.asarray(q_init, dtype=np.float64)
    q_target = np.asarray(q_target, dtype=np.float64)
    if not checker.config_valid(q_init):
        raise PlanPreconditionError("q_init is not collision-free")
    if not checker.config_valid(q_target):
        raise PlanPreconditionError("q_target is not collision-free")
    cbounds = world.robot.config_bounds(world.bounds)
    rng = plan_seed_streams(seed)[0]

    src = _endpoint_vertex(g, q_init, connection_radius(max(g.size, 1), sched))
    dst = _endpoint_vertex(g, q_target, connection_radius(g.size, sched))

    outcome = PlanOutcome()
    found = None
    iters = 0

    def attempt_query():
        nonlocal found
        path = g.lazy_shortest_path(src, dst, checker)
        if path is not None:
            cost = path_cost(path)
            found = (cost, path, time.perf_counter() - t0, iters)
            outcome.cost_history.append((iters, cost))

    while iters < max_iters and (time.perf_counter() - t0) <= budget_s:
        iters += 1
        q = None
        for _ in range(_MAX_REJECTS):
            cand = sample_uniform(rng, cbounds)
            if checker.config_valid(cand):
                q = cand
                break
        if q is None:
            break
        g.add_vertex_lazy(q, connection_radius(g.size, sched))
        if iters % cadence == 0:
            attempt_query()
            if found is not None:
                break
    if found is None and iters % cadence != 0:
        attempt_query()

    outcome.iterations = iters
    outcome.collision_checks = checker.config_checks
    outcome.motion_checks = checker.motion_checks
    if found is not None:
        cost, path, t_first, i_first = found
        outcome.path = path
        outcome.final_cost = cost
        outcome.first_solution_time_s = t_first
        outcome.first_solution_iters = i_first
        outcome.source = "graph_bootstrap"
    return outcome

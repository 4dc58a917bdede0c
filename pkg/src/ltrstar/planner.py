"""Hybrid lazy replanner: dual RRT* trees + persistent lazy experience graph.

plan_trajectory grows a tree from each endpoint, alternating initial-first.
Every new tree vertex is mirrored into a task-local lazy graph (validated tree
edge, unknown radius edges). Each iteration tries a direct bridge to the other
tree; when the persistent graph is non-empty, new vertices also try to attach
to nearby graph vertices, and once both trees touch the graph a lazy
shortest-path search bootstraps a solution through it. The task-local graph is
merged into the persistent one before returning.

With an empty persistent graph none of the graph branches trigger, so the
loop is exactly a bidirectional RRT* (the birrt baseline reuses it verbatim).
"""

import time
from dataclasses import dataclass, field

import numpy as np

from .cspace import Path, ValidityChecker, distance, sample_uniform
from .egraph import ExperienceGraph
from .tree import Tree, connection_radius, extend_rewire, path_cost
from .world import NoGraspConfig, apply_pick, apply_place, config_valid, grasp_config, reach_config

SOURCE_TREE_TREE = "tree_tree"
SOURCE_GRAPH_BOOTSTRAP = "graph_bootstrap"

_PAIR_SCAN_CAP = 4096
_ATTACH_CHECKS_PER_ITER = 4


class PlanPreconditionError(ValueError):
    """A planning endpoint is invalid in the given world."""


@dataclass
class PlanOutcome:
    path: Path = None
    first_solution_time_s: float = None
    first_solution_iters: int = None
    final_cost: float = None
    iterations: int = 0
    collision_checks: int = 0
    motion_checks: int = 0
    source: str = None
    cost_history: list = field(default_factory=list)
    vertex_trace: list = None

    @property
    def success(self):
        return self.path is not None


@dataclass
class PlannerState:
    """Cross-task planner memory: the persistent lazy experience graph."""

    g: ExperienceGraph

    @classmethod
    def fresh(cls, dim):
        return cls(g=ExperienceGraph(dim))


def plan_seed_streams(seed):
    """Two independent, reproducible sample streams (initial tree, target tree)."""
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    children = ss.spawn(2)
    return tuple(np.random.Generator(np.random.PCG64(c)) for c in children)


def derive_plan_seed(base_seed, plan_index):
    """Per-plan seed for plan plan_index of a task sequence run."""
    return np.random.SeedSequence([int(base_seed), int(plan_index)])


def plan_trajectory(state, q_init, q_target, world, *, budget_s, max_iters, sched,
                    step, resolution, seed=0, first_solution_only=False,
                    record_trace=False, merge=True):
    """One planning episode against a fixed world (Alg. main loop body).

    Preconditions: both endpoints valid in world, and state.g's epoch freshly
    begun for this episode. Returns a PlanOutcome; exhausting the budget
    without a solution is a normal outcome with no path.
    """
    t0 = time.perf_counter()
    g = state.g
    checker = ValidityChecker(world, resolution)
    q_init = np.asarray(q_init, dtype=np.float64)
    q_target = np.asarray(q_target, dtype=np.float64)
    if not checker.config_valid(q_init):
        raise PlanPreconditionError("q_init is not collision-free")
    if not checker.config_valid(q_target):
        raise PlanPreconditionError("q_target is not collision-free")
    cbounds = world.robot.config_bounds(world.bounds)
    rngs = plan_seed_streams(seed)

    trees = (Tree(q_init), Tree(q_target))
    gp = ExperienceGraph(g.dim)
    gp.epoch = g.epoch
    node_to_gp = ({0: gp.add_vertex(q_init)}, {0: gp.add_vertex(q_target)})
    attach = ([], [])            # per tree: (tree node id, persistent-graph vid)
    attached_gvids = (set(), set())
    direct_pairs = []            # (node in tree0, node in tree1), bridge checked
    direct_seen = set()
    bootstraps = []              # (node0, node1, mid waypoints, mid cost)
    outcome = PlanOutcome(vertex_trace=[] if record_trace else None)
    first = None                 # (time_s, iters, source)
    best_seen = np.inf
    next_bootstrap_at = 2        # one attachment on each side
    iters = 0

    def note_candidate(cost, source):
        nonlocal first, best_seen
        if first is None:
            first = (time.perf_counter() - t0, iters, source)
        if cost < best_seen:
            best_seen = cost
            outcome.cost_history.append((iters, cost))

    stop = False
    while not stop and iters < max_iters and (time.perf_counter() - t0) <= budget_s:
        for ti in (0, 1):
            if iters >= max_iters:
                break
            iters += 1
            tree, other = trees[ti], trees[1 - ti]
            q_rand = sample_uniform(rngs[ti], cbounds)
            grown = extend_rewire(tree, q_rand, checker, sched, step)
            if grown is None:
                continue
            new_id, (parent_id, _) = grown
            q_new = tree.config(new_id)
            if record_trace:
                outcome.vertex_trace.append((ti, tuple(q_new)))

            # mirror the new vertex into the task-local lazy graph; the lazy
            # radius is sized by the merged graph this edge will live in
            gp_vid = gp.add_vertex_lazy(
                q_new, connection_radius(g.size + gp.size, sched),
                validated_parent=node_to_gp[ti][parent_id],
            )
            node_to_gp[ti][new_id] = gp_vid

            # bridge attempt toward the other tree
            nb_id, nb_d = other.nn.nearest(q_new)
            if checker.motion_valid(q_new, other.config(nb_id)):
                pair = (new_id, nb_id) if ti == 0 else (nb_id, new_id)
                if pair not in direct_seen:
                    direct_seen.add(pair)
                    direct_pairs.append(pair)
                cost = (trees[0].cost[pair[0]] + nb_d + trees[1].cost[pair[1]])
                note_candidate(cost, SOURCE_TREE_TREE)

            # attach nearby persistent-graph vertices to this tree; candidates
            # come nearest-first and the per-iteration connection work is
            # bounded so graph density cannot starve tree growth
            if g.size > 0:
                eps_att = connection_radius(g.size, sched)
                budget = _ATTACH_CHECKS_PER_ITER
                for g_vid, _ in g.nn.within_radius(q_new, eps_att):
                    if budget == 0:
                        break
                    if g_vid in attached_gvids[ti]:
                        continue
                    budget -= 1
                    q_v = g.config(g_vid)
                    if not checker.motion_valid(q_new, q_v):
                        continue
                    near_id, near_d = tree.nn.nearest(q_v)
                    if near_d == 0.0:
                        node_v = near_id
                    else:
                        node_v = tree.insert_with_rewire(
                            q_v, checker, connection_radius(tree.size, sched),
                            known_valid_parent=new_id,
                        )
                        if node_v is None:
                            continue
                    attach[ti].append((node_v, g_vid))
                    attached_gvids[ti].add(g_vid)
                    gp_v = gp.add_vertex(q_v)
                    gp.add_validated_edge(gp_v, gp_vid)
                    node_to_gp[ti][node_v] = gp_v

            # bootstrap through the persistent graph while no solution exists;
            # a failed search proves the tagged graph disconnected between the
            # attachment sets, so back off until they have grown substantially
            if first is None and attach[0] and attach[1]:
                n_att = len(attach[0]) + len(attach[1])
                if n_att >= next_bootstrap_at:
                    a_node, a_gvid, b_node, b_gvid = _best_attachment_pair(trees, attach)
                    mid = g.lazy_shortest_path(a_gvid, b_gvid, checker)
                    if mid is not None:
                        mid_cost = path_cost(mid)
                        bootstraps.append((a_node, b_node, mid.waypoints, mid_cost))
                        note_candidate(
                            trees[0].cost[a_node] + mid_cost + trees[1].cost[b_node],
                            SOURCE_GRAPH_BOOTSTRAP,
                        )
                    else:
                        next_bootstrap_at = max(n_att + 1, 2 * n_att)

            if first_solution_only and first is not None:
                stop = True
                break

    path, cost = _best_solution(trees, direct_pairs, bootstraps)
    if path is not None and cost < best_seen:
        outcome.cost_history.append((iters, cost))
    if merge:
        g.merge(gp, connection_radius(g.size + gp.size, sched))

    outcome.path = path
    outcome.final_cost = None if path is None else path_cost(path)
    outcome.iterations = iters
    outcome.collision_checks = checker.config_checks
    outcome.motion_checks = checker.motion_checks
    if first is not None:
        outcome.first_solution_time_s = first[0]
        outcome.first_solution_iters = first[1]
        outcome.source = first[2]
    return outcome


def _best_attachment_pair(trees, attach):
    """Attachment pair minimizing tree cost + straight-line bridge estimate."""
    alist, blist = attach
    if len(alist) * len(blist) > _PAIR_SCAN_CAP:
        a_node, a_gvid = min(alist, key=lambda t: (trees[0].cost[t[0]], t[0]))
        b_node, b_gvid = min(blist, key=lambda t: (trees[1].cost[t[0]], t[0]))
        return a_node, a_gvid, b_node, b_gvid
    best = None
    for a_node, a_gvid in alist:
        ca = trees[0].cost[a_node]
        qa = trees[0].config(a_node)
        for b_node, b_gvid in blist:
            c = ca + distance(qa, trees[1].config(b_node)) + trees[1].cost[b_node]
            k = (c, a_node, b_node)
            if best is None or k < best[0]:
                best = (k, a_node, a_gvid, b_node, b_gvid)
    return best[1:]


def _best_solution(trees, direct_pairs, bootstraps):
    """Best available path under the current (post-rewire) tree costs."""
    best = None
    for a, b in direct_pairs:
        c = trees[0].cost[a] + distance(trees[0].config(a), trees[1].config(b)) + trees[1].cost[b]
        if best is None or c < best[0]:
            best = (c, ("direct", a, b))
    for a, b, mid, mid_cost in bootstraps:
        c = trees[0].cost[a] + mid_cost + trees[1].cost[b]
        if best is None or c < best[0]:
            best = (c, ("bootstrap", a, b, mid))
    if best is None:
        return None, None
    cost, sol = best
    if sol[0] == "direct":
        _, a, b = sol
        wps = tuple(trees[0].path_to_root(a)) + tuple(reversed(trees[1].path_to_root(b)))
        return Path(wps), cost
    _, a, b, mid = sol
    return assemble_bootstrap_path(trees[0], a, Path(mid), b, trees[1]), cost


def assemble_bootstrap_path(tree_a, attach_a, graph_path, attach_b, tree_b):
    """Stitch tree_a's root->attach_a, the graph path, and attach_b->tree_b's root.

    The graph path must start at attach_a's config and end at attach_b's;
    duplicate junction waypoints are dropped.
    """
    qa = tree_a.config(attach_a)
    qb = tree_b.config(attach_b)
    mid = graph_path.waypoints
    if not (np.array_equal(mid[0], qa) and np.array_equal(mid[-1], qb)):
        raise ValueError("graph path endpoints do not match the attachment nodes")
    wps = list(tree_a.path_to_root(attach_a))
    for w in mid:
        if not np.array_equal(w, wps[-1]):
            wps.append(w)
    for w in reversed(tree_b.path_to_root(attach_b)):
        if not np.array_equal(w, wps[-1]):
            wps.append(w)
    return Path(tuple(wps))


# ---------------------------------------------------------------------------
# consecutive pick-and-place task loop
# ---------------------------------------------------------------------------

@dataclass
class TaskPhaseRecord:
    """One planning phase of one task, with the world it was planned in."""

    task_index: int              # 1-based
    phase: str                   # "pick" | "place"
    outcome: PlanOutcome = None
    world: object = None
    success: bool = False
    failure: str = None


def run_task_sequence(scenario, seed, planner="ltr", *, first_solution_only=False,
                      max_iters=None, state=None):
    """Execute every task in order: plan to the grasp, pick, plan to the
    target grasp, place. Returns the per-phase records (2 per task).

    planner selects the per-phase planning routine: "ltr" (persistent lazy
    experience graph), "lazyprm" (persistent lazy roadmap) or "birrt"
    (memoryless bidirectional RRT*). Any planning failure is recorded and
    stops the sequence.
    """
    from . import baselines

    params = scenario.params
    sched = scenario.radius_schedule()
    max_iters = params.max_iters if max_iters is None else max_iters
    world = scenario.world
    q_current = world.robot.start
    if planner == "ltr":
        state = state or PlannerState.fresh(world.config_dim())
    elif planner == "lazyprm":
        state = state or PlannerState.fresh(world.config_dim())
    elif planner != "birrt":
        raise ValueError(f"unknown planner {planner!r}")

    records = []
    plan_index = 0

    def run_plan(q_from, q_to, w):
        nonlocal plan_index
        seed_seq = derive_plan_seed(seed, plan_index)
        plan_index += 1
        kwargs = dict(budget_s=params.budget_s, max_iters=max_iters, sched=sched,
                      step=params.step, resolution=params.resolution,
                      seed=seed_seq, first_solution_only=first_solution_only)
        if planner == "ltr":
            state.g.begin_epoch()
            return plan_trajectory(state, q_from, q_to, w, **kwargs)
        if planner == "lazyprm":
            state.g.begin_epoch()
            return baselines.lazy_prm_star_plan(
                state.g, q_from, q_to, w,
                cadence=params.lazyprm_cadence, **kwargs)
        return baselines.birrt_star_plan(q_from, q_to, w, **kwargs)

    for t_idx, task in enumerate(scenario.tasks, start=1):
        obj = world.object_by_id(task.object_id)

        rec = TaskPhaseRecord(task_index=t_idx, phase="pick", world=world)
        records.append(rec)
        try:
            q_grasp = grasp_config(obj, world)
            rec.outcome = run_plan(q_current, q_grasp, world)
        except (NoGraspConfig, PlanPreconditionError) as exc:
            rec.failure = str(exc)
            break
        if rec.outcome.path is None:
            rec.failure = "no path within budget"
            break
        rec.success = True
        world = apply_pick(world, task.object_id, at_config=q_grasp)
        q_current = q_grasp

        rec = TaskPhaseRecord(task_index=t_idx, phase="place", world=world)
        records.append(rec)
        q_place = reach_config(world, task.target_pose.xy)
        if q_place is None or not config_valid(q_place, world):
            rec.failure = "target pose unreachable or blocked"
            break
        try:
            rec.outcome = run_plan(q_current, q_place, world)
        except PlanPreconditionError as exc:
            rec.failure = str(exc)
            break
        if rec.outcome.path is None:
            rec.failure = "no path within budget"
            break
        rec.success = True
        world = apply_place(world, task.target_pose, at_config=q_place)
        q_current = q_place

    return records

"""Lazy tree-based replanning for consecutive pick-and-place tasks.

Core pieces: a 2D manipulation world whose collision geometry mutates on
pick/place, bidirectional RRT* trees, a persistent lazily-validated experience
graph shared across tasks, Lazy-PRM* and bidirectional-RRT* baselines, and a
benchmark CLI (`plan`).
"""

from .cspace import (
    Path,
    SpaceBounds,
    ValidityChecker,
    distance,
    interpolate,
    motion_valid,
    sample_uniform,
    steer,
)
from .egraph import EdgeState, ExperienceGraph
from .geometry import ConvexPolygon, Disc
from .nnindex import NnIndex
from .planner import (
    PlanOutcome,
    PlannerState,
    PlanPreconditionError,
    assemble_bootstrap_path,
    plan_trajectory,
    run_task_sequence,
)
from .baselines import birrt_star_plan, lazy_prm_star_plan
from .scenario import Scenario, ScenarioError, load_scenario, load_scenario_file, scenario_to_json
from .tree import RadiusSchedule, Tree, connection_radius, extend_rewire, gamma_star, path_cost, try_connect_trees
from .world import (
    DiscRobot,
    NoGraspConfig,
    PlanarArm,
    PointRobot,
    Pose,
    Task,
    World,
    WorldObject,
    apply_pick,
    apply_place,
    config_valid,
    grasp_config,
)

__all__ = [
    "ConvexPolygon", "Disc", "DiscRobot", "EdgeState", "ExperienceGraph",
    "NnIndex", "NoGraspConfig", "Path", "PlanOutcome", "PlanPreconditionError",
    "PlanarArm", "PlannerState", "PointRobot", "Pose", "RadiusSchedule",
    "Scenario", "ScenarioError", "SpaceBounds", "Task", "Tree",
    "ValidityChecker", "World", "WorldObject", "apply_pick", "apply_place",
    "assemble_bootstrap_path", "birrt_star_plan", "config_valid",
    "connection_radius", "distance", "extend_rewire", "gamma_star",
    "grasp_config", "interpolate", "lazy_prm_star_plan", "load_scenario",
    "load_scenario_file", "motion_valid", "path_cost", "plan_trajectory",
    "run_task_sequence", "sample_uniform", "scenario_to_json", "steer",
    "try_connect_trees",
]

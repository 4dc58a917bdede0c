"""Scenario files: JSON schema, strict loader, canonical serializer.

The on-disk format is documented in docs/scenario-format.md. The loader
rejects unknown keys and names the offending field; the serializer emits a
canonical form (fixed key order, all optional fields explicit, two-space
indent) so that files written by it round-trip byte-identically.
"""

import json
from dataclasses import dataclass

import numpy as np

from .cspace import SpaceBounds
from .geometry import ConvexPolygon, Disc
from .tree import RadiusSchedule, gamma_star
from .world import DiscRobot, PlanarArm, PointRobot, Pose, Task, World, WorldObject


class ScenarioError(ValueError):
    pass


class ScenarioFormatError(ScenarioError):
    """Malformed document: wrong type, missing or unknown field."""


class ScenarioValidationError(ScenarioError):
    """Well-formed document violating a scenario invariant."""


@dataclass(frozen=True)
class ScenarioParams:
    gamma: float        # None -> 1.1 * gamma_star at load time
    step: float
    resolution: float
    budget_s: float
    max_iters: int
    seed: int
    lazyprm_cadence: int = 50


@dataclass(frozen=True)
class Scenario:
    name: str
    world: World
    tasks: tuple
    params: ScenarioParams

    def radius_schedule(self):
        cbounds = self.world.robot.config_bounds(self.world.bounds)
        mu_upper = cbounds.volume()
        gamma = self.params.gamma
        if gamma is None:
            return RadiusSchedule.default(cbounds.dim, mu_upper)
        return RadiusSchedule(gamma, cbounds.dim, mu_upper)


def _expect(mapping, field, kind, where, optional=False, default=None):
    if field not in mapping:
        if optional:
            return default
        raise ScenarioFormatError(f"{where}: missing field {field!r}")
    value = mapping[field]
    if kind is float:
        if not isinstance(value, (int, float)) or isinstance(value, bool):
            raise ScenarioFormatError(f"{where}.{field}: expected a number")
        return float(value)
    if kind is int:
        if not isinstance(value, int) or isinstance(value, bool):
            raise ScenarioFormatError(f"{where}.{field}: expected an integer")
        return value
    if not isinstance(value, kind):
        raise ScenarioFormatError(f"{where}.{field}: expected {kind.__name__}")
    return value


def _no_extras(mapping, allowed, where):
    extras = set(mapping) - set(allowed)
    if extras:
        raise ScenarioFormatError(f"{where}: unknown field {sorted(extras)[0]!r}")


def _vec2(value, where):
    if not (isinstance(value, list) and len(value) == 2
            and all(isinstance(x, (int, float)) and not isinstance(x, bool) for x in value)):
        raise ScenarioFormatError(f"{where}: expected a [x, y] pair")
    return np.array(value, dtype=np.float64)


def _parse_pose(doc, where):
    _no_extras(doc, ("xy", "theta"), where)
    xy = _vec2(_expect(doc, "xy", list, where), f"{where}.xy")
    theta = _expect(doc, "theta", float, where, optional=True, default=0.0)
    return Pose(xy, theta)


def _parse_shape(doc, where, local_frame):
    kind = _expect(doc, "shape", str, where)
    if kind == "disc":
        allowed = ("shape", "radius", "center")
        _no_extras(doc, allowed, where)
        radius = _expect(doc, "radius", float, where)
        default = [0.0, 0.0] if local_frame else None
        center = _expect(doc, "center", list, where, optional=local_frame, default=default)
        try:
            return Disc(_vec2(center, f"{where}.center"), radius)
        except ValueError as exc:
            raise ScenarioValidationError(f"{where}: {exc}") from None
    if kind == "polygon":
        _no_extras(doc, ("shape", "vertices"), where)
        verts = _expect(doc, "vertices", list, where)
        if not isinstance(verts, list) or len(verts) < 3:
            raise ScenarioFormatError(f"{where}.vertices: expected >= 3 [x, y] pairs")
        pts = [ _vec2(v, f"{where}.vertices[{i}]") for i, v in enumerate(verts) ]
        try:
            return ConvexPolygon(np.array(pts))
        except ValueError as exc:
            raise ScenarioValidationError(f"{where}: {exc}") from None
    raise ScenarioFormatError(f"{where}.shape: unknown shape kind {kind!r}")


def _parse_robot(doc, where):
    kind = _expect(doc, "kind", str, where)
    start = _expect(doc, "start", list, where)
    if kind == "point":
        _no_extras(doc, ("kind", "start"), where)
        return PointRobot(_vec2(start, f"{where}.start"))
    if kind == "disc":
        _no_extras(doc, ("kind", "start", "radius"), where)
        radius = _expect(doc, "radius", float, where)
        return DiscRobot(_vec2(start, f"{where}.start"), radius)
    if kind == "planar_arm":
        _no_extras(doc, ("kind", "start", "link_lengths", "base", "joint_limits"), where)
        lengths = _expect(doc, "link_lengths", list, where)
        base = _vec2(_expect(doc, "base", list, where), f"{where}.base")
        limits = None
        if doc.get("joint_limits") is not None:
            jl = doc["joint_limits"]
            _no_extras(jl, ("lower", "upper"), f"{where}.joint_limits")
            try:
                limits = SpaceBounds(jl["lower"], jl["upper"])
            except (KeyError, ValueError) as exc:
                raise ScenarioFormatError(f"{where}.joint_limits: {exc}") from None
        q0 = np.array(start, dtype=np.float64)
        try:
            arm = PlanarArm(q0, tuple(lengths), base, limits)
        except ValueError as exc:
            raise ScenarioValidationError(f"{where}: {exc}") from None
        if q0.shape != (arm.dim,):
            raise ScenarioValidationError(f"{where}.start: expected {arm.dim} joint values")
        return arm
    raise ScenarioFormatError(f"{where}.kind: unknown robot kind {kind!r}")


_PARAM_FIELDS = ("gamma", "step", "resolution", "budget_s", "max_iters", "seed",
                 "lazyprm_cadence")


def _parse_params(doc, where):
    _no_extras(doc, _PARAM_FIELDS, where)
    gamma = None
    if doc.get("gamma") is not None:
        gamma = _expect(doc, "gamma", float, where)
    params = ScenarioParams(
        gamma=gamma,
        step=_expect(doc, "step", float, where),
        resolution=_expect(doc, "resolution", float, where),
        budget_s=_expect(doc, "budget_s", float, where),
        max_iters=_expect(doc, "max_iters", int, where),
        seed=_expect(doc, "seed", int, where),
        lazyprm_cadence=_expect(doc, "lazyprm_cadence", int, where, optional=True, default=50),
    )
    for name in ("step", "resolution", "budget_s"):
        if getattr(params, name) <= 0:
            raise ScenarioValidationError(f"{where}.{name}: must be positive")
    if params.max_iters < 1:
        raise ScenarioValidationError(f"{where}.max_iters: must be >= 1")
    if params.lazyprm_cadence < 1:
        raise ScenarioValidationError(f"{where}.lazyprm_cadence: must be >= 1")
    return params


def load_scenario(text):
    """Parse and fully validate a scenario document (JSON string)."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioFormatError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise ScenarioFormatError("top level: expected an object")
    _no_extras(doc, ("name", "bounds", "robot", "static_obstacles", "objects",
                     "tasks", "params"), "top level")

    name = _expect(doc, "name", str, "top level")
    bdoc = _expect(doc, "bounds", dict, "top level")
    _no_extras(bdoc, ("lower", "upper"), "bounds")
    try:
        bounds = SpaceBounds(_vec2(_expect(bdoc, "lower", list, "bounds"), "bounds.lower"),
                             _vec2(_expect(bdoc, "upper", list, "bounds"), "bounds.upper"))
    except ValueError as exc:
        raise ScenarioValidationError(f"bounds: {exc}") from None
    if not np.all(bounds.lower < bounds.upper):
        raise ScenarioValidationError("bounds: workspace must have positive extent")

    robot = _parse_robot(_expect(doc, "robot", dict, "top level"), "robot")

    statics = []
    for i, od in enumerate(_expect(doc, "static_obstacles", list, "top level")):
        where = f"static_obstacles[{i}]"
        if not isinstance(od, dict):
            raise ScenarioFormatError(f"{where}: expected an object")
        statics.append(_parse_shape(od, where, local_frame=False))

    objects = []
    for i, od in enumerate(_expect(doc, "objects", list, "top level")):
        where = f"objects[{i}]"
        if not isinstance(od, dict):
            raise ScenarioFormatError(f"{where}: expected an object")
        _no_extras(od, ("id", "shape", "pose"), where)
        oid = _expect(od, "id", str, where)
        shape = _parse_shape(_expect(od, "shape", dict, where), f"{where}.shape", local_frame=True)
        pose = _parse_pose(_expect(od, "pose", dict, where), f"{where}.pose")
        if not bounds.contains(pose.xy):
            raise ScenarioValidationError(f"{where}.pose: outside workspace bounds")
        objects.append(WorldObject(oid, shape, pose))
    ids = [o.id for o in objects]
    if len(set(ids)) != len(ids):
        raise ScenarioValidationError("objects: ids must be unique")

    tasks = []
    for i, td in enumerate(_expect(doc, "tasks", list, "top level")):
        where = f"tasks[{i}]"
        if not isinstance(td, dict):
            raise ScenarioFormatError(f"{where}: expected an object")
        _no_extras(td, ("object_id", "target_pose"), where)
        oid = _expect(td, "object_id", str, where)
        if oid not in ids:
            raise ScenarioValidationError(f"{where}.object_id: no object {oid!r}")
        pose = _parse_pose(_expect(td, "target_pose", dict, where), f"{where}.target_pose")
        if not bounds.contains(pose.xy):
            raise ScenarioValidationError(f"{where}.target_pose: outside workspace bounds")
        tasks.append(Task(oid, pose))
    if not tasks:
        raise ScenarioValidationError("tasks: tasks non-empty")

    params = _parse_params(_expect(doc, "params", dict, "top level"), "params")

    world = World(bounds=bounds, static_obstacles=tuple(statics),
                  objects=tuple(objects), robot=robot)
    scenario = Scenario(name=name, world=world, tasks=tuple(tasks), params=params)
    try:
        scenario.radius_schedule()
    except ValueError as exc:
        raise ScenarioValidationError(f"params.gamma: {exc}") from None
    return scenario


def load_scenario_file(path):
    with open(path, "r", encoding="utf-8") as fh:
        return load_scenario(fh.read())


# ---------------------------------------------------------------------------
# canonical serialization
# ---------------------------------------------------------------------------

def _shape_doc(shape):
    if isinstance(shape, Disc):
        return {"shape": "disc", "center": [float(x) for x in shape.center],
                "radius": shape.radius}
    return {"shape": "polygon",
            "vertices": [[float(x) for x in v] for v in shape.vertices]}


def _robot_doc(robot):
    if robot.kind == "point":
        return {"kind": "point", "start": [float(x) for x in robot.start]}
    if robot.kind == "disc":
        return {"kind": "disc", "start": [float(x) for x in robot.start],
                "radius": robot.radius}
    return {
        "kind": "planar_arm",
        "start": [float(x) for x in robot.start],
        "link_lengths": list(robot.link_lengths),
        "base": [float(x) for x in robot.base],
        "joint_limits": {"lower": [float(x) for x in robot.joint_limits.lower],
                         "upper": [float(x) for x in robot.joint_limits.upper]},
    }


def scenario_to_json(scenario):
    """Canonical JSON text for a scenario (round-trips through load_scenario)."""
    doc = {
        "name": scenario.name,
        "bounds": {"lower": [float(x) for x in scenario.world.bounds.lower],
                   "upper": [float(x) for x in scenario.world.bounds.upper]},
        "robot": _robot_doc(scenario.world.robot),
        "static_obstacles": [_shape_doc(s)
                             for s in scenario.world.static_obstacles],
        "objects": [
            {"id": o.id,
             "shape": _shape_doc(o.shape),
             "pose": {"xy": [float(x) for x in o.pose.xy], "theta": o.pose.theta}}
            for o in scenario.world.objects
        ],
        "tasks": [
            {"object_id": t.object_id,
             "target_pose": {"xy": [float(x) for x in t.target_pose.xy],
                             "theta": t.target_pose.theta}}
            for t in scenario.tasks
        ],
        "params": {
            "gamma": scenario.params.gamma,
            "step": scenario.params.step,
            "resolution": scenario.params.resolution,
            "budget_s": scenario.params.budget_s,
            "max_iters": scenario.params.max_iters,
            "seed": scenario.params.seed,
            "lazyprm_cadence": scenario.params.lazyprm_cadence,
        },
    }
    return json.dumps(doc, indent=2) + "\n"

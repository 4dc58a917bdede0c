"""Desk-scale manipulation world: obstacles, movable objects, robots, pick/place.

Worlds are immutable; apply_pick/apply_place return new World values. The
robot's "reference point" (its center for point/disc robots, the arm tip for
planar arms) is the grasp anchor: grasp configurations put it on an object's
pose, and an attached object rides on it rigidly.

Movable-object shapes are expressed in the object's local frame relative to
the pose anchor. Keeping the collision body offset from the anchor is what
makes grasp configurations collision-free while robot-object collision stays
a real part of validity.
"""

from dataclasses import dataclass, field, replace

import numpy as np

from .cspace import SpaceBounds
from . import geometry as geom
from .geometry import ConvexPolygon, Disc, transform_shape

GRASP_TOL = 1e-6


class NoGraspConfig(Exception):
    """No reachable, collision-free grasp configuration exists."""


@dataclass(frozen=True)
class Pose:
    """SE(2) pose: anchor position plus orientation."""

    xy: np.ndarray
    theta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "xy", np.asarray(self.xy, dtype=np.float64))
        if self.xy.shape != (2,):
            raise ValueError("pose position must be a 2-vector")


@dataclass(frozen=True)
class WorldObject:
    """Movable object: local-frame shape placed at an SE(2) pose."""

    id: str
    shape: object
    pose: Pose

    def placed_shape(self, xy=None, theta=None):
        xy = self.pose.xy if xy is None else xy
        theta = self.pose.theta if theta is None else theta
        return transform_shape(self.shape, xy, theta)


@dataclass(frozen=True)
class Task:
    object_id: str
    target_pose: Pose


# ---------------------------------------------------------------------------
# robot models
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PointRobot:
    start: np.ndarray

    kind = "point"
    dim = 2

    def __post_init__(self):
        object.__setattr__(self, "start", np.asarray(self.start, dtype=np.float64))

    def config_bounds(self, workspace):
        return workspace

    def reference_points(self, Q):
        return Q

    def reach_config(self, target_xy):
        return np.asarray(target_xy, dtype=np.float64).copy()


@dataclass(frozen=True)
class DiscRobot:
    start: np.ndarray
    radius: float

    kind = "disc"
    dim = 2

    def __post_init__(self):
        object.__setattr__(self, "start", np.asarray(self.start, dtype=np.float64))
        if self.radius <= 0.0:
            raise ValueError("robot radius must be positive")

    def config_bounds(self, workspace):
        return workspace

    def reference_points(self, Q):
        return Q

    def reach_config(self, target_xy):
        return np.asarray(target_xy, dtype=np.float64).copy()


@dataclass(frozen=True)
class PlanarArm:
    """Planar revolute arm rooted at a fixed base; links are zero-width segments."""

    start: np.ndarray
    link_lengths: tuple
    base: np.ndarray
    joint_limits: SpaceBounds = None

    kind = "planar_arm"

    def __post_init__(self):
        object.__setattr__(self, "start", np.asarray(self.start, dtype=np.float64))
        object.__setattr__(self, "link_lengths", tuple(float(l) for l in self.link_lengths))
        object.__setattr__(self, "base", np.asarray(self.base, dtype=np.float64))
        if not 2 <= len(self.link_lengths) <= 4:
            raise ValueError("planar arm supports 2 to 4 links")
        if any(l <= 0 for l in self.link_lengths):
            raise ValueError("link lengths must be positive")
        if self.joint_limits is None:
            d = len(self.link_lengths)
            object.__setattr__(
                self, "joint_limits", SpaceBounds([-np.pi] * d, [np.pi] * d)
            )

    @property
    def dim(self):
        return len(self.link_lengths)

    def config_bounds(self, workspace):
        return self.joint_limits

    def joint_points(self, Q):
        """Forward kinematics: (N, L+1, 2) chain points, base first, tip last."""
        Q = np.atleast_2d(np.asarray(Q, dtype=np.float64))
        angles = np.cumsum(Q, axis=1)
        steps = np.stack(
            [np.cos(angles), np.sin(angles)], axis=2
        ) * np.asarray(self.link_lengths)[np.newaxis, :, np.newaxis]
        pts = np.concatenate(
            [np.zeros((Q.shape[0], 1, 2)), np.cumsum(steps, axis=1)], axis=1
        )
        return pts + self.base

    def reference_points(self, Q):
        return self.joint_points(Q)[:, -1, :]

    def reach_config(self, target_xy):
        """Position-only IK, fixed branch: joints beyond the second held at zero.

        Links 2..L act as one rigid extension, elbow bends counter-clockwise.
        Returns None when the target is out of reach or violates joint limits.
        """
        rel = np.asarray(target_xy, dtype=np.float64) - self.base
        l1 = self.link_lengths[0]
        l2 = sum(self.link_lengths[1:])
        r2 = float(rel @ rel)
        c2 = (r2 - l1 * l1 - l2 * l2) / (2.0 * l1 * l2)
        if not -1.0 <= c2 <= 1.0:
            return None
        t2 = np.arccos(c2)
        t1 = np.arctan2(rel[1], rel[0]) - np.arctan2(l2 * np.sin(t2), l1 + l2 * np.cos(t2))
        t1 = np.arctan2(np.sin(t1), np.cos(t1))
        q = np.zeros(self.dim)
        q[0], q[1] = t1, t2
        if not self.joint_limits.contains(q):
            return None
        return q


# ---------------------------------------------------------------------------
# world and validity
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class World:
    bounds: SpaceBounds
    static_obstacles: tuple
    objects: tuple
    robot: object
    attached: str = None

    def __post_init__(self):
        object.__setattr__(self, "static_obstacles", tuple(self.static_obstacles))
        object.__setattr__(self, "objects", tuple(self.objects))
        ids = [o.id for o in self.objects]
        if len(set(ids)) != len(ids):
            raise ValueError("object ids must be unique")
        if self.attached is not None and self.attached not in ids:
            raise ValueError(f"attached object {self.attached!r} does not exist")

    def object_by_id(self, object_id):
        for o in self.objects:
            if o.id == object_id:
                return o
        raise KeyError(object_id)

    def config_dim(self):
        return self.robot.dim

    def collision_obstacles(self):
        """Static obstacles plus placed (non-attached) object bodies, cached.

        Worlds are immutable, so the world-frame shapes are computed once.
        """
        cached = getattr(self, "_obstacle_cache", None)
        if cached is None:
            cached = list(self.static_obstacles)
            for o in self.objects:
                if o.id != self.attached:
                    cached.append(o.placed_shape())
            object.__setattr__(self, "_obstacle_cache", cached)
        return cached

    def collision_sets(self):
        """(disc_centers, disc_radii, polygons) over all current obstacles.

        Disc obstacles are packed into arrays so validity checks test them in
        one vectorized pass. Cached per immutable World.
        """
        cached = getattr(self, "_collision_sets", None)
        if cached is None:
            discs = [s for s in self.collision_obstacles() if isinstance(s, Disc)]
            polys = [s for s in self.collision_obstacles() if not isinstance(s, Disc)]
            if discs:
                centers = np.array([d.center for d in discs])
                radii = np.array([d.radius for d in discs])
            else:
                centers = np.empty((0, 2))
                radii = np.empty(0)
            cached = (centers, radii, polys)
            object.__setattr__(self, "_collision_sets", cached)
        return cached


def _attached_shapes(world, Q):
    """World-frame shapes of the attached object across N configs, or None."""
    if world.attached is None:
        return None
    obj = world.object_by_id(world.attached)
    refs = world.robot.reference_points(Q)
    return obj, refs


def config_valid_batch(Q, world):
    """Vectorized validity of N configurations; returns (N,) bool.

    A configuration is valid when the robot body (plus the attached object's
    body, if any) stays inside the workspace and overlaps no static obstacle
    and no non-attached object.
    """
    Q = np.atleast_2d(np.asarray(Q, dtype=np.float64))
    n = Q.shape[0]
    lower, upper = world.bounds.lower, world.bounds.upper
    obstacles = world.collision_obstacles()
    disc_centers, disc_radii, polys = world.collision_sets()

    def circles_clear(centers, radius):
        """No overlap between N circles and any obstacle, plus bounds."""
        ok = geom.discs_in_box(centers, radius, lower, upper)
        if disc_centers.shape[0]:
            dx = centers[:, 0:1] - disc_centers[np.newaxis, :, 0]
            dy = centers[:, 1:2] - disc_centers[np.newaxis, :, 1]
            rr = disc_radii + radius
            ok &= ~np.any(dx * dx + dy * dy < rr * rr, axis=1)
        for poly in polys:
            ok &= ~geom.discs_hit_polygon(centers, radius, poly)
        return ok

    robot = world.robot
    if robot.kind == "point":
        valid = geom.points_in_box(Q, lower, upper)
        if disc_centers.shape[0]:
            dx = Q[:, 0:1] - disc_centers[np.newaxis, :, 0]
            dy = Q[:, 1:2] - disc_centers[np.newaxis, :, 1]
            valid &= ~np.any(dx * dx + dy * dy < disc_radii * disc_radii, axis=1)
        for poly in polys:
            valid &= ~geom.points_in_polygon(Q, poly)
    elif robot.kind == "disc":
        valid = circles_clear(Q, robot.radius)
    else:
        pts = robot.joint_points(Q)
        valid = np.ones(n, dtype=bool)
        for k in range(pts.shape[1] - 1):
            p0, p1 = pts[:, k, :], pts[:, k + 1, :]
            valid &= geom.segments_in_box(p0, p1, lower, upper)
            for obs in obstacles:
                if isinstance(obs, Disc):
                    valid &= ~geom.segments_hit_disc(p0, p1, obs)
                else:
                    valid &= ~geom.segments_hit_polygon(p0, p1, obs)

    att = _attached_shapes(world, Q)
    if att is not None:
        obj, refs = att
        theta = obj.pose.theta
        if isinstance(obj.shape, Disc):
            c, s = np.cos(theta), np.sin(theta)
            centers = refs + np.stack(
                [c * obj.shape.center[0] - s * obj.shape.center[1],
                 s * obj.shape.center[0] + c * obj.shape.center[1]],
                axis=-1,
            )
            valid &= circles_clear(centers, obj.shape.radius)
        else:
            # polygon cargo: per-config placement (rare; cheap at desk scale)
            for i in np.nonzero(valid)[0]:
                shape = obj.placed_shape(xy=refs[i], theta=theta)
                if not geom.shape_in_box(shape, lower, upper):
                    valid[i] = False
                    continue
                for obs in obstacles:
                    if geom.shapes_overlap(shape, obs):
                        valid[i] = False
                        break
    return valid


def config_valid(q, world):
    """Validity of a single configuration."""
    q = np.asarray(q, dtype=np.float64)
    if q.shape != (world.config_dim(),):
        raise ValueError(
            f"configuration dimension {q.shape} does not match robot ({world.config_dim()})"
        )
    return bool(config_valid_batch(q[np.newaxis, :], world)[0])


def statics_only(world):
    """The same workspace with every movable object (and attachment) removed."""
    return replace(world, objects=(), attached=None)


def reach_config(world, target_xy):
    """Configuration putting the robot reference point at target_xy, or None."""
    return world.robot.reach_config(target_xy)


def grasp_config(obj, world):
    """Deterministic grasp configuration for an object in this world.

    The returned configuration is collision-free and places the reference
    point on the object's pose anchor (tolerance 1e-6 m); raises NoGraspConfig
    when the anchor is unreachable or the grasp is blocked.
    """
    q = reach_config(world, obj.pose.xy)
    if q is None:
        raise NoGraspConfig(f"object {obj.id!r} is out of reach")
    ref = world.robot.reference_points(q[np.newaxis, :])[0]
    if not np.all(np.abs(ref - obj.pose.xy) <= GRASP_TOL):
        raise NoGraspConfig(f"object {obj.id!r}: reference point misses the anchor")
    if not config_valid(q, world):
        raise NoGraspConfig(f"object {obj.id!r}: grasp configuration is in collision")
    return q


def apply_pick(world, object_id, at_config=None):
    """Attach object_id to the robot; it stops being a free-standing obstacle.

    If at_config is given, the robot reference point is verified to be on the
    object's anchor.
    """
    if world.attached is not None:
        raise ValueError(f"cannot pick {object_id!r}: {world.attached!r} already attached")
    obj = world.object_by_id(object_id)
    if at_config is not None:
        ref = world.robot.reference_points(np.asarray(at_config)[np.newaxis, :])[0]
        if not np.all(np.abs(ref - obj.pose.xy) <= GRASP_TOL):
            raise ValueError(f"cannot pick {object_id!r}: robot is not at the object")
    return replace(world, attached=object_id)


def apply_place(world, target_pose, at_config=None):
    """Detach the attached object at target_pose, making it an obstacle again."""
    if world.attached is None:
        raise ValueError("cannot place: nothing attached")
    if at_config is not None:
        ref = world.robot.reference_points(np.asarray(at_config)[np.newaxis, :])[0]
        if not np.all(np.abs(ref - target_pose.xy) <= GRASP_TOL):
            raise ValueError("cannot place: robot is not at the target pose")
    objects = tuple(
        replace(o, pose=target_pose) if o.id == world.attached else o
        for o in world.objects
    )
    return replace(world, objects=objects, attached=None)

"""Configuration space primitives: metric, interpolation, sampling, motion validity.

Configurations are plain float64 numpy arrays of shape (d,). All operations are
pure; randomness comes in only through an explicit numpy Generator so sample
streams are reproducible bit-for-bit for a given seed.
"""

import math
from dataclasses import dataclass, field

import numpy as np


def as_config(q, dim=None):
    """Coerce to a float64 configuration array, optionally checking dimension."""
    q = np.asarray(q, dtype=np.float64)
    if q.ndim != 1:
        raise ValueError(f"configuration must be 1-d, got shape {q.shape}")
    if dim is not None and q.shape[0] != dim:
        raise ValueError(f"configuration has dimension {q.shape[0]}, expected {dim}")
    return q


@dataclass(frozen=True)
class SpaceBounds:
    """Axis-aligned box bounds, one (lower, upper) pair per dimension."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "lower", np.asarray(self.lower, dtype=np.float64))
        object.__setattr__(self, "upper", np.asarray(self.upper, dtype=np.float64))
        if self.lower.shape != self.upper.shape or self.lower.ndim != 1:
            raise ValueError("bounds lower/upper must be 1-d arrays of equal length")
        if not np.all(self.lower <= self.upper):
            raise ValueError("bounds require lower[i] <= upper[i] for all i")

    @property
    def dim(self):
        return self.lower.shape[0]

    @property
    def widths(self):
        return self.upper - self.lower

    def volume(self):
        return float(np.prod(self.widths))

    def contains(self, q):
        q = np.asarray(q, dtype=np.float64)
        return bool(np.all(q >= self.lower) and np.all(q <= self.upper))


@dataclass(frozen=True)
class Path:
    """Piecewise-linear trajectory through configuration space (>= 2 waypoints)."""

    waypoints: tuple = field(default_factory=tuple)

    def __post_init__(self):
        wps = tuple(np.asarray(w, dtype=np.float64) for w in self.waypoints)
        if len(wps) < 2:
            raise ValueError("a path needs at least 2 waypoints")
        d = wps[0].shape[0]
        if any(w.shape != (d,) for w in wps):
            raise ValueError("all waypoints must share one dimension")
        object.__setattr__(self, "waypoints", wps)

    def __len__(self):
        return len(self.waypoints)

    @property
    def start(self):
        return self.waypoints[0]

    @property
    def end(self):
        return self.waypoints[-1]


def distance(a, b):
    """Euclidean distance between two configurations of equal dimension."""
    if not isinstance(a, np.ndarray):
        a = np.asarray(a, dtype=np.float64)
    if not isinstance(b, np.ndarray):
        b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    # scalar loop: far cheaper than a numpy reduction at d <= 4
    s = 0.0
    for x, y in zip(a.tolist(), b.tolist()):
        s += (x - y) * (x - y)
    return math.sqrt(s)


def interpolate(a, b, t):
    """Point at parameter t in [0, 1] on the straight segment from a to b.

    Computed as (1-t)*a + t*b so the endpoints are returned exactly at t=0 and
    t=1.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"dimension mismatch: {a.shape} vs {b.shape}")
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"interpolation parameter {t} outside [0, 1]")
    return (1.0 - t) * a + t * b


def sample_uniform(rng, bounds):
    """One configuration uniform over the bounds box, drawn from rng.

    Affine transform of rng.random: coordinates are independently uniform in
    [lower[i], upper[i]] and the stream is bit-reproducible for a given seed.
    """
    return bounds.lower + rng.random(bounds.dim) * bounds.widths


def steer(from_q, to_q, max_step):
    """Move from from_q toward to_q, capped at max_step.

    Returns to_q itself when it is within max_step; otherwise the point at
    exactly max_step along the segment.
    """
    from_q = np.asarray(from_q, dtype=np.float64)
    to_q = np.asarray(to_q, dtype=np.float64)
    if from_q.shape != to_q.shape:
        raise ValueError(f"dimension mismatch: {from_q.shape} vs {to_q.shape}")
    d = distance(from_q, to_q)
    if d <= max_step:
        return to_q
    return from_q + (max_step / d) * (to_q - from_q)


def segment_points(a, b, resolution):
    """Configurations spaced <= resolution along [a, b], endpoints included.

    The endpoint pair is ordered canonically (lexicographically) before the
    points are generated, so the check set for (a, b) and (b, a) is identical
    bit-for-bit.
    """
    if resolution <= 0.0:
        raise ValueError("resolution must be positive")
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    for x, y in zip(a, b):
        if x < y:
            break
        if x > y:
            a, b = b, a
            break
    d = distance(a, b)
    n = int(np.ceil(d / resolution))
    if n == 0:
        return a[np.newaxis, :]
    ts = np.arange(n + 1, dtype=np.float64) / n
    return (1.0 - ts)[:, np.newaxis] * a + ts[:, np.newaxis] * b


def motion_valid(a, b, world, resolution):
    """Discretized validity of the straight motion from a to b in world.

    True iff every interpolated configuration at spacing <= resolution
    (both endpoints included) is valid; ceil(dist/resolution)+1 checks.
    """
    from .world import config_valid_batch

    pts = segment_points(a, b, resolution)
    return bool(np.all(config_valid_batch(pts, world)))


class ValidityChecker:
    """Collision checking against one world, with check counters.

    Planners route every configuration and motion test through one of these so
    benchmark rows and the lazy-revalidation tests can count exactly how much
    collision checking happened.
    """

    def __init__(self, world, resolution):
        if resolution <= 0.0:
            raise ValueError("resolution must be positive")
        self.world = world
        self.resolution = resolution
        self.config_checks = 0
        self.motion_checks = 0

    def config_valid(self, q):
        from .world import config_valid_batch

        self.config_checks += 1
        q = np.asarray(q, dtype=np.float64)
        return bool(config_valid_batch(q[np.newaxis, :], self.world)[0])

    def motion_valid(self, a, b):
        from .world import config_valid_batch

        pts = segment_points(a, b, self.resolution)
        self.config_checks += pts.shape[0]
        self.motion_checks += 1
        return bool(np.all(config_valid_batch(pts, self.world)))

    def motion_valid_static(self, a, b):
        """Motion validity against bounds and static obstacles only.

        Movable objects and any attachment are ignored, so a False here holds
        in every world this scenario can mutate into.
        """
        from .world import config_valid_batch, statics_only

        world = getattr(self, "_static_world", None)
        if world is None:
            world = statics_only(self.world)
            self._static_world = world
        pts = segment_points(a, b, self.resolution)
        self.config_checks += pts.shape[0]
        return bool(np.all(config_valid_batch(pts, world)))

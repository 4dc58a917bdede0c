"""2D collision primitives: discs, convex polygons, segments, boxes.

Conventions: all predicates treat shape interiors as solid and boundaries as
free, i.e. touching is not a collision. Vectorized variants take an (N, 2)
array of query points / segment endpoints and return an (N,) bool array.
"""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class Disc:
    center: np.ndarray
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", np.asarray(self.center, dtype=np.float64))
        if self.radius <= 0.0:
            raise ValueError("disc radius must be positive")


@dataclass(frozen=True)
class ConvexPolygon:
    """Convex polygon, vertices counter-clockwise. Constructor reorders CW input."""

    vertices: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vertices, dtype=np.float64)
        if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] < 3:
            raise ValueError("polygon needs >= 3 vertices of shape (n, 2)")
        area2 = _signed_area2(v)
        if area2 < 0.0:
            v = v[::-1].copy()
            area2 = -area2
        if area2 == 0.0:
            raise ValueError("polygon vertices are collinear")
        if not _is_convex_ccw(v):
            raise ValueError("polygon is not convex")
        object.__setattr__(self, "vertices", v)
        e = np.roll(v, -1, axis=0) - v
        object.__setattr__(self, "edges", e)
        object.__setattr__(self, "edge_len2", e[:, 0] ** 2 + e[:, 1] ** 2)


def _signed_area2(v):
    x, y = v[:, 0], v[:, 1]
    return float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def _is_convex_ccw(v):
    e = np.roll(v, -1, axis=0) - v
    cross = e[:, 0] * np.roll(e, -1, axis=0)[:, 1] - e[:, 1] * np.roll(e, -1, axis=0)[:, 0]
    return bool(np.all(cross >= 0.0))


def transform_shape(shape, xy, theta):
    """Place a local-frame shape at pose (xy, theta): rotate then translate."""
    xy = np.asarray(xy, dtype=np.float64)
    c, s = np.cos(theta), np.sin(theta)
    rot = np.array([[c, -s], [s, c]])
    if isinstance(shape, Disc):
        return Disc(rot @ shape.center + xy, shape.radius)
    return ConvexPolygon(shape.vertices @ rot.T + xy)


# ---------------------------------------------------------------------------
# point queries
# ---------------------------------------------------------------------------

def points_in_disc(pts, disc):
    d = pts - disc.center
    return d[:, 0] ** 2 + d[:, 1] ** 2 < disc.radius**2


def points_in_polygon(pts, poly):
    """Strict interior test against a CCW convex polygon."""
    v = poly.vertices
    e = poly.edges
    # cross(edge, p - v) > 0 for every edge <=> strictly inside
    rel = pts[:, np.newaxis, :] - v[np.newaxis, :, :]
    cross = e[np.newaxis, :, 0] * rel[:, :, 1] - e[np.newaxis, :, 1] * rel[:, :, 0]
    return np.all(cross > 0.0, axis=1)


def points_in_box(pts, lower, upper):
    return np.all((pts >= lower) & (pts <= upper), axis=1)


# ---------------------------------------------------------------------------
# segment queries (vectorized over N segments against one shape)
# ---------------------------------------------------------------------------

def _segment_point_dist2(p0, p1, q):
    """Squared distance from point q to each segment (p0[i], p1[i])."""
    d = p1 - p0
    len2 = d[:, 0] ** 2 + d[:, 1] ** 2
    rel = q - p0
    t = np.where(len2 > 0.0, (rel[:, 0] * d[:, 0] + rel[:, 1] * d[:, 1]) / np.where(len2 > 0.0, len2, 1.0), 0.0)
    t = np.clip(t, 0.0, 1.0)
    closest = p0 + t[:, np.newaxis] * d
    diff = q - closest
    return diff[:, 0] ** 2 + diff[:, 1] ** 2


def segments_hit_disc(p0, p1, disc):
    return _segment_point_dist2(p0, p1, disc.center) < disc.radius**2


def _cross(ox, oy, ax, ay, bx, by):
    return (ax - ox) * (by - oy) - (ay - oy) * (bx - ox)


def segments_cross_segment(p0, p1, q0, q1):
    """Proper crossing of N segments against one segment (touching is free)."""
    d1 = _cross(q0[0], q0[1], q1[0], q1[1], p0[:, 0], p0[:, 1])
    d2 = _cross(q0[0], q0[1], q1[0], q1[1], p1[:, 0], p1[:, 1])
    d3 = _cross(p0[:, 0], p0[:, 1], p1[:, 0], p1[:, 1], np.full(p0.shape[0], q0[0]), np.full(p0.shape[0], q0[1]))
    d4 = _cross(p0[:, 0], p0[:, 1], p1[:, 0], p1[:, 1], np.full(p0.shape[0], q1[0]), np.full(p0.shape[0], q1[1]))
    return ((d1 > 0) != (d2 > 0)) & (d1 != 0) & (d2 != 0) & ((d3 > 0) != (d4 > 0)) & (d3 != 0) & (d4 != 0)


def segments_hit_polygon(p0, p1, poly):
    """N segments vs convex polygon: interior overlap (crossing or endpoint inside)."""
    hit = points_in_polygon(p0, poly) | points_in_polygon(p1, poly)
    v = poly.vertices
    for i in range(v.shape[0]):
        hit |= segments_cross_segment(p0, p1, v[i], v[(i + 1) % v.shape[0]])
    return hit


def segments_in_box(p0, p1, lower, upper):
    """Both endpoints inside the box (box is convex, so the segment is too)."""
    return points_in_box(p0, lower, upper) & points_in_box(p1, lower, upper)


# ---------------------------------------------------------------------------
# disc queries (vectorized over N disc centers, one shared radius)
# ---------------------------------------------------------------------------

def discs_hit_disc(centers, radius, disc):
    d = centers - disc.center
    rr = radius + disc.radius
    return d[:, 0] ** 2 + d[:, 1] ** 2 < rr**2


def discs_hit_polygon(centers, radius, poly):
    """Disc-polygon overlap: center inside, or within radius of an edge.

    All polygon edges are tested in one fused (N, m) computation.
    """
    v = poly.vertices
    e = poly.edges
    rel = centers[:, np.newaxis, :] - v[np.newaxis, :, :]          # (N, m, 2)
    t = np.clip((rel[..., 0] * e[:, 0] + rel[..., 1] * e[:, 1]) / poly.edge_len2, 0.0, 1.0)
    dx = rel[..., 0] - t * e[:, 0]
    dy = rel[..., 1] - t * e[:, 1]
    near_edge = np.any(dx * dx + dy * dy < radius**2, axis=1)
    # strict interior: left of every CCW edge
    cross = e[:, 0] * rel[..., 1] - e[:, 1] * rel[..., 0]
    inside = np.all(cross > 0.0, axis=1)
    return near_edge | inside


def discs_in_box(centers, radius, lower, upper):
    return np.all((centers >= lower + radius) & (centers <= upper - radius), axis=1)


# ---------------------------------------------------------------------------
# one-off shape vs shape (used for placed objects against the static world)
# ---------------------------------------------------------------------------

def _project(poly, axis):
    d = poly.vertices @ axis
    return d.min(), d.max()


def polygons_overlap(a, b):
    """Separating-axis test for two convex polygons; touching counts as free."""
    for poly in (a, b):
        v = poly.vertices
        e = np.roll(v, -1, axis=0) - v
        for i in range(v.shape[0]):
            axis = np.array([-e[i, 1], e[i, 0]])
            lo1, hi1 = _project(a, axis)
            lo2, hi2 = _project(b, axis)
            if hi1 <= lo2 or hi2 <= lo1:
                return False
    return True


def shapes_overlap(s1, s2):
    """Interior overlap between two placed shapes (Disc or ConvexPolygon)."""
    if isinstance(s1, Disc) and isinstance(s2, Disc):
        return bool(discs_hit_disc(s1.center[np.newaxis, :], s1.radius, s2)[0])
    if isinstance(s1, Disc):
        return bool(discs_hit_polygon(s1.center[np.newaxis, :], s1.radius, s2)[0])
    if isinstance(s2, Disc):
        return bool(discs_hit_polygon(s2.center[np.newaxis, :], s2.radius, s1)[0])
    return polygons_overlap(s1, s2)


def shape_in_box(shape, lower, upper):
    if isinstance(shape, Disc):
        return bool(discs_in_box(shape.center[np.newaxis, :], shape.radius, lower, upper)[0])
    return bool(np.all(points_in_box(shape.vertices, lower, upper)))

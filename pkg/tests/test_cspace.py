import math

import numpy as np
import pytest

from ltrstar.cspace import (
    Path,
    SpaceBounds,
    ValidityChecker,
    distance,
    interpolate,
    motion_valid,
    sample_uniform,
    segment_points,
    steer,
)
from ltrstar.geometry import Disc
from ltrstar.world import PointRobot, World


def make_world(obstacles=()):
    return World(
        bounds=SpaceBounds([0.0, 0.0], [10.0, 10.0]),
        static_obstacles=tuple(obstacles),
        objects=(),
        robot=PointRobot(start=[5.0, 5.0]),
    )


def test_distance_identity():
    assert distance([0.0, 0.0], [0.0, 0.0]) == 0.0


def test_distance_345():
    assert distance([0.0, 0.0], [3.0, 4.0]) == 5.0


def test_distance_4d_hand_computed():
    a = [0.3, -1.2, 2.0, 0.7]
    b = [1.1, 0.4, -0.5, 2.2]
    # independent scalar oracle: sum of squared differences
    expect = math.sqrt(sum((x - y) ** 2 for x, y in zip(a, b)))
    assert distance(a, b) == pytest.approx(expect, abs=0.0)
    assert expect == pytest.approx(3.4205262752974143, rel=1e-15)


def test_distance_dimension_mismatch():
    with pytest.raises(ValueError):
        distance([0.0, 0.0], [0.0, 0.0, 0.0])


def test_distance_metric_axioms_random_triples():
    rng = np.random.default_rng(7)
    for _ in range(200):
        a, b, c = rng.uniform(-5, 5, size=(3, 3))
        assert distance(a, b) >= 0.0
        assert distance(a, b) == distance(b, a)
        assert distance(a, c) <= distance(a, b) + distance(b, c) + 1e-12


def test_interpolate_endpoints_exact():
    a = np.array([0.1, 0.7])
    b = np.array([3.3, -2.2])
    assert np.array_equal(interpolate(a, b, 0.0), a)
    assert np.array_equal(interpolate(a, b, 1.0), b)


def test_interpolate_midpoint():
    assert np.allclose(interpolate([0.0, 0.0], [2.0, 2.0], 0.5), [1.0, 1.0])


def test_interpolate_third():
    # scalar oracle: 1 + (4-1)/3 = 2
    assert np.allclose(interpolate([1.0, 0.0], [4.0, 0.0], 1.0 / 3.0), [2.0, 0.0])


def test_interpolate_t_out_of_range():
    with pytest.raises(ValueError):
        interpolate([0.0], [1.0], 1.5)
    with pytest.raises(ValueError):
        interpolate([0.0], [1.0], -0.1)


def test_sample_uniform_deterministic():
    bounds = SpaceBounds([0.0, 0.0], [1.0, 1.0])
    a = sample_uniform(np.random.Generator(np.random.PCG64(42)), bounds)
    b = sample_uniform(np.random.Generator(np.random.PCG64(42)), bounds)
    assert np.array_equal(a, b)


def test_sample_uniform_stream_reproducible():
    bounds = SpaceBounds([-1.0, 2.0], [1.0, 5.0])
    r1 = np.random.Generator(np.random.PCG64(3))
    r2 = np.random.Generator(np.random.PCG64(3))
    s1 = np.array([sample_uniform(r1, bounds) for _ in range(100)])
    s2 = np.array([sample_uniform(r2, bounds) for _ in range(100)])
    assert np.array_equal(s1, s2)


def test_sample_uniform_mean():
    bounds = SpaceBounds([0.0, 0.0], [1.0, 1.0])
    rng = np.random.Generator(np.random.PCG64(0))
    draws = np.array([sample_uniform(rng, bounds) for _ in range(100_000)])
    assert np.all(np.abs(draws.mean(axis=0) - 0.5) < 0.01)
    assert np.all(draws >= 0.0) and np.all(draws <= 1.0)


def test_sample_uniform_degenerate_box():
    bounds = SpaceBounds([2.0, 5.0], [2.0, 5.0])
    rng = np.random.Generator(np.random.PCG64(1))
    for _ in range(10):
        assert np.array_equal(sample_uniform(rng, bounds), [2.0, 5.0])


def test_steer_returns_target_when_same():
    q = np.array([1.0, 2.0])
    assert np.array_equal(steer(q, q, 0.5), q)


def test_steer_caps_at_step():
    assert np.allclose(steer([0.0, 0.0], [10.0, 0.0], 1.0), [1.0, 0.0])


def test_steer_within_step_passthrough():
    to = np.array([0.5, 0.0])
    assert np.array_equal(steer([0.0, 0.0], to, 1.0), to)


def test_steer_never_exceeds_step():
    rng = np.random.default_rng(11)
    for _ in range(200):
        a, b = rng.uniform(-3, 3, size=(2, 4))
        step = rng.uniform(0.01, 2.0)
        out = steer(a, b, step)
        assert distance(a, out) <= step + 1e-9


def test_motion_valid_single_point_segment():
    w = make_world()
    q = np.array([5.0, 5.0])
    assert motion_valid(q, q, w, 0.1)


def test_motion_valid_check_count():
    w = make_world()
    checker = ValidityChecker(w, 0.25)
    a, b = np.array([1.0, 1.0]), np.array([2.0, 1.0])
    checker.motion_valid(a, b)
    # ceil(1.0 / 0.25) + 1 interpolated configurations
    assert checker.config_checks == 5


def test_motion_valid_against_segment_disc_oracle():
    # analytic oracle: segment hits the disc iff point-segment distance < r
    def seg_disc_hit(p0, p1, c, r):
        p0, p1, c = map(np.asarray, (p0, p1, c))
        d = p1 - p0
        t = np.clip(np.dot(c - p0, d) / np.dot(d, d), 0.0, 1.0)
        return np.linalg.norm(c - (p0 + t * d)) < r

    center, radius = np.array([5.0, 5.0]), 1.0
    w = make_world([Disc(center, radius)])
    crossing = ([1.0, 5.0], [9.0, 5.0])
    clear = ([1.0, 1.0], [9.0, 1.0])
    assert seg_disc_hit(*crossing, center, radius)
    assert not motion_valid(np.array(crossing[0]), np.array(crossing[1]), w, 0.05)
    assert not seg_disc_hit(*clear, center, radius)
    assert motion_valid(np.array(clear[0]), np.array(clear[1]), w, 0.05)


def test_motion_valid_symmetric():
    center, radius = np.array([5.0, 5.0]), 1.0
    w = make_world([Disc(center, radius)])
    rng = np.random.default_rng(23)
    for _ in range(100):
        a, b = rng.uniform(0.0, 10.0, size=(2, 2))
        assert motion_valid(a, b, w, 0.07) == motion_valid(b, a, w, 0.07)
        pts_ab = segment_points(a, b, 0.07)
        pts_ba = segment_points(b, a, 0.07)
        assert np.array_equal(pts_ab, pts_ba)


def test_path_requires_two_waypoints():
    with pytest.raises(ValueError):
        Path((np.zeros(2),))
    p = Path((np.zeros(2), np.ones(2)))
    assert len(p) == 2

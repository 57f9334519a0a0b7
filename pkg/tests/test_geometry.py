"""Tests for app.services.geometry."""

import math

import numpy as np
import pytest

from app.exceptions import DegenerateSegment, HorizontalTangent, PointInsideDisk
from app.models import Disk, Point2, Ray
from app.services.geometry import (
    is_left_of,
    line_point_distance,
    ray_point_distance,
    segment_intersects_disk,
    segments_intersect_disk,
    slope_angle,
    tangent_points,
    tangent_x_intercept,
)


def _perpendicularity(p, external, disk):
    return (p.x - external.x) * (p.x - disk.center.x) + (p.y - external.y) * (p.y - disk.center.y)


# ==================== TANGENT POINTS ====================

def test_tangent_points_from_origin():
    disk = Disk(Point2(0.0, 2.0), 1.0)
    p, q = tangent_points(Point2(0.0, 0.0), disk)
    assert (p.x, p.y) == pytest.approx((-math.sqrt(3) / 2, 1.5), abs=1e-12)
    assert (q.x, q.y) == pytest.approx((math.sqrt(3) / 2, 1.5), abs=1e-12)
    for point in (p, q):
        assert abs(_perpendicularity(point, Point2(0.0, 0.0), disk)) < 1e-12


def test_tangent_points_on_boundary_counts_as_inside():
    with pytest.raises(PointInsideDisk):
        tangent_points(Point2(0.0, 1.0), Disk(Point2(0.0, 2.0), 1.0))


def test_tangent_points_inside_raises():
    with pytest.raises(PointInsideDisk):
        tangent_points(Point2(0.1, 2.2), Disk(Point2(0.0, 2.0), 1.0))


def test_tangent_points_directly_below_center():
    disk = Disk(Point2(0.4, 1.25), 0.25)
    p, q = tangent_points(Point2(0.4, 0.0), disk)
    expected_y = 1.25 - 0.25 ** 2 / 1.25
    assert p.y == pytest.approx(expected_y, abs=1e-12)
    assert q.y == pytest.approx(expected_y, abs=1e-12)
    assert p.x + q.x == pytest.approx(0.8, abs=1e-12)
    assert p.x < 0.4 < q.x


def test_tangent_points_ordered_by_polar_angle():
    disk = Disk(Point2(1.0, 2.0), 0.5)
    p, q = tangent_points(Point2(-2.0, 0.5), disk)
    angle = lambda t: math.atan2(t.y - disk.center.y, t.x - disk.center.x)
    assert angle(p) < angle(q)


def test_tangent_points_random_properties(rng):
    for _ in range(200):
        disk = Disk(Point2(rng.uniform(-2, 2), rng.uniform(0.6, 3)), rng.uniform(0.05, 0.5))
        direction = rng.uniform(0, 2 * math.pi)
        dist = disk.radius * rng.uniform(1.01, 20)
        external = Point2(
            disk.center.x + dist * math.cos(direction), disk.center.y + dist * math.sin(direction)
        )
        for p in tangent_points(external, disk):
            assert abs(_perpendicularity(p, external, disk)) <= 1e-10
            assert abs(disk.center.distance_to(p) - disk.radius) <= 1e-12 * disk.radius + 1e-15


# ==================== SEGMENT / DISK ====================

def test_segment_below_disk_misses():
    assert not segment_intersects_disk(Point2(-1, 0), Point2(1, 0), Disk(Point2(0, 2), 1))


def test_segment_through_center_hits():
    assert segment_intersects_disk(Point2(0, 0), Point2(0, 4), Disk(Point2(0, 2), 1))


def test_segment_diagonal_misses():
    # distance from (0, 2) to y = x is sqrt(2)
    assert not segment_intersects_disk(Point2(0, 0), Point2(2, 2), Disk(Point2(0, 2), 1))


def test_segment_grazing_counts_as_hit():
    assert segment_intersects_disk(Point2(-1, 1), Point2(1, 1), Disk(Point2(0, 2), 1))


def test_segment_stopping_short_of_disk_misses():
    assert not segment_intersects_disk(Point2(0, 0), Point2(0, 0.9), Disk(Point2(0, 2), 1))


def test_degenerate_segment_raises():
    with pytest.raises(DegenerateSegment):
        segment_intersects_disk(Point2(1, 1), Point2(1, 1), Disk(Point2(0, 2), 1))


def test_segment_intersection_matches_brute_force(rng):
    t = np.linspace(0.0, 1.0, 10_001)
    checked = 0
    for _ in range(1000):
        disk_y = rng.uniform(0.5, 3)
        disk = Disk(Point2(rng.uniform(-2, 2), disk_y), rng.uniform(0.05, min(0.5, disk_y - 0.01)))
        a = Point2(rng.uniform(-3, 3), rng.uniform(-1, 4))
        b = Point2(rng.uniform(-3, 3), rng.uniform(-1, 4))

        xs = a.x + t * (b.x - a.x)
        ys = a.y + t * (b.y - a.y)
        min_dist = np.min(np.hypot(xs - disk.center.x, ys - disk.center.y))
        if abs(min_dist - disk.radius) < 1e-5:
            continue
        assert segment_intersects_disk(a, b, disk) == (min_dist <= disk.radius)
        checked += 1
    assert checked > 950


def test_vectorized_segments_match_scalar(rng):
    disk = Disk(Point2(0.4, 1.25), 0.25)
    end = Point2(1.5, 3.0)
    starts = np.column_stack([rng.uniform(-1.5, 1.5, 64), np.zeros(64)])
    hits = segments_intersect_disk(starts, end, disk)
    for (x, y), hit in zip(starts, hits):
        assert segment_intersects_disk(Point2(x, y), end, disk) == hit


# ==================== TANGENT INTERCEPT ====================

def test_tangent_x_intercept_vertical():
    disk = Disk(Point2(0.4, 1.25), 0.25)
    assert tangent_x_intercept(math.pi / 2, disk) == pytest.approx(0.65, abs=1e-12)


def test_tangent_x_intercept_vanishing_radius():
    disk = Disk(Point2(0.0, 1.0), 1e-15)
    assert tangent_x_intercept(math.pi / 4, disk) == pytest.approx(-1.0, abs=1e-12)


def test_tangent_x_intercept_construct_and_intersect():
    theta = math.pi / 3
    disk = Disk(Point2(0.4, 1.25), 0.25)
    touch = Point2(0.4 + 0.25 * math.sin(theta), 1.25 - 0.25 * math.cos(theta))
    # walk back along the tangent until y = 0
    steps = touch.y / math.sin(theta)
    expected = touch.x - steps * math.cos(theta)
    assert tangent_x_intercept(theta, disk) == pytest.approx(expected, abs=1e-12)


def test_tangent_x_intercept_line_touches_circle(rng):
    for _ in range(500):
        disk_y = rng.uniform(0.5, 3)
        disk = Disk(Point2(rng.uniform(-1, 1), disk_y), rng.uniform(0.05, min(0.5, disk_y - 0.01)))
        theta = rng.uniform(0.05, math.pi - 0.05)
        x0 = tangent_x_intercept(theta, disk)
        distance = line_point_distance(Point2(x0, 0.0), theta, disk.center)
        assert abs(distance - disk.radius) <= 1e-9 * disk.radius


@pytest.mark.parametrize("theta", [0.0, math.pi])
def test_tangent_x_intercept_horizontal_raises(theta):
    with pytest.raises(HorizontalTangent):
        tangent_x_intercept(theta, Disk(Point2(0.4, 1.25), 0.25))


# ==================== SLOPE ANGLE ====================

def test_slope_angle_diagonal():
    assert slope_angle(Point2(0, 0), Point2(1, 1)) == pytest.approx(math.pi / 4)


def test_slope_angle_backwards_is_pi():
    assert slope_angle(Point2(0, 0), Point2(-1, 0)) == pytest.approx(math.pi)


def test_slope_angle_degenerate_raises():
    with pytest.raises(DegenerateSegment):
        slope_angle(Point2(0.3, 0.3), Point2(0.3, 0.3))


def test_slope_angle_to_tangent_point_is_a_tangent():
    disk = Disk(Point2(0.4, 1.25), 0.25)
    start = Point2(-0.6825, 0.0)
    for p in tangent_points(start, disk):
        theta = slope_angle(start, p)
        assert line_point_distance(start, theta, disk.center) == pytest.approx(0.25, abs=1e-12)


# ==================== HELPERS ====================

def test_is_left_of():
    assert is_left_of(Point2(0, 0), Point2(1, 0), Point2(0.5, 1))
    assert not is_left_of(Point2(0, 0), Point2(1, 0), Point2(0.5, -1))


def test_ray_point_distance_behind_origin():
    ray = Ray(Point2(0, 0), math.pi / 2)
    assert ray_point_distance(ray, Point2(0, -2)) == pytest.approx(2.0)
    assert ray_point_distance(ray, Point2(1, 5)) == pytest.approx(1.0)

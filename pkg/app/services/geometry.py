"""
Planar geometry around the uncertainty disk: tangents from external points,
segment/disk intersection and the tangent-intercept map that the caustic
phase profile is built from.

Boundary convention: distance equal to the radius counts as inside.
"""

import logging
import math
from typing import Tuple

import numpy as np

from app.exceptions import DegenerateSegment, HorizontalTangent, PointInsideDisk
from app.models import Disk, Point2, Ray


logger = logging.getLogger(__name__)

HORIZONTAL_EPS = 1e-12


def _polar_angle(p: Point2, center: Point2) -> float:
    return math.atan2(p.y - center.y, p.x - center.x)


def tangent_points(external: Point2, disk: Disk) -> Tuple[Point2, Point2]:
    """
    Touching points of the two tangent lines drawn from an external point.

    Args:
        external: Point strictly outside the disk
        disk: Circle to touch

    Returns:
        Both tangent points, ascending polar angle about the disk center

    Raises:
        PointInsideDisk: If the point lies inside or on the circle
    """
    dx = external.x - disk.center.x
    dy = external.y - disk.center.y
    dist = math.hypot(dx, dy)
    if dist <= disk.radius:
        raise PointInsideDisk(
            f"{external} is within {disk.radius} of disk center {disk.center} (distance {dist})"
        )

    alpha = math.atan2(dy, dx)
    beta = math.acos(disk.radius / dist)
    candidates = [
        Point2(
            disk.center.x + disk.radius * math.cos(alpha + sign * beta),
            disk.center.y + disk.radius * math.sin(alpha + sign * beta),
        )
        for sign in (-1.0, 1.0)
    ]
    candidates.sort(key=lambda p: _polar_angle(p, disk.center))
    return candidates[0], candidates[1]


def segment_intersects_disk(a: Point2, b: Point2, disk: Disk) -> bool:
    """
    True iff the closed segment [a, b] comes within disk.radius of the center.

    Raises:
        DegenerateSegment: If a equals b
    """
    if a.x == b.x and a.y == b.y:
        raise DegenerateSegment(f"Segment end points coincide at {a}")
    hits = segments_intersect_disk(np.array([[a.x, a.y]]), b, disk)
    return bool(hits[0])


def segments_intersect_disk(starts: np.ndarray, end: Point2, disk: Disk) -> np.ndarray:
    """
    Vectorized segment test for many starts sharing one end point.

    Args:
        starts: (N, 2) start coordinates
        end: Common end point
        disk: Disk to test against

    Returns:
        (N,) boolean array
    """
    starts = np.asarray(starts, dtype=float)
    seg = np.array([end.x, end.y]) - starts
    to_center = np.array([disk.center.x, disk.center.y]) - starts
    length2 = np.einsum("ij,ij->i", seg, seg)
    if np.any(length2 == 0):
        raise DegenerateSegment(f"Segment end points coincide at {end}")

    t = np.clip(np.einsum("ij,ij->i", to_center, seg) / length2, 0.0, 1.0)
    closest = starts + t[:, None] * seg
    dist = np.hypot(closest[:, 0] - disk.center.x, closest[:, 1] - disk.center.y)
    return dist <= disk.radius


def tangent_x_intercept(theta: float, disk: Disk) -> float:
    """
    Array-axis crossing of the lower tangent with slope angle theta.

    The tangent touches the circle at (x_E + eps*sin(theta), y_E - eps*cos(theta)).

    Raises:
        HorizontalTangent: If the tangent is parallel to the array
    """
    sin_t = math.sin(theta)
    if abs(sin_t) < HORIZONTAL_EPS:
        raise HorizontalTangent(f"Tangent with angle {theta} never meets the array axis")
    cx, cy, eps = disk.center.x, disk.center.y, disk.radius
    return -(cy - eps * math.cos(theta)) * math.cos(theta) / sin_t + cx + eps * sin_t


def slope_angle(start: Point2, end: Point2) -> float:
    """
    Direction angle of end - start in (-pi, pi].

    Raises:
        DegenerateSegment: If the points coincide
    """
    if start.x == end.x and start.y == end.y:
        raise DegenerateSegment(f"No direction between coincident points {start}")
    angle = math.atan2(end.y - start.y, end.x - start.x)
    if angle <= -math.pi:
        angle += 2 * math.pi
    return angle


def line_point_distance(origin: Point2, angle: float, p: Point2) -> float:
    """Perpendicular distance from p to the full line through origin with direction angle"""
    return abs(math.cos(angle) * (p.y - origin.y) - math.sin(angle) * (p.x - origin.x))


def ray_point_distance(ray: Ray, p: Point2) -> float:
    """Distance from p to the half-line; points behind the origin measure to the origin"""
    dx = p.x - ray.origin.x
    dy = p.y - ray.origin.y
    along = dx * math.cos(ray.angle) + dy * math.sin(ray.angle)
    if along <= 0:
        return math.hypot(dx, dy)
    return line_point_distance(ray.origin, ray.angle, p)


def is_left_of(start: Point2, end: Point2, p: Point2) -> bool:
    """True if p lies strictly left of the directed line start -> end"""
    return (end.x - start.x) * (p.y - start.y) - (end.y - start.y) * (p.x - start.x) > 0

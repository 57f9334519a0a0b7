"""
Phase-profile synthesis.

Every closed-form profile has a matching analytic gradient; the departure
angle of the ray leaving element x obeys cos(theta) = phi'(x) / kappa.
The caustic profile sends each ray tangent to the disk with the disk on
the ray's left, so rays pass the disk on the side facing +x.
"""

import logging
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from app.exceptions import GeometryError, InsideShadow, PointInsideDisk, UnsupportedGeometry
from app.models import (
    ArrayGeometry,
    Beamformer,
    Disk,
    Label,
    Partition,
    PhaseProfile,
    Point2,
    Scenario,
    Scheme,
    WaveSpec,
)
from app.services.geometry import is_left_of, segments_intersect_disk, slope_angle, tangent_points


logger = logging.getLogger(__name__)


# ==================== CLOSED FORMS ====================

def _check_theta(theta: float):
    if not 0.0 < theta < math.pi:
        raise GeometryError(f"Steering angle must lie in (0, pi), got {theta}")


def steering_phases(x: np.ndarray, theta: float, wave: WaveSpec) -> np.ndarray:
    _check_theta(theta)
    return wave.wavenumber * math.cos(theta) * np.asarray(x, dtype=float)


def steering_gradient(x: np.ndarray, theta: float, wave: WaveSpec) -> np.ndarray:
    _check_theta(theta)
    return np.full(np.shape(x), wave.wavenumber * math.cos(theta))


def focusing_phases(x: np.ndarray, target: Point2, wave: WaveSpec) -> np.ndarray:
    if not target.y > 0:
        raise GeometryError(f"Focus target must lie in y > 0, got {target}")
    return -wave.wavenumber * np.hypot(target.x - np.asarray(x, dtype=float), target.y)


def focusing_gradient(x: np.ndarray, target: Point2, wave: WaveSpec) -> np.ndarray:
    dx = target.x - np.asarray(x, dtype=float)
    return wave.wavenumber * dx / np.hypot(dx, target.y)


def quadratic_phases(x: np.ndarray, a: float, wave: WaveSpec) -> np.ndarray:
    """Profile whose rays envelope the parabola y = (x/a)^2"""
    if a == 0:
        raise GeometryError("Quadratic trajectory parameter a must be non-zero")
    a2 = a * a
    return (wave.wavenumber * a2 / 4) * np.arcsinh(4 * np.asarray(x, dtype=float) / a2)


def quadratic_gradient(x: np.ndarray, a: float, wave: WaveSpec) -> np.ndarray:
    a2 = a * a
    return wave.wavenumber / np.sqrt(1 + (4 * np.asarray(x, dtype=float) / a2) ** 2)


def _shadow_terms(x: np.ndarray, disk: Disk) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Offset u, tangent length S and S + u (cancellation-free for u < 0)"""
    u = np.asarray(x, dtype=float) - disk.center.x
    h, eps = disk.center.y, disk.radius
    s2 = u * u + h * h - eps * eps
    if np.any(s2 <= 0):
        raise InsideShadow(f"Tangent length is not real for some x on disk {disk}")
    s = np.sqrt(s2)
    s_plus_u = np.where(u >= 0, s + u, (h * h - eps * eps) / (s - np.minimum(u, 0.0)))
    return u, s, s_plus_u


def caustic_phases(x: np.ndarray, disk: Disk, wave: WaveSpec) -> np.ndarray:
    """
    Closed-form circular-caustic phase at abscissas x.

    phi(x) = kappa * (2*eps*atan((u + S) / (eps + y_E)) - S)
    with u = x - x_E and S = sqrt(u^2 + y_E^2 - eps^2).

    Raises:
        InsideShadow: If S is not real and positive
    """
    _, s, s_plus_u = _shadow_terms(x, disk)
    eps, h = disk.radius, disk.center.y
    return wave.wavenumber * (2 * eps * np.arctan(s_plus_u / (eps + h)) - s)


def caustic_phase(x: float, disk: Disk, wave: WaveSpec) -> float:
    """Scalar form of caustic_phases"""
    return float(caustic_phases(np.array([x]), disk, wave)[0])


def caustic_gradient(x: np.ndarray, disk: Disk, wave: WaveSpec) -> np.ndarray:
    u, s, s_plus_u = _shadow_terms(x, disk)
    eps, h = disk.radius, disk.center.y
    eh = eps + h
    return wave.wavenumber * (
        2 * eps * s_plus_u * eh / (s * (eh * eh + s_plus_u * s_plus_u)) - u / s
    )


# ==================== PROFILES ====================

def steering_profile(theta: float, array: ArrayGeometry, wave: WaveSpec) -> PhaseProfile:
    return PhaseProfile.uniform_label(
        steering_phases(array.element_x, theta, wave), Label.FOCUSING, Scheme.STEERING
    )


def focusing_profile(target: Point2, array: ArrayGeometry, wave: WaveSpec) -> PhaseProfile:
    return PhaseProfile.uniform_label(
        focusing_phases(array.element_x, target, wave), Label.FOCUSING, Scheme.FOCUSING
    )


def quadratic_caustic_profile(a: float, array: ArrayGeometry, wave: WaveSpec) -> PhaseProfile:
    return PhaseProfile.uniform_label(
        quadratic_phases(array.element_x, a, wave), Label.CAUSTIC, Scheme.QUADRATIC
    )


def caustic_profile(scenario: Scenario) -> PhaseProfile:
    """
    Circular-caustic phase on every element, no partition.

    Synthesized in the reflected frame when the disk lies right of the UE.
    """
    if scenario.eavesdropper.center.x > scenario.ue.x:
        reflected = caustic_profile(scenario.mirrored())
        return PhaseProfile.uniform_label(reflected.phases[::-1], Label.CAUSTIC, Scheme.CAUSTIC)

    phases = caustic_phases(scenario.array.element_x, scenario.synthesis_disk, scenario.wave)
    return PhaseProfile.uniform_label(phases, Label.CAUSTIC, Scheme.CAUSTIC)


def partition_array(scenario: Scenario) -> Partition:
    """
    Split the array by line of sight to the UE.

    An element joins the focusing subarray iff its segment to the UE misses
    the margin-inflated disk; grazing segments go to the caustic subarray.

    Returns:
        Partition whose caustic run is anchored at one array end

    Raises:
        PointInsideDisk: If the UE lies inside the inflated disk
        UnsupportedGeometry: If the shadow is not a single end-anchored run
    """
    disk = scenario.synthesis_disk
    ue = scenario.ue
    if disk.contains(ue):
        raise PointInsideDisk(f"UE {ue} lies inside the uncertainty disk {disk}")

    array = scenario.array
    blocked = segments_intersect_disk(array.positions, ue, disk)
    caustic = np.flatnonzero(blocked)
    focusing = np.flatnonzero(~blocked)
    last = array.num_elements - 1

    if len(caustic) == 0:
        logger.debug("Partition: every element has line of sight to the UE")
        return Partition(caustic, focusing, mirrored=False)

    if caustic[-1] - caustic[0] + 1 != len(caustic):
        raise UnsupportedGeometry(
            f"Line-of-sight shadow splits the array: caustic elements {caustic[0]}..{caustic[-1]} "
            f"are not contiguous"
        )

    if len(focusing) == 0:
        mirrored = disk.center.x > ue.x
    elif caustic[0] == 0:
        mirrored = False
    elif caustic[-1] == last:
        mirrored = True
    else:
        raise UnsupportedGeometry(
            f"Line-of-sight shadow {caustic[0]}..{caustic[-1]} does not touch an array end"
        )

    logger.debug(
        f"Partition: {len(caustic)} caustic / {len(focusing)} focusing elements, mirrored={mirrored}"
    )
    return Partition(caustic, focusing, mirrored=mirrored)


def junction_abscissa(partition: Partition, array: ArrayGeometry) -> Optional[float]:
    """Midpoint between the last caustic and first focusing element, or None"""
    if len(partition.caustic_indices) == 0 or len(partition.focusing_indices) == 0:
        return None
    if partition.mirrored:
        inner, outer = partition.focusing_indices[-1], partition.caustic_indices[0]
    else:
        inner, outer = partition.caustic_indices[-1], partition.focusing_indices[0]
    return float((array.element_x[inner] + array.element_x[outer]) / 2)


def junction_constant(x_j: float, scenario: Scenario) -> float:
    """Offset C that makes the focusing branch meet the caustic branch at x_j"""
    ue = scenario.ue
    return caustic_phase(x_j, scenario.synthesis_disk, scenario.wave) + (
        scenario.wave.wavenumber * math.hypot(ue.x - x_j, ue.y)
    )


def piecewise_secure_profile(scenario: Scenario) -> PhaseProfile:
    """
    Caustic phase on the shadowed subarray, focusing on the rest.

    The focusing branch is shifted by the junction constant so the two
    closed forms agree at the junction abscissa.

    Raises:
        UnsupportedGeometry: If the shadow cannot be handled
        InsideShadow: If the caustic closed form is not defined
    """
    partition = partition_array(scenario)
    if partition.mirrored:
        reflected = piecewise_secure_profile(scenario.mirrored())
        return PhaseProfile(
            reflected.phases[::-1].copy(), tuple(reversed(reflected.labels)), Scheme.PROPOSED
        )

    array, wave = scenario.array, scenario.wave
    x = array.element_x
    phases = np.empty(array.num_elements)
    labels = [Label.FOCUSING] * array.num_elements
    caustic, focusing = partition.caustic_indices, partition.focusing_indices

    offset = 0.0
    x_j = junction_abscissa(partition, array)
    if x_j is not None:
        offset = junction_constant(x_j, scenario)
        logger.debug(f"Junction at x={x_j:.6f} m, constant C={offset:.9f} rad")

    if len(caustic):
        phases[caustic] = caustic_phases(x[caustic], scenario.synthesis_disk, wave)
        for index in caustic:
            labels[index] = Label.CAUSTIC
    if len(focusing):
        phases[focusing] = focusing_phases(x[focusing], scenario.ue, wave) + offset

    phases.setflags(write=False)
    return PhaseProfile(phases, tuple(labels), Scheme.PROPOSED)


def to_beamformer(profile: PhaseProfile) -> Beamformer:
    """Unit-modulus weights exp(j*phi) / sqrt(M), phases applied modulo 2*pi"""
    m = len(profile)
    weights = np.exp(1j * profile.wrapped) / math.sqrt(m)
    weights.setflags(write=False)
    return Beamformer(weights, profile.scheme)


# ==================== DIAGNOSTICS ====================

@dataclass(frozen=True)
class CausticTrajectory:
    """Construction points of the piece-wise trajectory T -> P -> arc -> Q -> R"""

    start: Point2  # T, anchored array end
    first_tangent: Point2  # P
    last_tangent: Point2  # Q
    target: Point2  # R, the UE
    theta_start: float  # slope of TP
    theta_end: float  # slope of QR


def _pick_tangent(points: Tuple[Point2, Point2], keep) -> Point2:
    for p in points:
        if keep(p):
            return p
    raise GeometryError("No tangent point passes the disk on the UE side")


def caustic_trajectory(scenario: Scenario) -> Optional[CausticTrajectory]:
    """
    Construction points of the caustic trajectory, or None without a caustic subarray.

    From T the ray passes with the disk on its left (toward the UE side);
    the ray arriving at R from Q has the disk on its left as well.
    """
    partition = partition_array(scenario)
    if len(partition.caustic_indices) == 0:
        return None
    if partition.mirrored:
        reflected = caustic_trajectory(scenario.mirrored())
        return CausticTrajectory(
            start=reflected.start.mirrored(),
            first_tangent=reflected.first_tangent.mirrored(),
            last_tangent=reflected.last_tangent.mirrored(),
            target=reflected.target.mirrored(),
            theta_start=math.pi - reflected.theta_start,
            theta_end=math.pi - reflected.theta_end,
        )

    disk = scenario.synthesis_disk
    start = Point2(float(scenario.array.element_x[0]), 0.0)
    ue = scenario.ue
    p = _pick_tangent(tangent_points(start, disk), lambda t: is_left_of(start, t, disk.center))
    q = _pick_tangent(tangent_points(ue, disk), lambda t: is_left_of(t, ue, disk.center))
    return CausticTrajectory(
        start=start,
        first_tangent=p,
        last_tangent=q,
        target=ue,
        theta_start=slope_angle(start, p),
        theta_end=slope_angle(q, ue),
    )

"""
Ray-consistency oracle for synthesized profiles.

Departure angles come from the phase gradient, cos(theta) = phi'(x) / kappa,
with phi' estimated by the five-point central stencil on elements 2..M-3.
Each scheme is checked against its geometric intent:

    steering   constant angle
    focusing   ray passes through the UE
    quadratic  ray touches the parabola y = (x/a)^2 (virtual branch for x < 0)
    caustic    ray touches the synthesis circle
    proposed   caustic elements touch the circle, focusing elements hit the UE

Elements whose stencil straddles the caustic/focusing junction are reported
but not judged.

Ray clearance from the eavesdropper disk covers every element: one-sided
stencils at the two ends of the array, the closed-form gradient wherever
the stencil straddles the junction.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional

import numpy as np

from app.models import Label, PhaseProfile, Point2, Ray, Scenario, Scheme
from app.services.geometry import line_point_distance, ray_point_distance
from app.services.profiles import CausticTrajectory, caustic_trajectory
from app.services.schemes import analytic_gradient, profile_for


logger = logging.getLogger(__name__)

SNELL_TOL = 1e-6

TOLERANCES = {
    "angle": 1e-9,  # rad
    "focus_miss": 1e-6,  # m
    "parabola_miss": 1e-3,  # m
    "tangency": 2e-2,  # fraction of the synthesis radius
    "clearance": 1e-3,  # fraction of the eavesdropper radius
}


@dataclass(frozen=True)
class ElementCheck:
    index: int
    x: float
    label: Label
    cos_fd: float
    theta_fd: float
    theta_analytic: float
    check: str
    residual: float
    tolerance: Optional[float]
    passed: Optional[bool]  # None when the stencil straddles the junction


@dataclass
class ValidationResult:
    scheme: Scheme
    checks: List[ElementCheck] = field(default_factory=list)
    min_ray_clearance: float = math.inf  # m, half-line distance to the disk centre
    closest_element: Optional[int] = None
    trajectory: Optional[CausticTrajectory] = None

    @property
    def max_residuals(self) -> Dict[str, float]:
        result: Dict[str, float] = {}
        for item in self.checks:
            if item.passed is None:
                continue
            result[item.check] = max(result.get(item.check, 0.0), item.residual)
        return result

    @property
    def passed(self) -> bool:
        return all(item.passed is not False for item in self.checks)


def five_point_gradient(phases: np.ndarray, spacing: float) -> np.ndarray:
    """Central five-point derivative at elements 2..M-3"""
    p = np.asarray(phases, dtype=float)
    if len(p) < 5:
        return np.empty(0)
    return (p[:-4] - 8 * p[1:-3] + 8 * p[3:-1] - p[4:]) / (12 * spacing)


def full_gradient(phases: np.ndarray, spacing: float) -> np.ndarray:
    """
    Fourth-order derivative at every element.

    Central five-point stencil inside, one-sided five-point stencils at
    elements 0, 1, M-2 and M-1.
    """
    p = np.asarray(phases, dtype=float)
    if len(p) < 5:
        raise ValueError(f"Need at least 5 samples for a five-point stencil, got {len(p)}")
    gradient = np.empty(len(p))
    gradient[2:-2] = five_point_gradient(p, spacing)
    gradient[0] = -25 * p[0] + 48 * p[1] - 36 * p[2] + 16 * p[3] - 3 * p[4]
    gradient[1] = -3 * p[0] - 10 * p[1] + 18 * p[2] - 6 * p[3] + p[4]
    gradient[-2] = 3 * p[-1] + 10 * p[-2] - 18 * p[-3] + 6 * p[-4] - p[-5]
    gradient[-1] = 25 * p[-1] - 48 * p[-2] + 36 * p[-3] - 16 * p[-4] + 3 * p[-5]
    gradient[[0, 1, -2, -1]] /= 12 * spacing
    return gradient


def departure_cosines(phases: np.ndarray, spacing: float, wavenumber: float) -> np.ndarray:
    return five_point_gradient(phases, spacing) / wavenumber


def _stencil_window(index: int, size: int) -> slice:
    start = min(max(index - 2, 0), size - 5)
    return slice(start, start + 5)


def clearance_cosines(profile: PhaseProfile, exact: np.ndarray, spacing: float, wavenumber: float) -> np.ndarray:
    """Departure cosines at every element, closed-form where the stencil mixes labels"""
    size = len(profile.phases)
    if size < 5:
        return np.asarray(exact, dtype=float).copy()
    cosines = full_gradient(profile.phases, spacing) / wavenumber
    for index in range(size):
        if len(set(profile.labels[_stencil_window(index, size)])) > 1:
            cosines[index] = exact[index]
    return cosines


def _angle(cosine: float) -> float:
    return math.acos(min(1.0, max(-1.0, cosine)))


def _residual(scheme: Scheme, label: Label, scenario: Scenario, origin: Point2, theta: float):
    if scheme is Scheme.STEERING:
        return "angle", abs(theta - scenario.steering_theta)
    if scheme is Scheme.FOCUSING or (scheme is Scheme.PROPOSED and label is Label.FOCUSING):
        return "focus_miss", line_point_distance(origin, theta, scenario.ue)
    if scheme is Scheme.QUADRATIC:
        a = scenario.quadratic_a
        touch = Point2(2 * origin.x, math.copysign((2 * origin.x / a) ** 2, origin.x))
        return "parabola_miss", line_point_distance(origin, theta, touch)
    disk = scenario.synthesis_disk
    distance = line_point_distance(origin, theta, disk.center)
    return "tangency", abs(distance - disk.radius) / disk.radius


def validate_profile(scheme: Scheme, scenario: Scenario) -> ValidationResult:
    """
    Check every interior element's departing ray against the scheme's intent.

    Args:
        scheme: Phase-only scheme to check
        scenario: Scenario it is synthesized for

    Returns:
        ValidationResult with one ElementCheck per interior element
    """
    profile = profile_for(scheme, scenario)
    array, wave = scenario.array, scenario.wave
    cosines = departure_cosines(profile.phases, array.spacing, wave.wavenumber)
    exact = analytic_gradient(scheme, scenario) / wave.wavenumber
    result = ValidationResult(scheme=scheme)

    for offset, cosine in enumerate(cosines):
        index = offset + 2
        x = float(array.element_x[index])
        label = profile.labels[index]
        theta = _angle(cosine)
        origin = Point2(x, 0.0)

        if abs(cosine) > 1 + SNELL_TOL:
            result.checks.append(
                ElementCheck(index, x, label, cosine, theta, _angle(exact[index]),
                             "snell", abs(cosine) - 1, SNELL_TOL, False)
            )
            continue

        check, residual = _residual(scheme, label, scenario, origin, theta)
        stencil = set(profile.labels[index - 2:index + 3])
        if len(stencil) > 1:
            tolerance, passed = None, None
        else:
            tolerance = TOLERANCES[check]
            passed = residual <= tolerance

        result.checks.append(
            ElementCheck(index, x, label, cosine, theta, _angle(exact[index]),
                         check, residual, tolerance, passed)
        )

    for index, cosine in enumerate(clearance_cosines(profile, exact, array.spacing, wave.wavenumber)):
        if abs(cosine) >= 1:
            continue
        origin = Point2(float(array.element_x[index]), 0.0)
        clearance = ray_point_distance(Ray(origin, _angle(cosine)), scenario.eavesdropper.center)
        if clearance < result.min_ray_clearance:
            result.min_ray_clearance, result.closest_element = clearance, index

    if scheme is Scheme.PROPOSED:
        result.trajectory = caustic_trajectory(scenario)

    failed = sum(1 for item in result.checks if item.passed is False)
    logger.info(
        f"Validated {scheme.value}: {len(result.checks)} interior elements, {failed} failed, "
        f"max residuals {result.max_residuals}"
    )
    return result

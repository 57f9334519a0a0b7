import logging
from typing import Optional

import numpy as np

from app.exceptions import ConfigError
from app.models import Beamformer, PhaseProfile, Scenario, Scheme
from app.services.benchmarks import PencilSpec, optimal_secure_focusing
from app.services.channel import channel_vector
from app.services.profiles import (
    caustic_gradient,
    caustic_profile,
    focusing_gradient,
    focusing_profile,
    partition_array,
    piecewise_secure_profile,
    quadratic_caustic_profile,
    quadratic_gradient,
    steering_gradient,
    steering_profile,
    to_beamformer,
)


logger = logging.getLogger(__name__)


def profile_for(scheme: Scheme, scenario: Scenario) -> PhaseProfile:
    """
    Phase profile of a phase-only scheme.

    Raises:
        ConfigError: For the eigen benchmark, which is not phase-only
    """
    array, wave = scenario.array, scenario.wave
    if scheme is Scheme.STEERING:
        return steering_profile(scenario.steering_theta, array, wave)
    if scheme is Scheme.FOCUSING:
        return focusing_profile(scenario.ue, array, wave)
    if scheme is Scheme.QUADRATIC:
        return quadratic_caustic_profile(scenario.quadratic_a, array, wave)
    if scheme is Scheme.CAUSTIC:
        return caustic_profile(scenario)
    if scheme is Scheme.PROPOSED:
        return piecewise_secure_profile(scenario)
    raise ConfigError(f"Scheme '{scheme.value}' has no phase-only profile")


def synthesize(scheme: Scheme, scenario: Scenario, gamma: Optional[float] = None) -> Beamformer:
    """
    Beamformer for a scheme.

    Args:
        scheme: Synthesis scheme
        scenario: Scenario to synthesize for
        gamma: SNR scale for the eigen benchmark (defaults to the scenario budget)

    Returns:
        Unit-modulus beamformer, or the unit-norm eigen benchmark
    """
    if not scheme.unit_modulus:
        spec = PencilSpec(
            h=channel_vector(scenario.array, scenario.ue, scenario.wave),
            h_e=channel_vector(scenario.array, scenario.eavesdropper.center, scenario.wave),
            gamma=gamma if gamma is not None else scenario.budget.gamma,
        )
        return optimal_secure_focusing(spec)
    return to_beamformer(profile_for(scheme, scenario))


def analytic_gradient(scheme: Scheme, scenario: Scenario) -> np.ndarray:
    """
    Closed-form phase gradient dphi/dx at every element.

    Raises:
        ConfigError: For the eigen benchmark
    """
    array, wave = scenario.array, scenario.wave
    x = array.element_x
    if scheme is Scheme.STEERING:
        return steering_gradient(x, scenario.steering_theta, wave)
    if scheme is Scheme.FOCUSING:
        return focusing_gradient(x, scenario.ue, wave)
    if scheme is Scheme.QUADRATIC:
        return quadratic_gradient(x, scenario.quadratic_a, wave)
    if scheme is Scheme.CAUSTIC:
        if scenario.eavesdropper.center.x > scenario.ue.x:
            return -analytic_gradient(scheme, scenario.mirrored())[::-1]
        return caustic_gradient(x, scenario.synthesis_disk, wave)
    if scheme is Scheme.PROPOSED:
        partition = partition_array(scenario)
        if partition.mirrored:
            return -analytic_gradient(scheme, scenario.mirrored())[::-1]
        gradient = np.empty(array.num_elements)
        caustic, focusing = partition.caustic_indices, partition.focusing_indices
        if len(caustic):
            gradient[caustic] = caustic_gradient(x[caustic], scenario.synthesis_disk, wave)
        if len(focusing):
            gradient[focusing] = focusing_gradient(x[focusing], scenario.ue, wave)
        return gradient
    raise ConfigError(f"Scheme '{scheme.value}' has no phase-only profile")

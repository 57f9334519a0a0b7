"""Shared fixtures: the 28 GHz reference setup and small variants of it."""

import math

import numpy as np
import pytest

from app.config import ScenarioConfig
from app.models import ArrayGeometry, Disk, LinkBudget, Point2, Scenario, WaveSpec


REFERENCE_UE = Point2(1.5, 3.0)
REFERENCE_EAVESDROPPER = Point2(0.4, 1.25)
REFERENCE_EPSILON = 0.25


def make_scenario(
    ue=REFERENCE_UE,
    center=REFERENCE_EAVESDROPPER,
    epsilon=REFERENCE_EPSILON,
    num_elements=256,
    spacing=None,
    margin=0.0,
    budget=None,
    wave=None,
):
    """Scenario builder with the reference setup as defaults"""
    wave = wave or WaveSpec.from_frequency(28e9)
    return Scenario(
        wave=wave,
        array=ArrayGeometry.uniform(num_elements, spacing or wave.wavelength / 2),
        ue=ue,
        eavesdropper=Disk(center, epsilon),
        budget=budget or LinkBudget.from_dbm(20.0, -50.0),
        epsilon_margin=margin,
    )


@pytest.fixture
def wave():
    return WaveSpec.from_frequency(28e9)


@pytest.fixture
def reference_config():
    return ScenarioConfig()


@pytest.fixture
def reference_scenario():
    return make_scenario()


@pytest.fixture
def small_scenario():
    return make_scenario(num_elements=32)


@pytest.fixture
def isotropic_config():
    """Reference setup at free-space path gain with a 0.15 m synthesis margin"""
    return ScenarioConfig(path_gain_db="isotropic", epsilon_margin_m=0.15)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def unit_modulus(rng, m):
    return np.exp(1j * rng.uniform(0, 2 * math.pi, m)) / math.sqrt(m)

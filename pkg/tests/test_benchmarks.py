"""Tests for app.services.benchmarks."""

import cmath

import numpy as np
import pytest

from conftest import unit_modulus
from app.exceptions import CollinearChannels
from app.models import Beamformer, ChannelVector, LinkBudget, Scheme
from app.services.benchmarks import (
    PencilSpec,
    generalized_rayleigh_quotient,
    optimal_secure_focusing,
)
from app.services.channel import channel_vector, rate, received_amplitude
from app.services.schemes import synthesize


def _random_channel(rng, m):
    return ChannelVector(rng.normal(size=m) + 1j * rng.normal(size=m))


def _dense_optimum(spec):
    """Largest eigenvalue of B^-1 A with B^-1 from Sherman-Morrison"""
    a = np.conj(spec.h.entries)
    b = np.conj(spec.h_e.entries)
    m = len(a)
    gamma = spec.gamma
    a_mat = np.eye(m) + gamma * np.outer(a, a.conj())
    b_inv = np.eye(m) - gamma * np.outer(b, b.conj()) / (1 + gamma * np.vdot(b, b).real)
    return float(np.max(np.linalg.eigvals(b_inv @ a_mat).real))


# ==================== PENCIL SPEC ====================

def test_pencil_rejects_non_positive_gamma(rng):
    with pytest.raises(ValueError):
        PencilSpec(_random_channel(rng, 4), _random_channel(rng, 4), 0.0)


def test_pencil_rejects_length_mismatch(rng):
    with pytest.raises(ValueError):
        PencilSpec(_random_channel(rng, 4), _random_channel(rng, 5), 1.0)


def test_pencil_rejects_zero_channel(rng):
    with pytest.raises(ValueError):
        PencilSpec(ChannelVector(np.zeros(4, dtype=complex)), _random_channel(rng, 4), 1.0)


# ==================== OPTIMUM ====================

def test_orthogonal_channels_give_matched_filter():
    h = ChannelVector(np.array([1, 0, 0, 0], dtype=complex))
    h_e = ChannelVector(np.array([0, 1, 0, 0], dtype=complex))
    f = optimal_secure_focusing(PencilSpec(h, h_e, 10.0))
    np.testing.assert_allclose(f.weights, [1, 0, 0, 0], atol=1e-12)
    assert not f.degenerate
    assert generalized_rayleigh_quotient(f, PencilSpec(h, h_e, 10.0)) == pytest.approx(11.0)


def test_collinear_channels_warn_and_fall_back(rng):
    h = _random_channel(rng, 6)
    h_e = ChannelVector(2j * h.entries)
    with pytest.warns(CollinearChannels):
        f = optimal_secure_focusing(PencilSpec(h, h_e, 10.0))
    assert f.degenerate
    assert f.scheme is Scheme.EIGEN
    matched = np.conj(h.entries) / np.linalg.norm(h.entries)
    assert abs(np.vdot(matched, f.weights)) == pytest.approx(1.0, rel=1e-12)


def test_unit_norm_and_phase_convention(rng):
    spec = PencilSpec(_random_channel(rng, 8), _random_channel(rng, 8), 10.0)
    f = optimal_secure_focusing(spec)
    assert f.norm == pytest.approx(1.0, abs=1e-12)
    lead = f.weights[np.flatnonzero(np.abs(f.weights) > 0)[0]]
    assert lead.real > 0
    assert lead.imag == pytest.approx(0.0, abs=1e-12)


def test_matches_dense_generalized_eigenproblem(rng):
    for _ in range(100):
        spec = PencilSpec(_random_channel(rng, 8), _random_channel(rng, 8), 10.0)
        f = optimal_secure_focusing(spec)
        assert generalized_rayleigh_quotient(f, spec) == pytest.approx(_dense_optimum(spec), rel=1e-8)


def test_no_random_probe_beats_optimum(rng):
    spec = PencilSpec(_random_channel(rng, 8), _random_channel(rng, 8), 10.0)
    best = generalized_rayleigh_quotient(optimal_secure_focusing(spec), spec)
    for _ in range(1000):
        w = rng.normal(size=8) + 1j * rng.normal(size=8)
        probe = Beamformer(w / np.linalg.norm(w), Scheme.EIGEN)
        assert generalized_rayleigh_quotient(probe, spec) <= best * (1 + 1e-12)


def test_invariant_to_channel_phase(rng):
    h, h_e = _random_channel(rng, 8), _random_channel(rng, 8)
    base = optimal_secure_focusing(PencilSpec(h, h_e, 10.0))
    rotated = optimal_secure_focusing(
        PencilSpec(ChannelVector(cmath.exp(0.9j) * h.entries), ChannelVector(cmath.exp(-2.1j) * h_e.entries), 10.0)
    )
    np.testing.assert_allclose(rotated.weights, base.weights, atol=1e-10)


# ==================== QUOTIENT ====================

def test_quotient_is_exp2_of_rate_gap(small_scenario):
    s = small_scenario
    budget = LinkBudget(1.0, 0.1)
    h = channel_vector(s.array, s.ue, s.wave)
    h_e = channel_vector(s.array, s.eavesdropper.center, s.wave)
    spec = PencilSpec(h, h_e, budget.gamma)
    f = optimal_secure_focusing(spec)

    g_ue = abs(received_amplitude(f, s.array, s.ue, s.wave)) ** 2
    g_e = abs(received_amplitude(f, s.array, s.eavesdropper.center, s.wave)) ** 2
    gap = rate(g_ue, budget) - rate(g_e, budget)
    assert generalized_rayleigh_quotient(f, spec) == pytest.approx(2 ** gap, rel=1e-10)


def test_quotient_uses_forward_field(small_scenario, rng):
    s = small_scenario
    h = channel_vector(s.array, s.ue, s.wave)
    h_e = channel_vector(s.array, s.eavesdropper.center, s.wave)
    f = Beamformer(unit_modulus(rng, s.array.num_elements), Scheme.STEERING)
    g = received_amplitude(f, s.array, s.ue, s.wave)
    g_e = received_amplitude(f, s.array, s.eavesdropper.center, s.wave)
    expected = (1 + 3.0 * abs(g) ** 2) / (1 + 3.0 * abs(g_e) ** 2)
    assert generalized_rayleigh_quotient(f, PencilSpec(h, h_e, 3.0)) == pytest.approx(expected, rel=1e-12)


def test_eigen_beats_phase_only_schemes(reference_scenario):
    s = reference_scenario
    spec = PencilSpec(
        channel_vector(s.array, s.ue, s.wave),
        channel_vector(s.array, s.eavesdropper.center, s.wave),
        s.budget.gamma,
    )
    best = generalized_rayleigh_quotient(synthesize(Scheme.EIGEN, s), spec)
    for scheme in (Scheme.STEERING, Scheme.FOCUSING, Scheme.PROPOSED):
        assert generalized_rayleigh_quotient(synthesize(scheme, s), spec) <= best


def test_synthesize_eigen_is_not_unit_modulus(reference_scenario):
    f = synthesize(Scheme.EIGEN, reference_scenario)
    assert f.scheme is Scheme.EIGEN
    assert f.norm == pytest.approx(1.0, abs=1e-12)
    assert np.ptp(np.abs(f.weights)) > 1e-6
    assert not Scheme.EIGEN.unit_modulus

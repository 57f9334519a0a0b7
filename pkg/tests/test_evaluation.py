"""Tests for app.services.evaluation."""

import cmath
import math

import numpy as np
import pytest

from conftest import make_scenario
from app.exceptions import EmptyRegion
from app.models import Beamformer, Disk, FieldMap, GridSpec, Point2, RegionSampling, Scheme
from app.services.channel import rate, received_amplitude
from app.services.evaluation import (
    field_map,
    region_leakage,
    robust_report,
    sample_region,
    sample_region_array,
)
from app.services.profiles import focusing_profile, to_beamformer
from app.services.schemes import synthesize


DISK = Disk(Point2(0.4, 1.25), 0.25)
LEAKAGE_GRID = GridSpec(x_min=0.0, x_max=0.8, y_min=0.9, y_max=1.6, nx=41, ny=36)


def _uniform_map(value, nx=11, ny=11):
    return FieldMap(
        x_range=(0.0, 1.0),
        y_range=(1.0, 2.0),
        nx=nx,
        ny=ny,
        values=np.full((ny, nx), value),
        peak_power=1.0,
        flagged=np.zeros((ny, nx), dtype=bool),
    )


def _absolute_max_db(fmap, disk):
    max_db, _ = region_leakage(fmap, disk)
    return max_db + 10 * math.log10(fmap.peak_power)


# ==================== REGION SAMPLING ====================

def test_sample_count_and_order():
    sampling = RegionSampling(rings=8, angles_per_ring=64)
    points = sample_region_array(DISK, sampling)
    assert points.shape == (8 * 64 + 1, 2)
    np.testing.assert_allclose(points[-1], [0.4, 1.25])
    # first ring, first angle
    np.testing.assert_allclose(points[0], [0.4 + 0.25 / 8, 1.25], rtol=1e-14)
    # last ring sits on the boundary
    radii = np.hypot(points[:-1, 0] - 0.4, points[:-1, 1] - 1.25)
    np.testing.assert_allclose(radii[-64:], 0.25, rtol=1e-12)


def test_samples_stay_in_closed_disk():
    points = sample_region_array(DISK, RegionSampling(rings=5, angles_per_ring=12))
    radii = np.hypot(points[:, 0] - 0.4, points[:, 1] - 1.25)
    assert np.all(radii <= 0.25 * (1 + 1e-12))


def test_sampling_without_center():
    sampling = RegionSampling(rings=2, angles_per_ring=4, include_center=False)
    points = sample_region(DISK, sampling)
    assert len(points) == sampling.count == 8
    assert all(isinstance(p, Point2) for p in points)


def test_sampling_rejects_coarse_grid():
    with pytest.raises(ValueError):
        RegionSampling(rings=0)
    with pytest.raises(ValueError):
        RegionSampling(angles_per_ring=3)


# ==================== ROBUST REPORT ====================

def test_report_invariants(reference_scenario):
    f = synthesize(Scheme.FOCUSING, reference_scenario)
    report = robust_report(f, reference_scenario, RegionSampling())
    assert report.r_ue > 0
    assert report.r_e_mean <= report.r_e_worst
    assert report.r_s_worst <= report.r_s_mean
    assert report.r_s_worst == pytest.approx(max(report.r_ue - report.r_e_worst, 0.0))
    assert DISK.center.distance_to(report.worst_point) <= 0.25 * (1 + 1e-12)


def test_report_matches_direct_evaluation(small_scenario):
    s = small_scenario
    f = synthesize(Scheme.PROPOSED, s)
    report = robust_report(f, s, RegionSampling(rings=1, angles_per_ring=4))

    g_ue = abs(received_amplitude(f, s.array, s.ue, s.wave)) ** 2
    assert report.r_ue == pytest.approx(rate(g_ue, s.budget), rel=1e-12)
    g_worst = abs(received_amplitude(f, s.array, report.worst_point, s.wave)) ** 2
    assert report.r_e_worst == pytest.approx(rate(g_worst, s.budget), rel=1e-12)


def test_report_invariant_to_global_phase(small_scenario):
    s = small_scenario
    f = synthesize(Scheme.PROPOSED, s)
    rotated = Beamformer(cmath.exp(1.3j) * f.weights, f.scheme)
    a = robust_report(f, s, RegionSampling())
    b = robust_report(rotated, s, RegionSampling())
    assert b.r_ue == pytest.approx(a.r_ue, rel=1e-12)
    assert b.r_e_worst == pytest.approx(a.r_e_worst, rel=1e-12)
    assert b.r_s_mean == pytest.approx(a.r_s_mean, rel=1e-12, abs=1e-12)


def test_finer_sampling_never_lowers_worst_case(reference_scenario):
    f = synthesize(Scheme.PROPOSED, reference_scenario)
    coarse = robust_report(f, reference_scenario, RegionSampling(rings=8, angles_per_ring=64))
    fine = robust_report(f, reference_scenario, RegionSampling(rings=16, angles_per_ring=128))
    assert fine.r_e_worst >= coarse.r_e_worst - 1e-9


def test_report_evaluates_original_disk():
    inflated = make_scenario(margin=0.15, num_elements=32)
    f = synthesize(Scheme.FOCUSING, inflated)
    report = robust_report(f, inflated, RegionSampling(rings=4, angles_per_ring=16))
    assert DISK.center.distance_to(report.worst_point) <= 0.25 * (1 + 1e-12)


# ==================== FIELD MAPS ====================

def test_focusing_field_peaks_at_target(reference_scenario):
    s = reference_scenario
    target = Point2(0.0, 1.5)
    f = to_beamformer(focusing_profile(target, s.array, s.wave))
    grid = GridSpec(x_min=-0.1, x_max=0.1, y_min=1.4, y_max=1.6, nx=21, ny=21)
    fmap = field_map(f, s, grid)
    iy, ix = np.unravel_index(np.argmax(fmap.values), fmap.values.shape)
    assert abs(ix - 10) <= 1
    assert abs(iy - 10) <= 1


def test_field_map_is_normalized(small_scenario):
    f = synthesize(Scheme.FOCUSING, small_scenario)
    fmap = field_map(f, small_scenario, GridSpec(-0.5, 0.5, 0.5, 2.0, 15, 12))
    assert fmap.values.shape == (12, 15)
    assert fmap.values.max() == 1.0
    assert fmap.values.min() >= 0.0
    assert fmap.peak_power > 0


def test_field_map_is_deterministic(small_scenario):
    f = synthesize(Scheme.PROPOSED, small_scenario)
    grid = GridSpec(-0.5, 0.5, 0.5, 2.0, 9, 7)
    np.testing.assert_array_equal(field_map(f, small_scenario, grid).values, field_map(f, small_scenario, grid).values)


def test_field_map_flags_cells_on_elements():
    s = make_scenario(num_elements=8)
    x = s.array.element_x
    grid = GridSpec(float(x[0]), float(x[-1]), 0.0, 1.0, 8, 5)
    fmap = field_map(synthesize(Scheme.FOCUSING, s), s, grid)
    assert fmap.flagged[0].all()
    assert not fmap.flagged[1:].any()
    np.testing.assert_array_equal(fmap.values[0], 0.0)


# ==================== LEAKAGE ====================

def test_uniform_map_leakage():
    max_db, mean_db = region_leakage(_uniform_map(0.5), Disk(Point2(0.5, 1.5), 0.3))
    assert max_db == pytest.approx(10 * math.log10(0.5))
    assert mean_db == pytest.approx(10 * math.log10(0.5))


def test_leakage_of_zero_region():
    assert region_leakage(_uniform_map(0.0), Disk(Point2(0.5, 1.5), 0.3)) == (-math.inf, -math.inf)


def test_leakage_without_cells_raises():
    with pytest.raises(EmptyRegion):
        region_leakage(_uniform_map(1.0, nx=2, ny=2), Disk(Point2(0.5, 1.5), 0.1))


def test_steering_leaks_more_than_proposed():
    s = make_scenario(margin=0.15)
    steering = field_map(synthesize(Scheme.STEERING, s), s, LEAKAGE_GRID)
    proposed = field_map(synthesize(Scheme.PROPOSED, s), s, LEAKAGE_GRID)
    assert region_leakage(steering, DISK)[0] > region_leakage(proposed, DISK)[0]


@pytest.mark.slow
def test_proposed_suppresses_focusing_leakage_by_10_db():
    s = make_scenario(margin=0.15)
    focusing = field_map(synthesize(Scheme.FOCUSING, s), s, LEAKAGE_GRID)
    proposed = field_map(synthesize(Scheme.PROPOSED, s), s, LEAKAGE_GRID)
    assert _absolute_max_db(focusing, DISK) - _absolute_max_db(proposed, DISK) >= 10.0

import logging
import math
from typing import List, Tuple

import numpy as np

from app.exceptions import EmptyRegion
from app.models import (
    Beamformer,
    Disk,
    FieldMap,
    GridSpec,
    Point2,
    RegionSampling,
    RobustReport,
    Scenario,
)
from app.services.channel import rate, received_amplitudes, secrecy_rate


logger = logging.getLogger(__name__)

ELEMENT_CLEARANCE = 1e-6  # m; grid cells closer to an element are zeroed and flagged


# ==================== REGION SAMPLING ====================

def sample_region_array(disk: Disk, sampling: RegionSampling) -> np.ndarray:
    """
    Polar sample grid over the disk as an (N, 2) array.

    Ring-major, angle-minor; ring k has radius eps*k/rings, the center
    (if requested) comes last.
    """
    radii = disk.radius * np.arange(1, sampling.rings + 1) / sampling.rings
    angles = 2 * np.pi * np.arange(sampling.angles_per_ring) / sampling.angles_per_ring
    xs = disk.center.x + radii[:, None] * np.cos(angles)[None, :]
    ys = disk.center.y + radii[:, None] * np.sin(angles)[None, :]
    points = np.column_stack([xs.ravel(), ys.ravel()])
    if sampling.include_center:
        points = np.vstack([points, [disk.center.x, disk.center.y]])
    return points


def sample_region(disk: Disk, sampling: RegionSampling) -> List[Point2]:
    return [Point2(float(x), float(y)) for x, y in sample_region_array(disk, sampling)]


# ==================== RATES ====================

def robust_report(f: Beamformer, scenario: Scenario, sampling: RegionSampling) -> RobustReport:
    """
    Legitimate rate plus mean and worst-case eavesdropping and secrecy rates.

    The eavesdropper may sit anywhere in the original (not margin-inflated)
    disk; the worst case is the maximum over the deterministic sample grid,
    ties resolved to the first sample.

    Args:
        f: Beamformer under test
        scenario: Scenario with UE, disk and link budget
        sampling: Sample grid density

    Returns:
        RobustReport in bits/s/Hz
    """
    ue = scenario.ue
    samples = sample_region_array(scenario.eavesdropper, sampling)
    points = np.vstack([[ue.x, ue.y], samples])
    g = received_amplitudes(f, scenario.array, points, scenario.wave)
    g_mag2 = np.abs(g) ** 2

    r_ue = rate(float(g_mag2[0]), scenario.budget)
    r_e = rate(g_mag2[1:], scenario.budget)
    worst = int(np.argmax(r_e))
    r_s = secrecy_rate(r_ue, r_e)

    report = RobustReport(
        r_ue=r_ue,
        r_e_mean=float(np.mean(r_e)),
        r_e_worst=float(r_e[worst]),
        r_s_mean=float(np.mean(r_s)),
        r_s_worst=secrecy_rate(r_ue, float(r_e[worst])),
        worst_point=Point2(float(samples[worst, 0]), float(samples[worst, 1])),
    )
    logger.debug(
        f"{f.scheme.value}: R_UE={report.r_ue:.4f} R_E worst={report.r_e_worst:.4f} "
        f"at {report.worst_point}"
    )
    return report


# ==================== FIELD MAPS ====================

def _near_element(xs: np.ndarray, ys: np.ndarray, scenario: Scenario) -> np.ndarray:
    """Cells within ELEMENT_CLEARANCE of the nearest element"""
    array = scenario.array
    index = np.clip(
        np.rint((xs - array.element_x[0]) / array.spacing), 0, array.num_elements - 1
    ).astype(int)
    return np.hypot(xs - array.element_x[index], ys) < ELEMENT_CLEARANCE


def field_map(f: Beamformer, scenario: Scenario, grid: GridSpec) -> FieldMap:
    """
    Normalized radiated power |g|^2 / peak over a rectangular grid.

    Args:
        f: Beamformer applied to the array
        scenario: Array and wave description
        grid: Grid bounds and resolution

    Returns:
        FieldMap with values[iy, ix], rows ascending in y
    """
    xs, ys = np.meshgrid(grid.x_coords, grid.y_coords)
    flagged = _near_element(xs, ys, scenario)
    if np.any(flagged):
        logger.warning(f"{int(flagged.sum())} grid cells sit on array elements and are set to 0")

    power = np.zeros(xs.shape)
    live = ~flagged
    points = np.column_stack([xs[live], ys[live]])
    if len(points):
        power[live] = np.abs(received_amplitudes(f, scenario.array, points, scenario.wave)) ** 2

    peak = float(power.max())
    values = power / peak if peak > 0 else power
    values.setflags(write=False)
    flagged.setflags(write=False)
    return FieldMap(
        x_range=(grid.x_min, grid.x_max),
        y_range=(grid.y_min, grid.y_max),
        nx=grid.nx,
        ny=grid.ny,
        values=values,
        peak_power=peak,
        flagged=flagged,
    )


def region_leakage(fmap: FieldMap, disk: Disk) -> Tuple[float, float]:
    """
    Max and mean normalized power in dB over cells centred in the closed disk.

    Zero-valued cells count as -inf for the maximum and are left out of the
    mean; a region of zeros gives (-inf, -inf).

    Raises:
        EmptyRegion: If no cell centre lies in the disk
    """
    xs, ys = np.meshgrid(fmap.x_coords, fmap.y_coords)
    inside = np.hypot(xs - disk.center.x, ys - disk.center.y) <= disk.radius
    if not np.any(inside):
        raise EmptyRegion(f"No grid cell centre lies inside {disk}")

    values = fmap.values[inside]
    positive = values[values > 0]
    if len(positive) == 0:
        return -math.inf, -math.inf
    db = 10 * np.log10(positive)
    return float(db.max()), float(db.mean())

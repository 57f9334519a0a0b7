"""
Spherical-wave channel and rates.

The forward field g(p) = sum_m f_m * exp(+j*kappa*r_m) / r_m is used for both
field maps and rates, which makes the focusing profile -kappa*r the matched
filter.
"""

import logging
from typing import Optional, Union

import numpy as np

from app.config import settings
from app.exceptions import CoincidentPoints
from app.models import ArrayGeometry, Beamformer, ChannelVector, LinkBudget, Point2, WaveSpec


logger = logging.getLogger(__name__)

MIN_DISTANCE = 1e-9  # m; closer than this the 1/r kernel is treated as singular


def _kernel(distances: np.ndarray, wave: WaveSpec) -> np.ndarray:
    return np.exp(1j * wave.wavenumber * distances) / distances


def green(tx: Point2, rx: Point2, wave: WaveSpec) -> complex:
    """
    Free-space spherical wave exp(j*kappa*r) / r between two points.

    Raises:
        CoincidentPoints: If tx and rx coincide
    """
    r = tx.distance_to(rx)
    if r < MIN_DISTANCE:
        raise CoincidentPoints(f"Green's function evaluated at coincident points {tx}, {rx}")
    return complex(_kernel(np.float64(r), wave))


def channel_vector(array: ArrayGeometry, receiver: Point2, wave: WaveSpec) -> ChannelVector:
    """
    Per-element channel to a receiver.

    Args:
        array: Transmitting array
        receiver: Receiver position
        wave: Carrier description

    Returns:
        ChannelVector with entry m = green(element m, receiver)
    """
    r = np.hypot(array.element_x - receiver.x, receiver.y)
    if np.min(r) < MIN_DISTANCE:
        raise CoincidentPoints(f"Receiver {receiver} coincides with an array element")
    entries = _kernel(r, wave)
    entries.setflags(write=False)
    return ChannelVector(entries)


def received_amplitudes(
    f: Beamformer,
    array: ArrayGeometry,
    points: np.ndarray,
    wave: WaveSpec,
    chunk_size: Optional[int] = None,
) -> np.ndarray:
    """
    Forward field of a beamformer at many points.

    Points are processed in blocks of chunk_size rows so the (N, M) kernel
    never has to be held at once.

    Args:
        f: Beamformer applied to the array
        array: Array geometry
        points: (N, 2) evaluation coordinates
        wave: Carrier description
        chunk_size: Rows per block (defaults to settings.FIELD_CHUNK_SIZE)

    Returns:
        (N,) complex amplitudes in input order

    Raises:
        CoincidentPoints: If any point sits on an element
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    if len(f.weights) != array.num_elements:
        raise ValueError(
            f"Beamformer has {len(f.weights)} weights for {array.num_elements} elements"
        )
    chunk = chunk_size or settings.FIELD_CHUNK_SIZE
    out = np.empty(len(points), dtype=complex)

    for start in range(0, len(points), chunk):
        block = points[start:start + chunk]
        r = np.hypot(block[:, 0:1] - array.element_x[None, :], block[:, 1:2])
        if np.min(r) < MIN_DISTANCE:
            raise CoincidentPoints("Field evaluated on top of an array element")
        out[start:start + chunk] = _kernel(r, wave) @ f.weights
        logger.debug(f"Evaluated field block {start}..{start + len(block)} of {len(points)}")

    return out


def received_amplitude(f: Beamformer, array: ArrayGeometry, p: Point2, wave: WaveSpec) -> complex:
    """Forward field of a beamformer at a single point"""
    return complex(received_amplitudes(f, array, np.array([[p.x, p.y]]), wave)[0])


def rate(g_mag2: Union[float, np.ndarray], budget: LinkBudget) -> Union[float, np.ndarray]:
    """
    Achievable rate log2(1 + P_T * gain * |g|^2 / sigma^2) in bits/s/Hz.

    Accepts a scalar or an array of |g|^2 values.
    """
    value = np.log2(1.0 + budget.gamma * np.asarray(g_mag2, dtype=float))
    if np.ndim(value) == 0:
        return float(value)
    return value


def secrecy_rate(r_ue: Union[float, np.ndarray], r_e: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """Secrecy rate max(0, R_UE - R_E)"""
    value = np.maximum(0.0, np.asarray(r_ue, dtype=float) - np.asarray(r_e, dtype=float))
    if np.ndim(value) == 0:
        return float(value)
    return value

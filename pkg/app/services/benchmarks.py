"""
Perfect-CSI secure focusing baseline.

Maximizes (1 + gamma*|h^H f|^2) / (1 + gamma*|h_e^H f|^2) over unit-norm f.
Both matrices of the pencil are identity plus a rank-one term, so the
optimum lies in span{h, h_e}: project onto an orthonormal basis of that
plane, solve the 2x2 generalized eigenproblem through its characteristic
quadratic and lift the eigenvector back.

The pencil vectors are the conjugated propagation channels, which makes
|h^H f| equal to the forward field |g| used by every rate in this package.
"""

import logging
import math
import warnings
from dataclasses import dataclass

import numpy as np

from app.exceptions import CollinearChannels
from app.models import Beamformer, ChannelVector, Scheme


logger = logging.getLogger(__name__)

COLLINEAR_TOL = 1e-12


@dataclass(frozen=True)
class PencilSpec:
    h: ChannelVector  # legitimate channel
    h_e: ChannelVector  # eavesdropper channel at the estimate
    gamma: float  # P_T * gain / sigma^2

    def __post_init__(self):
        if not self.gamma > 0:
            raise ValueError(f"gamma must be positive, got {self.gamma}")
        if len(self.h) != len(self.h_e):
            raise ValueError(f"Channel lengths differ: {len(self.h)} vs {len(self.h_e)}")
        if not np.any(self.h.entries) or not np.any(self.h_e.entries):
            raise ValueError("Channels must not be all-zero")


def _fix_global_phase(f: np.ndarray) -> np.ndarray:
    """Rotate so the first nonzero entry is real and positive"""
    nonzero = np.flatnonzero(np.abs(f) > 0)
    if len(nonzero) == 0:
        return f
    lead = f[nonzero[0]]
    return f * (abs(lead) / lead)


def _dominant_pair(a2: np.ndarray, b2: np.ndarray) -> np.ndarray:
    """
    Dominant generalized eigenvector of (A, B) in the 2-D basis.

    Args:
        a2: Coordinates of the legitimate channel, (2,)
        b2: Coordinates of the eavesdropper channel, (2,)

    Returns:
        Unnormalized eigenvector, (2,)
    """
    a_mat = np.eye(2, dtype=complex) + np.outer(a2, a2.conj())
    b_mat = np.eye(2, dtype=complex) + np.outer(b2, b2.conj())

    # det(A - lam*B) = det(B)*lam^2 - t*lam + det(A)
    det_a = (a_mat[0, 0] * a_mat[1, 1] - a_mat[0, 1] * a_mat[1, 0]).real
    det_b = (b_mat[0, 0] * b_mat[1, 1] - b_mat[0, 1] * b_mat[1, 0]).real
    t = (
        a_mat[0, 0] * b_mat[1, 1] + a_mat[1, 1] * b_mat[0, 0]
        - a_mat[0, 1] * b_mat[1, 0] - a_mat[1, 0] * b_mat[0, 1]
    ).real
    disc = max(t * t - 4 * det_a * det_b, 0.0)
    lam = (t + math.sqrt(disc)) / (2 * det_b)

    null = a_mat - lam * b_mat
    row = null[0] if np.linalg.norm(null[0]) >= np.linalg.norm(null[1]) else null[1]
    if np.linalg.norm(row) == 0:
        return np.array([1.0, 0.0], dtype=complex)
    return np.array([row[1], -row[0]])


def optimal_secure_focusing(spec: PencilSpec) -> Beamformer:
    """
    Unit-norm beamformer maximizing the generalized Rayleigh quotient.

    Collinear channels make every direction in the span equivalent; a
    CollinearChannels warning is issued and the matched filter is returned
    with the degenerate flag set.

    Args:
        spec: Channels and SNR scale

    Returns:
        Beamformer with sum |f_m|^2 = 1 and scheme EIGEN
    """
    a = np.conj(spec.h.entries)
    b = np.conj(spec.h_e.entries)
    scale = math.sqrt(spec.gamma)

    norm_a = np.linalg.norm(a)
    u1 = a / norm_a
    proj = np.vdot(u1, b)
    residual = b - proj * u1
    res_norm = np.linalg.norm(residual)

    if res_norm <= COLLINEAR_TOL * np.linalg.norm(b):
        warnings.warn(
            "Legitimate and eavesdropper channels are collinear; returning the matched filter",
            CollinearChannels,
            stacklevel=2,
        )
        logger.warning("Collinear channels in secure focusing pencil, falling back to matched filter")
        weights = _fix_global_phase(u1)
        weights.setflags(write=False)
        return Beamformer(weights, Scheme.EIGEN, degenerate=True)

    u2 = residual / res_norm
    a2 = scale * np.array([norm_a, 0.0], dtype=complex)
    b2 = scale * np.array([proj, res_norm], dtype=complex)
    v = _dominant_pair(a2, b2)

    f = v[0] * u1 + v[1] * u2
    f = _fix_global_phase(f / np.linalg.norm(f))
    f.setflags(write=False)
    return Beamformer(f, Scheme.EIGEN)


def generalized_rayleigh_quotient(f: Beamformer, spec: PencilSpec) -> float:
    """(1 + gamma*|h^H f|^2) / (1 + gamma*|h_e^H f|^2) with |h^H f| the forward field"""
    g_ue = np.dot(spec.h.entries, f.weights)
    g_e = np.dot(spec.h_e.entries, f.weights)
    return float((1 + spec.gamma * abs(g_ue) ** 2) / (1 + spec.gamma * abs(g_e) ** 2))

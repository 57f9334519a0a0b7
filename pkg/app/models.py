import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Tuple

import numpy as np


SPEED_OF_LIGHT = 299_792_458.0  # m/s


def dbm_to_watts(dbm: float) -> float:
    """Convert a power level in dBm to watts"""
    return 10.0 ** ((dbm - 30.0) / 10.0)


def _frozen_array(values, dtype) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


# ==================== GEOMETRY ====================

@dataclass(frozen=True)
class Point2:
    """Planar point in meters; the array lies on the x-axis"""

    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"Point coordinates must be finite, got ({self.x}, {self.y})")

    def distance_to(self, other: "Point2") -> float:
        return math.hypot(self.x - other.x, self.y - other.y)

    def mirrored(self) -> "Point2":
        """Reflection x -> -x"""
        return Point2(-self.x, self.y)

    def __repr__(self):
        return f"<Point2({self.x:.6g}, {self.y:.6g})>"


@dataclass(frozen=True)
class Disk:
    """Eavesdropper uncertainty region: estimate plus localization-error radius"""

    center: Point2
    radius: float

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError(f"Disk radius must be positive, got {self.radius}")
        if not self.center.y > self.radius:
            raise ValueError(
                f"Disk must lie strictly above the array plane: "
                f"center.y={self.center.y} radius={self.radius}"
            )

    def contains(self, p: Point2) -> bool:
        """Closed-disk membership (boundary counts as inside)"""
        return self.center.distance_to(p) <= self.radius

    def inflated(self, margin: float) -> "Disk":
        if margin < 0:
            raise ValueError(f"Margin must be non-negative, got {margin}")
        if margin == 0:
            return self
        return Disk(self.center, self.radius + margin)

    def mirrored(self) -> "Disk":
        return Disk(self.center.mirrored(), self.radius)


@dataclass(frozen=True)
class Ray:
    """Half-line leaving the array into y > 0"""

    origin: Point2
    angle: float  # radians from +x axis

    def __post_init__(self):
        if not 0.0 < self.angle < math.pi:
            raise ValueError(f"Ray angle must lie in (0, pi), got {self.angle}")


# ==================== CHANNEL ====================

@dataclass(frozen=True)
class WaveSpec:
    carrier_frequency: float  # Hz
    wavelength: float  # m
    wavenumber: float  # rad/m

    def __post_init__(self):
        if not (self.carrier_frequency > 0 and self.wavelength > 0 and self.wavenumber > 0):
            raise ValueError("Wave parameters must be positive")
        if abs(self.wavelength * self.carrier_frequency - SPEED_OF_LIGHT) > 1e-12 * SPEED_OF_LIGHT:
            raise ValueError("Wavelength inconsistent with carrier frequency")
        if abs(self.wavenumber * self.wavelength - 2 * math.pi) > 1e-12 * 2 * math.pi:
            raise ValueError("Wavenumber inconsistent with wavelength")

    @classmethod
    def from_frequency(cls, carrier_frequency: float) -> "WaveSpec":
        if not carrier_frequency > 0:
            raise ValueError(f"Carrier frequency must be positive, got {carrier_frequency}")
        wavelength = SPEED_OF_LIGHT / carrier_frequency
        return cls(carrier_frequency, wavelength, 2 * math.pi / wavelength)


@dataclass(frozen=True)
class ArrayGeometry:
    """Uniform linear array on the x-axis, centred at the origin"""

    num_elements: int
    spacing: float
    element_x: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.num_elements < 2:
            raise ValueError(f"Array needs at least 2 elements, got {self.num_elements}")
        if not self.spacing > 0:
            raise ValueError(f"Element spacing must be positive, got {self.spacing}")
        if len(self.element_x) != self.num_elements:
            raise ValueError("element_x length does not match num_elements")

    @classmethod
    def uniform(cls, num_elements: int, spacing: float) -> "ArrayGeometry":
        m = np.arange(num_elements, dtype=float)
        return cls(num_elements, spacing, _frozen_array((m - (num_elements - 1) / 2) * spacing, float))

    @property
    def aperture(self) -> float:
        return (self.num_elements - 1) * self.spacing

    @property
    def positions(self) -> np.ndarray:
        """(M, 2) element coordinates"""
        return np.column_stack([self.element_x, np.zeros(self.num_elements)])


@dataclass(frozen=True)
class ChannelVector:
    entries: np.ndarray = field(repr=False)

    def __len__(self):
        return len(self.entries)


@dataclass(frozen=True)
class LinkBudget:
    transmit_power: float  # W
    noise_power: float  # W
    path_gain: float = 1.0  # linear factor on |g|^2

    def __post_init__(self):
        if not (self.transmit_power > 0 and self.noise_power > 0 and self.path_gain > 0):
            raise ValueError("Transmit power, noise power and path gain must be positive")

    @classmethod
    def from_dbm(cls, transmit_power_dbm: float, noise_power_dbm: float, path_gain_db: float = 0.0) -> "LinkBudget":
        return cls(
            dbm_to_watts(transmit_power_dbm),
            dbm_to_watts(noise_power_dbm),
            10.0 ** (path_gain_db / 10.0),
        )

    @property
    def gamma(self) -> float:
        """Effective SNR scale P_T * gain / sigma^2"""
        return self.transmit_power * self.path_gain / self.noise_power

    def with_transmit_power_dbm(self, dbm: float) -> "LinkBudget":
        return LinkBudget(dbm_to_watts(dbm), self.noise_power, self.path_gain)


# ==================== BEAMS ====================

class Label(str, Enum):
    CAUSTIC = "CAUSTIC"
    FOCUSING = "FOCUSING"


class Scheme(str, Enum):
    STEERING = "steering"
    FOCUSING = "focusing"
    QUADRATIC = "quadratic"
    CAUSTIC = "caustic"
    PROPOSED = "proposed"
    EIGEN = "eigen"

    @property
    def unit_modulus(self) -> bool:
        return self is not Scheme.EIGEN


@dataclass(frozen=True)
class PhaseProfile:
    """Per-element unwrapped phases with subarray labels"""

    phases: np.ndarray = field(repr=False)
    labels: Tuple[Label, ...] = field(repr=False)
    scheme: Scheme = Scheme.FOCUSING

    def __post_init__(self):
        if len(self.phases) != len(self.labels):
            raise ValueError("phases and labels differ in length")
        if not np.all(np.isfinite(self.phases)):
            raise ValueError("Phase profile contains non-finite values")

    @classmethod
    def uniform_label(cls, phases: np.ndarray, label: Label, scheme: Scheme) -> "PhaseProfile":
        return cls(_frozen_array(phases, float), (label,) * len(phases), scheme)

    def __len__(self):
        return len(self.phases)

    @property
    def wrapped(self) -> np.ndarray:
        """Phases folded to [0, 2*pi)"""
        return np.mod(self.phases, 2 * np.pi)


@dataclass(frozen=True)
class Beamformer:
    weights: np.ndarray = field(repr=False)
    scheme: Scheme
    degenerate: bool = False  # set when the eigen pencil collapsed

    def __len__(self):
        return len(self.weights)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.weights))


@dataclass(frozen=True)
class Partition:
    """Caustic/focusing split; caustic run is contiguous and anchored at an array end"""

    caustic_indices: np.ndarray
    focusing_indices: np.ndarray
    mirrored: bool = False  # caustic run anchored at the +x end

    @property
    def num_elements(self) -> int:
        return len(self.caustic_indices) + len(self.focusing_indices)


# ==================== EVALUATION ====================

@dataclass(frozen=True)
class RegionSampling:
    rings: int = 8
    angles_per_ring: int = 64
    include_center: bool = True

    def __post_init__(self):
        if self.rings < 1:
            raise ValueError(f"rings must be >= 1, got {self.rings}")
        if self.angles_per_ring < 4:
            raise ValueError(f"angles_per_ring must be >= 4, got {self.angles_per_ring}")

    @property
    def count(self) -> int:
        return self.rings * self.angles_per_ring + (1 if self.include_center else 0)


@dataclass(frozen=True)
class GridSpec:
    x_min: float
    x_max: float
    y_min: float
    y_max: float
    nx: int
    ny: int

    def __post_init__(self):
        if self.nx < 2 or self.ny < 2:
            raise ValueError(f"Grid needs nx, ny >= 2, got {self.nx}x{self.ny}")
        if not (self.x_max > self.x_min and self.y_max > self.y_min):
            raise ValueError("Grid bounds must satisfy min < max")

    @property
    def x_coords(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.nx)

    @property
    def y_coords(self) -> np.ndarray:
        return np.linspace(self.y_min, self.y_max, self.ny)


@dataclass(frozen=True)
class FieldMap:
    """Normalized power |g|^2 / peak on a rectangular grid, values[iy, ix]"""

    x_range: Tuple[float, float]
    y_range: Tuple[float, float]
    nx: int
    ny: int
    values: np.ndarray = field(repr=False)
    peak_power: float
    flagged: np.ndarray = field(repr=False)  # cells dropped next to an element

    @property
    def x_coords(self) -> np.ndarray:
        return np.linspace(self.x_range[0], self.x_range[1], self.nx)

    @property
    def y_coords(self) -> np.ndarray:
        return np.linspace(self.y_range[0], self.y_range[1], self.ny)


@dataclass(frozen=True)
class RobustReport:
    r_ue: float
    r_e_mean: float
    r_e_worst: float
    r_s_mean: float
    r_s_worst: float
    worst_point: Point2


# ==================== SCENARIO ====================

@dataclass(frozen=True)
class Scenario:
    """Everything a synthesis or evaluation run needs"""

    wave: WaveSpec
    array: ArrayGeometry
    ue: Point2
    eavesdropper: Disk  # estimate r_E and radius epsilon used for evaluation
    budget: LinkBudget
    epsilon_margin: float = 0.0
    steering_angle: Optional[float] = None
    quadratic_a: float = 0.5

    def __post_init__(self):
        if self.ue.y <= 0:
            raise ValueError(f"UE must lie in y > 0, got {self.ue}")
        if self.epsilon_margin < 0:
            raise ValueError(f"epsilon_margin must be non-negative, got {self.epsilon_margin}")
        if self.quadratic_a == 0:
            raise ValueError("quadratic_a must be non-zero")

    @property
    def synthesis_disk(self) -> Disk:
        """Disk inflated by the margin; used for partitioning and caustic synthesis only"""
        return self.eavesdropper.inflated(self.epsilon_margin)

    @property
    def steering_theta(self) -> float:
        """Configured AoD, or the UE direction seen from the array centre"""
        if self.steering_angle is not None:
            return self.steering_angle
        return math.atan2(self.ue.y, self.ue.x)

    def mirrored(self) -> "Scenario":
        return Scenario(
            wave=self.wave,
            array=self.array,
            ue=self.ue.mirrored(),
            eavesdropper=self.eavesdropper.mirrored(),
            budget=self.budget,
            epsilon_margin=self.epsilon_margin,
            steering_angle=None if self.steering_angle is None else math.pi - self.steering_angle,
            quadratic_a=self.quadratic_a,
        )

    def with_budget(self, budget: LinkBudget) -> "Scenario":
        return Scenario(
            wave=self.wave,
            array=self.array,
            ue=self.ue,
            eavesdropper=self.eavesdropper,
            budget=budget,
            epsilon_margin=self.epsilon_margin,
            steering_angle=self.steering_angle,
            quadratic_a=self.quadratic_a,
        )

import json
import math
from pathlib import Path
from typing import Dict, Iterable, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator
from pydantic_settings import BaseSettings

from app.exceptions import ConfigError
from app.models import (
    ArrayGeometry,
    Disk,
    GridSpec,
    LinkBudget,
    Point2,
    RegionSampling,
    Scenario,
    Scheme,
    WaveSpec,
)


class Settings(BaseSettings):
    # Logging
    LOG_LEVEL: str = "INFO"  # DEBUG, INFO, WARNING, ERROR, CRITICAL

    # Output directory used when --out is not given
    OUTPUT_DIR: str = "runs"

    # Field evaluation: points per vectorized block
    FIELD_CHUNK_SIZE: int = 4096

    # Timing harness
    BENCH_SIZES: str = "64,256"  # element counts, comma separated
    DEFAULT_REPEATS: int = 20

    class Config:
        env_file = ".env"
        env_file_encoding = "utf-8"

    @property
    def bench_sizes_list(self) -> List[int]:
        """Get list of array sizes timed by the bench command"""
        return [int(size.strip()) for size in self.BENCH_SIZES.split(",") if size.strip()]


# Global settings instance
settings = Settings()


# ==================== RUN FILE ====================

HALF_WAVELENGTH = "half-wavelength"
ISOTROPIC = "isotropic"


class SamplingConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    rings: int = Field(8, ge=1)
    angles: int = Field(64, ge=4)
    include_center: bool = True

    def to_sampling(self) -> RegionSampling:
        return RegionSampling(self.rings, self.angles, self.include_center)


class GridConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    x_min: float = -1.0
    x_max: float = 2.5
    y_min: float = 0.1
    y_max: float = 4.0
    nx: int = Field(176, ge=2)
    ny: int = Field(196, ge=2)

    @model_validator(mode="after")
    def _check_bounds(self) -> "GridConfig":
        if not self.x_max > self.x_min:
            raise ValueError("grid.x_max must exceed grid.x_min")
        if not self.y_max > self.y_min:
            raise ValueError("grid.y_max must exceed grid.y_min")
        return self

    def to_grid(self) -> GridSpec:
        return GridSpec(self.x_min, self.x_max, self.y_min, self.y_max, self.nx, self.ny)


class ScenarioConfig(BaseModel):
    """
    One run file. Defaults reproduce the 28 GHz reference setup:
    256 elements at half-wavelength spacing, UE at (1.5, 3) m and an
    eavesdropper estimate at (0.4, 1.25) m with a 0.25 m error radius.
    """

    model_config = ConfigDict(extra="forbid")

    carrier_frequency_hz: float = Field(28e9, gt=0)
    num_elements: int = Field(256, ge=2)
    element_spacing: Union[float, Literal["half-wavelength"]] = HALF_WAVELENGTH
    ue_position: Tuple[float, float] = (1.5, 3.0)
    eavesdropper_estimate: Tuple[float, float] = (0.4, 1.25)
    epsilon_m: float = Field(0.25, gt=0)
    epsilon_margin_m: float = Field(0.0, ge=0)
    transmit_power_dbm: float = 20.0
    noise_power_dbm: float = -50.0
    path_gain_db: Union[float, Literal["isotropic"]] = 0.0
    steering_angle_rad: Optional[float] = Field(None, gt=0, lt=math.pi)
    quadratic_a: float = 0.5
    sampling: SamplingConfig = Field(default_factory=SamplingConfig)
    grid: GridConfig = Field(default_factory=GridConfig)
    scheme: Scheme = Scheme.PROPOSED
    sweep_schemes: List[Scheme] = Field(
        default_factory=lambda: [Scheme.STEERING, Scheme.FOCUSING, Scheme.PROPOSED, Scheme.EIGEN]
    )

    @model_validator(mode="after")
    def _check_geometry(self) -> "ScenarioConfig":
        if isinstance(self.element_spacing, float) and not self.element_spacing > 0:
            raise ValueError("element_spacing must be positive")
        if not self.ue_position[1] > 0:
            raise ValueError("ue_position must lie in y > 0")
        radius = self.epsilon_m + self.epsilon_margin_m
        if not self.eavesdropper_estimate[1] > radius:
            raise ValueError(
                f"eavesdropper_estimate must lie above the array by more than "
                f"epsilon_m + epsilon_margin_m = {radius}"
            )
        if self.quadratic_a == 0:
            raise ValueError("quadratic_a must be non-zero")
        if not self.sweep_schemes:
            raise ValueError("sweep_schemes must not be empty")
        return self

    @property
    def wave(self) -> WaveSpec:
        return WaveSpec.from_frequency(self.carrier_frequency_hz)

    @property
    def spacing_m(self) -> float:
        """Element spacing in meters with the half-wavelength token resolved"""
        if self.element_spacing == HALF_WAVELENGTH:
            return self.wave.wavelength / 2
        return float(self.element_spacing)

    @property
    def path_gain_value_db(self) -> float:
        """Path gain in dB; the isotropic token is the free-space reference (lambda/4pi)^2"""
        if self.path_gain_db == ISOTROPIC:
            return 20.0 * math.log10(self.wave.wavelength / (4 * math.pi))
        return float(self.path_gain_db)

    def to_scenario(self) -> Scenario:
        """Build the immutable Scenario this file describes"""
        return Scenario(
            wave=self.wave,
            array=ArrayGeometry.uniform(self.num_elements, self.spacing_m),
            ue=Point2(*self.ue_position),
            eavesdropper=Disk(Point2(*self.eavesdropper_estimate), self.epsilon_m),
            budget=LinkBudget.from_dbm(
                self.transmit_power_dbm, self.noise_power_dbm, self.path_gain_value_db
            ),
            epsilon_margin=self.epsilon_margin_m,
            steering_angle=self.steering_angle_rad,
            quadratic_a=self.quadratic_a,
        )

    def dump_resolved(self) -> str:
        """JSON echo of the validated config; re-parses to an equal config"""
        return json.dumps(self.model_dump(mode="json"), indent=2, sort_keys=True) + "\n"


def _format_validation_error(error: ValidationError) -> str:
    parts = []
    for item in error.errors():
        location = ".".join(str(part) for part in item["loc"]) or "<root>"
        parts.append(f"{location}: {item['msg']}")
    return "; ".join(parts)


def parse_scenario_config(raw: Dict, source: str = "<config>") -> ScenarioConfig:
    """
    Validate a raw mapping into a ScenarioConfig.

    Args:
        raw: Decoded run file with overrides already applied
        source: Name used in error messages

    Returns:
        Validated config

    Raises:
        ConfigError: With the offending field paths
    """
    if not isinstance(raw, dict):
        raise ConfigError(f"{source}: top level must be an object, got {type(raw).__name__}")
    try:
        return ScenarioConfig.model_validate(raw)
    except ValidationError as e:
        raise ConfigError(f"{source}: {_format_validation_error(e)}") from e


def load_scenario_config(path: Optional[Path], overrides: Iterable[str] = ()) -> ScenarioConfig:
    """
    Read a run file, apply --set overrides and validate.

    Args:
        path: JSON run file, or None for the built-in defaults
        overrides: "key.sub=value" strings in command-line order

    Returns:
        Validated config
    """
    from app.utils.overrides import apply_overrides

    raw: Dict = {}
    source = "<defaults>"
    if path is not None:
        source = str(path)
        try:
            text = Path(path).read_text(encoding="utf-8")
        except OSError as e:
            raise ConfigError(f"Cannot read config {path}: {e}") from e
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as e:
            raise ConfigError(f"{source}: line {e.lineno} column {e.colno}: {e.msg}") from e

    raw = apply_overrides(raw, overrides)
    return parse_scenario_config(raw, source)

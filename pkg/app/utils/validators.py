from typing import List, Optional

from app.exceptions import ConfigError
from app.models import Scheme


def validate_scheme(name: str) -> Scheme:
    """
    Resolve a scheme name

    Args:
        name: Scheme name (e.g., "proposed")

    Returns:
        Matching Scheme

    Raises:
        ConfigError: For unknown names
    """
    try:
        return Scheme(name.strip().lower())
    except ValueError:
        known = ", ".join(s.value for s in Scheme)
        raise ConfigError(f"Unknown scheme '{name}' (expected one of: {known})") from None


def validate_sweep(p_min_dbm: float, p_max_dbm: float, steps: int) -> List[float]:
    """
    Check a transmit-power sweep and expand it to its grid

    Args:
        p_min_dbm: First power level
        p_max_dbm: Last power level
        steps: Number of levels, endpoints included

    Returns:
        Evenly spaced power levels in dBm
    """
    if not p_min_dbm < p_max_dbm:
        raise ConfigError(f"--p-min ({p_min_dbm}) must be below --p-max ({p_max_dbm})")
    if steps < 2:
        raise ConfigError(f"--steps must be >= 2, got {steps}")
    step = (p_max_dbm - p_min_dbm) / (steps - 1)
    return [p_min_dbm + i * step for i in range(steps - 1)] + [p_max_dbm]


def validate_repeats(repeats: Optional[int], default: int) -> int:
    """
    Validate the bench repeat count

    Args:
        repeats: Requested count, or None for the default
        default: Fallback from settings

    Returns:
        Positive repeat count
    """
    value = default if repeats is None else repeats
    if value < 1:
        raise ConfigError(f"--repeats must be >= 1, got {value}")
    return value

import logging
from io import BytesIO

import numpy as np
from PIL import Image

from app.models import FieldMap


logger = logging.getLogger(__name__)

DB_FLOOR = -60.0
MAX_GRAY = 65535


def to_gray_levels(fmap: FieldMap) -> np.ndarray:
    """
    16-bit gray levels for a field map, top row at y_max.

    Level = round(65535 * clamp((dB + 60) / 60, 0, 1)) with dB = 10*log10(value);
    zero cells map to 0.
    """
    with np.errstate(divide="ignore"):
        db = 10 * np.log10(np.asarray(fmap.values, dtype=float))
    scaled = np.clip((db - DB_FLOOR) / -DB_FLOOR, 0.0, 1.0)
    levels = np.floor(MAX_GRAY * scaled + 0.5).astype(np.int32)
    return np.ascontiguousarray(levels[::-1])


def render_pgm(fmap: FieldMap) -> bytes:
    """
    Encode a field map as a binary 16-bit PGM (P5, maxval 65535).

    Args:
        fmap: Normalized field map

    Returns:
        PGM file bytes
    """
    try:
        img = Image.fromarray(to_gray_levels(fmap), mode="I")

        # Save as PGM to BytesIO (in memory, no disk I/O)
        output = BytesIO()
        img.save(output, format="PPM")
        pgm_bytes = output.getvalue()
        logger.debug(f"Rendered {fmap.nx}x{fmap.ny} field map to {len(pgm_bytes)} PGM bytes")
        return pgm_bytes

    except Exception as e:
        logger.error(f"Error rendering field map to PGM: {str(e)}")
        raise

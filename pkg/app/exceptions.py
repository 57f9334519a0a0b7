"""
Exception hierarchy for geometry, numeric and configuration failures.

The CLI maps the three families to distinct exit codes
(see app.utils.decorators.command_errors).
"""


class CausticBeamError(Exception):
    """Base class for all library errors"""


# ==================== GEOMETRY ====================

class GeometryError(CausticBeamError, ValueError):
    """Configuration geometry cannot be handled"""


class PointInsideDisk(GeometryError):
    """A point that must lie outside the uncertainty disk lies inside or on it"""


class DegenerateSegment(GeometryError):
    """Segment or direction with coincident end points"""


class HorizontalTangent(GeometryError):
    """Tangent line parallel to the array never meets it"""


class UnsupportedGeometry(GeometryError):
    """Line-of-sight shadow is not one interval anchored at an array end"""


class InsideShadow(GeometryError):
    """Caustic phase requested where the tangent length is not real"""


# ==================== NUMERIC ====================

class NumericError(CausticBeamError, ArithmeticError):
    """Numeric evaluation failed"""


class CoincidentPoints(NumericError):
    """Field evaluated on top of a radiating element (1/r singularity)"""


class EmptyRegion(NumericError):
    """No grid cell centre falls inside the requested region"""


# ==================== CONFIG ====================

class ConfigError(CausticBeamError, ValueError):
    """Invalid run file, override or command-line argument"""


# ==================== WARNINGS ====================

class CollinearChannels(UserWarning):
    """Legitimate and eavesdropping channels are collinear; the pencil is degenerate"""

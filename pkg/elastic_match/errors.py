"""
Exception hierarchy for elastic matching
"""


class ElasticMatchError(Exception):
    """Base class for all errors raised by this package"""


class CurveError(ElasticMatchError, ValueError):
    """Invalid curve data (non-increasing breakpoints, zero length, constant curve)"""


class DimensionMismatchError(ElasticMatchError, ValueError):
    """Inputs live in different R^N"""


class FlatPieceError(ElasticMatchError, ValueError):
    """A step function with a zero piece was passed where nowhere-zero is required"""


class NotUnitError(ElasticMatchError, ValueError):
    """Sphere operations need unit L2 norm inputs"""


class GeodesicError(ElasticMatchError, ValueError):
    """No unique geodesic between the given points"""


class MatchError(ElasticMatchError):
    """The matcher could not produce a canonical path"""


class CurveFileError(ElasticMatchError, ValueError):
    """A curve file could not be parsed or validated"""

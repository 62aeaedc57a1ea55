from typing import Optional


class PointSPError(Exception):
    """Base exception for all sampling-protocol errors"""


class ParameterError(PointSPError):
    """Raised when an operation receives an out-of-range parameter"""


class InsufficientPointsError(ParameterError):
    """Raised when fewer candidate points are available than requested"""

    def __init__(self, message: str, available: int):
        super().__init__(message)
        self.available = available


class CloudFormatError(PointSPError):
    """Raised when a point-cloud file cannot be parsed"""

    def __init__(self, message: str, line: Optional[int] = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


class DegenerateGeometryError(PointSPError):
    """Raised when the geometry leaves an operation nothing to work with"""


class NoInterpolantError(DegenerateGeometryError):
    """Raised when every neighbor of a source point lies along its normal"""


class CommandError(Exception):
    """Raised when a CLI command encounters an error."""

    def __init__(self, message):
        super().__init__(message)
        self.message = message


class CloudWriteError(PointSPError):
    """Raised when an output file cannot be written"""

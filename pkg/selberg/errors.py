# selberg/errors.py
"""
Exception hierarchy for the lab.

Library code raises these; batch loops (sampling, witness scans) catch the
per-point failures, count them and keep going.
"""

from typing import Optional


class SelbergLabError(Exception):
    """Base class for every error raised by the lab"""


class DomainError(SelbergLabError, ValueError):
    """An argument lies outside the operation's domain"""


class EmptyTableError(DomainError):
    """A prime table was requested below the first prime"""


class UnsupportedRegionError(SelbergLabError):
    """The requested point is outside the region a backend can handle"""


class DivergenceError(UnsupportedRegionError):
    """A series does not converge at the requested abscissa"""


class PoleError(SelbergLabError):
    """The point is too close to a pole"""


class InadmissiblePointError(SelbergLabError):
    """The point is outside G_L, so the iterated integrals are undefined there"""


class ZeroOnPathError(InadmissiblePointError):
    """The horizontal continuation path runs into (or next to) a zero"""


class PoleRayError(InadmissiblePointError):
    """The horizontal path to the left of s = 1 crosses the pole"""


class ContinuationFailedError(SelbergLabError):
    """Branch tracking could not find an acceptable step"""


class QuadratureError(SelbergLabError):
    """Adaptive quadrature did not reach the requested tolerance"""


class OutOfRangeError(SelbergLabError):
    """A prime lies beyond the bound of a finite table"""


class EmptySampleError(SelbergLabError):
    """Every row of a sample failed"""


class _LineError(SelbergLabError):
    def __init__(self, path: str, line: int, message: str):
        self.path = path
        self.line = line
        super().__init__(f"{path}:{line}: {message}")


class ZeroFileError(_LineError, DomainError):
    """Malformed or unordered zero table"""


class CoefficientFileError(_LineError, DomainError):
    """Malformed coefficient file"""


class ConfigError(SelbergLabError):
    """Invalid experiment configuration; names the offending flag"""

    def __init__(self, message: str, flag: Optional[str] = None):
        self.flag = flag
        super().__init__(f"{flag}: {message}" if flag else message)

"""
Exception hierarchy for twistorlab
Every error raised on purpose by the library derives from TwistorLabError
"""


class TwistorLabError(Exception):
    """Base class for library errors"""


class DimensionMismatchError(TwistorLabError, ValueError):
    """Operands live over different spaces or have incompatible shapes"""


class PreconditionError(TwistorLabError, ValueError):
    """A strict-mode precondition or type invariant does not hold"""


class DomainBoundaryError(TwistorLabError):
    """A finite-difference stencil would leave the chart domain"""


class ConfigError(TwistorLabError):
    """Scenario configuration failed validation"""

    def __init__(self, message: str, field: str = ""):
        self.field = field
        super().__init__(f"{field}: {message}" if field else message)


class ReportFormatError(TwistorLabError, ValueError):
    """Unknown report output format"""

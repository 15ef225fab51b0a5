"""
twistorlab - numerical verification of the metric-transfer map between twistor spaces
Fiber algebra, chart-based Riemannian geometry, twistor structures and scenario runs
"""

from .exceptions import (
    ConfigError,
    DimensionMismatchError,
    DomainBoundaryError,
    PreconditionError,
    ReportFormatError,
    TwistorLabError,
)
from .config import CONFIG, tolerance_scale

__all__ = [
    # Errors
    'TwistorLabError',
    'DimensionMismatchError',
    'PreconditionError',
    'DomainBoundaryError',
    'ConfigError',
    'ReportFormatError',

    # Configuration
    'CONFIG',
    'tolerance_scale',
]

__version__ = "1.1.0"
__description__ = "Metric-transfer map between twistor spaces, verified numerically"

"""
Scenario Runner - declarative verification scenarios over metric pairs
Check registry, JSON scenario schema, seeded execution and report emission
"""

from .checks import (
    CHECK_REGISTRY,
    DIAGNOSTIC,
    NONZERO,
    POLARITIES,
    ZERO,
    CheckContext,
    CheckOutcome,
    CheckSpec,
)
from .schema import (
    BUNDLED_DIR,
    ScenarioConfig,
    bundled_scenarios,
    load_config,
    parse_config,
    resolve_tolerances,
    validate_pair,
)
from .runner import ScenarioRunner, check_entropy, run_scenario
from .report import CSV_COLUMNS, CheckRecord, Report, emit_report

__all__ = [
    # Checks
    'CHECK_REGISTRY',
    'CheckSpec',
    'CheckContext',
    'CheckOutcome',
    'ZERO',
    'NONZERO',
    'DIAGNOSTIC',
    'POLARITIES',

    # Configuration
    'ScenarioConfig',
    'load_config',
    'parse_config',
    'resolve_tolerances',
    'validate_pair',
    'bundled_scenarios',
    'BUNDLED_DIR',

    # Execution
    'ScenarioRunner',
    'run_scenario',
    'check_entropy',

    # Reports
    'CheckRecord',
    'Report',
    'emit_report',
    'CSV_COLUMNS',
]

__version__ = "1.1.0"
__description__ = "Scenario-driven verification of the metric-transfer map"

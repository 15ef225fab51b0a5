"""
Scenario Runner - executes a scenario's checks and assembles the report
Checks are independent: each owns a seed stream derived from (seed, check id)
"""

import logging
import time
import zlib
from concurrent.futures import ThreadPoolExecutor
from typing import Any, Dict, Optional

import numpy as np

from ..config import RUNNER_CONFIG
from ..riemann import MetricPair
from .checks import CHECK_REGISTRY, NONZERO, ZERO, CheckContext, CheckOutcome
from .report import ERROR, FAIL, PASS, CheckRecord, Report
from .schema import ScenarioConfig, validate_pair


def check_entropy(seed: int, check_id: str) -> tuple:
    """Seed material for one check; stable across runs and job counts"""
    return (seed, zlib.crc32(check_id.encode("utf-8")))


def detail_value(details: Dict[str, Any], path: str) -> float:
    """Look up a dotted path such as "g.scalar_min" in a record's details"""
    value: Any = details
    for part in path.split("."):
        if not isinstance(value, dict) or part not in value:
            raise KeyError(f"no detail {path!r}")
        value = value[part]
    return float(value)


class ScenarioRunner:
    """Runs every check of a scenario, serially or on a thread pool"""

    def __init__(self, jobs: int = RUNNER_CONFIG["default_jobs"]):
        if jobs < 1:
            raise ValueError(f"jobs must be >= 1, got {jobs}")
        self.jobs = jobs
        self.logger = logging.getLogger('ScenarioRunner')

    def run(self, config: ScenarioConfig) -> Report:
        """
        Execute a validated scenario

        Args:
            config: Scenario from load_config/parse_config

        Returns:
            Report with one record per check, in configuration order
        """
        pair = validate_pair(config)
        self.logger.info(f"🚀 Running scenario {config.name}: {len(config.checks)} checks, "
                         f"{config.samples} samples, seed {config.seed}")
        start = time.perf_counter()

        if self.jobs > 1 and len(config.checks) > 1:
            with ThreadPoolExecutor(max_workers=self.jobs) as pool:
                futures = [pool.submit(self._run_check, config, pair, check_id) for check_id in config.checks]
                records = [future.result() for future in futures]
        else:
            records = [self._run_check(config, pair, check_id) for check_id in config.checks]

        report = Report(
            scenario=config.name,
            description=config.description,
            n=config.n,
            seed=config.seed,
            samples=config.samples,
            derivative_mode=config.derivatives.get("mode", "analytic"),
            records=records,
            elapsed_seconds=time.perf_counter() - start,
        )
        summary = report.summary
        self.logger.info(f"Scenario {config.name}: {summary['passed']}/{summary['total']} passed")
        return report

    def _run_check(self, config: ScenarioConfig, pair: MetricPair, check_id: str) -> CheckRecord:
        spec = CHECK_REGISTRY[check_id]
        polarity = config.polarity_for(check_id, pair)
        record = CheckRecord(
            check=check_id,
            description=spec.description,
            status=ERROR,
            polarity=polarity,
            tolerance=config.tolerance_for(check_id) if polarity == ZERO else None,
            bound=config.bound_for(check_id) if polarity == NONZERO else None,
        )
        context = CheckContext(
            check_id=check_id,
            pair=pair,
            params=config.params,
            samples=config.samples,
            entropy=check_entropy(config.seed, check_id),
            limits=dict(config.tolerances),
        )

        start = time.perf_counter()
        try:
            outcome = spec.run(context)
            self._judge(record, outcome, config.targets.get(check_id, {}))
        except Exception as e:
            record.status = ERROR
            record.error = f"{type(e).__name__}: {e}"
            self.logger.error(f"Check {check_id} raised {record.error}")
        record.elapsed_seconds = time.perf_counter() - start

        self.logger.debug(f"{check_id}: {record.status} (max {record.max_residual}, min {record.min_residual})")
        return record

    def _judge(self, record: CheckRecord, outcome: CheckOutcome, targets: Optional[Dict[str, Dict[str, float]]] = None):
        residuals = np.asarray(outcome.residuals, dtype=float)
        record.samples = int(residuals.size)
        record.details = dict(outcome.details)

        witness: Optional[int] = None
        if residuals.size:
            if np.any(~np.isfinite(residuals)):
                raise FloatingPointError("non-finite residual")
            record.max_residual = float(residuals.max())
            record.mean_residual = float(residuals.mean())
            record.min_residual = float(residuals.min())
            witness = int(residuals.argmin()) if record.polarity == NONZERO else int(residuals.argmax())
            record.witness_point = outcome.points[witness]

        if record.polarity == ZERO:
            ok = record.max_residual is None or record.max_residual <= record.tolerance
        elif record.polarity == NONZERO:
            ok = record.min_residual is not None and record.min_residual >= record.bound
        else:
            ok = True

        violated = {name: {"value": value, "limit": limit}
                    for name, (value, limit) in outcome.constraints.items() if not value <= limit}
        if outcome.constraints:
            record.details["constraints"] = {name: {"value": value, "limit": limit}
                                             for name, (value, limit) in outcome.constraints.items()}
        if violated:
            ok = False
            record.error = f"constraint violated: {', '.join(sorted(violated))}"

        if targets:
            checked = {path: dict(limits, value=detail_value(record.details, path)) for path, limits in targets.items()}
            record.details["targets"] = checked
            missed = sorted(path for path, entry in checked.items()
                            if entry["value"] < entry.get("min", -np.inf) or entry["value"] > entry.get("max", np.inf))
            if missed:
                ok = False
                message = f"target missed: {', '.join(missed)}"
                record.error = f"{record.error}; {message}" if record.error else message
        record.status = PASS if ok else FAIL


def run_scenario(config: ScenarioConfig, jobs: int = RUNNER_CONFIG["default_jobs"]) -> Report:
    return ScenarioRunner(jobs).run(config)

"""
Scenario Schema - JSON scenario files, their validation and the resolved check limits
"""

import json
import logging
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from ..config import CHECK_BOUNDS, CHECK_TOLERANCES, RUNNER_CONFIG, TWISTOR_CONFIG, tolerance_scale
from ..exceptions import ConfigError, TwistorLabError
from ..riemann import MetricPair, build_metric, normalize_metric_spec
from ..twistor import TwistorMetricParams
from .checks import AUXILIARY_LIMITS, CHECK_REGISTRY, POLARITIES, ZERO

logger = logging.getLogger('ScenarioSchema')

BUNDLED_DIR = Path(__file__).parent / "bundled"

ALLOWED_FIELDS = {
    "schema_version", "name", "description", "n", "metric_g", "metric_gtilde", "s", "t",
    "checks", "samples", "seed", "tolerances", "bounds", "expect", "targets", "derivatives", "domain",
}

DERIVATIVE_MODES = ("analytic", "fd")


@dataclass(frozen=True)
class ScenarioConfig:
    """A validated scenario: metric pair recipe, check list and pass/fail limits"""
    name: str
    n: int
    metric_g: Dict[str, Any]
    metric_gtilde: Dict[str, Any]
    checks: List[str]
    s: float = TWISTOR_CONFIG["default_s"]
    t: float = TWISTOR_CONFIG["default_t"]
    samples: int = RUNNER_CONFIG["default_samples"]
    seed: int = RUNNER_CONFIG["default_seed"]
    tolerances: Dict[str, float] = field(default_factory=dict)
    bounds: Dict[str, float] = field(default_factory=dict)
    expect: Dict[str, str] = field(default_factory=dict)
    targets: Dict[str, Dict[str, Dict[str, float]]] = field(default_factory=dict)
    derivatives: Dict[str, Any] = field(default_factory=lambda: {"mode": "analytic"})
    domain: Optional[List[Any]] = None
    description: str = ""
    schema_version: int = RUNNER_CONFIG["schema_version"]
    source: Optional[str] = None

    @property
    def fd_mode(self) -> bool:
        return self.derivatives.get("mode") == "fd"

    @property
    def params(self) -> TwistorMetricParams:
        return TwistorMetricParams(s=self.s, t=self.t)

    def build_pair(self) -> MetricPair:
        """Construct (g, g̃); finite-difference mode swaps the analytic derivatives out"""
        g = build_metric(self._with_domain(self.metric_g), self.n, field="metric_g")
        gtilde = build_metric(self._with_domain(self.metric_gtilde), self.n, base=g, field="metric_gtilde")
        if self.fd_mode:
            step = self.derivatives.get("step")
            g = g.with_finite_differences(step)
            gtilde = gtilde.with_finite_differences(step)
        return MetricPair(g, gtilde)

    def _with_domain(self, spec: Dict[str, Any]) -> Dict[str, Any]:
        if self.domain is None or "domain" in spec:
            return spec
        return {**spec, "domain": self.domain}

    def tolerance_for(self, check_id: str) -> Optional[float]:
        return self.tolerances.get(check_id)

    def bound_for(self, check_id: str) -> float:
        return self.bounds.get(check_id, CHECK_BOUNDS.get(check_id, CHECK_BOUNDS["default"]))

    def polarity_for(self, check_id: str, pair: MetricPair) -> str:
        if check_id in self.expect:
            return self.expect[check_id]
        return CHECK_REGISTRY[check_id].resolve_polarity(pair)

    def with_seed(self, seed: int) -> 'ScenarioConfig':
        if not isinstance(seed, int) or isinstance(seed, bool) or seed < 0:
            raise ConfigError("must be a non-negative integer", "seed")
        return replace(self, seed=seed)


def _require(data: Dict[str, Any], key: str) -> Any:
    if key not in data:
        raise ConfigError("missing required field", key)
    return data[key]


def _positive_number(value: Any, key: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not value > 0:
        raise ConfigError(f"must be a positive number, got {value!r}", key)
    return float(value)


def _positive_int(value: Any, key: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int) or value <= 0:
        raise ConfigError(f"must be a positive integer, got {value!r}", key)
    return value


def _check_keyed(mapping: Any, key: str, allowed: set) -> Dict[str, Any]:
    if not isinstance(mapping, dict):
        raise ConfigError("must be an object keyed by check id", key)
    for name in mapping:
        if name not in allowed:
            raise ConfigError(f"unknown check {name!r}", f"{key}.{name}")
    return mapping


def _parse_targets(mapping: Any, checks: List[str]) -> Dict[str, Dict[str, Dict[str, float]]]:
    """
    Per-check numeric targets on detail values

    Shape: {check_id: {"dotted.detail.path": {"min": x, "max": y}}}, at least one bound each.
    """
    _check_keyed(mapping, "targets", set(checks))
    targets = {}
    for check_id, paths in mapping.items():
        where = f"targets.{check_id}"
        if not isinstance(paths, dict) or not paths:
            raise ConfigError("must be a non-empty object keyed by detail path", where)
        targets[check_id] = {}
        for path, limits in paths.items():
            if not isinstance(path, str) or not path or any(not part for part in path.split(".")):
                raise ConfigError(f"invalid detail path {path!r}", where)
            if not isinstance(limits, dict) or not limits:
                raise ConfigError("must be an object with min and/or max", f"{where}.{path}")
            parsed = {}
            for bound, value in limits.items():
                if bound not in ("min", "max"):
                    raise ConfigError("unknown field", f"{where}.{path}.{bound}")
                if isinstance(value, bool) or not isinstance(value, (int, float)):
                    raise ConfigError(f"must be a number, got {value!r}", f"{where}.{path}.{bound}")
                parsed[bound] = float(value)
            if parsed.get("min", float("-inf")) > parsed.get("max", float("inf")):
                raise ConfigError("min exceeds max", f"{where}.{path}")
            targets[check_id][path] = parsed
    return targets


def resolve_tolerances(overrides: Dict[str, float], fd_mode: bool) -> Dict[str, float]:
    """
    Effective "zero" tolerances: defaults, then overrides, then the environment scale

    In finite-difference mode every derivative-sensitive tolerance is raised to the FD floor.
    """
    scale = tolerance_scale()
    resolved = {}
    for key, default in CHECK_TOLERANCES.items():
        value = overrides.get(key, default) * scale
        sensitive = key in CHECK_REGISTRY and CHECK_REGISTRY[key].fd_sensitive
        if fd_mode and (sensitive or key in AUXILIARY_LIMITS):
            value = max(value, RUNNER_CONFIG["fd_zero_floor"])
        resolved[key] = value
    for key, value in overrides.items():
        if key not in resolved:
            resolved[key] = value * scale
    return resolved


def parse_config(data: Any, source: Optional[str] = None) -> ScenarioConfig:
    """
    Validate a decoded scenario document

    Args:
        data: Parsed JSON object
        source: Where it came from, for messages

    Returns:
        ScenarioConfig with tolerances resolved

    Raises:
        ConfigError: naming the offending field
    """
    if not isinstance(data, dict):
        raise ConfigError("scenario must be a JSON object")
    unknown = sorted(set(data) - ALLOWED_FIELDS)
    if unknown:
        raise ConfigError("unknown field", unknown[0])

    version = data.get("schema_version", RUNNER_CONFIG["schema_version"])
    if version != RUNNER_CONFIG["schema_version"]:
        raise ConfigError(f"unsupported schema version {version!r}", "schema_version")

    name = _require(data, "name")
    if not isinstance(name, str) or not name.strip():
        raise ConfigError("must be a non-empty string", "name")

    n = _require(data, "n")
    if isinstance(n, bool) or not isinstance(n, int) or n < 2 or n % 2:
        raise ConfigError(f"must be an even integer >= 2, got {n!r}", "n")

    metric_g = normalize_metric_spec(_require(data, "metric_g"), field="metric_g")
    metric_gtilde = normalize_metric_spec(_require(data, "metric_gtilde"), field="metric_gtilde")

    checks = _require(data, "checks")
    if not isinstance(checks, list):
        raise ConfigError("must be a list of check ids", "checks")
    for i, check_id in enumerate(checks):
        if not isinstance(check_id, str) or check_id not in CHECK_REGISTRY:
            raise ConfigError(f"unknown check {check_id!r}", f"checks[{i}]")
    if len(set(checks)) != len(checks):
        raise ConfigError("duplicate check ids", "checks")

    allowed_limits = set(CHECK_REGISTRY) | set(AUXILIARY_LIMITS)
    overrides = _check_keyed(data.get("tolerances", {}), "tolerances", allowed_limits)
    overrides = {k: _positive_number(v, f"tolerances.{k}") for k, v in overrides.items()}
    bounds = _check_keyed(data.get("bounds", {}), "bounds", set(CHECK_REGISTRY))
    for key, value in bounds.items():
        if isinstance(value, bool) or not isinstance(value, (int, float)) or value < 0:
            raise ConfigError(f"must be a non-negative number, got {value!r}", f"bounds.{key}")
    expect = _check_keyed(data.get("expect", {}), "expect", set(CHECK_REGISTRY))
    for key, value in expect.items():
        if value not in POLARITIES:
            raise ConfigError(f"must be one of {', '.join(POLARITIES)}, got {value!r}", f"expect.{key}")

    derivatives = data.get("derivatives", {"mode": "analytic"})
    if not isinstance(derivatives, dict):
        raise ConfigError("must be an object", "derivatives")
    mode = derivatives.get("mode", "analytic")
    if mode not in DERIVATIVE_MODES:
        raise ConfigError(f"must be one of {', '.join(DERIVATIVE_MODES)}, got {mode!r}", "derivatives.mode")
    if "step" in derivatives:
        _positive_number(derivatives["step"], "derivatives.step")
    unknown = sorted(set(derivatives) - {"mode", "step"})
    if unknown:
        raise ConfigError("unknown field", f"derivatives.{unknown[0]}")

    domain = data.get("domain")
    if domain is not None and (not isinstance(domain, list) or len(domain) != 2):
        raise ConfigError("must be [lower, upper]", "domain")

    seed = data.get("seed", RUNNER_CONFIG["default_seed"])
    if isinstance(seed, bool) or not isinstance(seed, int) or seed < 0:
        raise ConfigError(f"must be a non-negative integer, got {seed!r}", "seed")

    description = data.get("description", "")
    if not isinstance(description, str):
        raise ConfigError("must be a string", "description")

    try:
        scale = tolerance_scale()
    except ValueError as e:
        raise ConfigError(str(e), RUNNER_CONFIG["tolerance_scale_env"])
    logger.debug(f"Tolerance scale {scale:g} for scenario {name}")

    config = ScenarioConfig(
        name=name,
        n=n,
        metric_g=metric_g,
        metric_gtilde=metric_gtilde,
        checks=list(checks),
        s=_positive_number(data.get("s", TWISTOR_CONFIG["default_s"]), "s"),
        t=_positive_number(data.get("t", TWISTOR_CONFIG["default_t"]), "t"),
        samples=_positive_int(data.get("samples", RUNNER_CONFIG["default_samples"]), "samples"),
        seed=seed,
        tolerances=resolve_tolerances(overrides, mode == "fd"),
        bounds={k: float(v) for k, v in bounds.items()},
        expect=dict(expect),
        targets=_parse_targets(data.get("targets", {}), checks),
        derivatives=dict(derivatives, mode=mode),
        domain=domain,
        description=description,
        schema_version=version,
        source=source,
    )
    validate_pair(config)
    return config


def validate_pair(config: ScenarioConfig) -> MetricPair:
    """Build the metric pair and match every requested check against it"""
    try:
        pair = config.build_pair()
    except ConfigError:
        raise
    except TwistorLabError as e:
        raise ConfigError(str(e), "metric_gtilde")

    for i, check_id in enumerate(config.checks):
        spec = CHECK_REGISTRY[check_id]
        where = f"checks[{i}]"
        if spec.conformal_only and not pair.is_conformal:
            raise ConfigError(f"{check_id} needs a conformal pair g̃ = e^(2f)g", where)
        if spec.dims is not None and config.n not in spec.dims:
            raise ConfigError(f"{check_id} needs n in {list(spec.dims)}, got {config.n}", where)
        if config.n < spec.min_dim:
            raise ConfigError(f"{check_id} needs n >= {spec.min_dim}, got {config.n}", where)
        polarity = config.polarity_for(check_id, pair)
        if polarity == ZERO and config.tolerance_for(check_id) is None:
            raise ConfigError(f"no tolerance configured for {check_id}", f"tolerances.{check_id}")
    return pair


def bundled_scenarios() -> Dict[str, Path]:
    return {path.stem: path for path in sorted(BUNDLED_DIR.glob("*.json"))}


def load_config(target: Union[str, Path]) -> ScenarioConfig:
    """
    Load a scenario from a JSON file or by bundled scenario name

    Raises:
        ConfigError: unreadable file, malformed JSON or failed validation
    """
    path = Path(target)
    if not path.exists():
        bundled = bundled_scenarios()
        if str(target) in bundled:
            path = bundled[str(target)]
        else:
            raise ConfigError(f"no scenario file or bundled scenario named {str(target)!r}")
    try:
        with open(path, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise ConfigError(f"malformed JSON at line {e.lineno} column {e.colno}: {e.msg}")
    except OSError as e:
        raise ConfigError(f"cannot read {path}: {e}")

    config = parse_config(data, source=str(path))
    logger.info(f"Loaded scenario {config.name} ({len(config.checks)} checks, {config.samples} samples)")
    return config

"""
Metric Fields - Riemannian metrics on a chart box with analytic or finite-difference derivatives
Builtin constructors are addressable by name from scenario configs
"""

import json
import logging
import re
from dataclasses import dataclass, replace
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..config import RIEMANN_CONFIG
from ..exceptions import ConfigError, DimensionMismatchError, DomainBoundaryError, PreconditionError
from ..fiber import InnerProductSpace, MetricTransfer
from .factors import ConformalFactor, StereographicFactor, parse_factor
from .finite_diff import STENCIL_REACH, partial_derivatives

logger = logging.getLogger('MetricFields')

GramFn = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True, eq=False)
class ConformalTag:
    """Marks g̃ = e^{2f}·base"""
    base: 'MetricField'
    factor: ConformalFactor


@dataclass(frozen=True, eq=False)
class MetricField:
    """
    Smooth Riemannian metric on the box [lower, upper] ⊂ ℝⁿ

    Derivative layout: d_gram(p)[a, i, j] = ∂_a g_ij and dd_gram(p)[a, b, i, j] = ∂_a∂_b g_ij.
    Analytic callbacks are used when present and use_analytic is set; otherwise central
    4th-order finite differences with step fd_relative_step times the largest box extent.
    """
    dim: int
    lower: np.ndarray
    upper: np.ndarray
    evaluate: GramFn
    d1: Optional[GramFn] = None
    d2: Optional[GramFn] = None
    conformal: Optional[ConformalTag] = None
    label: str = "custom"
    use_analytic: bool = True
    fd_relative_step: float = RIEMANN_CONFIG["fd_relative_step"]

    def __post_init__(self):
        lower = np.broadcast_to(np.asarray(self.lower, dtype=float), (self.dim,)).copy()
        upper = np.broadcast_to(np.asarray(self.upper, dtype=float), (self.dim,)).copy()
        if np.any(upper <= lower):
            raise PreconditionError("domain box must have upper > lower in every coordinate")
        object.__setattr__(self, 'lower', lower)
        object.__setattr__(self, 'upper', upper)

    @property
    def fd_step(self) -> float:
        return self.fd_relative_step * float(np.max(self.upper - self.lower))

    @property
    def has_analytic_derivatives(self) -> bool:
        return self.use_analytic and self.d1 is not None and self.d2 is not None

    def with_finite_differences(self, step: Optional[float] = None) -> 'MetricField':
        """Same metric with every derivative taken by finite differences"""
        conformal = self.conformal
        if conformal is not None:
            conformal = ConformalTag(conformal.base.with_finite_differences(step), conformal.factor)
        return replace(self, use_analytic=False, conformal=conformal,
                       fd_relative_step=self.fd_relative_step if step is None else step)

    def contains(self, p: np.ndarray, margin: float = 0.0) -> bool:
        p = np.asarray(p, dtype=float)
        return bool(np.all(p - margin >= self.lower) and np.all(p + margin <= self.upper))

    def require_stencil(self, p: np.ndarray, depth: int = 1):
        reach = depth * STENCIL_REACH * self.fd_step
        if not self.contains(p, reach):
            raise DomainBoundaryError(f"point {np.round(p, 6).tolist()} too close to the boundary "
                                      f"for a stencil of reach {reach:.3e}")

    def gram(self, p: np.ndarray) -> np.ndarray:
        p = np.asarray(p, dtype=float)
        if p.shape != (self.dim,):
            raise DimensionMismatchError(f"expected a point in R^{self.dim}, got shape {p.shape}")
        return np.asarray(self.evaluate(p), dtype=float)

    def space(self, p: np.ndarray, oriented: bool = True) -> InnerProductSpace:
        return InnerProductSpace(self.gram(p), oriented=oriented)

    def d_gram(self, p: np.ndarray) -> np.ndarray:
        p = np.asarray(p, dtype=float)
        if self.use_analytic and self.d1 is not None:
            return np.asarray(self.d1(p), dtype=float)
        self.require_stencil(p)
        return partial_derivatives(self.gram, p, self.fd_step)

    def dd_gram(self, p: np.ndarray) -> np.ndarray:
        p = np.asarray(p, dtype=float)
        if self.use_analytic and self.d2 is not None:
            return np.asarray(self.d2(p), dtype=float)
        depth = 1 if (self.use_analytic and self.d1 is not None) else 2
        self.require_stencil(p, depth)
        second = partial_derivatives(self.d_gram, p, self.fd_step)
        return 0.5 * (second + second.transpose(1, 0, 2, 3))

    def sample_point(self, rng: np.random.Generator, margin: float = RIEMANN_CONFIG["sample_margin"]) -> np.ndarray:
        extent = self.upper - self.lower
        return rng.uniform(self.lower + margin * extent, self.upper - margin * extent)


def verify_derivatives(M: MetricField, p: np.ndarray) -> float:
    """Largest deviation between analytic derivatives and their finite-difference counterparts"""
    if not (M.d1 or M.d2):
        return 0.0
    fd = M.with_finite_differences()
    worst = 0.0
    if M.d1 is not None:
        worst = max(worst, float(np.max(np.abs(M.d_gram(p) - fd.d_gram(p)))))
    if M.d2 is not None:
        worst = max(worst, float(np.max(np.abs(M.dd_gram(p) - fd.dd_gram(p)))))
    return worst


@dataclass(frozen=True, eq=False)
class MetricPair:
    """Two metrics g, g̃ on the same chart"""
    g: MetricField
    gtilde: MetricField

    def __post_init__(self):
        if self.g.dim != self.gtilde.dim:
            raise DimensionMismatchError(f"metric dimensions differ: {self.g.dim} vs {self.gtilde.dim}")

    @property
    def dim(self) -> int:
        return self.g.dim

    @property
    def is_conformal(self) -> bool:
        tag = self.gtilde.conformal
        return tag is not None and tag.base.label == self.g.label

    @property
    def factor(self) -> Optional[ConformalFactor]:
        return self.gtilde.conformal.factor if self.is_conformal else None

    @property
    def is_homothetic(self) -> bool:
        return self.is_conformal and self.factor.is_constant

    def require_conformal(self) -> ConformalFactor:
        if not self.is_conformal:
            raise PreconditionError("operation needs a conformal pair g̃ = e^{2f}g")
        return self.factor

    def transfer(self, p: np.ndarray, strict: bool = True) -> MetricTransfer:
        return MetricTransfer.between(self.g.space(p), self.gtilde.gram(p), strict=strict)

    def sample_point(self, rng: np.random.Generator, margin: float = RIEMANN_CONFIG["sample_margin"]) -> np.ndarray:
        lower = np.maximum(self.g.lower, self.gtilde.lower)
        upper = np.minimum(self.g.upper, self.gtilde.upper)
        extent = upper - lower
        return rng.uniform(lower + margin * extent, upper - margin * extent)


# ---------------------------------------------------------------------------
# Builtin constructors
# ---------------------------------------------------------------------------

Box = Tuple[Union[float, Sequence[float]], Union[float, Sequence[float]]]


def _box(n: int, domain: Optional[Box]) -> Tuple[np.ndarray, np.ndarray]:
    if domain is None:
        domain = RIEMANN_CONFIG["default_domain"]
    lower, upper = domain
    return (np.broadcast_to(np.asarray(lower, dtype=float), (n,)).copy(),
            np.broadcast_to(np.asarray(upper, dtype=float), (n,)).copy())


def flat_metric(n: int, domain: Optional[Box] = None) -> MetricField:
    return constant_metric(np.eye(n), domain, label="flat")


def constant_metric(gram: np.ndarray, domain: Optional[Box] = None, label: Optional[str] = None) -> MetricField:
    gram = np.asarray(gram, dtype=float)
    n = gram.shape[0]
    lower, upper = _box(n, domain)
    zero1 = np.zeros((n, n, n))
    zero2 = np.zeros((n, n, n, n))
    if label is None:
        label = _canonical({"name": "constant", "gram": gram.tolist()})
    return MetricField(
        dim=n, lower=lower, upper=upper,
        evaluate=lambda p: gram.copy(),
        d1=lambda p: zero1.copy(),
        d2=lambda p: zero2.copy(),
        label=label,
    )


def diag_metric(entries: Sequence[float], domain: Optional[Box] = None) -> MetricField:
    entries = [float(x) for x in entries]
    if any(x <= 0 for x in entries):
        raise PreconditionError("diagonal entries must be positive")
    return constant_metric(np.diag(entries), domain, label=_canonical({"name": "diag", "entries": entries}))


def conformal_metric(base: MetricField, factor: ConformalFactor, label: Optional[str] = None) -> MetricField:
    """
    g̃ = e^{2f}·base with analytic derivatives assembled from f and the base

    ∂_a g̃ = e^{2f}(2f_a B + B_a)
    ∂_a∂_b g̃ = e^{2f}(4f_a f_b B + 2f_a B_b + 2f_b B_a + 2f_ab B + B_ab)
    """
    def evaluate(p):
        return np.exp(2.0 * factor.value(p)) * base.gram(p)

    def d1(p):
        scale = np.exp(2.0 * factor.value(p))
        B, dB, df = base.gram(p), base.d_gram(p), factor.grad(p)
        return scale * (2.0 * df[:, None, None] * B[None] + dB)

    def d2(p):
        scale = np.exp(2.0 * factor.value(p))
        B, dB, ddB = base.gram(p), base.d_gram(p), base.dd_gram(p)
        df, ddf = factor.grad(p), factor.hess(p)
        out = 4.0 * np.einsum('a,b,ij->abij', df, df, B)
        out += 2.0 * np.einsum('a,bij->abij', df, dB)
        out += 2.0 * np.einsum('b,aij->abij', df, dB)
        out += 2.0 * np.einsum('ab,ij->abij', ddf, B)
        out += ddB
        return scale * out

    if label is None:
        label = _canonical({"name": "conformal", "base": base.label, "f": factor.describe()})
    return MetricField(
        dim=base.dim, lower=base.lower, upper=base.upper,
        evaluate=evaluate, d1=d1, d2=d2,
        conformal=ConformalTag(base, factor),
        label=label,
    )


def round_sphere_metric(n: int, radius: float = RIEMANN_CONFIG["sphere_radius"],
                        domain: Optional[Box] = None) -> MetricField:
    """Round sphere of the given radius in the stereographic chart"""
    if radius <= 0:
        raise PreconditionError("sphere radius must be positive")
    return conformal_metric(flat_metric(n, domain), StereographicFactor(float(radius), n),
                            label=_canonical({"name": "round-sphere", "radius": float(radius), "n": n}))


def product_metric(factors: List[MetricField]) -> MetricField:
    """Block-diagonal metric, each block depending on its own coordinates"""
    dims = [f.dim for f in factors]
    offsets = np.cumsum([0] + dims)
    n = int(offsets[-1])

    def blocks(p):
        return [(f, slice(offsets[k], offsets[k + 1])) for k, f in enumerate(factors)]

    def evaluate(p):
        out = np.zeros((n, n))
        for f, sl in blocks(p):
            out[sl, sl] = f.gram(p[sl])
        return out

    def d1(p):
        out = np.zeros((n, n, n))
        for f, sl in blocks(p):
            out[sl, sl, sl] = f.d_gram(p[sl])
        return out

    def d2(p):
        out = np.zeros((n, n, n, n))
        for f, sl in blocks(p):
            out[sl, sl, sl, sl] = f.dd_gram(p[sl])
        return out

    return MetricField(
        dim=n,
        lower=np.concatenate([f.lower for f in factors]),
        upper=np.concatenate([f.upper for f in factors]),
        evaluate=evaluate, d1=d1, d2=d2,
        label=_canonical({"name": "product", "factors": [f.label for f in factors]}),
    )


def _canonical(spec: Dict[str, Any]) -> str:
    return json.dumps(spec, sort_keys=True, separators=(",", ":"))


# ---------------------------------------------------------------------------
# Config specs
# ---------------------------------------------------------------------------

_CALL = re.compile(r"^([a-z-]+)\((.*)\)$")


def normalize_metric_spec(spec: Union[str, Dict[str, Any]], field: str = "metric") -> Dict[str, Any]:
    """
    Turn shorthand strings into spec objects

    "flat" → {"name": "flat"}; "diag(1,1,1,4)" → {"name": "diag", "entries": [...]};
    "round-sphere(2)" → {"name": "round-sphere", "radius": 2}; "conformal(x1)" and
    "conformal-flat(x1)" → {"name": ..., "f": "x1"}.
    """
    if isinstance(spec, dict):
        if "name" not in spec:
            raise ConfigError("metric spec needs a 'name'", field)
        return dict(spec)
    if not isinstance(spec, str):
        raise ConfigError("metric spec must be a string or an object", field)

    text = spec.strip()
    match = _CALL.match(text)
    if not match:
        return {"name": text}
    name, args = match.group(1), match.group(2).strip()
    if name == "diag":
        try:
            return {"name": name, "entries": [float(x) for x in args.split(",")]}
        except ValueError:
            raise ConfigError(f"bad diagonal entries in {spec!r}", field)
    if name == "round-sphere":
        return {"name": name, "radius": float(args)} if args else {"name": name}
    if name in ("conformal", "conformal-flat"):
        return {"name": name, "f": args}
    raise ConfigError(f"unknown builtin metric {name!r}", f"{field}.name")


def _build_flat(spec, n, base, domain, field):
    return flat_metric(n, domain)


def _build_diag(spec, n, base, domain, field):
    entries = spec.get("entries")
    if not isinstance(entries, list) or len(entries) != n:
        raise ConfigError(f"diag needs {n} entries", f"{field}.entries")
    return diag_metric(entries, domain)


def _build_round_sphere(spec, n, base, domain, field):
    radius = spec.get("radius", RIEMANN_CONFIG["sphere_radius"])
    if not isinstance(radius, (int, float)) or radius <= 0:
        raise ConfigError("radius must be a positive number", f"{field}.radius")
    return round_sphere_metric(n, float(radius), domain)


def _build_conformal_flat(spec, n, base, domain, field):
    if "f" not in spec:
        raise ConfigError("conformal-flat needs an f-expression", f"{field}.f")
    return conformal_metric(flat_metric(n, domain), parse_factor(spec["f"], n, f"{field}.f"))


def _build_conformal(spec, n, base, domain, field):
    if base is None:
        raise ConfigError("'conformal' is only valid for metric_gtilde (relative to metric_g)", field)
    if "f" not in spec:
        raise ConfigError("conformal needs an f-expression", f"{field}.f")
    return conformal_metric(base, parse_factor(spec["f"], n, f"{field}.f"))


def _build_product(spec, n, base, domain, field):
    parts = spec.get("factors")
    if not isinstance(parts, list) or not parts:
        raise ConfigError("product needs a non-empty 'factors' list", f"{field}.factors")
    built = []
    for k, part in enumerate(parts):
        part_field = f"{field}.factors[{k}]"
        part = normalize_metric_spec(part, part_field)
        part_n = part.get("n")
        if not isinstance(part_n, int) or part_n < 1:
            raise ConfigError("each product factor needs a positive integer 'n'", f"{part_field}.n")
        built.append(build_metric(part, part_n, field=part_field))
    metric = product_metric(built)
    if metric.dim != n:
        raise ConfigError(f"product dimension {metric.dim} does not match n = {n}", field)
    return metric


BUILTIN_METRICS = {
    "flat": (_build_flat, "Euclidean metric δ"),
    "diag": (_build_diag, "constant diagonal metric diag(d1..dn)"),
    "round-sphere": (_build_round_sphere, "round sphere of radius r, stereographic chart"),
    "conformal-flat": (_build_conformal_flat, "e^{2f}·δ for a whitelisted f"),
    "conformal": (_build_conformal, "e^{2f}·g relative to the scenario's metric_g"),
    "product": (_build_product, "block-diagonal product of builtin metrics"),
}


def build_metric(spec: Union[str, Dict[str, Any]], n: int, base: Optional[MetricField] = None,
                 field: str = "metric") -> MetricField:
    """
    Construct a builtin metric from its config spec

    Args:
        spec: Builtin name or spec object
        n: Chart dimension
        base: Metric that "conformal" specs are relative to
        field: Field path for error messages

    Returns:
        MetricField
    """
    spec = normalize_metric_spec(spec, field)
    name = spec["name"]
    if name not in BUILTIN_METRICS:
        raise ConfigError(f"unknown builtin metric {name!r}", f"{field}.name")
    domain = spec.get("domain")
    if domain is not None:
        if not (isinstance(domain, list) and len(domain) == 2):
            raise ConfigError("domain must be [lower, upper]", f"{field}.domain")
        domain = (domain[0], domain[1])
    builder, _ = BUILTIN_METRICS[name]
    metric = builder(spec, n, base, domain, field)
    logger.debug(f"Built metric {metric.label}")
    return metric

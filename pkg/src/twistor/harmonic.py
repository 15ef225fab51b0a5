"""
Harmonicity of Ψ - second fundamental form and tension of Ψ : (𝒵, g_s) → (𝒵̃, g̃_t)
The full second fundamental form is available for conformal pairs; general pairs expose its horizontal block
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, List, Optional, Union

import numpy as np

from ..config import TWISTOR_CONFIG
from ..exceptions import PreconditionError
from ..fiber import (
    Endomorphism,
    OrthogonalComplexStructure,
    TwoVector,
    VerticalVector,
    decomposable_endo,
    hom_norm,
    standard_complex_structure,
    wedge_of_endo,
)
from ..riemann import (
    CurvatureData,
    MetricPair,
    conformal_difference_tensor,
    conformal_metric,
    curvature,
    curvature_on_bivector,
    flat_metric,
    gradient,
    koszul_difference,
    parse_factor,
    sigma_form,
)
from .pushforward import PushforwardContext
from .tangent import TwistorMetricParams, TwistorPoint, TwistorTangent

logger = logging.getLogger('Harmonicity')


def twisted_wedge(pair: MetricPair, point: TwistorPoint, X: np.ndarray) -> TwoVector:
    """
    g-wedge of Q(Ψ(I)∘N(X))Q⁻¹

    For conformal pairs this is ∇f∧X - I∇f∧IX.
    """
    X = np.asarray(X, dtype=float)
    if pair.is_conformal:
        factor = pair.factor
        grad = gradient(pair.g, factor, point.p)
        I = point.I.mat
        space = point.space
        return TwoVector.wedge(space, grad, X) - TwoVector.wedge(space, I @ grad, I @ X)
    context = PushforwardContext.at(pair, point, strict=False)
    composed = context.image.I.mat @ context.horizontal_vertical(X, strict=False)
    return wedge_of_endo(Endomorphism(point.space, context.Q @ composed @ context.Q_inv), strict=False)


def second_fund_form_horizontal(pair: MetricPair, point: TwistorPoint, X: np.ndarray, Y: np.ndarray,
                                params: TwistorMetricParams, data: Optional[CurvatureData] = None) -> np.ndarray:
    """
    Horizontal part of the second fundamental form of Ψ on horizontal inputs

    -t·R̃(σ_X)Y - t·R̃(σ_Y)X + ½(C⁻¹(∇_XC)Y + C⁻¹(∇_YC)X - Σ(X, Y)) with σ_X the twisted wedge of X.

    Args:
        pair: Metric pair
        point: Twistor point (p, I)
        X, Y: Base vectors
        params: Twistor metric scales
        data: Curvature of g̃ at p

    Returns:
        Vector in T_pM (g̃-horizontal lift at Ψ(I))
    """
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    if data is None:
        data = curvature(pair.gtilde, point.p, oriented=False)
    r_x = curvature_on_bivector(data, twisted_wedge(pair, point, X)).apply(Y)
    r_y = curvature_on_bivector(data, twisted_wedge(pair, point, Y)).apply(X)
    if pair.is_conformal:
        shift = conformal_difference_tensor(pair.g, pair.factor, X, Y, point.p)
    else:
        shift = koszul_difference(pair, X, Y, point.p)
    return -params.t * (r_x + r_y) + shift


def _gap_quadratic(pair: MetricPair, I: OrthogonalComplexStructure, X: np.ndarray, p: np.ndarray) -> np.ndarray:
    # -g(IX, ∇f)(∇f∧X - I∇f∧IX)^∨ + g(X, ∇f)(∇f∧IX + I∇f∧X)^∨
    space = I.space
    grad = gradient(pair.g, pair.factor, p)
    Imat = I.mat
    IX = Imat @ X
    Igrad = Imat @ grad
    first = decomposable_endo(space, grad, X).mat - decomposable_endo(space, Igrad, IX).mat
    second = decomposable_endo(space, grad, IX).mat + decomposable_endo(space, Igrad, X).mat
    return -space.inner(IX, grad) * first + space.inner(X, grad) * second


def vertical_gap(pair: MetricPair, I: OrthogonalComplexStructure, X: np.ndarray, Y: np.ndarray,
                 p: np.ndarray, strict: bool = True) -> VerticalVector:
    """Polarized vertical gap 𝒱∇̃²_{XY}S - 𝒱∇²_{XY}S for a conformal pair"""
    pair.require_conformal()
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    polarized = 0.25 * (_gap_quadratic(pair, I, X + Y, p) - _gap_quadratic(pair, I, X - Y, p))
    return VerticalVector(I, Endomorphism(I.space, polarized), validate=strict)


@dataclass(frozen=True, eq=False)
class SecondFundamentalForm:
    horizontal: np.ndarray
    vertical: VerticalVector


Tangentish = Union[np.ndarray, TwistorTangent]


def second_fund_form_conformal(pair: MetricPair, point: TwistorPoint, T1: Tangentish, T2: Tangentish,
                               params: TwistorMetricParams,
                               data: Optional[CurvatureData] = None) -> SecondFundamentalForm:
    """
    Second fundamental form of Ψ for g̃ = e^{2f}g

    Horizontal-horizontal inputs give the horizontal curvature terms plus A(X, Y) and the
    polarized vertical gap; vertical-vertical inputs give exactly zero. Mixed inputs are not
    evaluated.
    """
    pair.require_conformal()
    T1 = T1 if isinstance(T1, TwistorTangent) else TwistorTangent.horizontal(point, T1)
    T2 = T2 if isinstance(T2, TwistorTangent) else TwistorTangent.horizontal(point, T2)
    zero = VerticalVector(point.I, Endomorphism(point.space, np.zeros((point.n, point.n))), validate=False)

    if T1.is_vertical and T2.is_vertical:
        return SecondFundamentalForm(np.zeros(point.n), zero)
    if not (T1.is_horizontal and T2.is_horizontal):
        raise PreconditionError("mixed horizontal-vertical blocks of the second fundamental form are not evaluated")

    horizontal = second_fund_form_horizontal(pair, point, T1.hor, T2.hor, params, data)
    vertical = vertical_gap(pair, point.I, T1.hor, T2.hor, point.p)
    return SecondFundamentalForm(horizontal, vertical)


def harmonicity_residual(pair: MetricPair, point: TwistorPoint, params: TwistorMetricParams,
                         data: Optional[CurvatureData] = None) -> np.ndarray:
    """
    Closed-form harmonicity covector against the coordinate basis

    X ↦ 2t·e^{2f}·ρ̃(∇f, X) + 2t·Σ_{jk} g^{jk} g̃(R̃(I∇f∧Ie_j)e_k, X) - (n-2)·g̃(∇f, X)
    """
    factor = pair.require_conformal()
    p = point.p
    n = point.n
    if data is None:
        data = curvature(pair.gtilde, p, oriented=False)
    grad = gradient(pair.g, factor, p)
    gtilde = data.gram
    gram_inv = point.space.gram_inv
    I = point.I.mat
    Igrad = I @ grad

    trace_term = np.zeros(n)
    for j in range(n):
        r_j = curvature_on_bivector(data, TwoVector.wedge(point.space, Igrad, I[:, j])).mat
        trace_term += r_j @ gram_inv[j]
    ricci_term = np.exp(2.0 * factor.value(p)) * (data.ricci @ grad)
    return 2.0 * params.t * ricci_term + 2.0 * params.t * (gtilde @ trace_term) - (n - 2) * (gtilde @ grad)


def tension_covector(pair: MetricPair, point: TwistorPoint, params: TwistorMetricParams,
                     data: Optional[CurvatureData] = None):
    """
    Horizontal tension as a covector and the trace of the vertical gap

    Returns:
        (X ↦ g̃(Σ_i II_h(E_i, E_i), X) on the coordinate basis, Σ_i gap(E_i, E_i))
    """
    pair.require_conformal()
    if data is None:
        data = curvature(pair.gtilde, point.p, oriented=False)
    frame = point.space.orthonormal_frame()
    tension = np.zeros(point.n)
    gap = np.zeros((point.n, point.n))
    for i in range(point.n):
        E = frame[:, i]
        form = second_fund_form_conformal(pair, point, E, E, params, data)
        tension += form.horizontal
        gap += form.vertical.mat
    return data.gram @ tension, Endomorphism(point.space, gap)


@lru_cache(maxsize=1)
def calibrate_harmonicity_sign() -> int:
    """
    Global sign relating the tension covector to the closed form

    Fixed on flat ℝ⁴ with f = x₁, I = J₀ and X = e₁ at the calibration point.
    """
    n = 4
    base = flat_metric(n)
    pair = MetricPair(base, conformal_metric(base, parse_factor("x1", n)))
    p = np.asarray(TWISTOR_CONFIG["calibration_point"], dtype=float)
    space = base.space(p)
    point = TwistorPoint(p, OrthogonalComplexStructure(space, standard_complex_structure(n)))
    params = TwistorMetricParams()
    trace, _ = tension_covector(pair, point, params)
    closed = harmonicity_residual(pair, point, params)
    sign = 1 if trace[0] * closed[0] > 0 else -1
    logger.info(f"Harmonicity sign calibrated to {sign:+d}")
    return sign


@dataclass
class HarmonicityScan:
    """Per-sample harmonicity quantities"""
    sign: int
    trace: List[float] = field(default_factory=list)
    closed_form: List[float] = field(default_factory=list)
    agreement: List[float] = field(default_factory=list)
    vertical_trace: List[float] = field(default_factory=list)
    points: List[np.ndarray] = field(default_factory=list)

    @staticmethod
    def _max(values: List[float]) -> float:
        return float(np.max(values)) if values else 0.0

    @property
    def max_trace(self) -> float:
        return self._max(self.trace)

    @property
    def max_closed_form(self) -> float:
        return self._max(self.closed_form)

    @property
    def max_agreement(self) -> float:
        return self._max(self.agreement)

    @property
    def max_vertical_trace(self) -> float:
        return self._max(self.vertical_trace)


def harmonicity_scan(pair: MetricPair, samples: Iterable[TwistorPoint],
                     params: TwistorMetricParams) -> HarmonicityScan:
    """
    Compare the tension of Ψ with the closed-form criterion over a sample sweep

    Args:
        pair: Conformal metric pair
        samples: Twistor points
        params: Twistor metric scales

    Returns:
        HarmonicityScan with max |covector| of both sides, their agreement and the vertical trace
    """
    pair.require_conformal()
    scan = HarmonicityScan(sign=calibrate_harmonicity_sign())
    for point in samples:
        data = curvature(pair.gtilde, point.p, oriented=False)
        trace, gap = tension_covector(pair, point, params, data)
        closed = harmonicity_residual(pair, point, params, data)
        scan.trace.append(float(np.max(np.abs(trace))))
        scan.closed_form.append(float(np.max(np.abs(closed))))
        scan.agreement.append(float(np.max(np.abs(scan.sign * trace - closed))))
        scan.vertical_trace.append(hom_norm(gap))
        scan.points.append(point.p)
    logger.debug(f"Harmonicity scan: max trace {scan.max_trace:.3e}, max agreement {scan.max_agreement:.3e}")
    return scan

"""
Pushforward of Ψ - the differential of (p, I) ↦ (p, Q⁻¹IQ) and holomorphy residuals
Sections S with S(p) = I and ∇S|ₚ = 0 are never built; ∇̃_X S is evaluated tensorially
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional

import numpy as np

from ..exceptions import PreconditionError
from ..fiber import (
    Endomorphism,
    OrthogonalComplexStructure,
    VerticalVector,
    hom_norm,
    principal_sqrt,
    transfer_endomorphism,
    vertical_basis,
)
from ..riemann import MetricPair, connection_matrix, cov_deriv_endofield, difference_tensor, gradient
from .tangent import StructurePair, TwistorMetricParams, TwistorPoint, TwistorTangent

logger = logging.getLogger('PsiPushforward')


def v_endomorphism(pair: MetricPair, I: OrthogonalComplexStructure, X: np.ndarray, p: np.ndarray) -> Endomorphism:
    """
    V_{I,X}(Y) = (IY)(f)X - g(X, IY)∇f - Y(f)IX + g(X, Y)I∇f for a conformal pair

    Args:
        pair: Conformal metric pair
        I: Structure compatible with g(p)
        X: Base vector
        p: Chart point

    Returns:
        Endomorphism over (T_pM, g)
    """
    factor = pair.require_conformal()
    X = np.asarray(X, dtype=float)
    df = factor.grad(p)
    grad = gradient(pair.g, factor, p)
    gram = I.space.gram
    Imat = I.mat
    mat = (np.outer(X, df @ Imat)
           - np.outer(grad, X @ gram @ Imat)
           - np.outer(Imat @ X, df)
           + np.outer(Imat @ grad, gram @ X))
    return Endomorphism(I.space, mat)


def iso_criterion(k: int, pair: MetricPair, I: OrthogonalComplexStructure, X: np.ndarray, p: np.ndarray) -> float:
    """‖(-1)^{k+1} I∘V_{I,X} - V_{I,IX}‖ in the metric G"""
    if k not in (1, 2):
        raise PreconditionError(f"k must be 1 or 2, got {k}")
    sign = 1.0 if k == 1 else -1.0
    lhs = (I @ v_endomorphism(pair, I, X, p)).scaled(sign)
    return hom_norm(lhs - v_endomorphism(pair, I, I.apply(X), p))


def nabla_tilde_section(pair: MetricPair, I: OrthogonalComplexStructure, X: np.ndarray, p: np.ndarray,
                        strict: bool = True) -> VerticalVector:
    """
    ∇̃_X S at p for a section S with S(p) = I and ∇S|ₚ = 0

    (∇̃_X S)(Y) = A(X, S(Y)) - S(A(X, Y)) with A = Γ̃ - Γ; this is V_{I,X} for conformal pairs,
    which is vertical at I. For general pairs the value is not g-skew and is returned unvalidated.
    """
    if pair.is_conformal:
        value = v_endomorphism(pair, I, X, p)
        return VerticalVector(I, value, validate=strict)
    a_x = connection_matrix(difference_tensor(pair, p), X)
    return VerticalVector(I, Endomorphism(I.space, a_x @ I.mat - I.mat @ a_x), validate=False)


def psi_field(pair: MetricPair) -> Callable[[np.ndarray], np.ndarray]:
    """q ↦ Q(q), the principal square root of C(q) = g⁻¹g̃"""
    def field(q: np.ndarray) -> np.ndarray:
        C = transfer_endomorphism(pair.g.space(q), pair.gtilde.gram(q), strict=False)
        return principal_sqrt(C, strict=False).mat
    return field


def q_covariant_derivative(pair: MetricPair, X: np.ndarray, p: np.ndarray) -> np.ndarray:
    """∇̃_X Q; X(f)·e^f·Id for conformal pairs"""
    X = np.asarray(X, dtype=float)
    if pair.is_conformal:
        factor = pair.factor
        return float(factor.grad(p) @ X) * np.exp(factor.value(p)) * np.eye(pair.dim)
    return cov_deriv_endofield(pair.gtilde, psi_field(pair), X, p)


@dataclass(frozen=True, eq=False)
class PushforwardContext:
    """Q, Ψ(I) and the target fiber at one twistor point"""
    pair: MetricPair
    point: TwistorPoint
    Q: np.ndarray
    Q_inv: np.ndarray
    image: TwistorPoint

    @classmethod
    def at(cls, pair: MetricPair, point: TwistorPoint, strict: bool = True) -> 'PushforwardContext':
        transfer = pair.transfer(point.p, strict=strict)
        image = TwistorPoint(point.p, transfer.psi_structure(point.I, strict=strict))
        return cls(pair, point, transfer.Q.mat, transfer.Q_inv, image)

    def conjugate(self, mat: np.ndarray) -> np.ndarray:
        return self.Q_inv @ mat @ self.Q

    def horizontal_vertical(self, X: np.ndarray, strict: bool = True) -> np.ndarray:
        """N(X) = ∇̃_X(Q⁻¹SQ) = -Q⁻¹(∇̃_XQ)Q⁻¹IQ + Q⁻¹(∇̃_XS)Q + Q⁻¹I(∇̃_XQ)"""
        p = self.point.p
        I = self.point.I.mat
        nabla_q = q_covariant_derivative(self.pair, X, p)
        nabla_s = nabla_tilde_section(self.pair, self.point.I, X, p, strict=strict).mat
        return (-self.Q_inv @ nabla_q @ self.Q_inv @ I @ self.Q
                + self.conjugate(nabla_s)
                + self.Q_inv @ I @ nabla_q)

    def vertical(self, mat: np.ndarray, strict: bool = True) -> VerticalVector:
        return VerticalVector(self.image.I, Endomorphism(self.image.space, mat), validate=strict)


def psi_pushforward(pair: MetricPair, T: TwistorTangent, strict: bool = True,
                    context: Optional[PushforwardContext] = None) -> TwistorTangent:
    """
    Ψ_* T at Ψ(I)

    Args:
        pair: Metric pair (g, g̃)
        T: Tangent at (p, I)
        strict: Assert the vertical output is tangent to the fiber at Ψ(I)
        context: Precomputed PushforwardContext for T.point

    Returns:
        X^h̃ + N(X) + Q⁻¹UQ as a TwistorTangent over (T_pM, g̃)
    """
    if context is None:
        context = PushforwardContext.at(pair, T.point, strict=strict)
    ver = context.conjugate(T.ver.mat)
    if np.any(T.hor):
        ver = ver + context.horizontal_vertical(T.hor, strict=strict)
    return TwistorTangent(context.image, T.hor, context.vertical(ver, strict=strict))


# ---------------------------------------------------------------------------
# Holomorphy
# ---------------------------------------------------------------------------

def _ratio(numerator: float, denominator: float) -> float:
    return numerator / max(denominator, np.finfo(float).tiny)


def holomorphy_conditions(pair: MetricPair, point: TwistorPoint, structures: StructurePair,
                          params: TwistorMetricParams, anti: bool = False,
                          strict: bool = False) -> Dict[str, float]:
    """
    Condition-wise residuals of J̃_l∘Ψ_* - σΨ_*∘J_k at one twistor point

    horizontal: Ψ(I)X against σIX; connection: ε_lΨ(I)N(X) against σN(IX), weighted by √t;
    vertical: ε_lΨ(I)Q⁻¹UQ against σε_kQ⁻¹IUQ. Every term is relative to the size of its input.
    """
    sigma = -1.0 if anti else 1.0
    eps_k = structures.source.vertical_sign
    eps_l = structures.target.vertical_sign
    context = PushforwardContext.at(pair, point, strict=strict)
    target = context.image.space
    I = point.I.mat
    psi_i = context.image.I.mat

    frame = point.space.orthonormal_frame()
    horizontal = 0.0
    connection = 0.0
    for i in range(point.n):
        E = frame[:, i]
        size = target.norm(E)
        horizontal = max(horizontal, _ratio(target.norm(psi_i @ E - sigma * (I @ E)), size))
        diff = eps_l * psi_i @ context.horizontal_vertical(E) - sigma * context.horizontal_vertical(I @ E)
        connection = max(connection, _ratio(np.sqrt(params.t) * hom_norm(Endomorphism(target, diff)), size))

    vertical = 0.0
    for U in vertical_basis(point.I):
        pushed = context.conjugate(U.mat)
        diff = eps_l * psi_i @ pushed - sigma * eps_k * context.conjugate(I @ U.mat)
        vertical = max(vertical, _ratio(hom_norm(Endomorphism(target, diff)), hom_norm(Endomorphism(target, pushed))))

    return {
        "horizontal": float(horizontal),
        "connection": float(connection),
        "vertical": float(vertical),
        "total": float(max(horizontal, connection, vertical)),
    }


@dataclass
class HolomorphyStats:
    """Residual statistics over a sample sweep"""
    structures: str
    anti: bool
    values: List[float] = field(default_factory=list)
    conditions: Dict[str, float] = field(default_factory=lambda: {"horizontal": 0.0, "connection": 0.0, "vertical": 0.0})
    points: List[np.ndarray] = field(default_factory=list)

    @property
    def max(self) -> float:
        return float(np.max(self.values)) if self.values else 0.0

    @property
    def mean(self) -> float:
        return float(np.mean(self.values)) if self.values else 0.0

    @property
    def min(self) -> float:
        return float(np.min(self.values)) if self.values else 0.0


def holomorphy_residual(pair: MetricPair, structures: StructurePair, samples: Iterable[TwistorPoint],
                        params: TwistorMetricParams, anti: bool = False) -> HolomorphyStats:
    """
    Holomorphy (or anti-holomorphy) residual of Ψ over a sample sweep

    Args:
        pair: Metric pair
        structures: Source and target structure kinds
        samples: Twistor points of the source space
        params: Twistor metric scales
        anti: Test J̃∘Ψ_* = -Ψ_*∘J instead

    Returns:
        HolomorphyStats with the per-sample totals and condition-wise maxima
    """
    stats = HolomorphyStats(structures.label, anti)
    for point in samples:
        conditions = holomorphy_conditions(pair, point, structures, params, anti=anti)
        stats.values.append(conditions["total"])
        for key in stats.conditions:
            stats.conditions[key] = max(stats.conditions[key], conditions[key])
        stats.points.append(point.p)
    logger.debug(f"{structures.label} {'anti-' if anti else ''}holomorphy: max residual {stats.max:.3e}")
    return stats

"""
Twistor Structures - J₁, J₂, the metrics g_s and the Levi-Civita terms of g_s
"""

import logging
from dataclasses import dataclass
from typing import Callable, List, Optional

import numpy as np

from ..exceptions import PreconditionError
from ..fiber import Endomorphism, VerticalVector, hom_metric, vertical_basis, wedge_of_endo
from ..riemann import CurvatureData, MetricField, cov_deriv_vectorfield, curvature, curvature_on_bivector
from .tangent import StructureKind, TwistorMetricParams, TwistorPoint, TwistorTangent

logger = logging.getLogger('TwistorStructures')


def jk_apply(kind: StructureKind, T: TwistorTangent) -> TwistorTangent:
    """
    J_k on a tangent vector

    Args:
        kind: AHS (J₁) or ES (J₂)
        T: Tangent at (p, I)

    Returns:
        (IX)^h + ε·I∘V with ε = +1 for AHS and -1 for ES
    """
    I = T.point.I
    ver = VerticalVector(I, (I @ T.ver.value).scaled(kind.vertical_sign), validate=False)
    return TwistorTangent(T.point, I.apply(T.hor), ver)


def twisted_inner(weight: float, T1: TwistorTangent, T2: TwistorTangent) -> float:
    """g(X, Y) + weight·G(V, W) at a common point"""
    if not T1.point.same_as(T2.point):
        raise PreconditionError("gs_inner needs tangents at the same twistor point")
    space = T1.point.space
    return space.inner(T1.hor, T2.hor) + weight * hom_metric(T1.ver.value, T2.ver.value)


def gs_inner(params: TwistorMetricParams, T1: TwistorTangent, T2: TwistorTangent) -> float:
    """g_s(X^h + V, Y^h + W) = g(X, Y) + s·G(V, W)"""
    return twisted_inner(params.s, T1, T2)


def gt_inner(params: TwistorMetricParams, T1: TwistorTangent, T2: TwistorTangent) -> float:
    """g̃_t on tangents of the target twistor space"""
    return twisted_inner(params.t, T1, T2)


def twisted_norm(weight: float, T: TwistorTangent) -> float:
    return float(np.sqrt(max(twisted_inner(weight, T, T), 0.0)))


def vertical_tangent_basis(point: TwistorPoint, s: float) -> List[TwistorTangent]:
    """g_s-orthonormal basis of T_I𝒵: a g-orthonormal horizontal frame, then U_α/√s"""
    frame = point.space.orthonormal_frame()
    basis = [TwistorTangent.horizontal(point, frame[:, i]) for i in range(point.n)]
    scale = 1.0 / np.sqrt(s)
    for U in vertical_basis(point.I):
        ver = VerticalVector(point.I, U.value.scaled(scale), validate=False)
        basis.append(TwistorTangent.vertical(point, ver))
    return basis


def structure_matrix(kind: StructureKind, point: TwistorPoint, s: float) -> np.ndarray:
    """Matrix of J_k in the basis of vertical_tangent_basis; orthogonal with square -Id"""
    basis = vertical_tangent_basis(point, s)
    images = [jk_apply(kind, T) for T in basis]
    return np.array([[twisted_inner(s, row, image) for image in images] for row in basis])


@dataclass(frozen=True, eq=False)
class ConnectionTerms:
    """
    Levi-Civita terms of g_s at (p, J)

    hh: D_{X^h}Y^h = (∇_X Y)^h + ½R(X∧Y)J
    vh: horizontal vector of D_V X^h = -s(R((J∘V)^∧)X)^h
    """
    hh: TwistorTangent
    vh: np.ndarray


def twistor_connection(M: MetricField, params: TwistorMetricParams, X: np.ndarray, Y: np.ndarray,
                       V: VerticalVector, point: TwistorPoint,
                       y_field: Optional[Callable[[np.ndarray], np.ndarray]] = None,
                       data: Optional[CurvatureData] = None) -> ConnectionTerms:
    """
    Levi-Civita connection terms of (𝒵, g_s)

    Args:
        M: Base metric
        params: Twistor metric scales
        X, Y: Base vectors at point.p
        V: Vertical vector at point.I
        point: Twistor point
        y_field: Germ of a vector field with value Y at p; without it only the curvature term is returned
        data: Precomputed curvature at point.p

    Returns:
        ConnectionTerms
    """
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    if y_field is not None and not np.allclose(y_field(point.p), Y):
        raise PreconditionError("y_field does not take the value Y at the base point")
    if data is None:
        data = curvature(M, point.p, oriented=False)

    J = point.I
    r_xy = data.endomorphism(X, Y)
    half = Endomorphism(J.space, 0.5 * (r_xy @ J.mat - J.mat @ r_xy))
    vertical = VerticalVector(J, half, validate=True)
    horizontal = np.zeros(point.n) if y_field is None else cov_deriv_vectorfield(M, y_field, X, point.p)

    sigma = wedge_of_endo(J @ V.value, strict=False)
    vh = -params.s * curvature_on_bivector(data, sigma).apply(X)
    return ConnectionTerms(TwistorTangent(point, horizontal, vertical), vh)

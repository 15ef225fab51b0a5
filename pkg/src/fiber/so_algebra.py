"""
so(V) Geometry - the metric G, the vertical projection and the fiber tangent spaces of F(V)
"""

from typing import List

import numpy as np
from scipy import linalg

from ..config import FIBER_CONFIG
from ..exceptions import PreconditionError
from .spaces import Endomorphism, OrthogonalComplexStructure, VerticalVector


def so_metric(S: Endomorphism, T: Endomorphism, strict: bool = True) -> float:
    """G(S, T) = -½·Trace(S∘T) on g-skew endomorphisms"""
    S.space.require_same(T.space)
    if strict and not (S.is_g_skew() and T.is_g_skew()):
        raise PreconditionError("so_metric expects g-skew endomorphisms")
    return float(-0.5 * np.trace(S.mat @ T.mat))


def hom_metric(A: Endomorphism, B: Endomorphism) -> float:
    """
    Metric G on Hom(V, V): ½·Trace(G⁻¹AᵀG B)

    Agrees with so_metric on g-skew inputs.
    """
    A.space.require_same(B.space)
    gram = A.space.gram
    return float(0.5 * np.trace(A.space.gram_inv @ A.mat.T @ gram @ B.mat))


def hom_norm(A: Endomorphism) -> float:
    return float(np.sqrt(max(hom_metric(A, A), 0.0)))


def vertical_project(J: OrthogonalComplexStructure, phi: Endomorphism, strict: bool = True) -> VerticalVector:
    """𝒱_J φ = ½(φ + J∘φ∘J), the G-orthogonal projection onto the vertical space at J"""
    J.space.require_same(phi.space)
    if strict and not phi.is_g_skew():
        raise PreconditionError("vertical_project expects a g-skew endomorphism")
    value = Endomorphism(J.space, 0.5 * (phi.mat + J.mat @ phi.mat @ J.mat))
    return VerticalVector(J, value, validate=strict)


def fiber_complex_structure(vertical: VerticalVector) -> VerticalVector:
    """𝒥V = J∘V on the tangent space of F(V) at J"""
    return VerticalVector(vertical.base, vertical.base @ vertical.value, validate=False)


def vertical_basis(J: OrthogonalComplexStructure) -> List[VerticalVector]:
    """
    G-orthonormal basis of the vertical space at J

    Works in the oriented orthonormal frame where G(S, T) = ½⟨Ŝ, T̂⟩_F, projects the
    elementary skew matrices and orthonormalizes the span.
    """
    space = J.space
    n = space.n
    frame = space.orthonormal_frame()
    frame_inv = np.linalg.inv(frame)
    local_j = frame_inv @ J.mat @ frame

    projected = []
    for a in range(n):
        for b in range(a + 1, n):
            skew = np.zeros((n, n))
            skew[a, b], skew[b, a] = 1.0, -1.0
            projected.append((0.5 * (skew + local_j @ skew @ local_j)).reshape(-1))

    # absolute cutoff: at n = 2 every projection is rounding noise
    left, singular, _ = linalg.svd(np.column_stack(projected), full_matrices=False)
    span = left[:, singular > FIBER_CONFIG["eigen_tolerance"]]
    basis = []
    for k in range(span.shape[1]):
        local = np.sqrt(2.0) * span[:, k].reshape(n, n)
        local = 0.5 * (local - local.T)
        basis.append(VerticalVector(J, Endomorphism(space, frame @ local @ frame_inv), validate=False))
    return basis


def vertical_dimension(J: OrthogonalComplexStructure) -> int:
    """Rank of the vertical projection on so(V); equals m² - m"""
    return len(vertical_basis(J))

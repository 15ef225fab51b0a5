"""
Metric Transfer - the endomorphism C, its principal square root Q and the map Ψ(I) = Q⁻¹IQ
Carries g-compatible complex structures to g̃-compatible ones
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Tuple

import numpy as np
from scipy import linalg

from ..config import FIBER_CONFIG
from ..exceptions import DimensionMismatchError, PreconditionError
from .spaces import Endomorphism, InnerProductSpace, OrthogonalComplexStructure

logger = logging.getLogger('MetricTransfer')


def transfer_endomorphism(space: InnerProductSpace, gtilde: np.ndarray, strict: bool = True) -> Endomorphism:
    """
    C with g(C(X), Y) = g̃(X, Y), i.e. C = G⁻¹·G̃

    Args:
        space: Source space (V, g)
        gtilde: Gram matrix of g̃ in the same basis
        strict: Assert that C is g-symmetric, g̃-symmetric and positive

    Returns:
        Endomorphism C over (V, g)
    """
    gtilde = np.asarray(gtilde, dtype=float)
    if gtilde.shape != space.gram.shape:
        raise DimensionMismatchError(f"g̃ has shape {gtilde.shape}, expected {space.gram.shape}")
    if strict:
        try:
            np.linalg.cholesky(0.5 * (gtilde + gtilde.T))
        except np.linalg.LinAlgError:
            raise PreconditionError("g̃ is not positive definite")

    C = Endomorphism(space, np.linalg.solve(space.gram, gtilde))
    if strict:
        tol = FIBER_CONFIG["eigen_tolerance"]
        lowered_tilde = gtilde @ C.mat
        if not C.is_g_symmetric(tol):
            raise PreconditionError("C is not g-symmetric")
        if np.max(np.abs(lowered_tilde - lowered_tilde.T)) > tol * max(1.0, np.max(np.abs(lowered_tilde))):
            raise PreconditionError("C is not g̃-symmetric")
        if not C.is_g_positive(tol):
            raise PreconditionError("C is not positive")
    return C


def _symmetric_local(C: Endomorphism) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    frame = C.space.orthonormal_frame()
    frame_inv = np.linalg.inv(frame)
    local = frame_inv @ C.mat @ frame
    return frame, frame_inv, 0.5 * (local + local.T)


def principal_sqrt(C: Endomorphism, strict: bool = True) -> Endomorphism:
    """
    Principal square root Q of a g-symmetric positive C

    Computed by symmetric eigendecomposition in an orthonormal frame, where C is a
    symmetric matrix.
    """
    if strict and not C.is_g_symmetric(FIBER_CONFIG["eigen_tolerance"]):
        raise PreconditionError("principal_sqrt expects a g-symmetric endomorphism")
    frame, frame_inv, local = _symmetric_local(C)
    eigvals, eigvecs = linalg.eigh(local)
    floor = FIBER_CONFIG["spectrum_floor"] * max(1.0, float(np.max(np.abs(eigvals))))
    if np.min(eigvals) <= floor:
        raise PreconditionError(f"non-positive spectrum, smallest eigenvalue {np.min(eigvals):.3e}")
    root = (eigvecs * np.sqrt(eigvals)) @ eigvecs.T
    return Endomorphism(C.space, frame @ root @ frame_inv)


@lru_cache(maxsize=None)
def _unit_interval_rule(nodes: int) -> Tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(nodes)
    return 0.5 * (x + 1.0), 0.5 * w


def log_integral(A: np.ndarray, nodes: int = FIBER_CONFIG["quadrature_nodes"]) -> np.ndarray:
    """
    ln A = (A - I)·∫₀¹[(1-λ)I + λA]⁻¹dλ by Gauss-Legendre quadrature

    A is first scaled by its geometric-mean eigenvalue so the integrand stays away from
    its poles; the scale comes back as a multiple of the identity.
    """
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    sign, logdet = np.linalg.slogdet(A)
    if sign <= 0:
        raise PreconditionError("log_integral expects a matrix with positive determinant")
    log_scale = logdet / n
    scaled = A / np.exp(log_scale)

    identity = np.eye(n)
    lambdas, weights = _unit_interval_rule(nodes)
    integral = np.zeros((n, n))
    for lam, weight in zip(lambdas, weights):
        integral += weight * np.linalg.inv((1.0 - lam) * identity + lam * scaled)
    return (scaled - identity) @ integral + log_scale * identity


def sqrt_via_log_integral(A: np.ndarray, nodes: int = FIBER_CONFIG["quadrature_nodes"]) -> np.ndarray:
    """exp(½ ln A), the cross-check path for principal_sqrt"""
    return linalg.expm(0.5 * log_integral(A, nodes))


def psi_map(A: np.ndarray, Q: np.ndarray) -> np.ndarray:
    """Ψ(A) = Q⁻¹AQ on any endomorphism matrix"""
    return np.linalg.solve(Q, np.asarray(A, dtype=float) @ Q)


@dataclass(frozen=True, eq=False)
class MetricTransfer:
    """C and Q for a pair of metrics on the same vector space"""
    source: InnerProductSpace
    target: InnerProductSpace
    C: Endomorphism
    Q: Endomorphism

    @classmethod
    def between(cls, source: InnerProductSpace, gtilde: np.ndarray, strict: bool = True) -> 'MetricTransfer':
        C = transfer_endomorphism(source, gtilde, strict=strict)
        Q = principal_sqrt(C, strict=strict)
        target = InnerProductSpace(np.asarray(gtilde, dtype=float), oriented=source.oriented)
        return cls(source, target, C, Q)

    @property
    def Q_inv(self) -> np.ndarray:
        return np.linalg.inv(self.Q.mat)

    def psi(self, A: np.ndarray) -> np.ndarray:
        return psi_map(A, self.Q.mat)

    def psi_inverse(self, A: np.ndarray) -> np.ndarray:
        return self.Q.mat @ np.asarray(A, dtype=float) @ self.Q_inv

    def psi_structure(self, I: OrthogonalComplexStructure, strict: bool = True) -> OrthogonalComplexStructure:
        self.source.require_same(I.space)
        return OrthogonalComplexStructure(self.target, self.psi(I.mat), validate=strict)


def psi_point(I: OrthogonalComplexStructure, gtilde: np.ndarray, strict: bool = True,
              g: Optional[InnerProductSpace] = None) -> OrthogonalComplexStructure:
    """
    Ψ(I) = Q⁻¹IQ, a complex structure compatible with g̃

    The source metric is g = I.space unless g is passed explicitly; an explicit g
    that differs from I.space must itself be compatible with I.

    Args:
        I: Complex structure in F(V, g)
        gtilde: Gram matrix of g̃
        strict: Validate compatibility of the result
        g: Source metric, defaults to I.space

    Returns:
        OrthogonalComplexStructure over (V, g̃)

    Raises:
        DimensionMismatchError: g and I act on different dimensions
        PreconditionError: I is not compatible with an explicit g
    """
    if g is not None and not g.matches(I.space):
        if g.n != I.space.n:
            raise DimensionMismatchError(f"g has dimension {g.n}, I acts on {I.space.n}")
        I = OrthogonalComplexStructure(g, I.mat)
    transfer = MetricTransfer.between(I.space, gtilde, strict=strict)
    result = transfer.psi_structure(I, strict=strict)
    logger.debug(f"Ψ(I) computed, ‖Q - Id‖ = {np.max(np.abs(transfer.Q.mat - np.eye(I.space.n))):.3e}")
    return result


def make_compatible_structure(gtilde: np.ndarray, I: np.ndarray, strict: bool = True) -> OrthogonalComplexStructure:
    """
    Turn an almost complex matrix into a g̃-compatible structure

    Builds the auxiliary metric g(X, Y) = g̃(X, Y) + g̃(IX, IY), for which I is
    orthogonal, and returns Ψ(I) for the pair (g, g̃).
    """
    gtilde = np.asarray(gtilde, dtype=float)
    I = np.asarray(I, dtype=float)
    n = gtilde.shape[0]
    if I.shape != (n, n):
        raise DimensionMismatchError(f"I has shape {I.shape}, expected {(n, n)}")
    if np.max(np.abs(I @ I + np.eye(n))) > FIBER_CONFIG["structure_tolerance"] * max(1.0, np.max(np.abs(I)) ** 2):
        raise PreconditionError("I² ≠ -Id")

    auxiliary = gtilde + I.T @ gtilde @ I
    base = InnerProductSpace(0.5 * (auxiliary + auxiliary.T))
    return psi_point(OrthogonalComplexStructure(base, I, validate=strict), gtilde, strict=strict)

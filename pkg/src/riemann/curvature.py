"""
Curvature Engine - Riemann tensor, curvature operator on Λ² and its decomposition
R(X,Y)Z = ∇_[X,Y]Z - ∇_X∇_YZ + ∇_Y∇_XZ, so round spheres have positive scalar curvature
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..exceptions import PreconditionError
from ..fiber import Endomorphism, InnerProductSpace, TwoVector, hodge_matrix, lambda2_gram, pair_indices
from ..fiber.spaces import matrix_to_coeffs
from .connection import christoffel, christoffel_derivative
from .finite_diff import partial_derivatives
from .metrics import MetricField, MetricPair

logger = logging.getLogger('CurvatureEngine')


@dataclass(frozen=True, eq=False)
class CurvatureParts:
    """ℛ = scalar + ℬ + 𝒲, with 𝒲 = 𝒲₊ + 𝒲₋ in oriented dimension 4"""
    scalar: np.ndarray
    traceless_ricci: np.ndarray
    weyl: np.ndarray
    weyl_plus: Optional[np.ndarray] = None
    weyl_minus: Optional[np.ndarray] = None


@dataclass(frozen=True, eq=False)
class CurvatureData:
    """
    Curvature at a point

    endo[i, j, m, k] is the m-th component of R(∂_i, ∂_j)∂_k and tensor[i, j, k, l] =
    g(R(∂_i, ∂_j)∂_k, ∂_l). operator acts on Λ² coefficient vectors.
    """
    point: np.ndarray
    gram: np.ndarray
    christoffel: np.ndarray
    endo: np.ndarray
    tensor: np.ndarray
    operator: np.ndarray
    ricci: np.ndarray
    rho: np.ndarray
    scalar: float
    parts: Optional[CurvatureParts]

    @property
    def n(self) -> int:
        return self.gram.shape[0]

    def space(self, oriented: bool = True) -> InnerProductSpace:
        return InnerProductSpace(self.gram, oriented=oriented)

    def apply(self, X: np.ndarray, Y: np.ndarray, Z: np.ndarray) -> np.ndarray:
        """R(X, Y)Z"""
        return np.einsum('i,j,ijmk,k->m', X, Y, self.endo, Z)

    def endomorphism(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        """Matrix of R(X, Y)"""
        return np.einsum('i,j,ijmk->mk', X, Y, self.endo)


def curvature(M: MetricField, p: np.ndarray, oriented: bool = True) -> CurvatureData:
    """
    Full curvature data of M at p

    Args:
        M: Metric field (analytic or finite-difference derivatives)
        p: Chart point
        oriented: Compute the 𝒲± split in dimension 4

    Returns:
        CurvatureData; parts is None in dimension 2
    """
    p = np.asarray(p, dtype=float)
    gram = M.gram(p)
    gram_inv = np.linalg.inv(gram)
    gamma = christoffel(M, p)
    d_gamma = christoffel_derivative(M, p)

    textbook = (np.einsum('imjk->ijmk', d_gamma)
                - np.einsum('jmik->ijmk', d_gamma)
                + np.einsum('mil,ljk->ijmk', gamma, gamma)
                - np.einsum('mjl,lik->ijmk', gamma, gamma))
    endo = -textbook
    tensor = np.einsum('ijmk,ml->ijkl', endo, gram)
    ricci = np.einsum('jk,ajbk->ab', gram_inv, tensor)
    ricci = 0.5 * (ricci + ricci.T)
    rho = gram_inv @ ricci
    tau = float(np.trace(rho))

    pairs = pair_indices(M.dim)
    form = np.array([[tensor[i, j, k, l] for (k, l) in pairs] for (i, j) in pairs])
    operator = np.linalg.solve(lambda2_gram(gram), 0.5 * (form + form.T))

    parts = None
    if M.dim >= 3:
        parts = decompose(operator, rho, tau, M.dim, gram, oriented=oriented)
    logger.debug(f"Curvature at {np.round(p, 4).tolist()}: τ = {tau:.6e}")
    return CurvatureData(p, gram, gamma, endo, tensor, operator, ricci, rho, tau, parts)


def decompose(operator: np.ndarray, rho: np.ndarray, tau: float, n: int,
              gram: np.ndarray, oriented: bool = True) -> CurvatureParts:
    """
    Split ℛ into scalar, traceless-Ricci and Weyl parts

    scalar = 2τ/(n(n-1))·Id and ℬ(e_i∧e_j) = 2/(n-2)·(ρ₀e_i∧e_j + e_i∧ρ₀e_j) with ρ₀ the
    traceless Ricci operator. In oriented dimension 4, 𝒲± = ½(𝒲 ± ∗𝒲).
    """
    if n < 3:
        raise PreconditionError(f"curvature decomposition needs n >= 3, got n = {n}")
    pairs = pair_indices(n)
    size = len(pairs)
    identity = np.eye(n)
    traceless = rho - (tau / n) * identity

    scalar = (2.0 * tau / (n * (n - 1))) * np.eye(size)
    columns = []
    for i, j in pairs:
        a = traceless[:, i]
        b = traceless[:, j]
        mat = (np.outer(a, identity[j]) - np.outer(identity[j], a)
               + np.outer(identity[i], b) - np.outer(b, identity[i]))
        columns.append(matrix_to_coeffs(mat))
    ricci_part = (2.0 / (n - 2)) * np.column_stack(columns)
    weyl = operator - scalar - ricci_part

    plus = minus = None
    if n == 4 and oriented:
        star = hodge_matrix(gram)
        plus = 0.5 * (weyl + star @ weyl)
        minus = 0.5 * (weyl - star @ weyl)
    return CurvatureParts(scalar, ricci_part, weyl, plus, minus)


def operator_pairing(A: np.ndarray, B: np.ndarray) -> float:
    """Trace pairing ⟨A, B⟩ = tr(A∘B) of operators on Λ²"""
    return float(np.trace(A @ B))


def operator_norm(A: np.ndarray) -> float:
    return float(np.sqrt(max(operator_pairing(A, A), 0.0)))


def ricci_contraction(operator: np.ndarray, gram: np.ndarray) -> np.ndarray:
    """
    Ricci-type contraction of an operator on Λ²

    The operator is turned into the 4-tensor T[i,j,k,l] = g(op(e_i∧e_j), e_k∧e_l) and
    contracted as Σ G^{jk}T[a,j,b,k]. Returns Ric for ℛ and 0 for 𝒲.
    """
    gram = np.asarray(gram, dtype=float)
    n = gram.shape[0]
    form = lambda2_gram(gram) @ operator
    pairs = pair_indices(n)
    tensor = np.zeros((n, n, n, n))
    for a, (i, j) in enumerate(pairs):
        for b, (k, l) in enumerate(pairs):
            value = form[b, a]
            tensor[i, j, k, l] = value
            tensor[j, i, k, l] = -value
            tensor[i, j, l, k] = -value
            tensor[j, i, l, k] = value
    return np.einsum('jk,ajbk->ab', np.linalg.inv(gram), tensor)


def curvature_on_bivector(data: CurvatureData, sigma: TwoVector) -> Endomorphism:
    """R(σ) = Σ_{i<j} σ^{ij} R(e_i, e_j)"""
    mat = 0.5 * np.einsum('ij,ijmk->mk', sigma.matrix, data.endo)
    return Endomorphism(sigma.space, mat)


def hom_curvature(data: CurvatureData, X: np.ndarray, Y: np.ndarray, a: np.ndarray) -> np.ndarray:
    """Curvature of the induced connection on End(TM): R(X, Y)a = [R(X, Y), a]"""
    r_xy = data.endomorphism(X, Y)
    a = np.asarray(a, dtype=float)
    return r_xy @ a - a @ r_xy


def bianchi_residual(data: CurvatureData, X: np.ndarray, Y: np.ndarray, Z: np.ndarray) -> float:
    """|R(X,Y)Z + R(Y,Z)X + R(Z,X)Y| relative to the size of the curvature"""
    total = data.apply(X, Y, Z) + data.apply(Y, Z, X) + data.apply(Z, X, Y)
    scale = max(1.0, float(np.max(np.abs(data.endo)))) * np.linalg.norm(X) * np.linalg.norm(Y) * np.linalg.norm(Z)
    return float(np.linalg.norm(total)) / max(scale, np.finfo(float).tiny)


def weyl_conformal_residual(pair: MetricPair, p: np.ndarray) -> float:
    """max |𝒲̃ - e^{-2f}𝒲| for a conformal pair"""
    factor = pair.require_conformal()
    base = curvature(pair.g, p)
    target = curvature(pair.gtilde, p)
    if base.parts is None:
        raise PreconditionError("Weyl operator needs n >= 3")
    scaled = np.exp(-2.0 * factor.value(p)) * base.parts.weyl
    return float(np.max(np.abs(target.parts.weyl - scaled)))


def hodge_conformal_residual(pair: MetricPair, p: np.ndarray) -> float:
    """max |∗_g̃ - ∗_g| on Λ² coefficient vectors, n = 4"""
    pair.require_conformal()
    return float(np.max(np.abs(hodge_matrix(pair.gtilde.gram(p)) - hodge_matrix(pair.g.gram(p)))))


def is_self_dual(data: CurvatureData, tol: float = 1e-8) -> bool:
    if data.parts is None or data.parts.weyl_minus is None:
        raise PreconditionError("self-duality is defined in oriented dimension 4")
    return bool(np.max(np.abs(data.parts.weyl_minus)) <= tol)


def is_anti_self_dual(data: CurvatureData, tol: float = 1e-8) -> bool:
    if data.parts is None or data.parts.weyl_plus is None:
        raise PreconditionError("self-duality is defined in oriented dimension 4")
    return bool(np.max(np.abs(data.parts.weyl_plus)) <= tol)


def contracted_bianchi_ratio(M: MetricField, p: np.ndarray) -> Optional[float]:
    """
    Factor λ in δρ = λ·dτ, with δρ(Y) = -Σ_a (∇_{E_a}Ric)(E_a, Y)

    Least-squares fit over the coordinate components; None when dτ vanishes at p.
    """
    n = M.dim
    M.require_stencil(p, depth=1 if M.has_analytic_derivatives else 3)

    def packed(q):
        data = curvature(M, q, oriented=False)
        return np.concatenate([data.ricci.reshape(-1), [data.scalar]])

    derivatives = partial_derivatives(packed, p, M.fd_step)
    d_ricci = derivatives[:, :-1].reshape(n, n, n)
    d_tau = derivatives[:, -1]

    data = curvature(M, p, oriented=False)
    gamma = data.christoffel
    nabla_ricci = (d_ricci
                   - np.einsum('lca,lb->cab', gamma, data.ricci)
                   - np.einsum('lcb,al->cab', gamma, data.ricci))
    divergence = -np.einsum('ca,cab->b', np.linalg.inv(data.gram), nabla_ricci)

    scale = float(d_tau @ d_tau)
    if scale <= 1e-12 * max(1.0, abs(data.scalar)) ** 2:
        return None
    return float(divergence @ d_tau) / scale

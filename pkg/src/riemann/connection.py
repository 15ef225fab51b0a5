"""
Levi-Civita Connection - Christoffel symbols, covariant derivatives and connection differences
Γ[k, i, j] = Γ^k_ij in the chart basis; endomorphism fields are differentiated by finite differences
"""

import logging
from typing import Callable, List, Tuple, Union

import numpy as np

from ..fiber import Endomorphism
from .factors import ConformalFactor
from .finite_diff import partial_derivatives
from .metrics import MetricField, MetricPair

logger = logging.getLogger('LeviCivita')

EndoField = Callable[[np.ndarray], Union[np.ndarray, Endomorphism]]
VectorField = Callable[[np.ndarray], np.ndarray]


def _as_matrix(value: Union[np.ndarray, Endomorphism]) -> np.ndarray:
    if isinstance(value, Endomorphism):
        return value.mat
    return np.asarray(value, dtype=float)


def _koszul_terms(d_gram: np.ndarray) -> np.ndarray:
    # t[l, i, j] = ∂_i g_jl + ∂_j g_il - ∂_l g_ij
    return (np.transpose(d_gram, (2, 0, 1))
            + np.transpose(d_gram, (2, 1, 0))
            - d_gram)


def christoffel(M: MetricField, p: np.ndarray) -> np.ndarray:
    """
    Christoffel symbols of the Levi-Civita connection

    Args:
        M: Metric field
        p: Chart point

    Returns:
        Array Γ with Γ[k, i, j] = Γ^k_ij, symmetric in (i, j)
    """
    gram_inv = np.linalg.inv(M.gram(p))
    return 0.5 * np.einsum('kl,lij->kij', gram_inv, _koszul_terms(M.d_gram(p)))


def christoffel_derivative(M: MetricField, p: np.ndarray) -> np.ndarray:
    """dΓ[a, k, i, j] = ∂_a Γ^k_ij"""
    gram_inv = np.linalg.inv(M.gram(p))
    d_gram = M.d_gram(p)
    dd_gram = M.dd_gram(p)

    terms = _koszul_terms(d_gram)
    d_terms = (np.transpose(dd_gram, (0, 3, 1, 2))
               + np.transpose(dd_gram, (0, 3, 2, 1))
               - dd_gram)
    d_gram_inv = -np.einsum('kl,alm,mn->akn', gram_inv, d_gram, gram_inv)
    return 0.5 * (np.einsum('akl,lij->akij', d_gram_inv, terms)
                  + np.einsum('kl,alij->akij', gram_inv, d_terms))


def connection_matrix(gamma: np.ndarray, X: np.ndarray) -> np.ndarray:
    """Γ_X with (Γ_X)[k, j] = Σ_i X^i Γ^k_ij, so ∇_X Y = ∂_X Y + Γ_X Y"""
    return np.einsum('kij,i->kj', gamma, np.asarray(X, dtype=float))


def apply_difference(tensor: np.ndarray, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    return np.einsum('kij,i,j->k', tensor, np.asarray(X, dtype=float), np.asarray(Y, dtype=float))


def gradient(M: MetricField, factor: ConformalFactor, p: np.ndarray) -> np.ndarray:
    """∇f with g(∇f, Z) = Z(f)"""
    return np.linalg.solve(M.gram(p), factor.grad(p))


def conformal_difference_tensor(M: MetricField, factor: ConformalFactor,
                                X: np.ndarray, Y: np.ndarray, p: np.ndarray) -> np.ndarray:
    """A(X, Y) = X(f)Y + Y(f)X - g(X, Y)∇f, the difference ∇̃ - ∇ for g̃ = e^{2f}g"""
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    df = factor.grad(p)
    return (df @ X) * Y + (df @ Y) * X - float(X @ M.gram(p) @ Y) * gradient(M, factor, p)


def difference_tensor(pair: MetricPair, p: np.ndarray) -> np.ndarray:
    """(Γ̃ - Γ)[k, i, j]; closed form for conformal pairs"""
    if pair.is_conformal:
        factor = pair.factor
        n = pair.dim
        df = factor.grad(p)
        grad = gradient(pair.g, factor, p)
        eye = np.eye(n)
        return (np.einsum('ki,j->kij', eye, df)
                + np.einsum('kj,i->kij', eye, df)
                - np.einsum('k,ij->kij', grad, pair.g.gram(p)))
    return christoffel(pair.gtilde, p) - christoffel(pair.g, p)


def metric_compatibility_residual(M: MetricField, p: np.ndarray) -> float:
    """max |∇_a g_ij|"""
    gram = M.gram(p)
    gamma = christoffel(M, p)
    lowered = np.einsum('lai,lj->aij', gamma, gram)
    nabla = M.d_gram(p) - lowered - np.transpose(lowered, (0, 2, 1))
    return float(np.max(np.abs(nabla)))


def cov_deriv_vectorfield(M: MetricField, field: VectorField, X: np.ndarray, p: np.ndarray) -> np.ndarray:
    """∇_X Y for a vector field germ Y around p"""
    M.require_stencil(p)
    dY = partial_derivatives(field, p, M.fd_step)
    X = np.asarray(X, dtype=float)
    return X @ dY + connection_matrix(christoffel(M, p), X) @ np.asarray(field(p), dtype=float)


def cov_deriv_endofield(M: MetricField, field: EndoField, X: np.ndarray, p: np.ndarray) -> np.ndarray:
    """
    Induced covariant derivative on Hom(TM, TM)

    (∇_X L)(Y) = ∇_X(L(Y)) - L(∇_X Y), i.e. ∂_X L + Γ_X·L - L·Γ_X in coordinates.

    Args:
        M: Metric whose Levi-Civita connection is used
        field: Point ↦ endomorphism matrix, sampled on the stencil around p
        X: Direction
        p: Chart point

    Returns:
        Matrix of ∇_X L at p
    """
    M.require_stencil(p)
    X = np.asarray(X, dtype=float)
    dL = partial_derivatives(lambda q: _as_matrix(field(q)), p, M.fd_step)
    L = _as_matrix(field(p))
    gamma_x = connection_matrix(christoffel(M, p), X)
    return np.tensordot(X, dL, axes=1) + gamma_x @ L - L @ gamma_x


def second_cov_deriv_endofield(M: MetricField, field: EndoField, X: np.ndarray, Y: np.ndarray,
                               p: np.ndarray) -> np.ndarray:
    """∇²_{X,Y}L = ∇_X(∇_Y L) - ∇_{∇_X Y}L with X, Y extended as constant coordinate fields"""
    M.require_stencil(p, depth=2)
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    outer = cov_deriv_endofield(M, lambda q: cov_deriv_endofield(M, field, Y, q), X, p)
    nabla_xy = connection_matrix(christoffel(M, p), X) @ Y
    return outer - cov_deriv_endofield(M, field, nabla_xy, p)


# ---------------------------------------------------------------------------
# Transfer endomorphism C = G⁻¹G̃ and the form Σ
# ---------------------------------------------------------------------------

def transfer_derivatives(pair: MetricPair, p: np.ndarray) -> Tuple[np.ndarray, List[np.ndarray]]:
    """
    C at p together with ∇_{e_k}C for every coordinate direction (g-connection)

    Assembled from the gram derivatives of both metrics, so no nested stencil is needed.
    """
    gram = pair.g.gram(p)
    gram_inv = np.linalg.inv(gram)
    gtilde = pair.gtilde.gram(p)
    C = gram_inv @ gtilde
    d_gram = pair.g.d_gram(p)
    d_gtilde = pair.gtilde.d_gram(p)
    gamma = christoffel(pair.g, p)

    derivatives = []
    for k in range(pair.dim):
        partial = gram_inv @ (d_gtilde[k] - d_gram[k] @ C)
        gamma_k = gamma[:, k, :]
        derivatives.append(partial + gamma_k @ C - C @ gamma_k)
    return C, derivatives


def sigma_form(pair: MetricPair, X: np.ndarray, Y: np.ndarray, p: np.ndarray) -> np.ndarray:
    """
    Σ(X, Y) defined by g̃(Σ(X, Y), Z) = g̃(C⁻¹(∇_Z C)X, Y)

    Symmetric in (X, Y); equals 2g(X, Y)∇f for conformal pairs.
    """
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    gtilde = pair.gtilde.gram(p)
    C, nabla_c = transfer_derivatives(pair, p)
    covector = np.array([np.linalg.solve(C, D @ X) @ gtilde @ Y for D in nabla_c])
    return np.linalg.solve(gtilde, covector)


def koszul_difference(pair: MetricPair, X: np.ndarray, Y: np.ndarray, p: np.ndarray) -> np.ndarray:
    """½(C⁻¹(∇_X C)Y + C⁻¹(∇_Y C)X - Σ(X, Y)), which equals (Γ̃ - Γ)(X, Y)"""
    X = np.asarray(X, dtype=float)
    Y = np.asarray(Y, dtype=float)
    C, nabla_c = transfer_derivatives(pair, p)
    nabla_x = np.tensordot(X, np.stack(nabla_c), axes=1)
    nabla_y = np.tensordot(Y, np.stack(nabla_c), axes=1)
    return 0.5 * (np.linalg.solve(C, nabla_x @ Y) + np.linalg.solve(C, nabla_y @ X) - sigma_form(pair, X, Y, p))

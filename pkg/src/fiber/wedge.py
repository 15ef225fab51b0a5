"""
Λ² Calculus - the wedge isomorphism so(V) ≅ Λ²V and the Hodge splitting in dimension 4
"""

import itertools
from functools import lru_cache
from typing import Optional, Tuple

import numpy as np

from ..exceptions import DimensionMismatchError, PreconditionError
from .spaces import (
    Endomorphism,
    InnerProductSpace,
    TwoVector,
    pair_indices,
)


def wedge_of_endo(phi: Endomorphism, strict: bool = True) -> TwoVector:
    """
    2-vector φ^ defined by 2g(φ^, u∧v) = g(φu, v)

    Args:
        phi: g-skew endomorphism
        strict: Reject non-skew input

    Returns:
        TwoVector with coefficient matrix -φ·G⁻¹
    """
    if strict and not phi.is_g_skew():
        raise PreconditionError("wedge_of_endo expects a g-skew endomorphism")
    mat = -phi.mat @ phi.space.gram_inv
    return TwoVector.from_matrix(phi.space, 0.5 * (mat - mat.T))


def endo_of_wedge(sigma: TwoVector) -> Endomorphism:
    """σ^∨ with g(σ^∨X, Y) = 2g(σ, X∧Y); (A∧B)^∨X = g(A,X)B - g(B,X)A"""
    return Endomorphism(sigma.space, -sigma.matrix @ sigma.space.gram)


def decomposable_endo(space: InnerProductSpace, a: np.ndarray, b: np.ndarray) -> Endomorphism:
    """(A∧B)^∨ for vectors A, B"""
    return endo_of_wedge(TwoVector.wedge(space, a, b))


@lru_cache(maxsize=None)
def _levi_civita(n: int) -> np.ndarray:
    eps = np.zeros((n,) * n)
    for perm in itertools.permutations(range(n)):
        inversions = sum(1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b])
        eps[perm] = -1.0 if inversions % 2 else 1.0
    return eps


def _require_four(space: InnerProductSpace):
    if space.n != 4:
        raise DimensionMismatchError(f"Hodge star on Λ² needs n = 4, got n = {space.n}")
    if not space.oriented:
        raise PreconditionError("Hodge star needs an oriented space")


def hodge_star(sigma: TwoVector) -> TwoVector:
    """∗σ computed in the oriented orthonormal Cholesky frame"""
    space = sigma.space
    _require_four(space)
    frame = space.orthonormal_frame()
    frame_inv = np.linalg.inv(frame)
    local = frame_inv @ sigma.matrix @ frame_inv.T
    starred = 0.5 * np.einsum('ijkl,ij->kl', _levi_civita(4), local)
    return TwoVector.from_matrix(space, frame @ starred @ frame.T)


def hodge_matrix(gram: np.ndarray) -> np.ndarray:
    """Matrix of ∗ acting on coordinate coefficient vectors of Λ², n = 4"""
    space = InnerProductSpace(np.asarray(gram, dtype=float))
    size = len(pair_indices(space.n))
    columns = []
    for k in range(size):
        basis = np.zeros(size)
        basis[k] = 1.0
        columns.append(hodge_star(TwoVector(space, basis)).coeffs)
    return np.column_stack(columns)


def hodge_split(sigma: TwoVector) -> Tuple[TwoVector, TwoVector]:
    """(σ₊, σ₋) with σ = σ₊ + σ₋ and ∗σ± = ±σ±"""
    starred = hodge_star(sigma)
    return (sigma + starred).scaled(0.5), (sigma - starred).scaled(0.5)


def s_basis(space: InnerProductSpace,
            frame: Optional[np.ndarray] = None) -> Tuple[Tuple[TwoVector, ...], Tuple[TwoVector, ...]]:
    """
    Orthonormal bases (s₁⁺, s₂⁺, s₃⁺) of Λ²₊ and (s₁⁻, s₂⁻, s₃⁻) of Λ²₋

    Args:
        space: Oriented 4-dimensional space
        frame: Oriented orthonormal basis as columns (defaults to the Cholesky frame)
    """
    _require_four(space)
    if frame is None:
        frame = space.orthonormal_frame()
    f = [frame[:, k] for k in range(4)]
    first = (TwoVector.wedge(space, f[0], f[1]), TwoVector.wedge(space, f[0], f[2]), TwoVector.wedge(space, f[0], f[3]))
    second = (TwoVector.wedge(space, f[2], f[3]), TwoVector.wedge(space, f[3], f[1]), TwoVector.wedge(space, f[1], f[2]))
    plus = tuple(a + b for a, b in zip(first, second))
    minus = tuple(a - b for a, b in zip(first, second))
    return plus, minus


def commutator_wedge(a: Endomorphism, b: Endomorphism) -> TwoVector:
    """[a, b]^∧ for g-skew a, b"""
    return wedge_of_endo(a @ b - b @ a, strict=False)


"""
Isoclinic Factorization - SO(4) as left and right unit-quaternion multiplications
A = A₁(a,b,c,d)·A₂(p,q,r,s), unique up to a simultaneous sign flip
"""

from functools import lru_cache
from typing import Tuple

import numpy as np

from ..config import FIBER_CONFIG
from ..exceptions import PreconditionError
from .sampling import SeedLike, random_orthogonal

Quaternion = Tuple[float, float, float, float]


def left_isoclinic(q) -> np.ndarray:
    """A₁(a,b,c,d): left multiplication by a + bi + cj + dk on ℝ⁴ ≅ ℍ"""
    a, b, c, d = (float(x) for x in q)
    return np.array([
        [a, -b, -c, -d],
        [b, a, -d, c],
        [c, d, a, -b],
        [d, -c, b, a],
    ])


def right_isoclinic(q) -> np.ndarray:
    """A₂(p,q,r,s): right multiplication by p + qi + rj + sk"""
    p, q_, r, s = (float(x) for x in q)
    return np.array([
        [p, -q_, -r, -s],
        [q_, p, s, -r],
        [r, -s, p, q_],
        [s, r, -q_, p],
    ])


def quaternion_rotation(q) -> np.ndarray:
    """Â: the SO(3) action x ↦ q·x·q̄ on imaginary quaternions"""
    a, b, c, d = (float(x) for x in q)
    return np.array([
        [a * a + b * b - c * c - d * d, 2.0 * (b * c - a * d), 2.0 * (b * d + a * c)],
        [2.0 * (b * c + a * d), a * a - b * b + c * c - d * d, 2.0 * (c * d - a * b)],
        [2.0 * (b * d - a * c), 2.0 * (c * d + a * b), a * a - b * b - c * c + d * d],
    ])


def conjugate(q) -> np.ndarray:
    a, b, c, d = (float(x) for x in q)
    return np.array([a, -b, -c, -d])


@lru_cache(maxsize=1)
def _product_basis() -> np.ndarray:
    # column (4i + j) is vec(A₁(e_i)·A₂(e_j)); the 16 products span gl(4)
    units = np.eye(4)
    return np.column_stack([
        (left_isoclinic(units[i]) @ right_isoclinic(units[j])).reshape(-1)
        for i in range(4) for j in range(4)
    ])


def isoclinic_factor(A: np.ndarray, strict: bool = True) -> Tuple[Quaternion, Quaternion]:
    """
    Factor A ∈ SO(4) as A₁(a,b,c,d)·A₂(p,q,r,s)

    The bilinear coefficients M[i, j] = u_i·v_j are recovered by one linear solve, then
    the rank-one matrix M is split through its dominant row.

    Args:
        A: 4x4 special orthogonal matrix
        strict: Reject input outside SO(4)

    Returns:
        ((a,b,c,d), (p,q,r,s)) with the first nonzero entry of (a,b,c,d) positive
    """
    A = np.asarray(A, dtype=float)
    if A.shape != (4, 4):
        raise PreconditionError(f"isoclinic_factor expects a 4x4 matrix, got {A.shape}")
    if strict:
        tol = FIBER_CONFIG["eigen_tolerance"]
        if np.max(np.abs(A.T @ A - np.eye(4))) > tol or np.linalg.det(A) < 0:
            raise PreconditionError("input is not in SO(4)")

    coefficients = np.linalg.solve(_product_basis(), A.reshape(-1)).reshape(4, 4)
    row = int(np.argmax(np.linalg.norm(coefficients, axis=1)))
    right = coefficients[row] / np.linalg.norm(coefficients[row])
    left = coefficients @ right

    pivot = np.flatnonzero(np.abs(left) > FIBER_CONFIG["eigen_tolerance"])[0]
    if left[pivot] < 0:
        left, right = -left, -right
    return tuple(float(x) for x in left), tuple(float(x) for x in right)


def random_special_orthogonal(seed: SeedLike, n: int = 4) -> np.ndarray:
    return random_orthogonal(n, seed, special=True)

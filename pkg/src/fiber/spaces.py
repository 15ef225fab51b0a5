"""
Fiber Algebra Types - inner product spaces and the objects living over them
Endomorphisms, compatible complex structures, 2-vectors and vertical vectors of (V, g)
"""

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Tuple

import numpy as np

from ..config import FIBER_CONFIG
from ..exceptions import DimensionMismatchError, PreconditionError

logger = logging.getLogger('FiberSpaces')


@lru_cache(maxsize=None)
def pair_indices(n: int) -> Tuple[Tuple[int, int], ...]:
    """Ordered pairs (i, j), i < j, indexing the coordinate basis e_i∧e_j of Λ²"""
    return tuple((i, j) for i in range(n) for j in range(i + 1, n))


def coeffs_to_matrix(coeffs: np.ndarray, n: int) -> np.ndarray:
    """Antisymmetric coefficient matrix A with A[i, j] = σ^{ij} for i < j"""
    mat = np.zeros((n, n))
    for k, (i, j) in enumerate(pair_indices(n)):
        mat[i, j] = coeffs[k]
        mat[j, i] = -coeffs[k]
    return mat


def matrix_to_coeffs(mat: np.ndarray) -> np.ndarray:
    n = mat.shape[0]
    return np.array([mat[i, j] for i, j in pair_indices(n)], dtype=float)


def _frozen(array: np.ndarray) -> np.ndarray:
    out = np.array(array, dtype=float)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class InnerProductSpace:
    """
    Real vector space of even dimension n = 2m with metric gram matrix g

    The gram matrix is validated for symmetry and positive definiteness on
    construction; the Cholesky factor provides the oriented orthonormal frame.
    """
    gram: np.ndarray
    oriented: bool = True

    def __post_init__(self):
        gram = np.asarray(self.gram, dtype=float)
        if gram.ndim != 2 or gram.shape[0] != gram.shape[1]:
            raise DimensionMismatchError(f"gram must be square, got shape {gram.shape}")
        n = gram.shape[0]
        if n < 2 or n % 2:
            raise PreconditionError(f"dimension must be even and >= 2, got {n}")

        scale = max(1.0, float(np.max(np.abs(gram))))
        if np.max(np.abs(gram - gram.T)) > FIBER_CONFIG["symmetry_rtol"] * scale:
            raise PreconditionError("gram is not symmetric")
        gram = 0.5 * (gram + gram.T)
        try:
            chol = np.linalg.cholesky(gram)
        except np.linalg.LinAlgError:
            raise PreconditionError("gram is not positive definite")

        object.__setattr__(self, 'gram', _frozen(gram))
        object.__setattr__(self, '_chol', _frozen(chol))
        object.__setattr__(self, '_gram_inv', _frozen(np.linalg.inv(gram)))

    @property
    def n(self) -> int:
        return self.gram.shape[0]

    @property
    def m(self) -> int:
        return self.n // 2

    @property
    def gram_inv(self) -> np.ndarray:
        return self._gram_inv

    def inner(self, u: np.ndarray, v: np.ndarray) -> float:
        return float(np.asarray(u) @ self.gram @ np.asarray(v))

    def norm(self, u: np.ndarray) -> float:
        return float(np.sqrt(max(self.inner(u, u), 0.0)))

    def orthonormal_frame(self) -> np.ndarray:
        """Columns form a g-orthonormal basis with positive orientation"""
        return np.linalg.inv(self._chol).T

    def identity(self) -> 'Endomorphism':
        return Endomorphism(self, np.eye(self.n))

    def matches(self, other: 'InnerProductSpace', tol: float = FIBER_CONFIG["algebraic_tolerance"]) -> bool:
        if self is other:
            return True
        return self.n == other.n and bool(np.allclose(self.gram, other.gram, rtol=0.0, atol=tol))

    def require_same(self, other: 'InnerProductSpace'):
        if not self.matches(other):
            raise DimensionMismatchError("operands live over different inner product spaces")


@dataclass(frozen=True, eq=False)
class Endomorphism:
    """Square real matrix acting on the coordinates of an InnerProductSpace"""
    space: InnerProductSpace
    mat: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.mat, dtype=float)
        if mat.shape != (self.space.n, self.space.n):
            raise DimensionMismatchError(f"expected {self.space.n}x{self.space.n} matrix, got {mat.shape}")
        object.__setattr__(self, 'mat', _frozen(mat))

    def apply(self, v: np.ndarray) -> np.ndarray:
        return self.mat @ np.asarray(v, dtype=float)

    def adjoint(self) -> 'Endomorphism':
        """g-adjoint G⁻¹ Aᵀ G"""
        return Endomorphism(self.space, self.space.gram_inv @ self.mat.T @ self.space.gram)

    def is_g_skew(self, tol: float = FIBER_CONFIG["algebraic_tolerance"]) -> bool:
        lowered = self.space.gram @ self.mat
        return _rel_residual(lowered + lowered.T, lowered) <= tol

    def is_g_symmetric(self, tol: float = FIBER_CONFIG["algebraic_tolerance"]) -> bool:
        lowered = self.space.gram @ self.mat
        return _rel_residual(lowered - lowered.T, lowered) <= tol

    def is_g_positive(self, tol: float = FIBER_CONFIG["algebraic_tolerance"]) -> bool:
        if not self.is_g_symmetric(tol):
            return False
        lowered = self.space.gram @ self.mat
        return bool(np.min(np.linalg.eigvalsh(0.5 * (lowered + lowered.T))) > tol)

    def commutes_with(self, other: 'Endomorphism', tol: float = FIBER_CONFIG["algebraic_tolerance"]) -> bool:
        return _rel_residual(self.mat @ other.mat - other.mat @ self.mat, self.mat) <= tol

    def anticommutes_with(self, other: 'Endomorphism', tol: float = FIBER_CONFIG["algebraic_tolerance"]) -> bool:
        return _rel_residual(self.mat @ other.mat + other.mat @ self.mat, self.mat) <= tol

    def __matmul__(self, other: 'Endomorphism') -> 'Endomorphism':
        self.space.require_same(other.space)
        return Endomorphism(self.space, self.mat @ other.mat)

    def __add__(self, other: 'Endomorphism') -> 'Endomorphism':
        self.space.require_same(other.space)
        return Endomorphism(self.space, self.mat + other.mat)

    def __sub__(self, other: 'Endomorphism') -> 'Endomorphism':
        self.space.require_same(other.space)
        return Endomorphism(self.space, self.mat - other.mat)

    def __neg__(self) -> 'Endomorphism':
        return Endomorphism(self.space, -self.mat)

    def scaled(self, factor: float) -> 'Endomorphism':
        return Endomorphism(self.space, factor * self.mat)


def _rel_residual(residual: np.ndarray, reference: np.ndarray) -> float:
    return float(np.max(np.abs(residual))) / max(1.0, float(np.max(np.abs(reference))))


def standard_complex_structure(n: int) -> np.ndarray:
    """J₀ with J₀e_{2k-1} = e_{2k} (1-based), block-diagonal rotations by +90°"""
    if n < 2 or n % 2:
        raise PreconditionError(f"dimension must be even and >= 2, got {n}")
    mat = np.zeros((n, n))
    for k in range(0, n, 2):
        mat[k + 1, k] = 1.0
        mat[k, k + 1] = -1.0
    return mat


@dataclass(frozen=True, eq=False)
class OrthogonalComplexStructure(Endomorphism):
    """
    Complex structure J on V compatible with g: J² = -Id and g(Jx, Jy) = g(x, y)

    Construction validates both invariants unless validate is False (fast mode).
    """
    validate: bool = field(default=True, repr=False)

    def __post_init__(self):
        super().__post_init__()
        if self.validate:
            tol = FIBER_CONFIG["structure_tolerance"]
            square = self.mat @ self.mat + np.eye(self.space.n)
            if _rel_residual(square, self.mat) > tol:
                raise PreconditionError("J² ≠ -Id")
            pulled = self.mat.T @ self.space.gram @ self.mat - self.space.gram
            if _rel_residual(pulled, self.space.gram) > tol:
                raise PreconditionError("J is not g-orthogonal")

    @classmethod
    def standard(cls, space: InnerProductSpace) -> 'OrthogonalComplexStructure':
        """J₀ transported to space through its oriented orthonormal frame"""
        frame = space.orthonormal_frame()
        return cls(space, frame @ standard_complex_structure(space.n) @ np.linalg.inv(frame))

    def orientation(self) -> int:
        """+1 when J induces the orientation of the coordinate basis, -1 otherwise"""
        return orientation_sign(self.mat)


def orientation_sign(jmat: np.ndarray) -> int:
    """
    Orientation induced by a complex structure

    For a complex basis v_1..v_m of (V, J), the real basis (v_1, Jv_1, ..., v_m, Jv_m)
    carries the induced orientation. Real parts of the +i eigenvectors give such a basis.
    """
    eigvals, eigvecs = np.linalg.eig(jmat)
    upper = eigvecs[:, eigvals.imag > 0]
    columns: List[np.ndarray] = []
    for k in range(upper.shape[1]):
        v = upper[:, k].real
        columns.extend([v, jmat @ v])
    det = np.linalg.det(np.column_stack(columns))
    return 1 if det > 0 else -1


@dataclass(frozen=True, eq=False)
class TwoVector:
    """
    Element of Λ²V over the coordinate wedge basis e_i∧e_j (i < j)

    Inner product g(σ, τ) = ¼·tr(Aᵀ G B G) on coefficient matrices, so that
    ⟨e_i∧e_j, e_i∧e_j⟩ = ½ on an orthonormal basis.
    """
    space: InnerProductSpace
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.asarray(self.coeffs, dtype=float).reshape(-1)
        expected = len(pair_indices(self.space.n))
        if coeffs.shape[0] != expected:
            raise DimensionMismatchError(f"expected {expected} coefficients, got {coeffs.shape[0]}")
        object.__setattr__(self, 'coeffs', _frozen(coeffs))

    @classmethod
    def from_matrix(cls, space: InnerProductSpace, mat: np.ndarray) -> 'TwoVector':
        return cls(space, matrix_to_coeffs(np.asarray(mat, dtype=float)))

    @classmethod
    def wedge(cls, space: InnerProductSpace, u: np.ndarray, v: np.ndarray) -> 'TwoVector':
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        return cls.from_matrix(space, np.outer(u, v) - np.outer(v, u))

    @classmethod
    def zero(cls, space: InnerProductSpace) -> 'TwoVector':
        return cls(space, np.zeros(len(pair_indices(space.n))))

    @property
    def matrix(self) -> np.ndarray:
        return coeffs_to_matrix(self.coeffs, self.space.n)

    def inner(self, other: 'TwoVector') -> float:
        self.space.require_same(other.space)
        gram = self.space.gram
        return float(0.25 * np.trace(self.matrix.T @ gram @ other.matrix @ gram))

    def norm(self) -> float:
        return float(np.sqrt(max(self.inner(self), 0.0)))

    def __add__(self, other: 'TwoVector') -> 'TwoVector':
        self.space.require_same(other.space)
        return TwoVector(self.space, self.coeffs + other.coeffs)

    def __sub__(self, other: 'TwoVector') -> 'TwoVector':
        self.space.require_same(other.space)
        return TwoVector(self.space, self.coeffs - other.coeffs)

    def __neg__(self) -> 'TwoVector':
        return TwoVector(self.space, -self.coeffs)

    def scaled(self, factor: float) -> 'TwoVector':
        return TwoVector(self.space, factor * self.coeffs)


def lambda2_gram(gram: np.ndarray) -> np.ndarray:
    """Gram matrix H of the Λ² inner product on coefficient vectors"""
    gram = np.asarray(gram, dtype=float)
    pairs = pair_indices(gram.shape[0])
    size = len(pairs)
    out = np.empty((size, size))
    for a, (i, j) in enumerate(pairs):
        for b, (k, l) in enumerate(pairs):
            out[a, b] = 0.5 * (gram[i, k] * gram[j, l] - gram[i, l] * gram[j, k])
    return out


@dataclass(frozen=True, eq=False)
class VerticalVector:
    """Tangent vector to F(V) at J: a g-skew endomorphism anticommuting with J"""
    base: OrthogonalComplexStructure
    value: Endomorphism
    validate: bool = field(default=True, repr=False)

    def __post_init__(self):
        self.base.space.require_same(self.value.space)
        if self.validate:
            tol = FIBER_CONFIG["structure_tolerance"]
            if not self.value.is_g_skew(tol):
                raise PreconditionError("vertical value is not g-skew")
            if not self.value.anticommutes_with(self.base, tol):
                raise PreconditionError("vertical value does not anticommute with J")

    @property
    def mat(self) -> np.ndarray:
        return self.value.mat

"""
Random Fiber Data - seeded generators for structures, metrics and endomorphisms
All generators are deterministic in their seed
"""

from typing import Optional, Union

import numpy as np
from scipy.stats import ortho_group, special_ortho_group

from ..exceptions import PreconditionError
from .spaces import (
    Endomorphism,
    InnerProductSpace,
    OrthogonalComplexStructure,
    standard_complex_structure,
)

SeedLike = Union[int, np.random.SeedSequence, np.random.Generator, None]


def as_generator(seed: SeedLike) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_orthogonal(n: int, seed: SeedLike, special: bool = False) -> np.ndarray:
    rng = as_generator(seed)
    if special:
        return special_ortho_group.rvs(n, random_state=rng)
    return ortho_group.rvs(n, random_state=rng)


def conjugation_action(A: np.ndarray, J: OrthogonalComplexStructure) -> OrthogonalComplexStructure:
    """A·J·A⁻¹ for a g-orthogonal A, the O(2m)-action on F(V)"""
    A = np.asarray(A, dtype=float)
    return OrthogonalComplexStructure(J.space, A @ J.mat @ np.linalg.inv(A))


def random_compatible(space: InnerProductSpace, seed: SeedLike,
                      orientation: Optional[int] = None) -> OrthogonalComplexStructure:
    """
    Random g-compatible complex structure

    Conjugates J₀ by a Haar-random orthogonal matrix in an oriented orthonormal frame.

    Args:
        space: (V, g)
        seed: Seed or generator
        orientation: +1 or -1 to fix the induced orientation, None for either

    Returns:
        OrthogonalComplexStructure over space
    """
    if orientation is not None:
        if orientation not in (1, -1):
            raise PreconditionError(f"orientation must be +1 or -1, got {orientation}")
        if not space.oriented:
            raise PreconditionError("orientation requested on an unoriented space")

    n = space.n
    rotation = random_orthogonal(n, seed)
    if orientation is not None and np.sign(np.linalg.det(rotation)) != orientation:
        rotation[:, -1] *= -1.0

    local = rotation @ standard_complex_structure(n) @ rotation.T
    frame = space.orthonormal_frame()
    return OrthogonalComplexStructure(space, frame @ local @ np.linalg.inv(frame))


def random_spd(n: int, seed: SeedLike, condition: float = 10.0) -> np.ndarray:
    """Symmetric positive definite matrix with eigenvalues spread over [1, condition]"""
    rng = as_generator(seed)
    basis = random_orthogonal(n, rng)
    eigvals = np.exp(rng.uniform(0.0, np.log(condition), size=n))
    eigvals[0], eigvals[-1] = 1.0, condition
    out = (basis * eigvals) @ basis.T
    return 0.5 * (out + out.T)


def random_space(n: int, seed: SeedLike, condition: float = 10.0) -> InnerProductSpace:
    return InnerProductSpace(random_spd(n, seed, condition))


def random_skew(space: InnerProductSpace, seed: SeedLike) -> Endomorphism:
    """Random g-skew endomorphism G⁻¹K with K antisymmetric"""
    rng = as_generator(seed)
    raw = rng.standard_normal((space.n, space.n))
    return Endomorphism(space, space.gram_inv @ (raw - raw.T))


def random_endomorphism(space: InnerProductSpace, seed: SeedLike) -> Endomorphism:
    return Endomorphism(space, as_generator(seed).standard_normal((space.n, space.n)))


def random_almost_complex(n: int, seed: SeedLike, condition: float = 4.0) -> np.ndarray:
    """J with J² = -Id that is in general orthogonal for no standard metric"""
    rng = as_generator(seed)
    basis = random_spd(n, rng, condition) @ random_orthogonal(n, rng)
    return basis @ standard_complex_structure(n) @ np.linalg.inv(basis)


def random_unit_vector(space: InnerProductSpace, seed: SeedLike) -> np.ndarray:
    v = as_generator(seed).standard_normal(space.n)
    return v / space.norm(v)

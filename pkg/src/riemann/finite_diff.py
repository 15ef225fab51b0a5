"""
Finite Differences - central 4th-order stencils for chart fields
"""

from typing import Callable

import numpy as np

STENCIL = ((-2, 1.0 / 12.0), (-1, -8.0 / 12.0), (1, 8.0 / 12.0), (2, -1.0 / 12.0))
STENCIL_REACH = 2


def partial_derivatives(fn: Callable[[np.ndarray], np.ndarray], p: np.ndarray, h: float) -> np.ndarray:
    """
    ∂_a F at p for every coordinate a, stacked along a new leading axis

    Args:
        fn: Array-valued field
        p: Chart point
        h: Step size

    Returns:
        Array of shape (n,) + fn(p).shape
    """
    p = np.asarray(p, dtype=float)
    out = []
    for a in range(p.shape[0]):
        acc = None
        for offset, weight in STENCIL:
            shifted = p.copy()
            shifted[a] += offset * h
            term = weight * np.asarray(fn(shifted), dtype=float)
            acc = term if acc is None else acc + term
        out.append(acc / h)
    return np.stack(out)


def directional_derivative(fn: Callable[[np.ndarray], np.ndarray], p: np.ndarray,
                           direction: np.ndarray, h: float) -> np.ndarray:
    return np.tensordot(np.asarray(direction, dtype=float), partial_derivatives(fn, p, h), axes=1)

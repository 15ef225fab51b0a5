"""
Conformal Factors - the whitelisted family of functions f with analytic ∂f and ∂²f
Constants, linear forms and quadratic forms, plus the stereographic factor of the round sphere
"""

import re
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Any, Dict, Union

import numpy as np

from ..exceptions import ConfigError


class ConformalFactor(ABC):
    """Smooth function f on a chart with analytic first and second derivatives"""

    @abstractmethod
    def value(self, p: np.ndarray) -> float:
        pass

    @abstractmethod
    def grad(self, p: np.ndarray) -> np.ndarray:
        """Coordinate differential ∂f"""

    @abstractmethod
    def hess(self, p: np.ndarray) -> np.ndarray:
        """Coordinate second derivatives ∂²f"""

    @abstractmethod
    def describe(self) -> Dict[str, Any]:
        """Canonical JSON-ready description"""

    @property
    def is_constant(self) -> bool:
        return False


@dataclass(frozen=True)
class ConstantFactor(ConformalFactor):
    constant: float
    n: int

    def value(self, p):
        return float(self.constant)

    def grad(self, p):
        return np.zeros(self.n)

    def hess(self, p):
        return np.zeros((self.n, self.n))

    def describe(self):
        return {"kind": "const", "value": float(self.constant)}

    @property
    def is_constant(self) -> bool:
        return True


@dataclass(frozen=True, eq=False)
class LinearFactor(ConformalFactor):
    """f(x) = ⟨coeffs, x⟩ + offset"""
    coeffs: np.ndarray
    offset: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, 'coeffs', np.asarray(self.coeffs, dtype=float))

    def value(self, p):
        return float(np.dot(self.coeffs, p) + self.offset)

    def grad(self, p):
        return np.array(self.coeffs, dtype=float)

    def hess(self, p):
        n = len(self.coeffs)
        return np.zeros((n, n))

    def describe(self):
        return {"kind": "linear", "coeffs": [float(c) for c in self.coeffs], "offset": float(self.offset)}

    @property
    def is_constant(self) -> bool:
        return not np.any(self.coeffs)


@dataclass(frozen=True, eq=False)
class QuadraticFactor(ConformalFactor):
    """f(x) = xᵀ·M·x + ⟨linear, x⟩ + offset"""
    matrix: np.ndarray
    linear: np.ndarray
    offset: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, 'matrix', np.asarray(self.matrix, dtype=float))
        object.__setattr__(self, 'linear', np.asarray(self.linear, dtype=float))

    def value(self, p):
        p = np.asarray(p, dtype=float)
        return float(p @ self.matrix @ p + self.linear @ p + self.offset)

    def grad(self, p):
        return (self.matrix + self.matrix.T) @ np.asarray(p, dtype=float) + self.linear

    def hess(self, p):
        return self.matrix + self.matrix.T

    def describe(self):
        return {
            "kind": "quadratic",
            "matrix": [[float(x) for x in row] for row in self.matrix],
            "linear": [float(x) for x in self.linear],
            "offset": float(self.offset),
        }

    @property
    def is_constant(self) -> bool:
        return not (np.any(self.matrix + self.matrix.T) or np.any(self.linear))


@dataclass(frozen=True)
class StereographicFactor(ConformalFactor):
    """f = ln(2r² / (r² + |x|²)); e^{2f}δ is the round sphere of radius r"""
    radius: float
    n: int

    def value(self, p):
        p = np.asarray(p, dtype=float)
        r2 = self.radius ** 2
        return float(np.log(2.0 * r2 / (r2 + p @ p)))

    def grad(self, p):
        p = np.asarray(p, dtype=float)
        return -2.0 * p / (self.radius ** 2 + p @ p)

    def hess(self, p):
        p = np.asarray(p, dtype=float)
        s = self.radius ** 2 + p @ p
        return -2.0 * np.eye(self.n) / s + 4.0 * np.outer(p, p) / s ** 2

    def describe(self):
        return {"kind": "stereographic", "radius": float(self.radius)}


_VARIABLE = re.compile(r"^x(\d+)$")
_SQUARE = re.compile(r"^x(\d+)\^2(?:/([0-9.eE+-]+))?$")


def _coordinate(index: str, n: int, field: str) -> int:
    k = int(index) - 1
    if not 0 <= k < n:
        raise ConfigError(f"coordinate x{index} out of range for n = {n}", field)
    return k


def parse_factor(spec: Union[str, float, int, Dict[str, Any]], n: int, field: str = "f") -> ConformalFactor:
    """
    Build a conformal factor from its config description

    Accepted forms:
        number or "const:c"               constant
        "xk"                              the k-th coordinate (1-based)
        "xk^2/d"                          xk² / d
        {"kind": "const", "value": c}
        {"kind": "linear", "coeffs": [...], "offset": c}
        {"kind": "quadratic", "matrix": [[...]], "linear": [...], "offset": c}
    """
    if isinstance(spec, bool):
        raise ConfigError("expected a number, string or object", field)
    if isinstance(spec, (int, float)):
        return ConstantFactor(float(spec), n)

    if isinstance(spec, str):
        text = spec.replace(" ", "")
        if text.startswith("const:"):
            try:
                return ConstantFactor(float(text[len("const:"):]), n)
            except ValueError:
                raise ConfigError(f"bad constant in {spec!r}", field)
        match = _VARIABLE.match(text)
        if match:
            coeffs = np.zeros(n)
            coeffs[_coordinate(match.group(1), n, field)] = 1.0
            return LinearFactor(coeffs)
        match = _SQUARE.match(text)
        if match:
            k = _coordinate(match.group(1), n, field)
            divisor = float(match.group(2)) if match.group(2) else 1.0
            matrix = np.zeros((n, n))
            matrix[k, k] = 1.0 / divisor
            return QuadraticFactor(matrix, np.zeros(n))
        raise ConfigError(f"unsupported f-expression {spec!r}", field)

    if not isinstance(spec, dict):
        raise ConfigError("expected a number, string or object", field)

    kind = spec.get("kind")
    offset = float(spec.get("offset", 0.0))
    if kind == "const":
        return ConstantFactor(float(spec.get("value", 0.0)), n)
    if kind == "linear":
        coeffs = np.asarray(spec.get("coeffs", []), dtype=float)
        if coeffs.shape != (n,):
            raise ConfigError(f"linear coeffs must have length {n}", f"{field}.coeffs")
        return LinearFactor(coeffs, offset)
    if kind == "quadratic":
        matrix = np.asarray(spec.get("matrix", np.zeros((n, n))), dtype=float)
        linear = np.asarray(spec.get("linear", np.zeros(n)), dtype=float)
        if matrix.shape != (n, n):
            raise ConfigError(f"quadratic matrix must be {n}x{n}", f"{field}.matrix")
        if linear.shape != (n,):
            raise ConfigError(f"quadratic linear part must have length {n}", f"{field}.linear")
        return QuadraticFactor(matrix, linear, offset)
    raise ConfigError(f"unknown factor kind {kind!r}", f"{field}.kind")

"""
Twistor Types - points and tangent vectors of the twistor space over a chart
A point is (p, I) with I a g(p)-compatible complex structure; tangents split as X^h + V
"""

from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from ..config import TWISTOR_CONFIG
from ..exceptions import DimensionMismatchError, PreconditionError
from ..fiber import Endomorphism, InnerProductSpace, OrthogonalComplexStructure, VerticalVector, random_compatible
from ..fiber.sampling import SeedLike, as_generator
from ..riemann import MetricField


class StructureKind(Enum):
    """Almost complex structures on the twistor space"""
    AHS = "AHS"     # J₁
    ES = "ES"       # J₂

    @property
    def vertical_sign(self) -> int:
        """+1 for J₁ (𝒥 on fibers), -1 for J₂ (-𝒥 on fibers)"""
        return 1 if self is StructureKind.AHS else -1

    @property
    def index(self) -> int:
        return 1 if self is StructureKind.AHS else 2


@dataclass(frozen=True)
class StructurePair:
    """Source structure J_k on 𝒵 and target structure J̃_l on 𝒵̃"""
    source: StructureKind
    target: StructureKind

    @property
    def label(self) -> str:
        return f"{self.source.value}->{self.target.value}"

    @property
    def is_mixed(self) -> bool:
        return self.source is not self.target


@dataclass(frozen=True)
class TwistorMetricParams:
    """Scales s and t of the vertical parts of g_s and g̃_t"""
    s: float = TWISTOR_CONFIG["default_s"]
    t: float = TWISTOR_CONFIG["default_t"]

    def __post_init__(self):
        if not (self.s > 0 and self.t > 0):
            raise PreconditionError(f"s and t must be positive, got s = {self.s}, t = {self.t}")


@dataclass(frozen=True, eq=False)
class TwistorPoint:
    """Point (p, I) of 𝒵; I.space carries g(p)"""
    p: np.ndarray
    I: OrthogonalComplexStructure

    def __post_init__(self):
        p = np.asarray(self.p, dtype=float)
        if p.shape != (self.I.space.n,):
            raise DimensionMismatchError(f"point has shape {p.shape}, structure has n = {self.I.space.n}")
        object.__setattr__(self, 'p', p)

    @property
    def space(self) -> InnerProductSpace:
        return self.I.space

    @property
    def n(self) -> int:
        return self.I.space.n

    def same_as(self, other: 'TwistorPoint') -> bool:
        return (other is self) or (
            np.array_equal(self.p, other.p)
            and self.space.matches(other.space)
            and bool(np.allclose(self.I.mat, other.I.mat, rtol=0.0, atol=TWISTOR_CONFIG["fiber_tolerance"]))
        )


def fiber_point_check(point: TwistorPoint, M: Optional[MetricField] = None) -> TwistorPoint:
    """
    Validate a twistor point

    Re-checks I² = -Id and compatibility, and when M is given that point.space is g(p).
    """
    OrthogonalComplexStructure(point.space, point.I.mat, validate=True)
    if M is not None and not point.space.matches(M.space(point.p), tol=TWISTOR_CONFIG["fiber_tolerance"]):
        raise PreconditionError("structure is not attached to the metric at its base point")
    return point


def random_twistor_point(M: MetricField, seed: SeedLike, orientation: Optional[int] = None) -> TwistorPoint:
    """Uniform base point in the shrunk box and a random compatible structure over it"""
    rng = as_generator(seed)
    p = M.sample_point(rng)
    return TwistorPoint(p, random_compatible(M.space(p), rng, orientation=orientation))


@dataclass(frozen=True, eq=False)
class TwistorTangent:
    """X^h + V at a twistor point"""
    point: TwistorPoint
    hor: np.ndarray
    ver: VerticalVector

    def __post_init__(self):
        hor = np.asarray(self.hor, dtype=float)
        if hor.shape != (self.point.n,):
            raise DimensionMismatchError(f"horizontal part has shape {hor.shape}, expected ({self.point.n},)")
        self.point.space.require_same(self.ver.base.space)
        object.__setattr__(self, 'hor', hor)

    @classmethod
    def horizontal(cls, point: TwistorPoint, X: np.ndarray) -> 'TwistorTangent':
        return cls(point, X, _zero_vertical(point))

    @classmethod
    def vertical(cls, point: TwistorPoint, V: VerticalVector) -> 'TwistorTangent':
        return cls(point, np.zeros(point.n), V)

    @classmethod
    def zero(cls, point: TwistorPoint) -> 'TwistorTangent':
        return cls.horizontal(point, np.zeros(point.n))

    @property
    def is_horizontal(self) -> bool:
        return not np.any(self.ver.mat)

    @property
    def is_vertical(self) -> bool:
        return not np.any(self.hor)

    def __add__(self, other: 'TwistorTangent') -> 'TwistorTangent':
        if not self.point.same_as(other.point):
            raise PreconditionError("tangents live at different twistor points")
        ver = VerticalVector(self.point.I, self.ver.value + other.ver.value, validate=False)
        return TwistorTangent(self.point, self.hor + other.hor, ver)

    def scaled(self, factor: float) -> 'TwistorTangent':
        ver = VerticalVector(self.point.I, self.ver.value.scaled(factor), validate=False)
        return TwistorTangent(self.point, factor * self.hor, ver)


def _zero_vertical(point: TwistorPoint) -> VerticalVector:
    return VerticalVector(point.I, Endomorphism(point.space, np.zeros((point.n, point.n))), validate=False)

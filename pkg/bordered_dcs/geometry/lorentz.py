"""Lorentzian 3-space primitives for the hyperboloid and Klein models.

Signature is (+, +, -): ``x*y = x1*y1 + x2*y2 - x3*y3``. The hyperbolic plane
is the upper sheet ``x*x = -1, x3 > 0``; space-like unit vectors are poles of
geodesics (their Lorentz complements).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Optional, Tuple

import numpy as np

from bordered_dcs.errors import DegeneratePair, LightLikeInput, ProjectionAtInfinity, ZeroVector


J = np.diag([1.0, 1.0, -1.0])

EPS_LIGHT = 1e-10
# Components below this are treated as zero.
ABS_TOL = 1e-14
KLEIN_TOL = 1e-12


@dataclass(frozen=True)
class LorentzVector:
    x1: float
    x2: float
    x3: float

    def __post_init__(self) -> None:
        if not all(math.isfinite(c) for c in (self.x1, self.x2, self.x3)):
            raise ValueError(f"non-finite LorentzVector components: {self.as_tuple()}")

    @classmethod
    def from_array(cls, values: Iterable[float]) -> "LorentzVector":
        a, b, c = (float(v) for v in values)
        return cls(a, b, c)

    def as_tuple(self) -> Tuple[float, float, float]:
        return (self.x1, self.x2, self.x3)

    def as_array(self) -> np.ndarray:
        return np.array(self.as_tuple(), dtype=float)

    def euclid_norm(self) -> float:
        return math.sqrt(self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3)

    def __add__(self, other: "LorentzVector") -> "LorentzVector":
        return LorentzVector(self.x1 + other.x1, self.x2 + other.x2, self.x3 + other.x3)

    def __sub__(self, other: "LorentzVector") -> "LorentzVector":
        return LorentzVector(self.x1 - other.x1, self.x2 - other.x2, self.x3 - other.x3)

    def __neg__(self) -> "LorentzVector":
        return LorentzVector(-self.x1, -self.x2, -self.x3)

    def scale(self, factor: float) -> "LorentzVector":
        return LorentzVector(factor * self.x1, factor * self.x2, factor * self.x3)


class CausalTag(str, enum.Enum):
    SPACE_LIKE = "SpaceLike"
    LIGHT_LIKE = "LightLike"
    TIME_LIKE = "TimeLike"


@dataclass(frozen=True)
class CausalClass:
    tag: CausalTag
    # Only meaningful for time-like vectors: True when x3 > 0.
    upper_sheet: Optional[bool] = None

    @property
    def is_time_like(self) -> bool:
        return self.tag is CausalTag.TIME_LIKE

    @property
    def is_space_like(self) -> bool:
        return self.tag is CausalTag.SPACE_LIKE

    @property
    def is_light_like(self) -> bool:
        return self.tag is CausalTag.LIGHT_LIKE


class PairingKind(str, enum.Enum):
    POINT_POINT_DISTANCE = "PointPointDistance"
    POINT_LINE_DISTANCE = "PointLineDistance"
    LINE_LINE_DISTANCE = "LineLineDistance"
    LINE_LINE_ANGLE = "LineLineAngle"


@dataclass(frozen=True)
class PairingInterpretation:
    kind: PairingKind
    value: float
    # Point/line: point on the far side of the line. Line/line: opposite orientation.
    sign_flag: bool = False


def _vec(x) -> np.ndarray:
    if isinstance(x, LorentzVector):
        return x.as_array()
    return np.asarray(x, dtype=float)


def minkowski_inner(x: LorentzVector, y: LorentzVector) -> float:
    return x.x1 * y.x1 + x.x2 * y.x2 - x.x3 * y.x3


def lorentz_cross(x: LorentzVector, y: LorentzVector) -> LorentzVector:
    """``J (x × y)``; satisfies ``(x ⊗ y) * z = det(x, y, z)``."""
    c = np.cross(_vec(x), _vec(y))
    return LorentzVector(float(c[0]), float(c[1]), float(-c[2]))


def det3(x: LorentzVector, y: LorentzVector, z: LorentzVector) -> float:
    return float(np.linalg.det(np.array([_vec(x), _vec(y), _vec(z)])))


def causal_class(x: LorentzVector, eps_light: float = EPS_LIGHT) -> CausalClass:
    if not eps_light > 0:
        raise ValueError("eps_light must be positive")
    if max(abs(x.x1), abs(x.x2), abs(x.x3)) < ABS_TOL:
        raise ZeroVector(f"zero vector {x.as_tuple()}")
    q = minkowski_inner(x, x)
    e2 = x.x1 * x.x1 + x.x2 * x.x2 + x.x3 * x.x3
    if q < -eps_light * e2:
        return CausalClass(CausalTag.TIME_LIKE, upper_sheet=x.x3 > 0)
    if q > eps_light * e2:
        return CausalClass(CausalTag.SPACE_LIKE)
    return CausalClass(CausalTag.LIGHT_LIKE)


def lorentz_normalize(x: LorentzVector, eps_light: float = EPS_LIGHT) -> LorentzVector:
    """Scale to ``x*x = +1`` (space-like) or ``-1`` on the upper sheet (time-like)."""
    cls = causal_class(x, eps_light)
    if cls.is_light_like:
        raise LightLikeInput(f"cannot normalize light-like vector {x.as_tuple()}")
    q = minkowski_inner(x, x)
    if cls.is_space_like:
        return x.scale(1.0 / math.sqrt(q))
    factor = 1.0 / math.sqrt(-q)
    if x.x3 < 0:
        factor = -factor
    return x.scale(factor)


def upper_sheet_unit(x: LorentzVector) -> LorentzVector:
    """Time-like ``x`` rescaled onto the hyperboloid; no classification."""
    q = minkowski_inner(x, x)
    factor = 1.0 / math.sqrt(-q)
    return x.scale(factor if x.x3 > 0 else -factor)


def gram_determinant(x: LorentzVector, y: LorentzVector) -> float:
    xy = minkowski_inner(x, y)
    return minkowski_inner(x, x) * minkowski_inner(y, y) - xy * xy


def pairing_interpret(
    x: LorentzVector,
    y: LorentzVector,
    eps_light: float = EPS_LIGHT,
) -> PairingInterpretation:
    """Read the Lorentz pairing of two non-null vectors as a distance or angle.

    Two time-like vectors give a point-point distance; a time-like and a
    space-like vector give the distance from the point to the polar line (the
    flag records opposite sides); two space-like vectors give the distance
    between their polar lines when their span meets the hyperbolic plane, and
    the angle between them otherwise.
    """
    xa, ya = _vec(x), _vec(y)
    cross = np.linalg.norm(np.cross(xa, ya))
    if cross <= ABS_TOL * max(1.0, float(np.linalg.norm(xa) * np.linalg.norm(ya))):
        raise DegeneratePair(f"parallel vectors {x.as_tuple()} and {y.as_tuple()}")

    cx = causal_class(x, eps_light)
    cy = causal_class(y, eps_light)
    if cx.is_light_like or cy.is_light_like:
        raise LightLikeInput("pairing_interpret needs time-like or space-like vectors")

    u = lorentz_normalize(x, eps_light)
    w = lorentz_normalize(y, eps_light)
    p = minkowski_inner(u, w)

    if cx.is_time_like and cy.is_time_like:
        return PairingInterpretation(PairingKind.POINT_POINT_DISTANCE, math.acosh(max(1.0, -p)))
    if cx.is_time_like != cy.is_time_like:
        return PairingInterpretation(PairingKind.POINT_LINE_DISTANCE, math.asinh(abs(p)), sign_flag=p < 0)

    # Both space-like: the sign of the Gram determinant decides whether
    # Span(x, y) has signature (1, 1), i.e. meets the hyperbolic plane.
    if 1.0 - p * p < -eps_light:
        return PairingInterpretation(PairingKind.LINE_LINE_DISTANCE, math.acosh(abs(p)), sign_flag=p < 0)
    return PairingInterpretation(PairingKind.LINE_LINE_ANGLE, math.acos(min(1.0, max(-1.0, p))))


def klein_project(x: LorentzVector) -> Tuple[float, float]:
    """Central projection to the plane ``x3 = 1``."""
    if abs(x.x3) <= KLEIN_TOL:
        raise ProjectionAtInfinity(f"vector {x.as_tuple()} projects to infinity")
    return (x.x1 / x.x3, x.x2 / x.x3)

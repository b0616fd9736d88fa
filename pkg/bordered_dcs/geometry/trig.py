"""Generalized hyperbolic cosine laws and their discrete conformal substitutions.

Kinds I-V are the untwisted generalized triangles, VI-X their twisted
counterparts. ``omega_i, omega_j`` are the two boundary-side quantities
(distances, horocyclic arcs or angles) and ``tau`` the quantity between
them; ``cosine_law`` returns cosh of the opposite side.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable, Dict, Tuple

from bordered_dcs.conformal.dcs import FamilySpec
from bordered_dcs.errors import DegenerateSide, DomainViolation


DEGENERATE_SIDE_EPS = 1e-12


class TriangleKind(str, enum.Enum):
    I = "I"
    II = "II"
    III = "III"
    IV = "IV"
    V = "V"
    VI = "VI"
    VII = "VII"
    VIII = "VIII"
    IX = "IX"
    X = "X"

    @property
    def twisted(self) -> bool:
        return self in _TWISTED

    @property
    def untwisted(self) -> "TriangleKind":
        return _UNTWIST.get(self, self)


_UNTWIST = {
    TriangleKind.VI: TriangleKind.I,
    TriangleKind.VII: TriangleKind.II,
    TriangleKind.VIII: TriangleKind.III,
    TriangleKind.IX: TriangleKind.IV,
    TriangleKind.X: TriangleKind.V,
}
_TWISTED = frozenset(_UNTWIST)


@dataclass(frozen=True)
class GeometryParams:
    omega_i: float
    omega_j: float
    tau: float


@dataclass(frozen=True)
class SideCosh:
    value: float
    # cosh <= 1: no hyperbolic side of positive length
    degenerate_side: bool


@dataclass(frozen=True)
class DcsParams:
    family: FamilySpec
    alpha: int
    f_i: float
    f_j: float
    eta: float


def _positive(x: float) -> bool:
    return x > 0


def _any(x: float) -> bool:
    return True


def _nonnegative(x: float) -> bool:
    return x >= 0


def _angle_open(x: float) -> bool:
    return 0 < x < math.pi


def _half_angle(x: float) -> bool:
    return 0 < x <= math.pi / 2


# (omega domain, tau domain, description) per untwisted kind
_DOMAINS: Dict[TriangleKind, Tuple[Callable[[float], bool], Callable[[float], bool], str]] = {
    TriangleKind.I: (_positive, _angle_open, "omega > 0, tau in (0, pi)"),
    TriangleKind.II: (_any, _nonnegative, "omega real, tau >= 0"),
    TriangleKind.III: (_positive, _nonnegative, "omega > 0, tau >= 0"),
    TriangleKind.IV: (_positive, _any, "omega > 0, tau real"),
    TriangleKind.V: (_half_angle, _nonnegative, "omega in (0, pi/2], tau >= 0"),
}


def check_domain(kind: TriangleKind, p: GeometryParams) -> None:
    kind = TriangleKind(kind)
    for name, value in (("omega_i", p.omega_i), ("omega_j", p.omega_j), ("tau", p.tau)):
        if not math.isfinite(value):
            raise DomainViolation(f"kind {kind.value}: {name} must be finite, got {value!r}")
    omega_ok, tau_ok, text = _DOMAINS[kind.untwisted]
    if not (omega_ok(p.omega_i) and omega_ok(p.omega_j) and tau_ok(p.tau)):
        raise DomainViolation(
            f"kind {kind.value} needs {text}; got omega=({p.omega_i!r}, {p.omega_j!r}) tau={p.tau!r}"
        )


def _law(kind: TriangleKind, wi: float, wj: float, tau: float) -> float:
    if kind is TriangleKind.I:
        return math.sinh(wi) * math.sinh(wj) - math.cos(tau) * math.cosh(wi) * math.cosh(wj)
    if kind is TriangleKind.II:
        return -math.cosh(wi - wj) + 0.5 * tau * tau * math.exp(wi + wj)
    if kind is TriangleKind.III:
        return -math.cosh(wi) * math.cosh(wj) + math.cosh(tau) * math.sinh(wi) * math.sinh(wj)
    if kind is TriangleKind.IV:
        return -1.0 + 2.0 * math.exp(tau) * wi * wj
    if kind is TriangleKind.V:
        return -math.cos(wi) * math.cos(wj) + math.cosh(tau) * math.sin(wi) * math.sin(wj)
    if kind is TriangleKind.VI:
        return -math.sinh(wi) * math.sinh(wj) + math.cos(tau) * math.cosh(wi) * math.cosh(wj)
    if kind is TriangleKind.VII:
        return math.cosh(wi - wj) - 0.5 * tau * tau * math.exp(wi + wj)
    if kind is TriangleKind.VIII:
        return math.cosh(wi) * math.cosh(wj) + math.cosh(tau) * math.sinh(wi) * math.sinh(wj)
    if kind is TriangleKind.IX:
        return 1.0 + 2.0 * math.exp(tau) * wi * wj
    return math.cos(wi) * math.cos(wj) + math.cosh(tau) * math.sin(wi) * math.sin(wj)


def cosine_law(kind: TriangleKind, p: GeometryParams) -> SideCosh:
    """cosh of the side opposite ``tau``; results ``<= 1`` come back flagged, not rejected."""
    kind = TriangleKind(kind)
    check_domain(kind, p)
    value = _law(kind, p.omega_i, p.omega_j, p.tau)
    return SideCosh(value=value, degenerate_side=not value > 1.0)


def dcs_params_from_geometry(kind: TriangleKind, p: GeometryParams) -> DcsParams:
    """Substitute the kind's geometry into the matching conformal family."""
    kind = TriangleKind(kind)
    check_domain(kind, p)
    base = kind.untwisted
    twisted = kind.twisted
    wi, wj, tau = p.omega_i, p.omega_j, p.tau

    if base is TriangleKind.I:
        family = FamilySpec.B1N if twisted else FamilySpec.A1N
        eta = math.cos(tau) if twisted else -math.cos(tau)
        return DcsParams(family, -1, math.log(math.cosh(wi)), math.log(math.cosh(wj)), eta)
    if base is TriangleKind.II:
        family = FamilySpec.B2 if twisted else FamilySpec.A2
        half = 0.5 * tau * tau
        return DcsParams(family, 0, wi, wj, -half if twisted else half)

    family = FamilySpec.B1P if twisted else FamilySpec.A1P
    if base is TriangleKind.III:
        return DcsParams(family, 1, math.log(math.sinh(wi)), math.log(math.sinh(wj)), math.cosh(tau))
    if base is TriangleKind.IV:
        return DcsParams(family, 0, math.log(wi), math.log(wj), 2.0 * math.exp(tau))
    return DcsParams(family, -1, math.log(math.sin(wi)), math.log(math.sin(wj)), math.cosh(tau))


def hexagon_side_arc(cosh_l_ij: float, cosh_l_ik: float, cosh_l_jk: float) -> float:
    """cosh of the hexagon's arc on boundary i, between the edges ij and ik."""
    for name, value in (("cosh_l_ij", cosh_l_ij), ("cosh_l_ik", cosh_l_ik), ("cosh_l_jk", cosh_l_jk)):
        if not value > 1.0 + DEGENERATE_SIDE_EPS:
            raise DegenerateSide(f"{name} = {value!r} must exceed 1")
    sinh_ij = math.sqrt((cosh_l_ij - 1.0) * (cosh_l_ij + 1.0))
    sinh_ik = math.sqrt((cosh_l_ik - 1.0) * (cosh_l_ik + 1.0))
    return (cosh_l_jk + cosh_l_ij * cosh_l_ik) / (sinh_ij * sinh_ik)

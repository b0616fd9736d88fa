"""Right-angled hexagons (hyper-ideal triangles) in the hyperboloid model.

A face with corners (i, j, k) is realized by three unit space-like poles
``v_i, v_j, v_k`` with ``v_r * v_s = -cosh l_rs``. Gauge: ``v_i = (1, 0, 0)``,
``v_j`` in the x1-x3 plane, ``v_k`` on the side making ``det(v_i, v_j, v_k) > 0``.
Interior points of the hexagon pair negatively with all three poles.

Edge ``(r, s)`` of a face is addressed by corner indices 0, 1, 2; the face's
ratios are ``rho_ij, rho_jk, rho_ki`` along sides 0, 1, 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from bordered_dcs.errors import (
    DegenerateEdgePlane,
    IncompatibleSplits,
    NonRealizable,
    NumericallyParallelRows,
    ZeroRatio,
)
from bordered_dcs.geometry.lorentz import (
    ABS_TOL,
    EPS_LIGHT,
    CausalClass,
    LorentzVector,
    causal_class,
    det3,
    lorentz_cross,
    minkowski_inner,
    upper_sheet_unit,
)


DEFAULT_TOL_COMPAT = 1e-8
# Relative size below which the cross of two rows counts as zero.
PARALLEL_ROWS_TOL = 1e-12
# Oriented sides of a face: side 0 = (i, j), side 1 = (j, k), side 2 = (k, i).
SIDES: Tuple[Tuple[int, int], ...] = ((0, 1), (1, 2), (2, 0))


@dataclass(frozen=True)
class HexRealization:
    v_i: LorentzVector
    v_j: LorentzVector
    v_k: LorentzVector
    gram: np.ndarray = field(compare=False, repr=False)
    # cosh of (l_ij, l_jk, l_ki)
    cosh_lengths: Tuple[float, float, float] = (0.0, 0.0, 0.0)

    @property
    def poles(self) -> Tuple[LorentzVector, LorentzVector, LorentzVector]:
        return (self.v_i, self.v_j, self.v_k)

    def pole(self, r: int) -> LorentzVector:
        return self.poles[r]

    def cosh_between(self, r: int, s: int) -> float:
        return float(-self.gram[r, s])

    @property
    def lengths(self) -> Tuple[float, float, float]:
        return tuple(math.acosh(c) for c in self.cosh_lengths)  # type: ignore[return-value]


@dataclass(frozen=True)
class CenterReport:
    edge_centers: Tuple[LorentzVector, LorentzVector, LorentzVector]
    edge_classes: Tuple[CausalClass, CausalClass, CausalClass]
    face_center: LorentzVector
    face_class: CausalClass
    det_M: float
    compat_residual: float
    # |(c (x) c_rs) * (v_r (x) v_s)| per side, relative to the Euclidean norms
    perpendicular_residuals: Tuple[float, float, float] = (0.0, 0.0, 0.0)
    # max over rows of |w * c| relative to |w| |c|
    orthogonality_residual: float = 0.0
    det_identity_residual: float = 0.0
    # -(v_r * c) - (v_r * c_rs)(c_rs * c) per side; None where c_rs is not time-like
    right_angle_residuals: Tuple[Optional[float], Optional[float], Optional[float]] = (None, None, None)


def gram_matrix(cosh_ij: float, cosh_jk: float, cosh_ki: float) -> np.ndarray:
    return np.array(
        [
            [1.0, -cosh_ij, -cosh_ki],
            [-cosh_ij, 1.0, -cosh_jk],
            [-cosh_ki, -cosh_jk, 1.0],
        ],
        dtype=float,
    )


def gram_signature(gram: np.ndarray) -> Tuple[int, int]:
    """(positive, negative) eigenvalue counts, ignoring near-zero ones."""
    eig = np.linalg.eigvalsh(gram)
    scale = max(1.0, float(np.max(np.abs(eig))))
    pos = int(np.sum(eig > 1e-12 * scale))
    neg = int(np.sum(eig < -1e-12 * scale))
    return pos, neg


def realize_from_cosh(cosh_ij: float, cosh_jk: float, cosh_ki: float) -> HexRealization:
    """Place the three poles in the fixed gauge from the cosh of the edge lengths.

    ``v_j = (-cosh l_ij, 0, +sinh l_ij)``, the mirror image under ``x3 -> -x3`` of
    the ``-sinh`` placement; ``v_k`` is then taken with ``det(v_i, v_j, v_k) > 0``.
    Inner products, and with them every length and ratio, do not see the mirror.
    """
    values = (cosh_ij, cosh_jk, cosh_ki)
    if not all(math.isfinite(c) for c in values):
        raise NonRealizable(f"non-finite cosh lengths {values}")
    if not all(c > 1.0 for c in values):
        raise NonRealizable(f"edge lengths must be positive (cosh l > 1), got {values}")

    gram = gram_matrix(cosh_ij, cosh_jk, cosh_ki)
    if gram_signature(gram) != (2, 1):
        raise NonRealizable(f"Gram matrix for cosh lengths {values} does not have signature (2, 1)")

    sinh_ij = math.sqrt((cosh_ij - 1.0) * (cosh_ij + 1.0))
    v_i = LorentzVector(1.0, 0.0, 0.0)
    v_j = LorentzVector(-cosh_ij, 0.0, sinh_ij)
    a = -cosh_ki
    c = (cosh_jk + cosh_ij * cosh_ki) / sinh_ij
    b_sq = 1.0 - a * a + c * c
    if not b_sq > 0:
        raise NonRealizable(f"third pole has no real solution for cosh lengths {values}")
    # det(v_i, v_j, v_k) = -sinh l_ij * b
    v_k = LorentzVector(a, -math.sqrt(b_sq), c)
    return HexRealization(v_i, v_j, v_k, gram, values)


def realize(l_ij: float, l_jk: float, l_ki: float) -> HexRealization:
    lengths = (l_ij, l_jk, l_ki)
    if not all(math.isfinite(x) and x > 0 for x in lengths):
        raise NonRealizable(f"edge lengths must be positive and finite, got {lengths}")
    return realize_from_cosh(math.cosh(l_ij), math.cosh(l_jk), math.cosh(l_ki))


def _classify(x: LorentzVector) -> CausalClass:
    return causal_class(x, EPS_LIGHT)


def edge_center(hex_: HexRealization, edge: Tuple[int, int], rho: float) -> Tuple[LorentzVector, CausalClass]:
    """The point of Span(v_r, v_s) whose pairings with the poles have ratio ``rho``.

    Time-like centers are put on the upper sheet (so ``-c*v_r = sinh d_rs``
    for a real split); space-like and light-like ones keep ``c*v_r < 0``.
    """
    if rho == 0.0:
        raise ZeroRatio("edge center needs a nonzero ratio")
    r, s = edge
    v_r, v_s = hex_.pole(r), hex_.pole(s)
    if np.linalg.norm(np.cross(v_r.as_array(), v_s.as_array())) <= ABS_TOL:
        raise DegenerateEdgePlane(f"poles {r} and {s} are parallel")

    g = minkowski_inner(v_r, v_s)
    det = 1.0 - g * g
    # c = a v_r + b v_s with c*v_r = -1 and c*v_s = -rho
    a = (-1.0 + g * rho) / det
    b = (-rho + g) / det
    c = v_r.scale(a) + v_s.scale(b)
    cls = _classify(c)
    q = -a - rho * b
    if cls.is_time_like:
        c = upper_sheet_unit(c)
        cls = _classify(c)
    elif cls.is_space_like:
        c = c.scale(1.0 / math.sqrt(q))
    return c, cls


def perpendicular_matrix(hex_: HexRealization, rho_ij: float, rho_jk: float, rho_ki: float) -> np.ndarray:
    """Rows ``v_s - rho_rs v_r``; the face center lies in their common Lorentz complement."""
    v_i, v_j, v_k = (v.as_array() for v in hex_.poles)
    return np.array(
        [
            v_j - rho_ij * v_i,
            v_k - rho_jk * v_j,
            v_i - rho_ki * v_k,
        ]
    )


def perpendicular_matrix_from_centers(
    hex_: HexRealization,
    centers: Sequence[LorentzVector],
) -> np.ndarray:
    """Unscaled rows ``(c_rs*v_r) v_s - (c_rs*v_s) v_r`` built from explicit edge centers."""
    rows = []
    for (r, s), c in zip(SIDES, centers):
        v_r, v_s = hex_.pole(r), hex_.pole(s)
        rows.append(minkowski_inner(c, v_r) * v_s.as_array() - minkowski_inner(c, v_s) * v_r.as_array())
    return np.array(rows)


def compatibility_residual(rho_ij: float, rho_jk: float, rho_ki: float) -> float:
    return rho_ij * rho_jk * rho_ki - 1.0


def _pick_kernel(m: np.ndarray) -> LorentzVector:
    """Lorentz cross of the best-conditioned pair of rows."""
    rows = [LorentzVector.from_array(row) for row in m]
    best: Optional[LorentzVector] = None
    best_rel = -1.0
    for a, b in ((0, 1), (1, 2), (2, 0)):
        cand = lorentz_cross(rows[a], rows[b])
        denom = rows[a].euclid_norm() * rows[b].euclid_norm()
        rel = cand.euclid_norm() / denom if denom > 0 else 0.0
        if rel > best_rel:
            best, best_rel = cand, rel
    if best is None or best_rel <= PARALLEL_ROWS_TOL:
        raise NumericallyParallelRows("rows of the perpendicular matrix are numerically parallel")
    return best


def _normalize_face_center(c: LorentzVector, hex_: HexRealization) -> Tuple[LorentzVector, CausalClass]:
    cls = _classify(c)
    if cls.is_time_like:
        c = upper_sheet_unit(c)
        return c, _classify(c)
    pole_sum = hex_.v_i + hex_.v_j + hex_.v_k
    if cls.is_space_like:
        c = c.scale(1.0 / math.sqrt(minkowski_inner(c, c)))
    else:
        c = c.scale(1.0 / c.euclid_norm())
    if minkowski_inner(c, pole_sum) > 0:
        c = -c
    return c, cls


def perpendicular_residual(
    hex_: HexRealization,
    face_c: LorentzVector,
    edge_c: LorentzVector,
    edge: Tuple[int, int],
) -> float:
    r, s = edge
    v_r, v_s = hex_.pole(r), hex_.pole(s)
    value = minkowski_inner(lorentz_cross(face_c, edge_c), lorentz_cross(v_r, v_s))
    scale = face_c.euclid_norm() * edge_c.euclid_norm() * v_r.euclid_norm() * v_s.euclid_norm()
    return abs(value) / scale


def det_identity_residual(hex_: HexRealization, rho_ij: float, rho_jk: float, rho_ki: float) -> float:
    """|det M - (1 - rho_ij rho_jk rho_ki) det(v_i, v_j, v_k)|, relative to the row-norm product."""
    m = perpendicular_matrix(hex_, rho_ij, rho_jk, rho_ki)
    det_m = float(np.linalg.det(m))
    det_v = det3(hex_.v_i, hex_.v_j, hex_.v_k)
    scale = max(1.0, float(np.prod(np.linalg.norm(m, axis=1))), abs(det_v))
    return abs(det_m - (1.0 - rho_ij * rho_jk * rho_ki) * det_v) / scale


def face_center(
    hex_: HexRealization,
    rho_ij: float,
    rho_jk: float,
    rho_ki: float,
    tol_compat: float = DEFAULT_TOL_COMPAT,
) -> CenterReport:
    """Edge centers and the common point of the three edge perpendiculars."""
    rhos = (rho_ij, rho_jk, rho_ki)
    residual = compatibility_residual(*rhos)
    if not abs(residual) <= tol_compat:
        raise IncompatibleSplits(
            f"rho_ij*rho_jk*rho_ki - 1 = {residual:.3e} exceeds tolerance {tol_compat:.1e}"
        )

    centers: List[LorentzVector] = []
    classes: List[CausalClass] = []
    for side, rho in zip(SIDES, rhos):
        c, cls = edge_center(hex_, side, rho)
        centers.append(c)
        classes.append(cls)

    m = perpendicular_matrix(hex_, *rhos)
    det_m = float(np.linalg.det(m))
    fc, fc_class = _normalize_face_center(_pick_kernel(m), hex_)

    ortho = 0.0
    for row in m:
        w = LorentzVector.from_array(row)
        ortho = max(ortho, abs(minkowski_inner(w, fc)) / (w.euclid_norm() * fc.euclid_norm()))

    perp = tuple(perpendicular_residual(hex_, fc, c, side) for side, c in zip(SIDES, centers))

    right_angles: List[Optional[float]] = []
    for (r, _s), c, cls in zip(SIDES, centers, classes):
        if not cls.is_time_like:
            right_angles.append(None)
            continue
        v_r = hex_.pole(r)
        lhs = -minkowski_inner(v_r, fc)
        rhs = minkowski_inner(v_r, c) * minkowski_inner(c, fc)
        right_angles.append(abs(lhs - rhs) / max(1.0, abs(lhs)))

    return CenterReport(
        edge_centers=tuple(centers),  # type: ignore[arg-type]
        edge_classes=tuple(classes),  # type: ignore[arg-type]
        face_center=fc,
        face_class=fc_class,
        det_M=det_m,
        compat_residual=residual,
        perpendicular_residuals=perp,  # type: ignore[arg-type]
        orthogonality_residual=ortho,
        det_identity_residual=det_identity_residual(hex_, *rhos),
        right_angle_residuals=tuple(right_angles),  # type: ignore[arg-type]
    )


def boundary_feet(hex_: HexRealization) -> Tuple[Tuple[LorentzVector, LorentzVector], ...]:
    """For each boundary r, the feet of its two adjacent edges on the polar line of v_r.

    Entry r is ``(foot of edge (r, r+1), foot of edge (r, r-1))``.
    """
    feet = []
    for r in range(3):
        v_r = hex_.pole(r)
        pair = []
        for s in ((r + 1) % 3, (r + 2) % 3):
            v_s = hex_.pole(s)
            p = v_s + v_r.scale(-minkowski_inner(v_r, v_s))
            pair.append(upper_sheet_unit(p))
        feet.append(tuple(pair))
    return tuple(feet)  # type: ignore[return-value]


def boundary_arc_cosh(hex_: HexRealization) -> Tuple[float, float, float]:
    out = []
    for p, q in boundary_feet(hex_):
        out.append(max(1.0, -minkowski_inner(p, q)))
    return tuple(out)  # type: ignore[return-value]


def boundary_arcs(hex_: HexRealization) -> Tuple[float, float, float]:
    """Length of the hexagon's side on each boundary geodesic."""
    return tuple(math.acosh(c) for c in boundary_arc_cosh(hex_))  # type: ignore[return-value]

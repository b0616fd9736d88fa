"""Numerical certificates for the conformal families and their geometry.

Every check returns a ``CheckReport``. A check passes when its largest
residual is within tolerance. Composite checks (several identities with
different tolerances) report residuals divided by each part's tolerance and
use tolerance 1.0.

Randomized checks draw from a stream seeded by ``(seed, crc32(name))`` so
each check is reproducible on its own and independent of run order.
"""

from __future__ import annotations

import concurrent.futures
import math
import zlib
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from bordered_dcs.conformal.dcs import (
    EdgeParams,
    FamilySpec,
    h_closed_form,
    h_partial_i,
    h_value,
)
from bordered_dcs.conformal.surface import (
    IdealTriangulation,
    SurfaceConformalData,
    compute_metric,
)
from bordered_dcs.errors import DcsError, DegenerateEdge, IncompatibleSplits
from bordered_dcs.geometry.hexagon import (
    DEFAULT_TOL_COMPAT,
    compatibility_residual,
    realize_from_cosh,
)
from bordered_dcs.geometry.lorentz import (
    LorentzVector,
    det3,
    klein_project,
    lorentz_cross,
    lorentz_normalize,
    minkowski_inner,
)
from bordered_dcs.geometry.trig import hexagon_side_arc
from bordered_dcs.settings import DEFAULT_H, DEFAULT_SEED, DEFAULT_TOL, trace


FD_TOL = 1e-6
# Error contraction is measured at this step, where truncation dominates rounding.
RICHARDSON_STEP = 1e-2
RICHARDSON_BAND = 0.5
# Below this multiple of h**2 the leading error term is not resolved and no ratio is taken.
RICHARDSON_FLOOR = 1e-3
H_CLOSED_TOL = 1e-12
H_STENCIL_TOL = 1e-6
H_STENCIL_STEP = 1e-4
VARIATION_TOL = 1e-6
VARIATION_DELTA = 1e-4
IDENTITY_TOL = 1e-12
RIGHT_ANGLE_TOL = 1e-10
ARC_TOL = 1e-10


@dataclass(frozen=True)
class CheckReport:
    name: str
    residuals: Tuple[float, ...]
    tolerance: float
    seed: Optional[int] = None
    details: Dict[str, Any] = field(default_factory=dict, compare=False)
    parts: Tuple["CheckReport", ...] = ()

    @property
    def max_residual(self) -> float:
        return max(self.residuals) if self.residuals else 0.0

    @property
    def passed(self) -> bool:
        return self.max_residual <= self.tolerance

    def to_record(self) -> Dict[str, Any]:
        return {
            "check": self.name,
            "max_residual": self.max_residual,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "seed": self.seed,
            "samples": len(self.residuals),
            "residuals": list(self.residuals),
            "details": dict(self.details),
            "parts": [p.to_record() for p in self.parts],
        }


def composite(name: str, parts: Sequence[CheckReport], seed: Optional[int] = None, **details: Any) -> CheckReport:
    """Fold several reports into one; residuals are scaled by each part's tolerance."""
    residuals: List[float] = []
    for p in parts:
        scale = p.tolerance if p.tolerance > 0 else 1.0
        if p.tolerance > 0:
            residuals.extend(r / scale for r in p.residuals)
        else:
            residuals.extend(0.0 if r == 0 else math.inf for r in p.residuals)
    return CheckReport(name, tuple(residuals), 1.0, seed, dict(details), tuple(parts))


def check_rng(seed: int, name: str) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(seed), zlib.crc32(name.encode("utf-8"))]))


# sampling -----------------------------------------------------------------


def _sample_boundary(family: FamilySpec, rng: np.random.Generator) -> Tuple[int, float]:
    """(alpha, f) inside the family's domain, away from P = 0."""
    if family.uses_c:
        return 0, float(rng.uniform(-1.0, 1.0))
    if family.negative_p:
        return -1, float(rng.uniform(0.25, 1.5))
    alpha = int(rng.integers(-1, 2))
    if alpha == -1:
        return alpha, float(rng.uniform(-2.0, -0.25))
    return alpha, float(rng.uniform(-1.0, 1.0))


def _eta_for_target(family: FamilySpec, alpha_i: int, alpha_j: int, f_i: float, f_j: float, c: float, target: float) -> float:
    base = EdgeParams(family, alpha_i, alpha_j, f_i, f_j, 0.0, c).cosh_length()
    return (target - base) / math.exp(f_i + f_j)


def sample_edge_params(family: FamilySpec, rng: np.random.Generator) -> EdgeParams:
    """A valid edge of ``family`` whose ``cosh l`` lies in (1.5, 6)."""
    a_i, f_i = _sample_boundary(family, rng)
    a_j, f_j = _sample_boundary(family, rng)
    c = float(rng.uniform(-1.0, 1.0)) if family.uses_c else 0.0
    target = float(rng.uniform(1.5, 6.0))
    eta = _eta_for_target(family, a_i, a_j, f_i, f_j, c, target)
    return EdgeParams(family, a_i, a_j, f_i, f_j, eta, c)


# derivative checks ---------------------------------------------------------


def _length(params: EdgeParams) -> float:
    cl = params.cosh_length()
    if not cl > 1.0:
        raise DegenerateEdge(f"cosh l = {cl!r} <= 1 inside the difference stencil")
    return math.acosh(cl)


def _central_dl(params: EdgeParams, h: float) -> float:
    plus = _length(params.with_f(f_i=params.f_i + h))
    minus = _length(params.with_f(f_i=params.f_i - h))
    return (plus - minus) / (2.0 * h)


def richardson_ratio(params: EdgeParams, h: float = RICHARDSON_STEP) -> Optional[float]:
    """Signed error at ``h`` over the error at ``h/2``; about 4 for a second-order stencil.

    None when the error at ``h`` is below ``RICHARDSON_FLOOR * h**2``.
    """
    analytic = params.coth_d()
    full = _central_dl(params, h) - analytic
    if abs(full) < RICHARDSON_FLOOR * h * h:
        return None
    half = _central_dl(params, h / 2.0) - analytic
    if half == 0.0:
        return math.inf
    return full / half


def fd_partial_check(
    params: EdgeParams,
    h: float = DEFAULT_H,
    *,
    endpoint: str = "i",
    tol: float = FD_TOL,
    richardson_h: float = RICHARDSON_STEP,
    seed: Optional[int] = None,
) -> CheckReport:
    """Central difference of ``l_ij`` in ``f_i`` against the closed-form ``coth d_ij``.

    ``endpoint="j"`` differentiates in ``f_j`` against ``coth d_ji``. Two
    parts: the residual at ``h``, and ``|ratio - 4|`` where ratio is the
    error contraction from ``richardson_h`` to ``richardson_h / 2``. The
    contraction is measured at a step where truncation dominates rounding,
    and counts as zero when the leading error term is too small to resolve.
    """
    p = params if endpoint == "i" else params.reversed()
    analytic = p.coth_d()
    split = p.split()
    numeric = _central_dl(p, h)
    residual = abs(numeric - analytic)
    try:
        ratio = richardson_ratio(p, richardson_h)
    except DegenerateEdge:
        ratio = None
    name = f"fd_partial_check {p.family.value} {endpoint}"
    parts = (
        CheckReport(f"{name} derivative", (residual,), tol, seed),
        CheckReport(f"{name} contraction", (0.0 if ratio is None else abs(ratio - 4.0),), RICHARDSON_BAND, seed),
    )
    return composite(
        name,
        parts,
        seed,
        analytic=analytic,
        numeric=numeric,
        t_ij=split.t_ij,
        coth_vs_t=abs(analytic - split.t_ij) / max(1.0, abs(split.t_ij)),
        h=h,
        richardson_h=richardson_h,
        richardson_ratio=ratio,
        real_split=split.real_split,
    )


def fd_partial_suite(
    seed: int = DEFAULT_SEED,
    draws: int = 100,
    h: float = DEFAULT_H,
    tol: float = FD_TOL,
    families: Sequence[FamilySpec] = tuple(FamilySpec),
) -> CheckReport:
    parts = []
    for family in families:
        name = f"fd_partial_suite {family.value}"
        rng = check_rng(seed, name)
        residuals: List[float] = []
        contraction: List[float] = []
        consistency = 0.0
        for _ in range(draws):
            params = sample_edge_params(family, rng)
            for endpoint in ("i", "j"):
                rep = fd_partial_check(params, h, endpoint=endpoint, tol=tol, seed=seed)
                residuals.append(rep.parts[0].max_residual)
                contraction.append(rep.parts[1].max_residual)
                consistency = max(consistency, rep.details["coth_vs_t"])
        parts.append(
            composite(
                name,
                (
                    CheckReport(f"{name} derivative", tuple(residuals), tol, seed),
                    CheckReport(f"{name} contraction", tuple(contraction), RICHARDSON_BAND, seed),
                ),
                seed,
                coth_vs_t_max=consistency,
            )
        )
    report = composite("fd_partial_suite", parts, seed, draws=draws, h=h)
    trace("verify", f"{report.name} max={report.max_residual:.3e} {'PASS' if report.passed else 'FAIL'}")
    return report


def _h_at(params: EdgeParams, f_i: float, f_j: float) -> float:
    return h_value(params.with_f(f_i=f_i, f_j=f_j).edge_ratio())


def h_field_check(params: EdgeParams, h: float = H_STENCIL_STEP, seed: Optional[int] = None) -> CheckReport:
    """H = -2 log|rho| against its closed form, plus three difference stencils.

    Stencils: the mixed partial of H vanishes, ``dH/df_i`` matches its
    closed form, and ``(e^H d_i + d_j) H = 2 (e^H - 1)``.
    """
    p = params
    fi, fj = p.f_i, p.f_j
    hv = h_value(p.edge_ratio())
    closed = h_closed_form(p)
    closed_res = abs(hv - closed) / max(1.0, abs(closed))

    mixed = (
        _h_at(p, fi + h, fj + h) - _h_at(p, fi + h, fj - h) - _h_at(p, fi - h, fj + h) + _h_at(p, fi - h, fj - h)
    ) / (4.0 * h * h)
    d_i = (_h_at(p, fi + h, fj) - _h_at(p, fi - h, fj)) / (2.0 * h)
    d_j = (_h_at(p, fi, fj + h) - _h_at(p, fi, fj - h)) / (2.0 * h)
    slope = h_partial_i(p)
    first_res = abs(d_i - slope) / max(1.0, abs(slope))
    eh = math.exp(hv)
    rhs = 2.0 * (eh - 1.0)
    transport_res = abs(eh * d_i + d_j - rhs) / max(1.0, abs(rhs), eh)

    name = f"h_field_check {p.family.value}"
    parts = (
        CheckReport(f"{name} closed form", (closed_res,), H_CLOSED_TOL, seed),
        CheckReport(f"{name} mixed partial", (abs(mixed),), H_STENCIL_TOL, seed),
        CheckReport(f"{name} first order", (first_res,), H_STENCIL_TOL, seed),
        CheckReport(f"{name} transport", (transport_res,), H_STENCIL_TOL, seed),
    )
    return composite(name, parts, seed, H=hv, dH_df_i=slope, h=h)


def h_field_suite(seed: int = DEFAULT_SEED, draws: int = 100, h: float = H_STENCIL_STEP) -> CheckReport:
    parts = []
    for family in FamilySpec:
        rng = check_rng(seed, f"h_field_suite {family.value}")
        checks = [h_field_check(sample_edge_params(family, rng), h, seed) for _ in range(draws)]
        parts.append(composite(f"h_field_suite {family.value}", checks, seed))
    return composite("h_field_suite", parts, seed, draws=draws)


# surface-level checks ------------------------------------------------------


def _split_signature(params: EdgeParams) -> Tuple[float, float, float, float]:
    split = params.split()
    return (split.l, split.rho, split.t_ij, split.t_ji)


def locality_check(tri: IdealTriangulation, data: SurfaceConformalData, delta: float = 1e-3) -> CheckReport:
    """Perturbing ``f_k`` must leave every edge not touching k bit-identical."""
    base = [_split_signature(data.edge_params(tri, e)) for e in range(tri.n_edges)]
    residuals: List[float] = []
    for k in range(tri.n_boundary):
        f = list(data.boundary.f)
        f[k] += delta
        moved = data.with_f(f)
        for e in range(tri.n_edges):
            if k in tri.edge_endpoints(e):
                continue
            after = _split_signature(moved.edge_params(tri, e))
            residuals.append(0.0 if after == base[e] else max(abs(a - b) for a, b in zip(after, base[e])) or math.inf)
    return CheckReport("locality_check", tuple(residuals), 0.0, None, {"delta": delta, "compared": len(residuals)})


@dataclass(frozen=True)
class FaceData:
    """One face's three oriented edges, along sides ij, jk, ki."""

    sides: Tuple[EdgeParams, EdgeParams, EdgeParams]

    @classmethod
    def from_corners(
        cls,
        families: Sequence[FamilySpec],
        alpha: Sequence[float],
        f: Sequence[float],
        eta: Sequence[float],
        c: Sequence[float] = (0.0, 0.0, 0.0),
    ) -> "FaceData":
        sides = []
        for s in range(3):
            r, t = s, (s + 1) % 3
            sides.append(EdgeParams(FamilySpec(families[s]), alpha[r], alpha[t], f[r], f[t], eta[s], c[s]))
        return cls(tuple(sides))  # type: ignore[arg-type]

    @classmethod
    def from_surface(cls, tri: IdealTriangulation, data: SurfaceConformalData, face: int) -> "FaceData":
        sides = []
        for s in range(3):
            e, forward = tri.side_edge(face, s)
            params = data.edge_params(tri, e)
            sides.append(params if forward else params.reversed())
        return cls(tuple(sides))  # type: ignore[arg-type]

    def shift_k(self, delta: float) -> "FaceData":
        """Move the conformal factor of corner k (the third corner) by ``delta``."""
        ij, jk, ki = self.sides
        return FaceData((ij, jk.with_f(f_j=jk.f_j + delta), ki.with_f(f_i=ki.f_i + delta)))

    def cosh_lengths(self) -> Tuple[float, float, float]:
        return tuple(p.cosh_length() for p in self.sides)  # type: ignore[return-value]

    def rhos(self) -> Tuple[float, float, float]:
        return tuple(p.edge_ratio() for p in self.sides)  # type: ignore[return-value]


def sample_face_data(families: Sequence[FamilySpec], rng: np.random.Generator) -> FaceData:
    """A face with the given side families, valid boundary values and cosh l in (1.5, 6)."""
    fams = [FamilySpec(x) for x in families]
    # A1p/B1p, A1n/B1n and A2/B2 share their boundary domains
    corners = [_sample_boundary(fams[0], rng) for _ in range(3)]
    alpha = [a for a, _ in corners]
    f = [fr for _, fr in corners]
    c_ij, c_jk = (float(x) for x in rng.uniform(-0.5, 0.5, size=2))
    cs = (c_ij, c_jk, -(c_ij + c_jk))
    eta = []
    for s in range(3):
        r, t = s, (s + 1) % 3
        c = cs[s] if fams[s].uses_c else 0.0
        eta.append(_eta_for_target(fams[s], alpha[r], alpha[t], f[r], f[t], c, float(rng.uniform(1.5, 6.0))))
    return FaceData.from_corners(fams, alpha, f, eta, [cs[s] if fams[s].uses_c else 0.0 for s in range(3)])


def _pole_k(face: FaceData) -> LorentzVector:
    return realize_from_cosh(*face.cosh_lengths()).v_k


def conformal_variation_check(
    face: FaceData,
    delta: float = VARIATION_DELTA,
    tol: float = VARIATION_TOL,
    *,
    rho_scale: Tuple[float, float, float] = (1.0, 1.0, 1.0),
    tol_compat: float = DEFAULT_TOL_COMPAT,
    seed: Optional[int] = None,
) -> CheckReport:
    """Moving ``f_k`` must move the pole ``v_k`` within Span(v_k, c_ijk).

    ``v_i`` and ``v_j`` stay fixed in the gauge because ``l_ij`` does not
    depend on ``f_k``. The center is taken from the perpendicular rows at the
    two edges through k; ``rho_scale`` multiplies the ratios used for it
    (anything other than 1 corrupts the split). Residuals: sine of the angle
    between the difference quotient and the plane, and ``<c, w_ij> / det V``
    with ``w_ij = v_j - rho_ij v_i``. The second is ``1 - rho_ij rho_jk rho_ki``
    for the ratios used, so it moves linearly with any corruption.
    """
    true_rhos = face.rhos()
    residual = compatibility_residual(*true_rhos)
    if not abs(residual) <= tol_compat:
        raise IncompatibleSplits(f"face ratios are incompatible (residual {residual:.3e})")

    hex_ = realize_from_cosh(*face.cosh_lengths())
    rhos = tuple(r * s for r, s in zip(true_rhos, rho_scale))
    v_i, v_j, v_k = hex_.poles
    w_ij = v_j - v_i.scale(rhos[0])
    w_jk = v_k - v_j.scale(rhos[1])
    w_ki = v_i - v_k.scale(rhos[2])
    center = lorentz_cross(w_jk, w_ki)

    plus = _pole_k(face.shift_k(delta))
    minus = _pole_k(face.shift_k(-delta))
    u = (plus - minus).scale(1.0 / (2.0 * delta))

    plane = np.linalg.norm(np.cross(v_k.as_array(), center.as_array()))
    residual_sine = abs(det3(v_k, center, u)) / (plane * u.euclid_norm())
    residual_center = abs(minkowski_inner(center, w_ij)) / abs(det3(v_i, v_j, v_k))

    details: Dict[str, Any] = {
        "delta": delta,
        "rho_scale": list(rho_scale),
        "sine": residual_sine,
        "center_off_ij": residual_center,
    }
    # G_s = tanh d_ks * dl_sk/df_k, reported only
    splits = (face.sides[1].split(), face.sides[2].split())
    up, down = face.shift_k(delta), face.shift_k(-delta)
    dl_jk = (_length(up.sides[1]) - _length(down.sides[1])) / (2.0 * delta)
    dl_ki = (_length(up.sides[2]) - _length(down.sides[2])) / (2.0 * delta)
    if splits[0].real_split and splits[1].real_split:
        g_j = math.tanh(splits[0].d_ji) * dl_jk  # type: ignore[arg-type]
        g_i = math.tanh(splits[1].d_ij) * dl_ki  # type: ignore[arg-type]
        details.update({"G_i": g_i, "G_j": g_j, "G_spread": abs(g_i - g_j), "G_minus_one": max(abs(g_i - 1), abs(g_j - 1))})

    fams = "/".join(p.family.value for p in face.sides)
    trace("variation", f"{fams} sine={residual_sine:.3e} center={residual_center:.3e}")
    return CheckReport(f"conformal_variation_check {fams}", (residual_sine, residual_center), tol, seed, details)


def boundary_arc_check(tri: IdealTriangulation, data: SurfaceConformalData, tol: float = DEFAULT_TOL) -> CheckReport:
    """Compatibility per face, and the embedded arcs against the closed-form arc."""
    report = compute_metric(tri, data, tol)
    compat = [abs(f.compat_residual) for f in report.faces]
    arcs: List[float] = []
    for fr in report.faces:
        c = fr.realization.cosh_lengths  # (ij, jk, ki)
        closed = (
            hexagon_side_arc(c[0], c[2], c[1]),
            hexagon_side_arc(c[1], c[0], c[2]),
            hexagon_side_arc(c[2], c[1], c[0]),
        )
        for theta, cosh_theta in zip(fr.arcs, closed):
            arcs.append(abs(math.cosh(theta) - cosh_theta) / max(1.0, cosh_theta))
    parts = (
        CheckReport("face compatibility", tuple(compat), tol),
        CheckReport("boundary arcs", tuple(arcs), ARC_TOL),
    )
    return composite("metric_check", parts, None, boundary_lengths=list(report.boundary_lengths))


# Lorentz identities ---------------------------------------------------------


def _random_vector(rng: np.random.Generator) -> LorentzVector:
    while True:
        x = rng.uniform(-1.0, 1.0, size=3)
        if np.linalg.norm(x) > 1e-3:
            return LorentzVector.from_array(x)


def _random_unit_time_like(rng: np.random.Generator) -> LorentzVector:
    r = float(rng.uniform(0.0, 2.0))
    phi = float(rng.uniform(0.0, 2.0 * math.pi))
    return LorentzVector(math.sinh(r) * math.cos(phi), math.sinh(r) * math.sin(phi), math.cosh(r))


def _vec_gap(a: LorentzVector, b: LorentzVector) -> float:
    return float(np.max(np.abs(a.as_array() - b.as_array())))


def right_angle_residual(x: LorentzVector, y: LorentzVector, z: LorentzVector) -> float:
    """``|<x ⊗ y, x ⊗ z>|`` over ``|x|^2 |y| |z|``.

    Zero exactly when the geodesics cut out by span(x, y) and span(x, z)
    meet at a right angle at the point x.
    """
    scale = x.euclid_norm() ** 2 * y.euclid_norm() * z.euclid_norm()
    return abs(minkowski_inner(lorentz_cross(x, y), lorentz_cross(x, z))) / scale


def identity_suite(seed: int = DEFAULT_SEED, samples: int = 1000) -> CheckReport:
    """Cross-product identities, the right-angle relation and Klein invariance."""
    rng = check_rng(seed, "identity_suite")
    antisym, det_id, triple, gram = [], [], [], []
    for _ in range(samples):
        x, y, z, w = (_random_vector(rng) for _ in range(4))
        nx, ny, nz, nw = (v.euclid_norm() for v in (x, y, z, w))
        xy = lorentz_cross(x, y)
        antisym.append(_vec_gap(xy, -lorentz_cross(y, x)) / (nx * ny))
        det_id.append(abs(minkowski_inner(xy, z) - det3(x, y, z)) / (nx * ny * nz))
        rhs = z.scale(minkowski_inner(x, y)) - y.scale(minkowski_inner(z, x))
        triple.append(_vec_gap(lorentz_cross(x, lorentz_cross(y, z)), rhs) / (nx * ny * nz))
        lhs = minkowski_inner(xy, lorentz_cross(z, w))
        rhs_g = minkowski_inner(x, w) * minkowski_inner(y, z) - minkowski_inner(x, z) * minkowski_inner(y, w)
        gram.append(abs(lhs - rhs_g) / (nx * ny * nz * nw))

    right: List[float] = []
    while len(right) < samples:
        x = _random_unit_time_like(rng)
        y = _random_vector(rng)
        # unit normal at x to the plane through x and y
        t_y = y + x.scale(minkowski_inner(x, y))
        if minkowski_inner(t_y, t_y) < 1e-6:
            continue
        n = lorentz_cross(x, t_y)
        n_hat = n.scale(1.0 / math.sqrt(minkowski_inner(n, n)))
        s = float(rng.uniform(0.1, 2.0))
        z = x.scale(math.cosh(s)) + n_hat.scale(math.sinh(s))
        scale = x.euclid_norm() ** 2 * y.euclid_norm() * z.euclid_norm()
        relation = abs(minkowski_inner(z, y) + minkowski_inner(z, x) * minkowski_inner(x, y)) / scale
        right.append(max(right_angle_residual(x, y, z), relation))

    klein: List[float] = []
    for _ in range(samples):
        v = _random_vector(rng)
        if abs(v.x3) < 1e-3:
            continue
        factor = float(rng.uniform(0.1, 10.0))
        try:
            a = klein_project(lorentz_normalize(v))
            b = klein_project(lorentz_normalize(v.scale(factor)))
        except DcsError:
            continue
        klein.append(max(abs(a[0] - b[0]), abs(a[1] - b[1])) / max(1.0, abs(a[0]), abs(a[1])))

    parts = (
        CheckReport("antisymmetry", tuple(antisym), IDENTITY_TOL, seed),
        CheckReport("determinant identity", tuple(det_id), IDENTITY_TOL, seed),
        CheckReport("triple product", tuple(triple), IDENTITY_TOL, seed),
        CheckReport("gram identity", tuple(gram), IDENTITY_TOL, seed),
        CheckReport("right angle", tuple(right), RIGHT_ANGLE_TOL, seed),
        CheckReport("klein invariance", tuple(klein), IDENTITY_TOL, seed),
    )
    report = composite("identity_suite", parts, seed, samples=samples)
    trace("verify", f"{report.name} max={report.max_residual:.3e} {'PASS' if report.passed else 'FAIL'}")
    return report


# orchestration ------------------------------------------------------------


def surface_checks(
    tri: IdealTriangulation,
    data: SurfaceConformalData,
    *,
    tol: float = DEFAULT_TOL,
    h: float = DEFAULT_H,
    seed: int = DEFAULT_SEED,
) -> List[Callable[[], CheckReport]]:
    """The checks ``verify`` runs on one surface, as independent thunks."""
    jobs: List[Callable[[], CheckReport]] = []

    def edge_fd() -> CheckReport:
        parts = []
        for e in range(tri.n_edges):
            params = data.edge_params(tri, e)
            for endpoint in ("i", "j"):
                parts.append(fd_partial_check(params, h, endpoint=endpoint, seed=seed))
        return composite("fd_partial_check edges", parts, seed, h=h)

    def edge_h() -> CheckReport:
        parts = [h_field_check(data.edge_params(tri, e), seed=seed) for e in range(tri.n_edges)]
        return composite("h_field_check edges", parts, seed)

    def faces_variation() -> CheckReport:
        parts = [
            conformal_variation_check(FaceData.from_surface(tri, data, f), tol_compat=tol, seed=seed)
            for f in range(tri.n_faces)
        ]
        return composite("conformal_variation_check faces", parts, seed)

    jobs.append(lambda: identity_suite(seed))
    jobs.append(lambda: fd_partial_suite(seed, h=h))
    jobs.append(lambda: h_field_suite(seed))
    jobs.append(edge_fd)
    jobs.append(edge_h)
    jobs.append(lambda: locality_check(tri, data))
    jobs.append(faces_variation)
    jobs.append(lambda: boundary_arc_check(tri, data, tol))
    return jobs


def run_verification(
    tri: IdealTriangulation,
    data: SurfaceConformalData,
    *,
    tol: float = DEFAULT_TOL,
    h: float = DEFAULT_H,
    seed: int = DEFAULT_SEED,
    workers: int = 1,
) -> List[CheckReport]:
    """Run every surface check; results keep the job order whatever the scheduling."""
    jobs = surface_checks(tri, data, tol=tol, h=h, seed=seed)
    results: List[Optional[CheckReport]] = [None] * len(jobs)
    if workers > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as ex:
            futures = {ex.submit(job): idx for idx, job in enumerate(jobs)}
            for fut in concurrent.futures.as_completed(futures):
                results[futures[fut]] = fut.result()
    else:
        for idx, job in enumerate(jobs):
            results[idx] = job()
    return [r for r in results if r is not None]

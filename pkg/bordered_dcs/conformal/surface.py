"""Ideal triangulations of bordered surfaces and their discrete metrics.

Document format (UTF-8 JSON)::

    {
      "boundary_components": N,
      "alpha": [N integers in {-1, 0, 1}],
      "f": [N reals],
      "faces": [{"corners": [b0, b1, b2]}, ...],
      "edges": [{"sides": [[face, side], [face, side]], "eta": real,
                 "C": real (optional, default 0), "family": "A1p"}, ...]
    }

Side ``s`` of a face runs from corner ``s`` to corner ``s + 1 (mod 3)``.
Edges are re-indexed by the smaller of their two ``(face, side)`` pairs;
that first side fixes the edge orientation ``(i, j)`` under which ``C`` is
stored. The other side traverses the edge backwards (ratio ``1/rho``, ``-C``).
"""

from __future__ import annotations

import concurrent.futures
import json
import math
from collections import deque
from dataclasses import dataclass, field, replace
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from bordered_dcs.conformal.dcs import (
    BoundaryData,
    EdgeData,
    EdgeParams,
    EdgeSplit,
    FamilySpec,
    identify_special_case,
    normalize_alpha,
    pole_at_zero,
    split_edge,
    validate_face_families,
    validate_family_set,
)
from bordered_dcs.errors import (
    BadFamilyCombination,
    BrokenCocycle,
    DcsError,
    DegenerateEdge,
    DisconnectedSurface,
    InconsistentCocycle,
    IncompatibleSplits,
    InvalidParameters,
    MalformedDocument,
    NonRealizable,
    NotGenusZero,
    UnpairedSide,
)
from bordered_dcs.geometry.hexagon import (
    CenterReport,
    HexRealization,
    boundary_arcs,
    compatibility_residual,
    face_center,
    realize_from_cosh,
)
from bordered_dcs.settings import DEFAULT_TOL, trace


SideRef = Tuple[int, int]
COCYCLE_TOL = 1e-12


@dataclass(frozen=True)
class IdealTriangulation:
    n_boundary: int
    faces: Tuple[Tuple[int, int, int], ...]
    # Each pairing is (first side, second side) with first < second; sorted by first side.
    edge_pairings: Tuple[Tuple[SideRef, SideRef], ...]
    _side_index: Dict[SideRef, Tuple[int, bool]] = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self) -> None:
        index: Dict[SideRef, Tuple[int, bool]] = {}
        for e, (first, second) in enumerate(self.edge_pairings):
            index[first] = (e, True)
            index[second] = (e, False)
        object.__setattr__(self, "_side_index", index)

    @property
    def n_faces(self) -> int:
        return len(self.faces)

    @property
    def n_edges(self) -> int:
        return len(self.edge_pairings)

    def side_edge(self, face: int, side: int) -> Tuple[int, bool]:
        """``(edge index, True if this side is the edge's first occurrence)``."""
        return self._side_index[(face, side)]

    def side_endpoints(self, face: int, side: int) -> Tuple[int, int]:
        corners = self.faces[face]
        return corners[side], corners[(side + 1) % 3]

    def edge_endpoints(self, edge: int) -> Tuple[int, int]:
        """Boundary components ``(i, j)`` in the edge's stored orientation."""
        face, side = self.edge_pairings[edge][0]
        return self.side_endpoints(face, side)

    @property
    def euler_characteristic(self) -> int:
        """Of the coned surface: N - |E| + |F|."""
        return self.n_boundary - self.n_edges + self.n_faces

    @property
    def genus(self) -> int:
        return (2 - self.euler_characteristic) // 2

    def incidence(self) -> List[Dict[str, int]]:
        """Which face corners sit on which boundary component."""
        rows = []
        for f, corners in enumerate(self.faces):
            for r, b in enumerate(corners):
                rows.append({"component": b, "face": f, "corner": r})
        rows.sort(key=lambda row: (row["component"], row["face"], row["corner"]))
        return rows


@dataclass(frozen=True)
class SurfaceConformalData:
    boundary: BoundaryData
    # Indexed like IdealTriangulation.edge_pairings.
    edges: Tuple[EdgeData, ...]

    def edge_params(self, tri: IdealTriangulation, edge: int) -> EdgeParams:
        i, j = tri.edge_endpoints(edge)
        e = self.edges[edge]
        return EdgeParams(
            family=e.family,
            alpha_i=self.boundary.alpha[i],
            alpha_j=self.boundary.alpha[j],
            f_i=self.boundary.f[i],
            f_j=self.boundary.f[j],
            eta=e.eta,
            c_ij=e.c,
        )

    def with_f(self, f: Sequence[float]) -> "SurfaceConformalData":
        return replace(self, boundary=BoundaryData(self.boundary.alpha, tuple(float(x) for x in f)))


@dataclass(frozen=True)
class ParsedSurface:
    tri: IdealTriangulation
    data: SurfaceConformalData
    # Position of each (re-indexed) edge in the document's "edges" list.
    input_edge_index: Tuple[int, ...] = ()


@dataclass(frozen=True)
class EdgeReport:
    edge: int
    sides: Tuple[SideRef, SideRef]
    endpoints: Tuple[int, int]
    family: FamilySpec
    split: EdgeSplit


@dataclass(frozen=True)
class FaceReport:
    face: int
    corners: Tuple[int, int, int]
    rhos: Tuple[float, float, float]
    compat_residual: float
    compatible: bool
    realization: HexRealization
    arcs: Tuple[float, float, float]
    centers: Optional[CenterReport] = None
    problem: str = ""


@dataclass(frozen=True)
class MetricReport:
    edges: Tuple[EdgeReport, ...]
    faces: Tuple[FaceReport, ...]
    boundary_lengths: Tuple[float, ...]
    total_length: float
    valid: bool
    tol: float


@dataclass(frozen=True)
class FamilyAudit:
    ok: bool
    families: Tuple[str, ...]
    global_rule: Optional[str]
    global_message: str
    # (face, rule, message)
    face_violations: Tuple[Tuple[int, str, str], ...]
    special_case: Optional[str] = None


# parsing ------------------------------------------------------------------


def _is_int(value: Any) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def _real(value: Any, what: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise MalformedDocument(f"{what} must be a number, got {value!r}")
    out = float(value)
    if not math.isfinite(out):
        raise MalformedDocument(f"{what} must be finite, got {value!r}")
    return out


def _load(document: Union[bytes, str]) -> Dict[str, Any]:
    try:
        text = document.decode("utf-8") if isinstance(document, (bytes, bytearray)) else document
        raw = json.loads(text)
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise MalformedDocument(f"not a UTF-8 JSON document: {exc}") from exc
    if not isinstance(raw, dict):
        raise MalformedDocument("top level must be a JSON object")
    for key in ("boundary_components", "alpha", "f", "faces", "edges"):
        if key not in raw:
            raise MalformedDocument(f"missing key {key!r}")
    return raw


def _parse_boundary(raw: Dict[str, Any]) -> BoundaryData:
    n = raw["boundary_components"]
    if not _is_int(n) or n < 1:
        raise MalformedDocument(f"boundary_components must be a positive integer, got {n!r}")
    alpha, f = raw["alpha"], raw["f"]
    if not isinstance(alpha, list) or len(alpha) != n:
        raise MalformedDocument(f"alpha must be a list of {n} integers")
    if not isinstance(f, list) or len(f) != n:
        raise MalformedDocument(f"f must be a list of {n} reals")
    for r, a in enumerate(alpha):
        if not _is_int(a) or a not in (-1, 0, 1):
            raise MalformedDocument(f"alpha[{r}] must be -1, 0 or 1, got {a!r}")
    return BoundaryData(tuple(int(a) for a in alpha), tuple(_real(x, f"f[{r}]") for r, x in enumerate(f)))


def _parse_faces(raw: Dict[str, Any], n: int) -> Tuple[Tuple[int, int, int], ...]:
    faces = raw["faces"]
    if not isinstance(faces, list) or not faces:
        raise MalformedDocument("faces must be a non-empty list")
    out = []
    for idx, face in enumerate(faces):
        corners = face.get("corners") if isinstance(face, dict) else None
        if not isinstance(corners, list) or len(corners) != 3:
            raise MalformedDocument(f"face {idx}: 'corners' must list three boundary indices", face=idx)
        for b in corners:
            if not _is_int(b) or not 0 <= b < n:
                raise MalformedDocument(f"face {idx}: corner label {b!r} out of range 0..{n - 1}", face=idx)
        out.append((corners[0], corners[1], corners[2]))
    return tuple(out)


def _parse_side(value: Any, n_faces: int, edge: int) -> SideRef:
    if (
        not isinstance(value, list)
        or len(value) != 2
        or not all(_is_int(v) for v in value)
        or not 0 <= value[0] < n_faces
        or not 0 <= value[1] < 3
    ):
        raise MalformedDocument(f"invalid side reference {value!r}", edge=edge)
    return (value[0], value[1])


class _Corners:
    """Union-find over face corners (face, corner)."""

    def __init__(self, n_faces: int) -> None:
        self.parent = list(range(3 * n_faces))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


def _check_vertices(n: int, faces: Sequence[Tuple[int, int, int]], pairings: Sequence[Tuple[SideRef, SideRef]]) -> None:
    """Glued corners must carry the same label and each label must be one vertex."""
    uf = _Corners(len(faces))
    for e, ((f, s), (g, t)) in enumerate(pairings):
        # side (f, s) runs corner s -> s+1, side (g, t) runs t -> t+1 the other way
        uf.union(3 * f + s, 3 * g + (t + 1) % 3)
        uf.union(3 * f + (s + 1) % 3, 3 * g + t)

    labels: Dict[int, int] = {}
    for f, corners in enumerate(faces):
        for r, b in enumerate(corners):
            root = uf.find(3 * f + r)
            seen = labels.setdefault(root, b)
            if seen != b:
                raise MalformedDocument(
                    f"gluing identifies corners labelled {seen} and {b}", face=f, side=(f, r)
                )
    by_label: Dict[int, int] = {}
    for root, b in labels.items():
        by_label[b] = by_label.get(b, 0) + 1
    for b in range(n):
        count = by_label.get(b, 0)
        if count != 1:
            raise MalformedDocument(
                f"boundary component {b} appears as {count} vertices of the coned surface (expected 1)"
            )


def _check_connected(n_faces: int, pairings: Sequence[Tuple[SideRef, SideRef]]) -> None:
    adj: List[List[int]] = [[] for _ in range(n_faces)]
    for (f, _s), (g, _t) in pairings:
        adj[f].append(g)
        adj[g].append(f)
    seen = {0}
    queue = deque([0])
    while queue:
        f = queue.popleft()
        for g in adj[f]:
            if g not in seen:
                seen.add(g)
                queue.append(g)
    if len(seen) != n_faces:
        missing = min(set(range(n_faces)) - seen)
        raise DisconnectedSurface(f"face {missing} is not reachable from face 0", face=missing)


def parse(document: Union[bytes, str]) -> ParsedSurface:
    """Parse and fully validate a surface document."""
    raw = _load(document)
    boundary = _parse_boundary(raw)
    n = boundary.n_boundary
    faces = _parse_faces(raw, n)
    edges_raw = raw["edges"]
    if not isinstance(edges_raw, list):
        raise MalformedDocument("edges must be a list")

    owner: Dict[SideRef, int] = {}
    staged = []
    for idx, item in enumerate(edges_raw):
        if not isinstance(item, dict):
            raise MalformedDocument(f"edge {idx} must be an object", edge=idx)
        sides = item.get("sides")
        if not isinstance(sides, list) or len(sides) != 2:
            raise MalformedDocument(f"edge {idx}: 'sides' must pair exactly two face sides", edge=idx)
        a = _parse_side(sides[0], len(faces), idx)
        b = _parse_side(sides[1], len(faces), idx)
        for side in (a, b):
            if side in owner:
                raise UnpairedSide(
                    f"side {list(side)} is used by edges {owner[side]} and {idx}", edge=idx, side=side
                )
            owner[side] = idx
        if "eta" not in item or "family" not in item:
            raise MalformedDocument(f"edge {idx}: 'eta' and 'family' are required", edge=idx)
        try:
            family = FamilySpec.parse(item["family"])
        except InvalidParameters as exc:
            raise MalformedDocument(str(exc), edge=idx) from exc
        eta = _real(item["eta"], f"edge {idx} eta")
        c = _real(item.get("C", 0.0), f"edge {idx} C")
        # C is given for the orientation of the smaller side.
        first, second = (a, b) if a < b else (b, a)
        staged.append((first, second, idx, EdgeData(eta=eta, family=family, c=c)))

    for f in range(len(faces)):
        for s in range(3):
            if (f, s) not in owner:
                raise UnpairedSide(f"side {[f, s]} is not paired with any other side", face=f, side=(f, s))

    staged.sort(key=lambda row: row[0])
    pairings = tuple((first, second) for first, second, _, _ in staged)
    _check_connected(len(faces), pairings)
    _check_vertices(n, faces, pairings)

    tri = IdealTriangulation(n_boundary=n, faces=faces, edge_pairings=pairings)
    data = SurfaceConformalData(boundary=boundary, edges=tuple(row[3] for row in staged))
    parsed = ParsedSurface(tri, data, tuple(row[2] for row in staged))

    audit = audit_families(tri, data)
    if not audit.ok:
        if audit.global_rule is not None:
            raise BadFamilyCombination(f"families {list(audit.families)}: {audit.global_message}")
        face, rule, message = audit.face_violations[0]
        raise BadFamilyCombination(f"{message} [{rule}]", face=face)

    _check_cocycles(tri, data)
    _check_domains(tri, data)
    trace(
        "parse",
        f"N={n} faces={tri.n_faces} edges={tri.n_edges} chi={tri.euler_characteristic} families={list(audit.families)}",
    )
    return parsed


def _oriented_c(tri: IdealTriangulation, data: SurfaceConformalData, face: int, side: int) -> float:
    e, forward = tri.side_edge(face, side)
    c = data.edges[e].c
    return c if forward else -c


def _check_cocycles(tri: IdealTriangulation, data: SurfaceConformalData) -> None:
    for f in range(tri.n_faces):
        fams = [data.edges[tri.side_edge(f, s)[0]].family for s in range(3)]
        if not all(fam.uses_c for fam in fams):
            continue
        cs = [_oriented_c(tri, data, f, s) for s in range(3)]
        total = math.fsum(cs)
        if abs(total) > COCYCLE_TOL * max(1.0, sum(abs(c) for c in cs)):
            raise BrokenCocycle(f"C_ij + C_jk + C_ki = {total!r} on face {f}", face=f)


def _check_domains(tri: IdealTriangulation, data: SurfaceConformalData) -> None:
    """Boundary values must lie in each incident edge family's domain."""
    for e in range(tri.n_edges):
        params = data.edge_params(tri, e)
        try:
            params.cosh_length()
        except InvalidParameters as exc:
            raise MalformedDocument(f"edge {e}: {exc}", edge=e) from exc
        # P = 0 sends one split distance to infinity
        for b, alpha, f in zip(tri.edge_endpoints(e), (params.alpha_i, params.alpha_j), (params.f_i, params.f_j)):
            if pole_at_zero(params.family, alpha, f):
                raise MalformedDocument(
                    f"edge {e}: 1 + alpha*e^(2f) = 0 at boundary {b} (alpha={alpha}, f={f}) leaves "
                    f"{params.family.value} without a finite split",
                    edge=e,
                )


def dump_document(tri: IdealTriangulation, data: SurfaceConformalData) -> Dict[str, Any]:
    """The JSON-ready document for a triangulation and its data (edges in index order)."""
    return {
        "boundary_components": tri.n_boundary,
        "alpha": list(data.boundary.alpha),
        "f": list(data.boundary.f),
        "faces": [{"corners": list(c)} for c in tri.faces],
        "edges": [
            {
                "sides": [list(first), list(second)],
                "eta": e.eta,
                "C": e.c,
                "family": e.family.value,
            }
            for (first, second), e in zip(tri.edge_pairings, data.edges)
        ],
    }


# metrics ------------------------------------------------------------------


def edge_splits(tri: IdealTriangulation, data: SurfaceConformalData) -> Tuple[EdgeReport, ...]:
    out = []
    for e in range(tri.n_edges):
        params = data.edge_params(tri, e)
        try:
            cosh_l = params.cosh_length()
            if not cosh_l > 1.0:
                raise DegenerateEdge(f"cosh l = {cosh_l!r} <= 1", edge=e)
            split = split_edge(cosh_l, params.edge_ratio())
        except DcsError as exc:
            if exc.edge is None:
                exc.edge = e
            raise
        trace(
            "edge",
            f"{e} {params.family.value} ({params.alpha_i},{params.alpha_j}) l={split.l:.12g} "
            f"rho={split.rho:.12g} real={split.real_split}",
        )
        out.append(EdgeReport(e, tri.edge_pairings[e], tri.edge_endpoints(e), params.family, split))
    return tuple(out)


def face_splits(tri: IdealTriangulation, splits: Sequence[EdgeReport], face: int) -> Tuple[EdgeSplit, EdgeSplit, EdgeSplit]:
    """The three splits of a face read along its sides ij, jk, ki."""
    out = []
    for s in range(3):
        e, forward = tri.side_edge(face, s)
        split = splits[e].split
        out.append(split if forward else split.reversed())
    return tuple(out)  # type: ignore[return-value]


def _evaluate_face(
    tri: IdealTriangulation,
    splits: Sequence[EdgeReport],
    face: int,
    tol: float,
) -> FaceReport:
    sides = face_splits(tri, splits, face)
    try:
        hex_ = realize_from_cosh(sides[0].cosh_l, sides[1].cosh_l, sides[2].cosh_l)
    except NonRealizable as exc:
        exc.face = face
        raise
    rhos = (sides[0].rho, sides[1].rho, sides[2].rho)
    residual = compatibility_residual(*rhos)
    arcs = boundary_arcs(hex_)
    try:
        centers = face_center(hex_, *rhos, tol_compat=tol)
    except IncompatibleSplits as exc:
        trace("face", f"{face} incompatible residual={residual:.3e}")
        return FaceReport(face, tri.faces[face], rhos, residual, False, hex_, arcs, None, str(exc))
    trace("face", f"{face} residual={residual:.3e} center={centers.face_class.tag.value}")
    return FaceReport(face, tri.faces[face], rhos, residual, True, hex_, arcs, centers)


def compute_metric(
    tri: IdealTriangulation,
    data: SurfaceConformalData,
    tol: float = DEFAULT_TOL,
    workers: int = 1,
) -> MetricReport:
    """Lengths, splits, centers and boundary lengths of the whole surface."""
    splits = edge_splits(tri, data)

    faces: List[Optional[FaceReport]] = [None] * tri.n_faces
    if workers > 1 and tri.n_faces > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as ex:
            futures = {ex.submit(_evaluate_face, tri, splits, f, tol): f for f in range(tri.n_faces)}
            for fut in concurrent.futures.as_completed(futures):
                faces[futures[fut]] = fut.result()
    else:
        for f in range(tri.n_faces):
            faces[f] = _evaluate_face(tri, splits, f, tol)
    face_reports = tuple(r for r in faces if r is not None)

    per_component: List[List[float]] = [[] for _ in range(tri.n_boundary)]
    for report in face_reports:
        for r, b in enumerate(report.corners):
            per_component[b].append(report.arcs[r])
    # fsum is exact-rounded, so face order cannot change the totals
    lengths = tuple(math.fsum(arcs) for arcs in per_component)
    total = math.fsum(x for arcs in per_component for x in arcs)
    valid = all(r.compatible for r in face_reports)
    return MetricReport(splits, face_reports, lengths, total, valid, tol)


# families -----------------------------------------------------------------


def audit_families(tri: IdealTriangulation, data: SurfaceConformalData) -> FamilyAudit:
    present = sorted({e.family for e in data.edges}, key=lambda fam: fam.value)
    glob = validate_family_set(present)
    violations = []
    for f in range(tri.n_faces):
        fams = [data.edges[tri.side_edge(f, s)[0]].family for s in range(3)]
        report = validate_face_families(fams)
        if not report.ok:
            violations.append((f, report.rule or "", report.message))

    special = None
    if len(present) == 1:
        fam = present[0]
        special = identify_special_case(
            fam,
            alphas=[data.boundary.alpha[b] for b in range(tri.n_boundary)],
            cs=[e.c for e in data.edges],
        )
    return FamilyAudit(
        ok=glob.ok and not violations,
        families=tuple(fam.value for fam in present),
        global_rule=None if glob.ok else glob.rule,
        global_message=glob.message,
        face_violations=tuple(violations),
        special_case=special,
    )


def normalize_C(tri: IdealTriangulation, data: SurfaceConformalData) -> SurfaceConformalData:
    """Absorb the C cocycle of an A2/B2 structure into the conformal factor.

    ``g`` is built breadth-first from component 0 with ``g_0 = 0`` and
    ``g_j = g_i - C_ij``; the result has ``C = 0``, ``f + g`` and
    ``eta * e^{-g_i - g_j}``.
    """
    for e, ed in enumerate(data.edges):
        if not ed.family.uses_c:
            raise InvalidParameters(f"normalize_C needs A2/B2 edges, edge {e} is {ed.family.value}", edge=e)
    if tri.euler_characteristic != 2:
        raise NotGenusZero(f"Euler characteristic {tri.euler_characteristic} != 2 (genus {tri.genus})")

    adj: List[List[Tuple[int, int, float]]] = [[] for _ in range(tri.n_boundary)]
    for e in range(tri.n_edges):
        i, j = tri.edge_endpoints(e)
        c = data.edges[e].c
        adj[i].append((e, j, c))
        adj[j].append((e, i, -c))

    g: List[Optional[float]] = [None] * tri.n_boundary
    g[0] = 0.0
    tree_edges = set()
    queue = deque([0])
    while queue:
        i = queue.popleft()
        for e, j, c_ij in adj[i]:
            if g[j] is None:
                g[j] = g[i] - c_ij  # type: ignore[operator]
                tree_edges.add(e)
                queue.append(j)
    if any(x is None for x in g):
        raise InconsistentCocycle("boundary components are not all joined by edges")
    gv = [float(x) for x in g]  # type: ignore[arg-type]

    for e in range(tri.n_edges):
        if e in tree_edges:
            continue
        i, j = tri.edge_endpoints(e)
        c = data.edges[e].c
        mismatch = gv[j] - (gv[i] - c)
        if abs(mismatch) > COCYCLE_TOL * max(1.0, abs(gv[i]), abs(gv[j]), abs(c)):
            raise InconsistentCocycle(f"cycle through edge {e} does not close (mismatch {mismatch!r})", edge=e)

    new_f = tuple(fr + gr for fr, gr in zip(data.boundary.f, gv))
    new_edges = []
    for e in range(tri.n_edges):
        i, j = tri.edge_endpoints(e)
        ed = data.edges[e]
        new_edges.append(EdgeData(eta=ed.eta * math.exp(-gv[i] - gv[j]), family=ed.family, c=0.0))
    trace("normalize", f"g={gv}")
    return SurfaceConformalData(BoundaryData(data.boundary.alpha, new_f), tuple(new_edges))


def normalize_alpha_surface(
    tri: IdealTriangulation,
    alpha_raw: Sequence[float],
    f: Sequence[float],
    data: SurfaceConformalData,
) -> SurfaceConformalData:
    """Lift ``normalize_alpha`` to a surface whose ``alpha`` was given unnormalized."""
    edges = [tri.edge_endpoints(e) for e in range(tri.n_edges)]
    out = normalize_alpha(alpha_raw, f, [e.eta for e in data.edges], edges)
    new_edges = tuple(replace(ed, eta=eta) for ed, eta in zip(data.edges, out.eta))
    return SurfaceConformalData(BoundaryData(out.alpha, out.g), new_edges)

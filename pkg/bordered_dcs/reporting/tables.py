"""Report records, pandas tables, JSON text and workbooks.

Records are plain dicts (one per edge, face, boundary component or check);
they feed the JSON report, the xlsx sheets and the DuckDB history alike.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional, Sequence

import pandas as pd

from bordered_dcs.conformal.surface import FamilyAudit, IdealTriangulation, MetricReport
from bordered_dcs.geometry.lorentz import CausalClass, LorentzVector
from bordered_dcs.verification.checks import CheckReport


def _vec(v: Optional[LorentzVector]) -> Optional[List[float]]:
    return None if v is None else [v.x1, v.x2, v.x3]


def _cls(c: Optional[CausalClass]) -> Optional[str]:
    return None if c is None else c.tag.value


def edge_records(report: MetricReport) -> List[Dict[str, Any]]:
    rows = []
    for e in report.edges:
        s = e.split
        (fa, sa), (fb, sb) = e.sides
        rows.append(
            {
                "edge": e.edge,
                "sides": [[fa, sa], [fb, sb]],
                "i": e.endpoints[0],
                "j": e.endpoints[1],
                "family": e.family.value,
                "cosh_l": s.cosh_l,
                "l": s.l,
                "rho": s.rho,
                "t_ij": s.t_ij,
                "t_ji": s.t_ji,
                "d_ij": s.d_ij,
                "d_ji": s.d_ji,
                "real_split": s.real_split,
            }
        )
    return rows


def face_records(report: MetricReport) -> List[Dict[str, Any]]:
    rows = []
    for f in report.faces:
        c = f.centers
        rows.append(
            {
                "face": f.face,
                "corners": list(f.corners),
                "rho_ij": f.rhos[0],
                "rho_jk": f.rhos[1],
                "rho_ki": f.rhos[2],
                "compat_residual": f.compat_residual,
                "compatible": f.compatible,
                "theta_i": f.arcs[0],
                "theta_j": f.arcs[1],
                "theta_k": f.arcs[2],
                "face_center": _vec(c.face_center) if c else None,
                "face_center_class": _cls(c.face_class) if c else None,
                "det_M": c.det_M if c else None,
                "perpendicular_residual": max(c.perpendicular_residuals) if c else None,
                "orthogonality_residual": c.orthogonality_residual if c else None,
                "problem": f.problem,
            }
        )
    return rows


def center_records(report: MetricReport, face: Optional[int] = None) -> List[Dict[str, Any]]:
    rows = []
    for f in report.faces:
        if face is not None and f.face != face:
            continue
        c = f.centers
        hex_ = f.realization
        rows.append(
            {
                "face": f.face,
                "poles": [_vec(v) for v in hex_.poles],
                "edge_centers": [_vec(v) for v in c.edge_centers] if c else None,
                "edge_center_classes": [_cls(x) for x in c.edge_classes] if c else None,
                "face_center": _vec(c.face_center) if c else None,
                "face_center_class": _cls(c.face_class) if c else None,
                "det_M": c.det_M if c else None,
                "compat_residual": f.compat_residual,
                "perpendicular_residuals": list(c.perpendicular_residuals) if c else None,
                "right_angle_residuals": list(c.right_angle_residuals) if c else None,
                "det_identity_residual": c.det_identity_residual if c else None,
                "problem": f.problem,
            }
        )
    return rows


def boundary_records(report: MetricReport) -> List[Dict[str, Any]]:
    return [{"component": b, "length": length} for b, length in enumerate(report.boundary_lengths)]


def check_records(checks: Sequence[CheckReport]) -> List[Dict[str, Any]]:
    """One flat row per check (parts are kept in the JSON report only)."""
    return [
        {
            "check": c.name,
            "max_residual": c.max_residual,
            "tolerance": c.tolerance,
            "passed": c.passed,
            "seed": c.seed,
            "samples": len(c.residuals),
        }
        for c in checks
    ]


def surface_header(tri: IdealTriangulation, audit: FamilyAudit, **extra: Any) -> Dict[str, Any]:
    header = {
        "boundary_components": tri.n_boundary,
        "faces": tri.n_faces,
        "edges": tri.n_edges,
        "euler_characteristic": tri.euler_characteristic,
        "genus": tri.genus,
        "families": list(audit.families),
        "special_case": audit.special_case,
    }
    header.update(extra)
    return header


def to_frame(rows: Iterable[Mapping[str, Any]]) -> pd.DataFrame:
    """DataFrame with nested values flattened to JSON text (sheet/DB friendly)."""
    flat = []
    for row in rows:
        flat.append({k: json.dumps(v) if isinstance(v, (list, dict)) else v for k, v in row.items()})
    return pd.DataFrame(flat)


def write_workbook(path: Path, sheets: Mapping[str, Iterable[Mapping[str, Any]]]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with pd.ExcelWriter(path, engine="openpyxl") as writer:
        for name, rows in sheets.items():
            to_frame(rows).to_excel(writer, sheet_name=name[:31], index=False)


def _format_float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return "%.17g" % x


def _encode(obj: Any, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, float):
        return _format_float(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, str):
        return json.dumps(obj, ensure_ascii=False)
    if isinstance(obj, Mapping):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k), ensure_ascii=False)}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in obj) + "]"
        items = [f"{pad}{_encode(v, indent, level + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if hasattr(obj, "item"):
        # numpy scalars
        return _encode(obj.item(), indent, level)
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(obj: Any, indent: int = 2) -> str:
    """JSON text with every float written to 17 significant digits."""
    return _encode(obj, indent, 0) + "\n"

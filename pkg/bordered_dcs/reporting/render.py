"""SVG figures of one face in the Klein disk.

Geodesics are chords: a plane with Lorentz normal ``n`` meets the disk in
the line ``n1 u + n2 v = n3``. Poles draw as their polar chords (the
boundary arcs), edges as the chord through ``Span(v_r, v_s)`` and each edge
perpendicular as the chord through ``Span(c_rs, v_r (x) v_s)``.

Time-like face centers are moved to the origin by a Lorentz isometry before
drawing; other faces are drawn in the realization gauge.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import List, Optional, Tuple, Union

import numpy as np

from bordered_dcs.errors import ProjectionAtInfinity
from bordered_dcs.geometry.hexagon import SIDES, CenterReport, HexRealization
from bordered_dcs.geometry.lorentz import (
    CausalClass,
    LorentzVector,
    klein_project,
    lorentz_cross,
    minkowski_inner,
)


SIZE = 1000
RADIUS = 500.0
CENTER = 500.0
# Only recenter when the face center is measurably away from e3.
RECENTER_EPS = 1e-12

LABELS = ("i", "j", "k")
STYLE = """
    .disk { fill: #fafafa; stroke: #222; stroke-width: 2; }
    .polar { stroke: #1f77b4; stroke-width: 3; }
    .edge { stroke: #444; stroke-width: 2; }
    .perpendicular { stroke: #d62728; stroke-width: 1.5; stroke-dasharray: 8 5; }
    .time-like { fill: #d62728; stroke: #000; }
    .light-like { fill: #ff7f0e; stroke: #000; }
    .space-like { fill: none; stroke: #9467bd; stroke-width: 2; stroke-dasharray: 4 3; }
"""


def _fmt(x: float) -> str:
    s = "%.6f" % x
    return "0.000000" if s == "-0.000000" else s


def _screen(u: float, v: float) -> Tuple[float, float]:
    return CENTER + RADIUS * u, CENTER - RADIUS * v


def _reflect(x: LorentzVector, n: LorentzVector) -> LorentzVector:
    k = 2.0 * minkowski_inner(x, n) / minkowski_inner(n, n)
    return x - n.scale(k)


def recentering(face_center: Optional[LorentzVector], face_class: Optional[CausalClass]):
    """Isometry taking a time-like face center to ``(0, 0, 1)``; identity otherwise.

    A reflection in ``p - e3`` composed with ``x2 -> -x2`` keeps orientation.
    """
    if face_center is None or face_class is None or not face_class.is_time_like:
        return lambda x: x
    e3 = LorentzVector(0.0, 0.0, 1.0)
    n = face_center - e3
    if n.euclid_norm() <= RECENTER_EPS:
        return lambda x: x

    def apply(x: LorentzVector) -> LorentzVector:
        y = _reflect(x, n)
        return LorentzVector(y.x1, -y.x2, y.x3)

    return apply


def chord(n: LorentzVector) -> Optional[Tuple[Tuple[float, float], Tuple[float, float]]]:
    """Endpoints (Klein coordinates) of ``n1 u + n2 v = n3`` inside the unit disk."""
    a, b, c = n.x1, n.x2, n.x3
    norm2 = a * a + b * b
    if norm2 == 0.0:
        return None
    dist = abs(c) / math.sqrt(norm2)
    if dist >= 1.0:
        return None
    foot = np.array([a, b]) * (c / norm2)
    direction = np.array([-b, a]) / math.sqrt(norm2)
    half = math.sqrt(1.0 - dist * dist)
    p, q = foot - half * direction, foot + half * direction
    return (float(p[0]), float(p[1])), (float(q[0]), float(q[1]))


def _line(n: LorentzVector, css: str, ident: str) -> str:
    ends = chord(n)
    if ends is None:
        return f"  <!-- {ident}: misses the disk -->"
    (x1, y1), (x2, y2) = (_screen(*ends[0]), _screen(*ends[1]))
    return (
        f'  <line id="{ident}" class="{css}" x1="{_fmt(x1)}" y1="{_fmt(y1)}" '
        f'x2="{_fmt(x2)}" y2="{_fmt(y2)}"/>'
    )


def _marker(x: LorentzVector, cls: CausalClass, role: str, ident: str, size: float) -> str:
    try:
        u, v = klein_project(x)
    except ProjectionAtInfinity:
        return f"  <!-- {ident}: at infinity -->"
    sx, sy = _screen(u, v)
    css = f"{role} {cls.tag.value.lower().replace('like', '-like')}"
    if cls.is_space_like:
        half = size
        return (
            f'  <rect id="{ident}" class="{css}" x="{_fmt(sx - half)}" y="{_fmt(sy - half)}" '
            f'width="{_fmt(2 * half)}" height="{_fmt(2 * half)}"/>'
        )
    return f'  <circle id="{ident}" class="{css}" cx="{_fmt(sx)}" cy="{_fmt(sy)}" r="{_fmt(size)}"/>'


def render_face(
    realization: HexRealization,
    centers: Optional[CenterReport] = None,
    out: Optional[Union[str, Path]] = None,
    *,
    title: str = "",
) -> str:
    """SVG text for one face; also written to ``out`` when given.

    The output depends only on the inputs, so repeated runs are byte-identical.
    """
    move = recentering(
        centers.face_center if centers else None,
        centers.face_class if centers else None,
    )
    poles = [move(v) for v in realization.poles]

    body: List[str] = [
        f'  <circle class="disk" cx="{_fmt(CENTER)}" cy="{_fmt(CENTER)}" r="{_fmt(RADIUS)}"/>',
    ]
    for r, v in enumerate(poles):
        body.append(_line(v, "polar", f"polar-{LABELS[r]}"))
    for side, (r, s) in enumerate(SIDES):
        name = LABELS[r] + LABELS[s]
        normal = lorentz_cross(poles[r], poles[s])
        body.append(_line(normal, "edge", f"edge-{name}"))
        if centers is not None:
            c_rs = move(centers.edge_centers[side])
            body.append(_line(lorentz_cross(c_rs, normal), "perpendicular", f"perpendicular-{name}"))
    if centers is not None:
        for side, (r, s) in enumerate(SIDES):
            name = LABELS[r] + LABELS[s]
            c_rs = move(centers.edge_centers[side])
            body.append(_marker(c_rs, centers.edge_classes[side], "edge-center", f"center-{name}", 7.0))
        body.append(_marker(move(centers.face_center), centers.face_class, "face-center", "center-ijk", 10.0))

    head = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}" overflow="visible">',
    ]
    if title:
        head.append(f"  <title>{title}</title>")
    head.append(f"  <style>{STYLE}  </style>")
    text = "\n".join(head + body + ["</svg>"]) + "\n"

    if out is not None:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    return text

"""Bundled surface documents."""

from __future__ import annotations

import math
from typing import Any, Callable, Dict, List

from bordered_dcs.conformal.dcs import FamilySpec
from bordered_dcs.errors import UnknownExample


# Pair of pants: two faces glued along all three sides.
PANTS_FACES = [[0, 1, 2], [0, 2, 1]]
PANTS_SIDES = [
    [[0, 0], [1, 2]],
    [[0, 1], [1, 1]],
    [[0, 2], [1, 0]],
]


def _pants_guo() -> Dict[str, Any]:
    return {
        "boundary_components": 3,
        "alpha": [0, 0, 0],
        "f": [0.0, 0.0, 0.0],
        "faces": [{"corners": c} for c in PANTS_FACES],
        "edges": [{"sides": s, "eta": 4.0, "C": 0.0, "family": "A1p"} for s in PANTS_SIDES],
    }


def _torus_guo() -> Dict[str, Any]:
    return {
        "boundary_components": 1,
        "alpha": [0],
        "f": [0.0],
        "faces": [{"corners": [0, 0, 0]}, {"corners": [0, 0, 0]}],
        "edges": [{"sides": [[0, s], [1, s]], "eta": 4.0, "C": 0.0, "family": "A1p"} for s in range(3)],
    }


MIXED_F = [0.0, 1.0, 2.2]
MIXED_C = [0.3, -0.1, -0.2]
MIXED_FAMILIES = [FamilySpec.A2, FamilySpec.B2, FamilySpec.B2]
MIXED_COSH_L = 1.2


def _eta_for_cosh(family: FamilySpec, f_i: float, f_j: float, c_ij: float, target: float) -> float:
    x = f_j - f_i - c_ij
    base = -math.cosh(x) if family.is_a else math.cosh(x)
    return (target - base) / math.exp(f_i + f_j)


def _pants_mixed_a2b2() -> Dict[str, Any]:
    """One A2 and two B2 edges per face.

    The drift ``|f_j - f_i - C_ij|`` exceeds ``l`` on both B2 edges, so
    their splits are real.
    """
    edges: List[Dict[str, Any]] = []
    for e, sides in enumerate(PANTS_SIDES):
        (face, side), _ = sides
        corners = PANTS_FACES[face]
        i, j = corners[side], corners[(side + 1) % 3]
        family = MIXED_FAMILIES[e]
        eta = _eta_for_cosh(family, MIXED_F[i], MIXED_F[j], MIXED_C[e], MIXED_COSH_L)
        edges.append({"sides": sides, "eta": eta, "C": MIXED_C[e], "family": family.value})
    return {
        "boundary_components": 3,
        "alpha": [0, 0, 0],
        "f": list(MIXED_F),
        "faces": [{"corners": c} for c in PANTS_FACES],
        "edges": edges,
    }


EXAMPLES: Dict[str, Callable[[], Dict[str, Any]]] = {
    "pants-guo": _pants_guo,
    "pants-mixed-a2b2": _pants_mixed_a2b2,
    "torus-guo": _torus_guo,
}


def emit_example(name: str) -> Dict[str, Any]:
    builder = EXAMPLES.get(name)
    if builder is None:
        raise UnknownExample(f"unknown example {name!r} (available: {', '.join(sorted(EXAMPLES))})")
    return builder()

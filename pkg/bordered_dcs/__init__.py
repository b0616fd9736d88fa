"""Discrete conformal structures on ideally triangulated surfaces with boundary.

Package layout:
- bordered_dcs.geometry: Lorentzian primitives, cosine laws, hexagon realization
- bordered_dcs.conformal: the classified families, edge splits, surfaces
- bordered_dcs.verification: numerical certificates and their history store
- bordered_dcs.reporting: command-line front end, tables, SVG rendering
"""

__all__ = [
    "geometry",
    "conformal",
    "verification",
    "reporting",
]

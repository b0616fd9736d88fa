"""Discrete conformal families, edge splits and triangulated surfaces."""

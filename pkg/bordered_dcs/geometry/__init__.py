"""Lorentzian 3-space, generalized cosine laws, right-angled hexagons."""

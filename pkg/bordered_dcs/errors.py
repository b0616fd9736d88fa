"""Exception hierarchy shared by the geometry, conformal and reporting layers.

Every error raised on purpose by this package derives from ``DcsError``.
``InputError`` marks problems with a user-supplied document (the CLI maps
these to exit code 2); everything else is a validation/computation failure
(exit code 1).
"""

from __future__ import annotations

from typing import Optional, Tuple


class DcsError(RuntimeError):
    """Base class. Optional identifiers name the offending edge/face/side."""

    def __init__(
        self,
        message: str,
        *,
        edge: Optional[int] = None,
        face: Optional[int] = None,
        side: Optional[Tuple[int, int]] = None,
    ) -> None:
        super().__init__(message)
        self.edge = edge
        self.face = face
        self.side = side

    def where(self) -> str:
        parts = []
        if self.edge is not None:
            parts.append(f"edge {self.edge}")
        if self.face is not None:
            parts.append(f"face {self.face}")
        if self.side is not None:
            parts.append(f"side [{self.side[0]}, {self.side[1]}]")
        return ", ".join(parts)

    def __str__(self) -> str:
        base = super().__str__()
        loc = self.where()
        return f"{base} ({loc})" if loc else base


class InputError(DcsError):
    pass


# lorentz
class ZeroVector(DcsError):
    pass


class LightLikeInput(DcsError):
    pass


class DegeneratePair(DcsError):
    pass


class ProjectionAtInfinity(DcsError):
    pass


# trig
class DomainViolation(DcsError):
    pass


class DegenerateSide(DcsError):
    pass


# dcs
class InvalidParameters(DcsError):
    pass


class PoleAtZero(DcsError):
    """The split ratio is infinite; the reversed ratio is zero."""

    def __init__(self, message: str, *, reverse_ratio: float = 0.0, **kwargs) -> None:
        super().__init__(message, **kwargs)
        self.reverse_ratio = reverse_ratio


class DegenerateEdge(DcsError):
    pass


class ZeroRatio(DcsError):
    pass


class MixedSignAlpha(DcsError):
    pass


# hexagon
class NonRealizable(DcsError):
    pass


class DegenerateEdgePlane(DcsError):
    pass


class IncompatibleSplits(DcsError):
    pass


class NumericallyParallelRows(DcsError):
    pass


# surface
class MalformedDocument(InputError):
    pass


class UnpairedSide(InputError):
    pass


class DisconnectedSurface(InputError):
    pass


class BadFamilyCombination(InputError):
    pass


class BrokenCocycle(InputError):
    pass


class NotGenusZero(DcsError):
    pass


class InconsistentCocycle(DcsError):
    pass


# cli
class UnknownExample(InputError):
    pass

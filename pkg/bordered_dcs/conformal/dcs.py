"""The six classified discrete conformal families on bordered surfaces.

Notation per oriented edge ``(i, j)`` between boundary components i and j:

- ``f_r``   discrete conformal factor of boundary r
- ``alpha_r`` in {-1, 0, 1} (families A1p/A1n/B1p/B1n)
- ``P_r = 1 + alpha_r * e^{2 f_r}``
- ``eta``   symmetric edge weight, ``C_ij = -C_ji`` (families A2/B2)
- ``rho = sinh d_ji / sinh d_ij`` the split ratio

A-families have ``rho > 0``, B-families ``rho < 0``. The split ratio is the
primitive datum; real signed partial lengths ``d_ij``, ``d_ji`` are derived
when they exist.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from bordered_dcs.errors import (
    DegenerateEdge,
    InvalidParameters,
    MixedSignAlpha,
    PoleAtZero,
    ZeroRatio,
)
from bordered_dcs.settings import trace


# |t| must exceed this for arccoth to be taken.
ARCCOTH_GUARD = 1.0 + 1e-13
SPLIT_RECHECK_TOL = 1e-8


class FamilySpec(str, enum.Enum):
    A1P = "A1p"
    A1N = "A1n"
    A2 = "A2"
    B1P = "B1p"
    B1N = "B1n"
    B2 = "B2"

    @property
    def is_a(self) -> bool:
        return self.value.startswith("A")

    @property
    def is_b(self) -> bool:
        return self.value.startswith("B")

    @property
    def uses_alpha(self) -> bool:
        return self not in (FamilySpec.A2, FamilySpec.B2)

    @property
    def uses_c(self) -> bool:
        return not self.uses_alpha

    @property
    def negative_p(self) -> bool:
        """A1n/B1n live on ``P_r < 0``."""
        return self in (FamilySpec.A1N, FamilySpec.B1N)

    @property
    def partner(self) -> "FamilySpec":
        """The family of the other sign class with the same length law shape."""
        swapped = ("B" if self.is_a else "A") + self.value[1:]
        return FamilySpec(swapped)

    @classmethod
    def parse(cls, value: str) -> "FamilySpec":
        try:
            return cls(str(value))
        except ValueError as exc:
            allowed = ", ".join(f.value for f in cls)
            raise InvalidParameters(f"unknown family {value!r} (expected one of {allowed})") from exc


@dataclass(frozen=True)
class BoundaryData:
    alpha: Tuple[int, ...]
    f: Tuple[float, ...]

    @property
    def n_boundary(self) -> int:
        return len(self.f)


@dataclass(frozen=True)
class EdgeData:
    eta: float
    family: FamilySpec
    # Stored for the edge's first-occurrence orientation; the reverse uses -C.
    c: float = 0.0


@dataclass(frozen=True)
class EdgeParams:
    """Everything one oriented edge needs to evaluate its family's formulas."""

    family: FamilySpec
    alpha_i: float
    alpha_j: float
    f_i: float
    f_j: float
    eta: float
    c_ij: float = 0.0

    def reversed(self) -> "EdgeParams":
        return EdgeParams(self.family, self.alpha_j, self.alpha_i, self.f_j, self.f_i, self.eta, -self.c_ij)

    def with_f(self, *, f_i: Optional[float] = None, f_j: Optional[float] = None) -> "EdgeParams":
        return replace(
            self,
            f_i=self.f_i if f_i is None else f_i,
            f_j=self.f_j if f_j is None else f_j,
        )

    def cosh_length(self) -> float:
        return cosh_length(self.family, self.alpha_i, self.alpha_j, self.f_i, self.f_j, self.eta, self.c_ij)

    def edge_ratio(self) -> float:
        return edge_ratio(self.family, self.alpha_i, self.alpha_j, self.f_i, self.f_j, self.c_ij)

    def coth_d(self) -> float:
        return coth_d(self.family, self.alpha_i, self.alpha_j, self.f_i, self.f_j, self.eta, self.c_ij)

    def split(self) -> "EdgeSplit":
        return split_edge(self.cosh_length(), self.edge_ratio())


@dataclass(frozen=True)
class EdgeSplit:
    cosh_l: float
    l: float
    rho: float
    t_ij: float
    t_ji: float
    d_ij: Optional[float]
    d_ji: Optional[float]
    real_split: bool
    # max of |d_ij + d_ji - l| and the relative ratio error; 0.0 for virtual splits.
    residual: float = 0.0

    def reversed(self) -> "EdgeSplit":
        """The same split read from the other end of the edge."""
        return EdgeSplit(
            cosh_l=self.cosh_l,
            l=self.l,
            rho=1.0 / self.rho,
            t_ij=self.t_ji,
            t_ji=self.t_ij,
            d_ij=self.d_ji,
            d_ji=self.d_ij,
            real_split=self.real_split,
            residual=self.residual,
        )


def _check_finite(**values: float) -> None:
    for name, value in values.items():
        if not math.isfinite(value):
            raise InvalidParameters(f"{name} must be finite, got {value!r}")


def _p_magnitude(family: FamilySpec, alpha: float, f: float, which: str) -> float:
    """``|P_r|`` on the family's branch; A1n/B1n use the rearrangement ``e^{2f} - 1``."""
    if family.negative_p:
        if alpha == -1:
            m = math.expm1(2.0 * f)
        else:
            m = -(1.0 + alpha * math.exp(2.0 * f))
        if not m > 0:
            raise InvalidParameters(
                f"{family.value} needs 1 + alpha*e^(2f) < 0 at boundary {which} (alpha={alpha}, f={f})"
            )
        return m
    m = 1.0 + alpha * math.exp(2.0 * f)
    if m < 0:
        raise InvalidParameters(
            f"{family.value} needs 1 + alpha*e^(2f) >= 0 at boundary {which} (alpha={alpha}, f={f})"
        )
    return m


def _validate(family: FamilySpec, alpha_i: float, alpha_j: float, f_i: float, f_j: float, c_ij: float) -> None:
    _check_finite(alpha_i=alpha_i, alpha_j=alpha_j, f_i=f_i, f_j=f_j, C=c_ij)
    if not isinstance(family, FamilySpec):
        raise InvalidParameters(f"family must be a FamilySpec, got {family!r}")


def cosh_length(
    family: FamilySpec,
    alpha_i: float,
    alpha_j: float,
    f_i: float,
    f_j: float,
    eta: float,
    c_ij: float = 0.0,
) -> float:
    """Closed-form ``cosh l_ij`` of the family. Values ``<= 1`` are returned as-is."""
    _validate(family, alpha_i, alpha_j, f_i, f_j, c_ij)
    _check_finite(eta=eta)
    e_term = eta * math.exp(f_i + f_j)

    if family.uses_c:
        x = f_j - f_i - c_ij
        return (-math.cosh(x) if family.is_a else math.cosh(x)) + e_term

    root = math.sqrt(
        _p_magnitude(family, alpha_i, f_i, "i") * _p_magnitude(family, alpha_j, f_j, "j")
    )
    if family in (FamilySpec.A1P, FamilySpec.B1N):
        return -root + e_term
    return root + e_term


def is_degenerate(cosh_l: float) -> bool:
    return not cosh_l > 1.0


def edge_ratio(
    family: FamilySpec,
    alpha_i: float,
    alpha_j: float,
    f_i: float,
    f_j: float,
    c_ij: float = 0.0,
) -> float:
    """``rho_ij = sinh d_ji / sinh d_ij``."""
    _validate(family, alpha_i, alpha_j, f_i, f_j, c_ij)
    if family.uses_c:
        ratio = math.exp(f_j - f_i - c_ij)
    else:
        m_i = _p_magnitude(family, alpha_i, f_i, "i")
        m_j = _p_magnitude(family, alpha_j, f_j, "j")
        if m_i == 0.0:
            raise PoleAtZero(
                "1 + alpha_i*e^(2f_i) = 0 makes rho_ij infinite; the reverse ratio rho_ji is 0",
                reverse_ratio=0.0,
            )
        ratio = math.sqrt(m_j / m_i)
    return ratio if family.is_a else -ratio


def _sinh_from_cosh(cosh_l: float) -> float:
    return math.sqrt((cosh_l - 1.0) * (cosh_l + 1.0))


def arccoth(t: float) -> float:
    if not abs(t) > ARCCOTH_GUARD:
        raise ValueError(f"arccoth needs |t| > 1, got {t!r}")
    return 0.5 * math.log((t + 1.0) / (t - 1.0))


def real_split_exists(l: float, rho: float) -> bool:
    """``rho > 0`` or ``rho`` in ``(-e^{-l}, 0)`` or ``rho < -e^{l}``."""
    return rho > 0 or -math.exp(-l) < rho < 0 or rho < -math.exp(l)


def split_edge(cosh_l: float, rho: float) -> EdgeSplit:
    """Split an edge of total ``cosh l`` by the ratio ``rho``.

    ``coth d_ij = (cosh l + rho) / sinh l`` always holds; signed partial
    lengths are attached only when both coth values exceed 1 in modulus.
    """
    _check_finite(cosh_l=cosh_l, rho=rho)
    if not cosh_l > 1.0:
        raise DegenerateEdge(f"cosh l = {cosh_l!r} <= 1")
    if rho == 0.0:
        raise ZeroRatio("split ratio rho is zero")

    l = math.acosh(cosh_l)
    sinh_l = _sinh_from_cosh(cosh_l)
    t_ij = (cosh_l + rho) / sinh_l
    t_ji = (cosh_l + 1.0 / rho) / sinh_l

    if not (abs(t_ij) > ARCCOTH_GUARD and abs(t_ji) > ARCCOTH_GUARD):
        return EdgeSplit(cosh_l, l, rho, t_ij, t_ji, None, None, False)

    d_ij = arccoth(t_ij)
    d_ji = l - d_ij
    ratio_error = abs(math.sinh(d_ji) / math.sinh(d_ij) - rho) / max(1.0, abs(rho))
    sum_error = abs(d_ij + d_ji - l)
    residual = max(ratio_error, sum_error)
    if residual > SPLIT_RECHECK_TOL:
        trace("split", f"re-verification residual {residual:.3e} for cosh_l={cosh_l!r} rho={rho!r}")
    return EdgeSplit(cosh_l, l, rho, t_ij, t_ji, d_ij, d_ji, True, residual)


def coth_d(
    family: FamilySpec,
    alpha_i: float,
    alpha_j: float,
    f_i: float,
    f_j: float,
    eta: float,
    c_ij: float = 0.0,
) -> float:
    """Closed-form ``coth d_ij`` of the family (the derivative of ``l_ij`` in ``f_i``)."""
    cl = cosh_length(family, alpha_i, alpha_j, f_i, f_j, eta, c_ij)
    if not cl > 1.0:
        raise DegenerateEdge(f"cosh l = {cl!r} <= 1")
    sinh_l = _sinh_from_cosh(cl)
    e_term = eta * math.exp(f_i + f_j)

    if family is FamilySpec.A2:
        return (math.sinh(f_j - f_i - c_ij) + e_term) / sinh_l
    if family is FamilySpec.B2:
        return (-math.sinh(f_j - f_i - c_ij) + e_term) / sinh_l

    m_i = _p_magnitude(family, alpha_i, f_i, "i")
    m_j = _p_magnitude(family, alpha_j, f_j, "j")
    if m_i == 0.0:
        raise PoleAtZero("1 + alpha_i*e^(2f_i) = 0: coth d_ij is unbounded", reverse_ratio=0.0)
    root_ratio = math.sqrt(m_j / m_i)
    scale_i = math.exp(2.0 * f_i)
    if family is FamilySpec.A1P:
        return (-alpha_i * scale_i * root_ratio + e_term) / sinh_l
    if family is FamilySpec.B1P:
        return (alpha_i * scale_i * root_ratio + e_term) / sinh_l
    # P_i < 0, so -alpha_i e^{2f_i} = |P_i| + 1
    if family is FamilySpec.A1N:
        return ((m_i + 1.0) * root_ratio + e_term) / sinh_l
    return (-(m_i + 1.0) * root_ratio + e_term) / sinh_l


def h_value(rho: float) -> float:
    """``H = log(sinh^2 d_ij / sinh^2 d_ji) = -2 log|rho|``."""
    if rho == 0.0:
        raise ZeroRatio("H is undefined for rho = 0")
    return -2.0 * math.log(abs(rho))


def h_closed_form(params: EdgeParams) -> float:
    """The family's closed form for H without going through rho.

    ``2(f_i - f_j + C_ij)`` for A2/B2 and ``log(P_i / P_j)`` with
    ``P_r = 1 + alpha_r e^{2f_r}`` otherwise.
    """
    p = params
    _validate(p.family, p.alpha_i, p.alpha_j, p.f_i, p.f_j, p.c_ij)
    if p.family.uses_c:
        return 2.0 * p.f_i - 2.0 * p.f_j + 2.0 * p.c_ij
    p_i = 1.0 + p.alpha_i * math.exp(2.0 * p.f_i)
    p_j = 1.0 + p.alpha_j * math.exp(2.0 * p.f_j)
    for which, value in (("i", p_i), ("j", p_j)):
        if (value < 0.0) != p.family.negative_p:
            raise InvalidParameters(f"{p.family.value}: P_{which} = {value!r} is outside the family's branch")
    if p_i == 0.0:
        raise PoleAtZero("H is unbounded at P_i = 0", reverse_ratio=0.0)
    if p_j == 0.0:
        raise ZeroRatio("H is unbounded at P_j = 0")
    return math.log(p_i / p_j)


def pole_at_zero(family: FamilySpec, alpha: float, f: float) -> bool:
    """True when ``1 + alpha e^{2f}`` vanishes on a family that allows it as a boundary value."""
    if family.uses_c or family.negative_p:
        return False
    return 1.0 + alpha * math.exp(2.0 * f) == 0.0


def h_partial_i(params: EdgeParams) -> float:
    """``dH/df_i``: 2 for A2/B2, ``2 alpha_i e^{2f_i} / (1 + alpha_i e^{2f_i})`` otherwise."""
    p = params
    if p.family.uses_c:
        return 2.0
    e2 = math.exp(2.0 * p.f_i)
    denom = 1.0 + p.alpha_i * e2
    if denom == 0.0:
        raise PoleAtZero("dH/df_i is unbounded at 1 + alpha_i*e^(2f_i) = 0", reverse_ratio=0.0)
    return 2.0 * p.alpha_i * e2 / denom


def normalize_edge_alpha(
    alpha_raw_i: float,
    alpha_raw_j: float,
    f_i: float,
    f_j: float,
    eta: float,
) -> Tuple[int, int, float, float, float]:
    """Rescale one edge to ``alpha`` in {-1, 0, 1}; returns ``(alpha_i, alpha_j, g_i, g_j, eta~)``."""
    _check_finite(alpha_raw_i=alpha_raw_i, alpha_raw_j=alpha_raw_j, f_i=f_i, f_j=f_j, eta=eta)
    if (alpha_raw_i == 0.0) != (alpha_raw_j == 0.0):
        raise MixedSignAlpha(
            f"alpha_raw mixes zero and nonzero on one edge ({alpha_raw_i!r}, {alpha_raw_j!r})"
        )
    a_i = int(math.copysign(1, alpha_raw_i)) if alpha_raw_i != 0.0 else 0
    a_j = int(math.copysign(1, alpha_raw_j)) if alpha_raw_j != 0.0 else 0
    if a_i == 0:
        return 0, 0, f_i, f_j, eta
    g_i = f_i + 0.5 * math.log(abs(alpha_raw_i))
    g_j = f_j + 0.5 * math.log(abs(alpha_raw_j))
    return a_i, a_j, g_i, g_j, eta / math.sqrt(abs(alpha_raw_i) * abs(alpha_raw_j))


@dataclass(frozen=True)
class AlphaNormalization:
    alpha: Tuple[int, ...]
    g: Tuple[float, ...]
    eta: Tuple[float, ...]


def normalize_alpha(
    alpha_raw: Sequence[float],
    f: Sequence[float],
    eta: Sequence[float],
    edges: Sequence[Tuple[int, int]],
) -> AlphaNormalization:
    """Absorb ``|alpha_raw|`` into the conformal factor and the edge weights.

    ``edges[e]`` are the two boundary components of edge ``e``. An edge with
    exactly one zero ``alpha_raw`` end cannot be normalized into one family.
    """
    if len(alpha_raw) != len(f):
        raise InvalidParameters("alpha_raw and f must have one entry per boundary component")
    if len(eta) != len(edges):
        raise InvalidParameters("eta must have one entry per edge")

    alpha: List[int] = []
    g: List[float] = []
    for raw, fr in zip(alpha_raw, f):
        _check_finite(alpha_raw=raw, f=fr)
        if raw == 0.0:
            alpha.append(0)
            g.append(float(fr))
        else:
            alpha.append(int(math.copysign(1, raw)))
            g.append(float(fr) + 0.5 * math.log(abs(raw)))

    new_eta: List[float] = []
    for idx, ((i, j), w) in enumerate(zip(edges, eta)):
        a_i, a_j = alpha_raw[i], alpha_raw[j]
        if (a_i == 0.0) != (a_j == 0.0):
            raise MixedSignAlpha(
                f"alpha_raw mixes zero and nonzero between boundaries {i} and {j}",
                edge=idx,
            )
        if a_i == 0.0:
            new_eta.append(float(w))
        else:
            new_eta.append(float(w) / math.sqrt(abs(a_i) * abs(a_j)))
    return AlphaNormalization(tuple(alpha), tuple(g), tuple(new_eta))


@dataclass(frozen=True)
class FaceFamilyReport:
    ok: bool
    rule: Optional[str] = None
    message: str = ""


RULE_PAIRS = "pairs"
RULE_ALONE = "alone"
RULE_MATCHED = "matched"
RULE_ALL_B = "all-b"

RULE_MESSAGES: Dict[str, str] = {
    RULE_PAIRS: "A-families can not exist simultaneously in pairs",
    RULE_ALONE: "B-families can not exist alone",
    RULE_MATCHED: "only matched mixed types (one A plus two B of the same kind)",
    RULE_ALL_B: "all-B face: ρ-product negative",
}


def validate_face_families(families: Iterable[FamilySpec]) -> FaceFamilyReport:
    """Check a face's family multiset against the coexistence rules.

    Accepted: three copies of one A-family, or one A-family with two copies
    of its B partner.
    """
    fams = [FamilySpec(f) for f in families]
    if len(fams) != 3:
        raise InvalidParameters(f"a face has exactly three edges, got {len(fams)}")

    a_fams = [f for f in fams if f.is_a]
    b_fams = [f for f in fams if f.is_b]

    if not a_fams:
        return FaceFamilyReport(False, RULE_ALL_B, RULE_MESSAGES[RULE_ALL_B])
    if len(set(a_fams)) > 1:
        return FaceFamilyReport(False, RULE_PAIRS, RULE_MESSAGES[RULE_PAIRS])
    if not b_fams:
        return FaceFamilyReport(True)
    if len(b_fams) == 1:
        # one negative ratio among three: the product can never be 1
        return FaceFamilyReport(False, RULE_MATCHED, RULE_MESSAGES[RULE_MATCHED] + "; ρ-product negative")
    if all(b is a_fams[0].partner for b in b_fams):
        return FaceFamilyReport(True)
    return FaceFamilyReport(False, RULE_MATCHED, RULE_MESSAGES[RULE_MATCHED])


ALLOWED_FAMILY_SETS: Tuple[frozenset, ...] = (
    frozenset({FamilySpec.A1P}),
    frozenset({FamilySpec.A1N}),
    frozenset({FamilySpec.A2}),
    frozenset({FamilySpec.A1P, FamilySpec.B1P}),
    frozenset({FamilySpec.A1N, FamilySpec.B1N}),
    frozenset({FamilySpec.A2, FamilySpec.B2}),
)


def validate_family_set(families: Iterable[FamilySpec]) -> FaceFamilyReport:
    """Surface-wide check of which families may appear together."""
    present = frozenset(FamilySpec(f) for f in families)
    if not present or present in ALLOWED_FAMILY_SETS:
        return FaceFamilyReport(True)
    a_present = {f for f in present if f.is_a}
    b_present = {f for f in present if f.is_b}
    if len(a_present) > 1:
        return FaceFamilyReport(False, RULE_PAIRS, RULE_MESSAGES[RULE_PAIRS])
    if not a_present:
        return FaceFamilyReport(False, RULE_ALONE, RULE_MESSAGES[RULE_ALONE])
    if b_present and any(b.partner not in a_present for b in b_present):
        return FaceFamilyReport(False, RULE_MATCHED, RULE_MESSAGES[RULE_MATCHED])
    return FaceFamilyReport(False, RULE_ALONE, RULE_MESSAGES[RULE_ALONE])


# Classical structures each family reduces to when alpha (or C) is constant.
SPECIAL_CASES: Dict[Tuple[FamilySpec, Optional[int]], str] = {
    (FamilySpec.A1P, 1): "generalized circle packing of type (-1,-1,-1)",
    (FamilySpec.A1P, 0): "vertex scaling",
    (FamilySpec.A1P, -1): "partial structure of type (1,1,-1)",
    (FamilySpec.A1N, -1): "generalized circle packing of type (-1,-1,1)",
    (FamilySpec.A2, None): "generalized circle packing of type (-1,-1,0)",
    (FamilySpec.B1P, 1): "twisted structure of type (-1,-1,-1)",
    (FamilySpec.B1P, 0): "twisted structure of type (0,0,-1)",
    (FamilySpec.B1P, -1): "twisted structure of type (1,1,-1)",
    (FamilySpec.B1N, -1): "twisted structure of type (1,-1,-1)",
    (FamilySpec.B2, None): "twisted structure of type (0,-1,-1)",
}


def identify_special_case(
    family: FamilySpec,
    alphas: Iterable[float] = (),
    cs: Iterable[float] = (),
) -> Optional[str]:
    """Name the classical structure, if any, that ``family`` reduces to.

    A1/B1 families need a constant ``alpha``; A2/B2 need ``C`` identically 0.
    """
    family = FamilySpec(family)
    if family.uses_c:
        if any(c != 0.0 for c in cs):
            return None
        return SPECIAL_CASES.get((family, None))
    values = {int(a) for a in alphas}
    if len(values) != 1:
        return None
    return SPECIAL_CASES.get((family, values.pop()))

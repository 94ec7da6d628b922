"""Reduction types and local root numbers of E_t at every place.

Two routes are provided. The ``local_root_*`` functions evaluate the closed
valuation conditions directly. ``reduction_type_odd`` and
``local_root_two_cases`` instead build an integral model, locate the singular
point of its reduction and classify it, which is what
:func:`rootnumber.root_number_local_product` multiplies together.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .curve import check_parameter, curve_Euv, curve_Ewv, invariants
from .exactq import DomainError, InternalError, RationalLike, is_prime, legendre, ord_p

__all__ = [
    "ReductionType",
    "LocalData",
    "CaseTrace",
    "INFINITY",
    "sign_for",
    "reduction_type_odd",
    "local_root_odd",
    "local_root_two",
    "local_root_two_cases",
    "local_root_infinity",
]

INFINITY = "inf"
Place = Union[int, str]


class ReductionType(enum.Enum):
    GOOD = "good"
    SPLIT_MULTIPLICATIVE = "split multiplicative"
    NONSPLIT_MULTIPLICATIVE = "nonsplit multiplicative"
    ADDITIVE = "additive"


# Local root number forced by the reduction type; additive needs more data.
_SIGN = {
    ReductionType.GOOD: 1,
    ReductionType.SPLIT_MULTIPLICATIVE: -1,
    ReductionType.NONSPLIT_MULTIPLICATIVE: 1,
}


def sign_for(reduction: ReductionType) -> int:
    try:
        return _SIGN[reduction]
    except KeyError:
        raise DomainError("the reduction type alone does not fix the sign at an additive prime") from None


@dataclass(frozen=True)
class LocalData:
    place: Place
    w: int
    reduction: ReductionType | None = None

    def __post_init__(self) -> None:
        if self.w not in (1, -1):
            raise DomainError(f"local root number must be +1 or -1, got {self.w}")
        if self.reduction in _SIGN and _SIGN[self.reduction] != self.w:
            raise DomainError(f"{self.reduction.value} reduction forces w = {_SIGN[self.reduction]}")


def _check_coprime(u: int, v: int) -> None:
    if u == 0 or v == 0 or abs(u) == abs(v):
        raise DomainError(f"(u, v) = ({u}, {v}) is degenerate")
    if math.gcd(u, v) != 1:
        raise DomainError(f"u = {u} and v = {v} are not coprime")


def _require_odd_prime(p: int) -> None:
    if p == 2 or not is_prime(p):
        raise DomainError(f"{p} is not an odd prime")


# ---------------------------------------------------------------------------
# odd primes


def reduction_type_odd(u: int, v: int, p: int) -> ReductionType:
    """Reduction type of y^2 = x(x+u^2)(x+v^2) at the odd prime p."""
    _require_odd_prime(p)
    _check_coprime(u, v)
    m = curve_Euv(u, v)
    if int(invariants(m).delta) % p != 0:
        return ReductionType.GOOD
    # The cubic has roots 0, -u^2, -v^2; the node sits at the root that
    # collides mod p. Translate it to the origin and test b2 = 4 a2'.
    roots = (0, -u * u, -v * v)
    collisions = [
        roots[i]
        for i in range(3)
        for j in range(i + 1, 3)
        if (roots[i] - roots[j]) % p == 0
    ]
    if len(collisions) != 1:
        # all three roots coincide: a cusp, impossible for coprime u, v
        raise InternalError(f"triple root mod {p} for (u, v) = ({u}, {v})")
    x0 = collisions[0]
    b2 = 4 * (int(m.a2) + 3 * x0)
    symbol = legendre(b2, p)
    if symbol == 1:
        return ReductionType.SPLIT_MULTIPLICATIVE
    if symbol == -1:
        return ReductionType.NONSPLIT_MULTIPLICATIVE
    raise InternalError(f"additive reduction at odd p = {p} for (u, v) = ({u}, {v})")


def local_root_odd(t: RationalLike, p: int) -> int:
    t = check_parameter(t)
    _require_odd_prime(p)
    if ord_p(t, p) != 0:
        return -1
    if p % 4 == 1 and ord_p(t * t - 1, p) > 0:
        return -1
    return 1


# ---------------------------------------------------------------------------
# the prime 2


def local_root_two(t: RationalLike) -> int:
    t = check_parameter(t)
    if ord_p(t, 2) in (2, -2) or ord_p(t * t - 1, 2) == 3:
        return 1
    return -1


@dataclass(frozen=True)
class CaseTrace:
    """Which branch of the 2-adic case analysis produced W_2, and why.

    ``bullet`` is one of ``"I-good"``, ``"I-split"`` (models y^2 + vxy = ...),
    or ``"II-1"`` .. ``"II-4"`` (model y^2 = x(x+u^2)(x+v^2)): ord_2(u) = 1,
    then u odd with ord_2(u^2 - v^2) equal to 3, 4, or larger.
    """

    case: str
    bullet: str
    u: int
    v: int
    ord2_delta: int
    w: int | None = None
    ord2_c4: int | None = None
    ord2_c6: int | None = None
    c4_odd: int | None = None
    c6_odd: int | None = None
    ord2_u2_minus_v2: int | None = None
    residue_2c6_plus_c4_mod32: int | None = None
    c6_odd_mod4: int | None = None


def _ord2(n: int) -> int:
    return ord_p(Fraction(n), 2)


def _case_one(u: int, v: int) -> tuple[int, CaseTrace]:
    w = u // 4
    m = curve_Ewv(w, v)
    delta = int(invariants(m).delta)
    od = _ord2(delta)
    if od == 0:
        return 1, CaseTrace("I", "I-good", u, v, od, w=w)
    # singular point at (0, 0) mod 2; b2 = a1^2 + 4 a2 is odd, a nonzero square mod 2
    b2 = int(invariants(m).b2)
    if b2 % 2 == 0:
        raise InternalError(f"Case I model with even b2 for (u, v) = ({u}, {v})")
    return -1, CaseTrace("I", "I-split", u, v, od, w=w)


def _case_two(u: int, v: int) -> tuple[int, CaseTrace]:
    inv = invariants(curve_Euv(u, v))
    c4, c6, delta = int(inv.c4), int(inv.c6), int(inv.delta)
    if c4 % 16 or c6 % 64 or (c4 // 16) % 2 == 0 or (c6 // 64) % 2 == 0:
        raise InternalError(f"c4 = {c4}, c6 = {c6} do not have 2-adic shape 16*odd, 64*odd")
    c4p, c6p = c4 // 16, c6 // 64
    common = dict(
        u=u,
        v=v,
        ord2_delta=_ord2(delta),
        ord2_c4=_ord2(c4),
        ord2_c6=_ord2(c6),
        c4_odd=c4p,
        c6_odd=c6p,
        ord2_u2_minus_v2=_ord2(u * u - v * v),
        residue_2c6_plus_c4_mod32=(2 * c6p + c4p) % 32,
        c6_odd_mod4=c6p % 4,
    )
    ou = _ord2(u)
    e = common["ord2_u2_minus_v2"]
    od = common["ord2_delta"]
    if ou == 1:
        if od != 8 or common["residue_2c6_plus_c4_mod32"] != 7:
            raise InternalError(f"ord_2(u) = 1 branch off its table row: {common}")
        return -1, CaseTrace("II", "II-1", **common)
    if ou != 0:
        raise InternalError(f"Case II reached with ord_2(u) = {ou}")
    if common["c6_odd_mod4"] != 1:
        raise InternalError(f"u, v odd but c6' = {c6p} is not 1 mod 4")
    if e == 3:
        if od != 10:
            raise InternalError(f"expected ord_2(delta) = 10, got {od}")
        return 1, CaseTrace("II", "II-2", **common)
    if e == 4:
        if od != 12:
            raise InternalError(f"expected ord_2(delta) = 12, got {od}")
        return -1, CaseTrace("II", "II-3", **common)
    if e > 4:
        # additive, ord_2(j) < 0 and c6' = 1 mod 4
        if od <= 12 or _ord2(c4**3) >= od:
            raise InternalError(f"expected ord_2(delta) > 12 and ord_2(j) < 0, got {common}")
        return -1, CaseTrace("II", "II-4", **common)
    raise InternalError(f"u, v odd with ord_2(u^2 - v^2) = {e} < 3")


def local_root_two_cases(u: int, v: int) -> tuple[int, CaseTrace]:
    """W_2(E_{u/v}) by the case analysis on ord_2(uv); returns (sign, trace)."""
    _check_coprime(u, v)
    if v % 2 == 0:
        # E_{u,v} is symmetric in u and v; keep v odd
        u, v = v, u
    if _ord2(u) >= 2:
        return _case_one(u, v)
    return _case_two(u, v)


def local_root_infinity() -> int:
    return -1

"""Weierstrass models, their invariants, and the exact chord-tangent group law.

Points are affine pairs of Fractions; the point at infinity is ``O``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactq import (
    DegenerateParameterError,
    DomainError,
    RationalLike,
    as_rational,
    format_rational,
    parse_rational,
)

__all__ = [
    "WeierstrassModel",
    "Invariants",
    "Point",
    "O",
    "compute_invariants",
    "invariants",
    "check_parameter",
    "curve_Et",
    "curve_Euv",
    "curve_Ewv",
    "to_integral",
    "from_integral",
    "on_curve",
    "negate",
    "add",
    "multiply",
    "torsion_A_t",
    "point_order",
    "parse_point",
    "format_point",
]


@dataclass(frozen=True)
class Invariants:
    b2: Fraction
    c4: Fraction
    c6: Fraction
    delta: Fraction

    @property
    def j(self) -> Fraction:
        if self.delta == 0:
            raise DomainError("j-invariant of a singular model is undefined")
        return self.c4**3 / self.delta


def compute_invariants(a1, a2, a3, a4, a6) -> Invariants:
    coeffs = [as_rational(a) for a in (a1, a2, a3, a4, a6)]
    if all(a.denominator == 1 for a in coeffs):
        # same formulas in plain ints; Fraction arithmetic is much slower
        coeffs = [a.numerator for a in coeffs]
    a1, a2, a3, a4, a6 = coeffs
    b2 = a1 * a1 + 4 * a2
    b4_twice = 2 * a4 + a1 * a3
    c4 = b2 * b2 - 24 * b4_twice
    c6 = -(b2**3) + 36 * b2 * b4_twice - 216 * (a3 * a3 + 4 * a6)
    delta = Fraction(c4**3 - c6**2) / 1728
    return Invariants(Fraction(b2), Fraction(c4), Fraction(c6), delta)


@dataclass(frozen=True)
class WeierstrassModel:
    """y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6, required nonsingular."""

    a1: Fraction = Fraction(0)
    a2: Fraction = Fraction(0)
    a3: Fraction = Fraction(0)
    a4: Fraction = Fraction(0)
    a6: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        for name in ("a1", "a2", "a3", "a4", "a6"):
            object.__setattr__(self, name, as_rational(getattr(self, name)))
        if compute_invariants(self.a1, self.a2, self.a3, self.a4, self.a6).delta == 0:
            raise DomainError("singular Weierstrass model (discriminant 0)")

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    @property
    def is_integral(self) -> bool:
        return all(a.denominator == 1 for a in self.coefficients)


@lru_cache(maxsize=4096)
def invariants(m: WeierstrassModel) -> Invariants:
    return compute_invariants(*m.coefficients)


@dataclass(frozen=True)
class Point:
    """Affine point (x, y); ``Point()`` with no coordinates is the point at infinity."""

    x: Fraction | None = None
    y: Fraction | None = None

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    def __repr__(self) -> str:
        return format_point(self)


O = Point()


def _pt(x: RationalLike, y: RationalLike) -> Point:
    return Point(as_rational(x), as_rational(y))


# ---------------------------------------------------------------------------
# the family and its integral models


def check_parameter(t: RationalLike) -> Fraction:
    t = as_rational(t)
    if t in (0, 1, -1):
        raise DegenerateParameterError(f"t = {format_rational(t)} gives a singular curve")
    return t


def curve_Et(t: RationalLike) -> WeierstrassModel:
    """y^2 = x(x+1)(x+t^2)."""
    t = check_parameter(t)
    return WeierstrassModel(a2=1 + t * t, a4=t * t)


def _check_uv(u: int, v: int) -> None:
    if u == 0 or v == 0 or abs(u) == abs(v):
        raise DegenerateParameterError(f"(u, v) = ({u}, {v}) gives a singular curve")
    if math.gcd(u, v) != 1:
        raise DomainError(f"u = {u} and v = {v} are not coprime")


@lru_cache(maxsize=4096)
def curve_Euv(u: int, v: int) -> WeierstrassModel:
    """Integral model y^2 = x(x+u^2)(x+v^2) of E_t for t = u/v."""
    _check_uv(u, v)
    return WeierstrassModel(a2=u * u + v * v, a4=u * u * v * v)


def curve_Ewv(w: int, v: int) -> WeierstrassModel:
    """y^2 + vxy = x^3 + 4w^2 x^2 + w^2 v^2 x, a model of E_t for t = 4w/v, v odd."""
    if v % 2 == 0:
        raise DomainError(f"v = {v} must be odd")
    if w == 0 or math.gcd(4 * w, v) != 1:
        raise DomainError(f"(w, v) = ({w}, {v}) needs w != 0 and gcd(4w, v) = 1")
    return WeierstrassModel(a1=v, a2=4 * w * w, a4=w * w * v * v)


def to_integral(P: Point, v: int) -> Point:
    """Carry a point of E_t to E_{u,v}: (x, y) -> (v^2 x, v^3 y)."""
    if P.is_infinity:
        return O
    return Point(P.x * v**2, P.y * v**3)


def from_integral(P: Point, v: int) -> Point:
    if P.is_infinity:
        return O
    return Point(P.x / v**2, P.y / v**3)


# ---------------------------------------------------------------------------
# group law


def on_curve(P: Point, m: WeierstrassModel) -> bool:
    if P.is_infinity:
        return True
    x, y = P.x, P.y
    return y * y + m.a1 * x * y + m.a3 * y == x**3 + m.a2 * x * x + m.a4 * x + m.a6


def _require_on(P: Point, m: WeierstrassModel) -> None:
    if not on_curve(P, m):
        raise DomainError(f"{format_point(P)} is not on the curve")


def negate(P: Point, m: WeierstrassModel) -> Point:
    if P.is_infinity:
        return O
    return Point(P.x, -P.y - m.a1 * P.x - m.a3)


def _add(P: Point, Q: Point, m: WeierstrassModel) -> Point:
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
    if x1 == x2:
        if y1 == -y2 - m.a1 * x2 - m.a3:
            return O
        # tangent at P (here P == Q)
        lam = (3 * x1 * x1 + 2 * m.a2 * x1 + m.a4 - m.a1 * y1) / (2 * y1 + m.a1 * x1 + m.a3)
    else:
        lam = (y2 - y1) / (x2 - x1)
    nu = y1 - lam * x1
    x3 = lam * lam + m.a1 * lam - m.a2 - x1 - x2
    y3 = -(lam + m.a1) * x3 - nu - m.a3
    return Point(x3, y3)


def add(P: Point, Q: Point, m: WeierstrassModel) -> Point:
    _require_on(P, m)
    _require_on(Q, m)
    return _add(P, Q, m)


def multiply(n: int, P: Point, m: WeierstrassModel) -> Point:
    _require_on(P, m)
    if n < 0:
        return multiply(-n, negate(P, m), m)
    result, base = O, P
    while n:
        if n & 1:
            result = _add(result, base, m)
        n >>= 1
        if n:
            base = _add(base, base, m)
    return result


def torsion_A_t(t: RationalLike) -> tuple[Point, ...]:
    """The eight specialized torsion points of E_t, a copy of Z/2 x Z/4."""
    t = check_parameter(t)
    points = (
        O,
        _pt(0, 0),
        _pt(-1, 0),
        _pt(-t * t, 0),
        _pt(-t, -t * (t - 1)),
        _pt(-t, t * (t - 1)),
        _pt(t, -t * (t + 1)),
        _pt(t, t * (t + 1)),
    )
    m = curve_Et(t)
    for P in points:
        _require_on(P, m)
    return points


def point_order(P: Point, m: WeierstrassModel, cap: int = 8) -> int | None:
    """Smallest n <= cap with nP = O, or None when the order exceeds cap.

    On the curves E_t the torsion group is Z/2 x Z/4 or Z/2 x Z/8 (Mazur), so
    with the default cap a None result means P has infinite order. For other
    models it only means "larger than cap".
    """
    _require_on(P, m)
    Q = P
    for n in range(1, cap + 1):
        if Q.is_infinity:
            return n
        Q = _add(Q, P, m)
    return None


# ---------------------------------------------------------------------------
# text form

_POINT_RE = re.compile(r"^\s*\(\s*([^,()]+?)\s*,\s*([^,()]+?)\s*\)\s*$")


def parse_point(text: str) -> Point:
    """Parse ``"(x,y)"`` with exact rational coordinates, or ``"O"``."""
    if text.strip() == "O":
        return O
    m = _POINT_RE.match(text)
    if m is None:
        raise DomainError(f"not a point: {text!r}")
    return Point(parse_rational(m.group(1)), parse_rational(m.group(2)))


def format_point(P: Point) -> str:
    if P.is_infinity:
        return "O"
    return f"({format_rational(P.x)},{format_rational(P.y)})"

"""Rational right triangles with legs (1, a) and (t, a), and the points of E_t.

A solution is a triple (a, b, c) of positive rationals with 1 + a^2 = b^2 and
t^2 + a^2 = c^2. For t != 1 every point of E_t(Q) outside A_t gives one, via
the conic C_t : (w^2 - r^2)(2s) = t(w^2 - s^2)(2r), eight points per solution.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Any

from .curve import (
    Point,
    add,
    curve_Et,
    check_parameter,
    format_point,
    on_curve,
    point_order,
    torsion_A_t,
)
from .exactq import DomainError, InternalError, RationalLike, as_rational, format_rational, rational_sqrt

__all__ = [
    "TriangleTriple",
    "ConicPoint",
    "Classification",
    "ExtraTorsionReport",
    "phi",
    "phi1",
    "phi2",
    "on_conic",
    "in_conic_open",
    "g_orbit",
    "triple_to_conic",
    "order8_point",
    "halve",
    "extra_torsion_report",
    "classify",
    "t1_family",
]


@dataclass(frozen=True)
class TriangleTriple:
    a: Fraction
    b: Fraction
    c: Fraction
    t: Fraction

    def __post_init__(self) -> None:
        if min(self.a, self.b, self.c) <= 0:
            raise DomainError(f"triangle sides must be positive: {self}")
        if 1 + self.a**2 != self.b**2 or self.t**2 + self.a**2 != self.c**2:
            raise DomainError(f"not a solution for t = {format_rational(self.t)}: {self}")

    def __str__(self) -> str:
        return " ".join(format_rational(s) for s in (self.a, self.b, self.c))


@dataclass(frozen=True)
class ConicPoint:
    """Projective point (r : s : w)."""

    r: Fraction
    s: Fraction
    w: Fraction

    def __post_init__(self) -> None:
        if self.r == self.s == self.w == 0:
            raise DomainError("(0 : 0 : 0) is not a projective point")

    def normalized(self) -> "ConicPoint":
        for scale in (self.w, self.s, self.r):
            if scale != 0:
                return ConicPoint(self.r / scale, self.s / scale, self.w / scale)
        raise InternalError("unreachable")

    def same_as(self, other: "ConicPoint") -> bool:
        return self.normalized() == other.normalized()


def on_conic(Q: ConicPoint, t: RationalLike) -> bool:
    t = as_rational(t)
    r, s, w = Q.r, Q.s, Q.w
    return (w * w - r * r) * 2 * s == t * (w * w - s * s) * 2 * r


def in_conic_open(Q: ConicPoint, t: RationalLike) -> bool:
    r, s, w = Q.r, Q.s, Q.w
    return on_conic(Q, t) and r * s * w * (w * w - r * r) != 0


def _positive_t(t: RationalLike) -> Fraction:
    t = as_rational(t)
    if t <= 0 or t == 1:
        raise DomainError(f"t must be positive and different from 1, got {format_rational(t)}")
    return t


def phi1(P: Point, t: RationalLike) -> ConicPoint:
    """(x, y) -> (x + t^2, t(x + 1), y); O goes to (0 : 0 : 1)."""
    t = check_parameter(t)
    if not on_curve(P, curve_Et(t)):
        raise DomainError(f"{format_point(P)} is not on E_{format_rational(t)}")
    if P.is_infinity:
        return ConicPoint(Fraction(0), Fraction(0), Fraction(1))
    return ConicPoint(P.x + t * t, t * (P.x + 1), P.y)


def phi2(Q: ConicPoint, t: RationalLike) -> TriangleTriple:
    t = _positive_t(t)
    if not in_conic_open(Q, t):
        raise DomainError(f"{Q} is not on the open part of C_t (rsw(w^2 - r^2) = 0 or off the conic)")
    r, s, w = Q.r, Q.s, Q.w
    a = abs((w * w - r * r) / (2 * r * w))
    b = abs((w * w + r * r) / (2 * r * w))
    c = t * abs((w * w + s * s) / (2 * s * w))
    return TriangleTriple(a, b, c, t)


def phi(P: Point, t: RationalLike) -> TriangleTriple:
    """Triangle solution attached to a point of E_t(Q) outside A_t."""
    t = _positive_t(t)
    m = curve_Et(t)
    if not on_curve(P, m):
        raise DomainError(f"{format_point(P)} is not on E_{format_rational(t)}")
    if P in torsion_A_t(t):
        raise DomainError(f"{format_point(P)} lies in A_t and gives no triangle")
    x, y = P.x, P.y
    tt = t * t
    a = abs((x * x - tt) / (2 * y))
    b = abs((x * x + 2 * x + tt) / (2 * y))
    c = abs((x * x + 2 * tt * x + tt) / (2 * y))
    return TriangleTriple(a, b, c, t)


_INVOLUTIONS = (
    lambda r, s: (-1 / r, s),
    lambda r, s: (r, -1 / s),
    lambda r, s: (-r, -s),
)


def g_orbit(Q: ConicPoint) -> frozenset[ConicPoint]:
    """Orbit of Q (normalized to w = 1) under the order-8 group G."""
    if Q.w == 0 or Q.r == 0 or Q.s == 0:
        raise DomainError(f"{Q} needs r, s, w all nonzero")
    Q = Q.normalized()
    seen = {(Q.r, Q.s)}
    frontier = [(Q.r, Q.s)]
    while frontier:
        r, s = frontier.pop()
        for g in _INVOLUTIONS:
            image = g(r, s)
            if image not in seen:
                seen.add(image)
                frontier.append(image)
    one = Fraction(1)
    return frozenset(ConicPoint(r, s, one) for r, s in seen)


def triple_to_conic(T: TriangleTriple) -> ConicPoint:
    """A point (r : s : 1) of C_t' over T, with r and s taken in (0, 1).

    r solves (1 - r^2)/(2r) = a and s solves t(1 - s^2)/(2s) = a.
    """
    a, t = T.a, T.t
    root_r = rational_sqrt(a * a + 1)
    root_s = rational_sqrt(a * a + t * t)
    if root_r is None or root_s is None:
        raise InternalError(f"no rational parametrization for {T}")
    r = root_r - a
    s = (root_s - a) / t
    if (1 - r * r) / (2 * r) != a or t * (1 - s * s) / (2 * s) != a:
        raise InternalError(f"parametrization check failed for {T}")
    return ConicPoint(r, s, Fraction(1))


def order8_point(r: RationalLike) -> tuple[Fraction, Point]:
    """For t = ((1 - r^2)/(2r))^2, a point of order 8 on E_t."""
    r = as_rational(r)
    if r in (0, 1, -1):
        raise DomainError(f"r = {format_rational(r)} is excluded")
    t = ((1 - r * r) / (2 * r)) ** 2
    if t in (0, 1):
        raise DomainError(f"r = {format_rational(r)} gives degenerate t")
    base = (1 - r) * (1 + r) ** 3
    x = base / (4 * r**3)
    y = base * (1 + r * r) * (r * r - 2 * r - 1) / (16 * r**5)
    P = Point(x, y)
    if not on_curve(P, curve_Et(t)):
        raise InternalError(f"order-8 point off E_t for r = {format_rational(r)}")
    return t, P


def halve(T: Point, t: RationalLike) -> list[Point]:
    """All rational P on E_t with 2P = T.

    T = (x0, y0) lies in 2E(Q) iff x0 - e is a square for each root e of
    x(x+1)(x+t^2); the halves then have x = x0 + r1 r2 + r1 r3 + r2 r3 over
    sign choices of ri = sqrt(x0 - ei).
    """
    t = check_parameter(t)
    m = curve_Et(t)
    if T.is_infinity:
        raise DomainError("halving O is not supported")
    roots = [rational_sqrt(T.x - e) for e in (0, -1, -t * t)]
    if any(q is None for q in roots):
        return []
    found: set[Point] = set()
    r1, r2, r3 = roots
    for s2 in (1, -1):
        for s3 in (1, -1):
            a, b, c = r1, s2 * r2, s3 * r3
            x = T.x + a * b + a * c + b * c
            rhs = x * (x + 1) * (x + t * t)
            y = rational_sqrt(rhs)
            if y is None:
                continue
            for cand in (Point(x, y), Point(x, -y)):
                if add(cand, cand, m) == T:
                    found.add(cand)
    return sorted(found, key=lambda P: (P.x, P.y))


@dataclass
class ExtraTorsionReport:
    t: Fraction
    a_extra_torsion: bool
    b_z2_z8: bool
    c_similar_triangles: bool
    d_t_and_t_plus_1_squares: bool
    e_parametrized: bool
    r: Fraction | None = None
    witness: Point | None = None
    triple: TriangleTriple | None = None

    @property
    def verdicts(self) -> tuple[bool, ...]:
        return (
            self.a_extra_torsion,
            self.b_z2_z8,
            self.c_similar_triangles,
            self.d_t_and_t_plus_1_squares,
            self.e_parametrized,
        )

    @property
    def consistent(self) -> bool:
        return len(set(self.verdicts)) == 1


def extra_torsion_report(t: RationalLike) -> ExtraTorsionReport:
    """Evaluate the five equivalent conditions for torsion beyond A_t.

    (d) is read off directly. (a) and (b) come from halving the order-4 points
    of A_t, (c) from the similar-triangle solution, (e) from solving for r.
    Raises InternalError if the verdicts disagree.
    """
    t = _positive_t(t)
    m = curve_Et(t)
    A = torsion_A_t(t)
    sqrt_t = rational_sqrt(t)
    sqrt_t1 = rational_sqrt(t + 1)
    d = sqrt_t is not None and sqrt_t1 is not None

    order4 = [P for P in A if not P.is_infinity and P.y != 0]
    halves = [H for T4 in order4 for H in halve(T4, t)]
    outside = [H for H in halves if H not in A]
    a = bool(outside)
    b = a and all(point_order(H, m) == 8 for H in outside)

    triple = None
    c = False
    if sqrt_t is not None and sqrt_t1 is not None:
        triple = TriangleTriple(sqrt_t, sqrt_t1, sqrt_t * sqrt_t1, t)
        # the triple (sqrt t, sqrt(t+1), sqrt(t(t+1))) has the two triangles similar
        c = triple.a * triple.a == t

    r = None
    witness = None
    e = False
    if sqrt_t is not None and sqrt_t1 is not None:
        r = sqrt_t1 - sqrt_t
        e = r not in (0, 1, -1) and ((1 - r * r) / (2 * r)) ** 2 == t
        if e:
            t8, witness = order8_point(r)
            if t8 != t or witness in A or point_order(witness, m) != 8:
                raise InternalError(f"order-8 witness check failed at t = {format_rational(t)}")
            if add(witness, witness, m) not in order4:
                raise InternalError("order-8 witness does not double into A_t")

    report = ExtraTorsionReport(t, a, b, c, d, e, r, witness, triple)
    if not report.consistent:
        raise InternalError(f"equivalent conditions disagree at t = {format_rational(t)}: {report.verdicts}")
    return report


# ---------------------------------------------------------------------------
# classification


@dataclass
class Classification:
    """Outcome of classifying the triangle system for a given t.

    verdict is one of InfinitelyMany, SingleSolution, NoSolution,
    OneParameterFamily, Unresolved. ``conditional_flags`` lists every
    assumption the verdict rests on.
    """

    verdict: str
    t: Fraction
    bound: Any = None
    witness: Point | None = None
    triple: TriangleTriple | None = None
    conditional_flags: list[str] = field(default_factory=list)
    root_number: int | None = None

    @property
    def conditional(self) -> bool:
        return bool(self.conditional_flags)

    def to_dict(self) -> dict[str, Any]:
        bound = self.bound
        if bound is not None and hasattr(bound, "__dataclass_fields__"):
            bound = asdict(bound)
        return {
            "verdict": self.verdict,
            "t": format_rational(self.t),
            "witness": None if self.witness is None else format_point(self.witness),
            "triple": None if self.triple is None else str(self.triple),
            "bound": bound,
            "root_number": self.root_number,
            "conditional_flags": list(self.conditional_flags),
        }


RANK0_FLAG = "conditional: assumes rank E_t(Q) = 0 (no non-torsion point within the search bound)"


def classify(t: RationalLike, bound=None, strict: bool = False) -> Classification:
    """Classify the solutions of 1 + a^2 = b^2, t^2 + a^2 = c^2.

    A search hit is unconditional evidence of infinitely many solutions. A
    miss cannot prove rank 0, so SingleSolution and NoSolution carry the
    rank-0 assumption and the root-number prediction; with ``strict`` a miss
    is reported as Unresolved instead.
    """
    from .rootnumber import CONDITIONAL_NOTE, root_number_closed
    from .search import SearchBound, rank_witness

    t = as_rational(t)
    if t <= 0:
        raise DomainError(f"t must be positive, got {format_rational(t)}")
    if t == 1:
        return Classification("OneParameterFamily", t)
    if bound is None:
        bound = SearchBound()
    W = root_number_closed(t)
    witness = rank_witness(t, bound)
    if witness is not None:
        return Classification("InfinitelyMany", t, bound, witness=witness, root_number=W)
    flags = [RANK0_FLAG]
    if W == -1:
        flags.append(f"{CONDITIONAL_NOTE}; here W = -1, so rank 0 contradicts the parity conjecture")
    else:
        flags.append("conditional: W(E_t) = +1, consistent with rank 0 under the parity conjecture")
    if strict:
        return Classification("Unresolved", t, bound, conditional_flags=flags, root_number=W)
    report = extra_torsion_report(t)
    if report.d_t_and_t_plus_1_squares:
        return Classification("SingleSolution", t, bound, triple=report.triple, conditional_flags=flags, root_number=W)
    return Classification("NoSolution", t, bound, conditional_flags=flags, root_number=W)


def t1_family(r: RationalLike) -> TriangleTriple:
    """Solutions for t = 1: a = (1 - r^2)/(2r), b = c = (1 + r^2)/(2r)."""
    r = as_rational(r)
    if not 0 < r < 1:
        raise DomainError(f"r must lie in (0, 1), got {format_rational(r)}")
    a = (1 - r * r) / (2 * r)
    b = (1 + r * r) / (2 * r)
    return TriangleTriple(a, b, b, Fraction(1))

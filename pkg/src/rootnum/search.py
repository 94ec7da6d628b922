"""Height-bounded enumeration of rational points on E_t.

Points are found on the integral model E_{u,v} : y^2 = x(x+u^2)(x+v^2), where
every rational point has x = m/e^2 and y = n/e^3 in lowest terms, then pulled
back to E_t.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

from .curve import O, Point, check_parameter, curve_Et, from_integral, multiply, point_order, torsion_A_t
from .exactq import DomainError, RationalLike
from .triangles import TriangleTriple, phi

__all__ = ["SearchBound", "find_points", "rank_witness", "solutions_stream"]


@dataclass(frozen=True)
class SearchBound:
    """x = m/e^2 on E_{u,v} with e <= max_den and |m| <= max_num * e^2."""

    max_den: int = 4
    max_num: int = 100

    def __post_init__(self) -> None:
        if self.max_den < 1 or self.max_num < 1:
            raise DomainError(f"search bounds must be positive: {self}")


# Squares modulo a few small moduli; most non-squares fail one of these.
_FILTERS = tuple((q, frozenset(i * i % q for i in range(q))) for q in (64, 63, 65, 11))


def _square_root(n: int) -> int | None:
    if n < 0:
        return None
    for q, squares in _FILTERS:
        if n % q not in squares:
            return None
    r = math.isqrt(n)
    return r if r * r == n else None


def _scan(u2: int, v2: int, e: int, lo: int, hi: int) -> list[tuple[int, int, int]]:
    """(e, m, n) with lo <= m <= hi, gcd(m, e) = 1, n >= 0 and n^2 = m(m + u2 e^2)(m + v2 e^2)."""
    e2 = e * e
    ue, ve = u2 * e2, v2 * e2
    hits = []
    for m in range(lo, hi + 1):
        rhs = m * (m + ue) * (m + ve)
        n = _square_root(rhs)
        if n is None:
            continue
        if e > 1 and math.gcd(m, e) != 1:
            continue
        hits.append((e, m, n))
    return hits


def _tasks(u2: int, v2: int, bound: SearchBound, chunks: int) -> list[tuple[int, int, int, int, int]]:
    tasks = []
    for e in range(1, bound.max_den + 1):
        limit = bound.max_num * e * e
        # The cubic is negative below -max(u2, v2) e^2 and between the two
        # smallest roots; skipping those stretches loses nothing.
        lo = max(-limit, -max(u2, v2) * e * e)
        mid = -min(u2, v2) * e * e
        ranges = [(lo, min(mid, limit)), (0, limit)]
        for a, b in ranges:
            if a > b:
                continue
            step = max(1, -(-(b - a + 1) // chunks))
            for start in range(a, b + 1, step):
                tasks.append((u2, v2, e, start, min(b, start + step - 1)))
    return tasks


def _run(task: tuple[int, int, int, int, int]) -> list[tuple[int, int, int]]:
    return _scan(*task)


def find_points(t: RationalLike, bound: SearchBound, jobs: int = 1) -> list[Point]:
    """All points of E_t(Q) within the bound.

    O comes first, then affine points by increasing naive height max(|m|, e^2),
    ties broken by e and m, with the positive y before the negative one.

    The m-ranges can be spread over ``jobs`` worker processes; the result
    does not depend on the number of jobs.
    """
    t = check_parameter(t)
    u, v = abs(t.numerator), t.denominator
    tasks = _tasks(u * u, v * v, bound, max(1, jobs))
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_run, tasks))
    else:
        parts = [_run(task) for task in tasks]
    # naive height of x = m/e^2 first, so small points come out early
    hits = sorted({h for part in parts for h in part}, key=lambda h: (max(abs(h[1]), h[0] ** 2), h[0], h[1]))
    points = [O]
    for e, m, n in hits:
        x = Fraction(m, e * e)
        for y in ((Fraction(n, e**3), Fraction(-n, e**3)) if n else (Fraction(0),)):
            points.append(from_integral(Point(x, y), v))
    return points


def rank_witness(t: RationalLike, bound: SearchBound, jobs: int = 1) -> Point | None:
    """First point of infinite order within the bound, or None.

    None only means nothing was found; it does not prove rank 0. Order is
    tested against cap 8, which is exact for the curves E_t because their
    torsion subgroup is Z/2 x Z/4 or Z/2 x Z/8.
    """
    t = check_parameter(t)
    m = curve_Et(t)
    for P in find_points(t, bound, jobs):
        if P.is_infinity:
            continue
        if point_order(P, m) is None:
            return P
    return None


def solutions_stream(t: RationalLike, witness: Point, n: int) -> list[TriangleTriple]:
    """n distinct triangle solutions phi(k * witness), k = 1, 2, ..."""
    t = check_parameter(t)
    m = curve_Et(t)
    if point_order(witness, m) is not None:
        raise DomainError("witness must have infinite order")
    A = set(torsion_A_t(t))
    out: list[TriangleTriple] = []
    seen: set[TriangleTriple] = set()
    k = 0
    while len(out) < n:
        k += 1
        P = multiply(k, witness, m)
        if P in A:
            continue
        T = phi(P, t)
        if T not in seen:
            seen.add(T)
            out.append(T)
    return out

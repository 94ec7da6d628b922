"""Desk-scale sweeps over the family E_t.

Parameters are the distinct rationals a/b with 1 <= |a|, |b| <= X other than
+-1, each counted once in lowest terms with b > 0, and always visited in the
order (|a|, b, a).
"""

from __future__ import annotations

import csv
import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .curve import add, curve_Et, on_curve, point_order, torsion_A_t
from .exactq import DomainError, RationalLike, as_rational, format_rational, is_square
from .rootnumber import in_T, prime_set_Pt, root_number_closed, root_number_local_product
from .triangles import order8_point, extra_torsion_report

__all__ = [
    "DensityReport",
    "SweepResult",
    "GusicTadicRow",
    "GusicTadicResult",
    "TorsionCheck",
    "parameters",
    "density_scan",
    "write_csv",
    "consistency_sweep",
    "gusic_tadic_check",
    "torsion_table_check",
    "CSV_HEADER",
]

CSV_HEADER = ("t", "num", "den", "w_closed", "w_local", "in_T", "p_set_size")


def _by_abs_num(X: int, abs_nums: Iterable[int]) -> Iterator[Fraction]:
    for abs_a in abs_nums:
        for b in range(1, X + 1):
            if math.gcd(abs_a, b) != 1 or abs_a == b:
                continue
            for a in (-abs_a, abs_a):
                yield Fraction(a, b)


def parameters(X: int) -> Iterator[Fraction]:
    if X < 2:
        raise DomainError(f"X must be at least 2, got {X}")
    return _by_abs_num(X, range(1, X + 1))


def _partitions(X: int, jobs: int) -> list[list[int]]:
    # round-robin over |a| keeps the chunks balanced
    return [list(range(1 + k, X + 1, jobs)) for k in range(jobs)]


def _map(fn, X: int, jobs: int) -> list:
    chunks = [(X, part) for part in _partitions(X, jobs) if part]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, chunks))
    return [fn(chunk) for chunk in chunks]


# ---------------------------------------------------------------------------
# density


@dataclass(frozen=True)
class DensityReport:
    X: int
    total_rationals: int
    in_T_count: int
    fraction: Fraction
    avg_root_number: Fraction


def _density_chunk(args: tuple[int, list[int]]) -> tuple[int, int, int]:
    X, abs_nums = args
    total = in_t = w_sum = 0
    for t in _by_abs_num(X, abs_nums):
        w = root_number_closed(t)
        total += 1
        w_sum += w
        in_t += w == -1
    return total, in_t, w_sum


def density_scan(X: int, jobs: int = 1) -> DensityReport:
    """Exact fraction of parameters in T and average root number up to height X."""
    if X < 2:
        raise DomainError(f"X must be at least 2, got {X}")
    parts = _map(_density_chunk, X, max(1, jobs))
    total = sum(p[0] for p in parts)
    in_t = sum(p[1] for p in parts)
    w_sum = sum(p[2] for p in parts)
    return DensityReport(X, total, in_t, Fraction(in_t, total), Fraction(w_sum, total))


def _csv_chunk(args: tuple[int, list[int]]) -> list[tuple]:
    X, abs_nums = args
    rows = []
    for t in _by_abs_num(X, abs_nums):
        w_local, _ = root_number_local_product(t)
        rows.append(
            (
                (abs(t.numerator), t.denominator, t.numerator),
                format_rational(t),
                t.numerator,
                t.denominator,
                root_number_closed(t),
                w_local,
                int(in_T(t)),
                len(prime_set_Pt(t)),
            )
        )
    return rows


def write_csv(X: int, path, jobs: int = 1) -> int:
    """One row per parameter, header ``t,num,den,w_closed,w_local,in_T,p_set_size``."""
    if X < 2:
        raise DomainError(f"X must be at least 2, got {X}")
    rows = sorted(itertools.chain.from_iterable(_map(_csv_chunk, X, max(1, jobs))))
    with open(path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for row in rows:
            writer.writerow(row[1:])
    return len(rows)


# ---------------------------------------------------------------------------
# consistency


@dataclass
class SweepResult:
    X: int
    checked: int
    mismatches: list[tuple[str, Fraction]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.mismatches

    @property
    def first_mismatch(self) -> tuple[str, Fraction] | None:
        return self.mismatches[0] if self.mismatches else None


def _sweep_chunk(args: tuple[int, list[int]]) -> tuple[int, list[tuple[tuple, str, Fraction]]]:
    X, abs_nums = args
    checked = 0
    bad = []
    for t in _by_abs_num(X, abs_nums):
        checked += 1
        key = (abs(t.numerator), t.denominator, t.numerator, t.denominator)
        closed = root_number_closed(t)
        local, _ = root_number_local_product(t)
        if closed != local:
            bad.append((key, "closed formula != local product", t))
        p_set = prime_set_Pt(t)
        if closed != -((-1) ** len(p_set)):
            bad.append((key, "W != -(-1)^|P_t|", t))
        if p_set != prime_set_Pt(-t):
            bad.append((key, "P_t != P_{-t}", t))
    return checked, bad


def consistency_sweep(X: int, jobs: int = 1) -> SweepResult:
    """Check closed vs local root numbers, |P_t| parity, and t -> -t symmetry."""
    if X < 2:
        raise DomainError(f"X must be at least 2, got {X}")
    parts = _map(_sweep_chunk, X, max(1, jobs))
    bad = sorted((m for _, chunk in parts for m in chunk), key=lambda m: (m[0], m[1]))
    return SweepResult(X, sum(c for c, _ in parts), [(what, t) for _, what, t in bad])


# ---------------------------------------------------------------------------
# Gusic-Tadic specialization at T = 6


@dataclass(frozen=True)
class GusicTadicRow:
    exponents: tuple[int, int, int, int]
    expression: str
    value: Fraction
    square: bool


@dataclass
class GusicTadicResult:
    T: Fraction
    rows: list[GusicTadicRow]
    note: str

    @property
    def passed(self) -> bool:
        return len(self.rows) == 14 and not any(r.square for r in self.rows)

    def render(self) -> str:
        lines = [f"h(T) = (-1)^e1 T^e2 (T+1)^e3 (T-1)^e4 at T = {format_rational(self.T)}"]
        lines.append(f"{'(e1,e2,e3,e4)':<14} {'h(T)':<22} {'value':>8}  square?")
        for r in self.rows:
            lines.append(
                f"{str(r.exponents).replace(' ', ''):<14} {r.expression:<22} "
                f"{format_rational(r.value):>8}  {'yes' if r.square else 'no'}"
            )
        lines.append(self.note)
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)


def _h_expression(e: tuple[int, int, int, int]) -> str:
    factors = [name for name, k in zip(("T", "(T+1)", "(T-1)"), e[1:]) if k]
    body = "".join(factors)
    return ("-" if e[0] else "") + body


def gusic_tadic_check(T: RationalLike = 6) -> GusicTadicResult:
    """Evaluate the 14 non-constant square-free h(T) and test each for squareness."""
    T = as_rational(T)
    rows = []
    for e in itertools.product((0, 1), repeat=4):
        if e[1:] == (0, 0, 0):
            continue
        value = (-1) ** e[0] * T ** e[1] * (T + 1) ** e[2] * (T - 1) ** e[3]
        rows.append(GusicTadicRow(e, _h_expression(e), value, is_square(value)))
    note = (
        "note: the exponent tuples give 16 polynomials, but (e2,e3,e4) = (0,0,0) "
        "yields the constants 1 and -1; only the 14 non-constant ones are checked"
    )
    return GusicTadicResult(T, rows, note)


# ---------------------------------------------------------------------------
# torsion tables


@dataclass
class TorsionCheck:
    t: Fraction
    passed: bool
    order_profile: tuple[int, int, int]
    order8_extension: bool
    problems: list[str] = field(default_factory=list)


def _check_torsion(t: Fraction) -> TorsionCheck:
    problems = []
    m = curve_Et(t)
    A = torsion_A_t(t)
    if len(set(A)) != 8:
        problems.append("A_t does not have 8 distinct points")
    if not all(on_curve(P, m) for P in A):
        problems.append("point of A_t off the curve")
    members = set(A)
    for P, Q in itertools.product(A, repeat=2):
        if add(P, Q, m) not in members:
            problems.append(f"A_t not closed: {P} + {Q}")
            break
    orders = [point_order(P, m) for P in A]
    profile = (orders.count(1), orders.count(2), orders.count(4))
    if profile != (1, 3, 4):
        problems.append(f"order profile {profile} != (1, 3, 4)")
    extension = False
    if t > 0 and is_square(t) and is_square(t + 1):
        report = extra_torsion_report(t)
        _, P = order8_point(report.r)
        extension = point_order(P, m) == 8 and add(P, P, m) in members and P not in members
        if not extension:
            problems.append("order-8 extension missing")
    return TorsionCheck(t, not problems, profile, extension, problems)


def torsion_table_check(samples: Sequence[RationalLike]) -> list[TorsionCheck]:
    return [_check_torsion(as_rational(t)) for t in samples]

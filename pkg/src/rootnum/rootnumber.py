"""Global root number of E_t, the prime set P_t, and membership in T.

The global sign is computed two ways: :func:`root_number_closed` evaluates
the closed valuation formula, and :func:`root_number_local_product`
multiplies local signs obtained from reduction types of integral models.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .curve import curve_Euv, check_parameter, invariants
from .exactq import RationalLike, factorize, format_rational, ord_p
from .localroot import (
    INFINITY,
    LocalData,
    local_root_infinity,
    local_root_two_cases,
    reduction_type_odd,
    sign_for,
)

__all__ = [
    "CONDITIONAL_NOTE",
    "PrimeSetPt",
    "RootNumberReport",
    "w2_flag",
    "prime_set_Pt",
    "root_number_closed",
    "root_number_local_product",
    "in_T",
    "root_number_report",
    "render_report",
]

CONDITIONAL_NOTE = (
    "conditional: assuming the parity conjecture W(E) = (-1)^rank, "
    "W(E_t) = -1 implies E_t(Q) is infinite"
)


@dataclass(frozen=True)
class PrimeSetPt:
    primes: tuple[int, ...]

    @property
    def includes_two(self) -> bool:
        return 2 in self.primes

    def __len__(self) -> int:
        return len(self.primes)


def _split(t: Fraction) -> tuple[int, int]:
    return t.numerator, t.denominator


def _odd_primes(*ns: int) -> set[int]:
    out: set[int] = set()
    for n in ns:
        out.update(p for p in factorize(n).primes if p != 2)
    return out


def w2_flag(t: RationalLike) -> int:
    t = check_parameter(t)
    return 1 if ord_p(t, 2) in (2, -2) or ord_p(t * t - 1, 2) == 3 else -1


def prime_set_Pt(t: RationalLike) -> PrimeSetPt:
    t = check_parameter(t)
    u, v = _split(t)
    primes = _odd_primes(u, v)
    primes.update(p for p in _odd_primes(u * u - v * v) if p % 4 == 1)
    if w2_flag(t) == -1:
        primes.add(2)
    return PrimeSetPt(tuple(sorted(primes)))


def root_number_closed(t: RationalLike) -> int:
    t = check_parameter(t)
    u, v = _split(t)
    # t^2 - 1 = (u^2 - v^2)/v^2 and gcd(u^2 - v^2, v) = 1
    from_t = sum(1 for p in _odd_primes(u, v) if ord_p(t, p) != 0)
    from_t2m1 = sum(1 for p in _odd_primes(u * u - v * v) if p % 4 == 1 and ord_p(t * t - 1, p) > 0)
    return -w2_flag(t) * (-1) ** from_t * (-1) ** from_t2m1


def _local_factors(t: Fraction) -> list[LocalData]:
    u, v = _split(t)
    delta = int(invariants(curve_Euv(u, v)).delta)
    locals_ = [LocalData(INFINITY, local_root_infinity())]
    w2, _ = local_root_two_cases(u, v)
    locals_.append(LocalData(2, w2))
    for p in factorize(delta).primes:
        if p == 2:
            continue
        red = reduction_type_odd(u, v, p)
        locals_.append(LocalData(p, sign_for(red), red))
    return locals_


def root_number_local_product(t: RationalLike) -> tuple[int, list[LocalData]]:
    """Product of local signs over infinity and the bad primes of E_{u,v}.

    Primes not dividing the discriminant have good reduction and contribute +1.
    """
    t = check_parameter(t)
    locals_ = _local_factors(t)
    w = 1
    for ld in locals_:
        w *= ld.w
    return w, locals_


def in_T(t: RationalLike) -> bool:
    """True iff |P_t| is even, i.e. iff W(E_t) = -1.

    Under the parity conjecture a True result implies E_t(Q) is infinite; this
    function does not and cannot certify positive rank. The density-zero
    exceptional set S is not computable here and is not included.
    """
    return len(prime_set_Pt(t)) % 2 == 0


@dataclass(frozen=True)
class RootNumberReport:
    t: Fraction
    w_closed: int
    w_local: int
    p_set: PrimeSetPt
    locals: tuple[LocalData, ...]
    w2_flag: int

    @property
    def in_T(self) -> bool:
        return len(self.p_set) % 2 == 0


def root_number_report(t: RationalLike) -> RootNumberReport:
    t = check_parameter(t)
    w_local, locals_ = root_number_local_product(t)
    return RootNumberReport(
        t=t,
        w_closed=root_number_closed(t),
        w_local=w_local,
        p_set=prime_set_Pt(t),
        locals=tuple(locals_),
        w2_flag=w2_flag(t),
    )


def _sign(w: int) -> str:
    return "+1" if w == 1 else "-1"


def render_report(report: RootNumberReport, method: str = "both") -> str:
    lines = [f"t = {format_rational(report.t)}"]
    if method in ("local", "both"):
        lines.append(f"{'place':>8}  {'reduction':<24}  W_p")
        for ld in report.locals:
            if ld.place == INFINITY:
                red = "(archimedean)"
            elif ld.reduction is None:
                red = "(2-adic case analysis)"
            else:
                red = ld.reduction.value
            lines.append(f"{ld.place!s:>8}  {red:<24}  {_sign(ld.w)}")
        lines.append("other primes: good reduction, W_p = +1")
    if method in ("closed", "both"):
        lines.append(f"W (closed formula) = {_sign(report.w_closed)}")
    if method in ("local", "both"):
        lines.append(f"W (local product)  = {_sign(report.w_local)}")
    primes = ",".join(str(p) for p in report.p_set.primes)
    lines.append(f"P_t = {{{primes}}}  |P_t| = {len(report.p_set)}")
    lines.append(f"w_2(t) = {_sign(report.w2_flag)}")
    lines.append(f"t in T (|P_t| even): {'yes' if report.in_T else 'no'}")
    if report.in_T:
        lines.append(f"{CONDITIONAL_NOTE}; predicted: E_t(Q) infinite")
    else:
        lines.append("conditional: W(E_t) = +1 predicts even rank (possibly 0) under the parity conjecture")
    return "\n".join(lines)

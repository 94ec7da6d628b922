"""Exact integer and rational arithmetic: valuations, factorization, squares.

Rationals are :class:`fractions.Fraction` values, which are always stored in
lowest terms with a positive denominator.
"""

from __future__ import annotations

import math
import os
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

__all__ = [
    "DomainError",
    "DegenerateParameterError",
    "FactorizationIncomplete",
    "InternalError",
    "Factorization",
    "RationalLike",
    "as_rational",
    "parse_rational",
    "format_rational",
    "is_prime",
    "ord_p",
    "factorize",
    "is_square",
    "rational_sqrt",
    "legendre",
]

RationalLike = Union[int, Fraction]


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class DegenerateParameterError(DomainError):
    """The curve parameter is one of the excluded values 0, 1, -1."""


class FactorizationIncomplete(ArithmeticError):
    """The factoring effort budget ran out before a complete factorization."""


class InternalError(RuntimeError):
    """A branch that the underlying mathematics rules out was reached."""


def as_rational(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


_RATIONAL_RE = re.compile(r"^\s*(-?\d+)(?:/(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``"a"`` or ``"a/b"`` (optional leading minus) into a Fraction."""
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise DomainError(f"not a rational number: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise DomainError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def format_rational(x: RationalLike) -> str:
    x = as_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


# ---------------------------------------------------------------------------
# primality

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
# The first 13 primes as Miller-Rabin bases are deterministic below this.
_MR_DETERMINISTIC_LIMIT = 3_317_044_064_679_887_385_961_981
_MR_EXTRA_ROUNDS = 32


def _strong_probable_prime(n: int, a: int, d: int, s: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int) -> bool:
    """Miller-Rabin; deterministic below 3.3e24 (so for every 64-bit input).

    Larger inputs get 32 extra rounds with seeded random bases, so a composite
    slips through with probability below 4**-32.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if not all(_strong_probable_prime(n, a, d, s) for a in _SMALL_PRIMES):
        return False
    if n < _MR_DETERMINISTIC_LIMIT:
        return True
    rng = random.Random(n)
    return all(
        _strong_probable_prime(n, rng.randrange(2, n - 1), d, s)
        for _ in range(_MR_EXTRA_ROUNDS)
    )


def _require_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise DomainError(f"{p!r} is not a prime")


# ---------------------------------------------------------------------------
# valuations


def _ord_int(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def ord_p(x: RationalLike, p: int) -> int:
    """The p-adic valuation of a nonzero rational."""
    x = as_rational(x)
    if x == 0:
        raise DomainError("ord_p(0) is undefined")
    _require_prime(p)
    return _ord_int(abs(x.numerator), p) - _ord_int(x.denominator, p)


# ---------------------------------------------------------------------------
# factorization


@dataclass(frozen=True)
class Factorization:
    sign: int
    pairs: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.pairs)

    def value(self) -> int:
        n = self.sign
        for p, e in self.pairs:
            n *= p**e
        return n


TRIAL_DIVISION_BOUND = 1 << 12
DEFAULT_FACTOR_BUDGET = 1_000_000
_GUARANTEED_LIMIT = 1 << 64
_TRIAL_PRIMES = tuple(p for p in range(2, TRIAL_DIVISION_BOUND) if is_prime(p))


def _budget_from_env() -> int:
    raw = os.environ.get("ROOTNUM_FACTOR_BUDGET")
    if raw is None:
        return DEFAULT_FACTOR_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise DomainError(f"ROOTNUM_FACTOR_BUDGET must be an integer, got {raw!r}") from None
    if value < 0:
        raise DomainError("ROOTNUM_FACTOR_BUDGET must be non-negative")
    return value


class _Budget:
    def __init__(self, steps: int) -> None:
        self.remaining = steps

    def spend(self, n: int, steps: int) -> None:
        # cofactors below 2**64 are always finished
        if n < _GUARANTEED_LIMIT:
            return
        self.remaining -= steps
        if self.remaining < 0:
            raise FactorizationIncomplete(
                f"factoring budget exhausted on a {n.bit_length()}-bit cofactor"
            )


def _brent(n: int, rng: random.Random, budget: _Budget) -> int:
    """Return a nontrivial factor of the odd composite n (Pollard rho, Brent)."""
    batch = 128
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                steps = min(batch, r - k)
                for _ in range(steps):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                budget.spend(n, steps)
                g = math.gcd(q, n)
                k += steps
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
        # unlucky cycle; retry with fresh parameters from the seeded stream


def _split(n: int, rng: random.Random, budget: _Budget, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    r = math.isqrt(n)
    if r * r == n:
        _split(r, rng, budget, out)
        _split(r, rng, budget, out)
        return
    d = _brent(n, rng, budget)
    _split(d, rng, budget, out)
    _split(n // d, rng, budget, out)


def factorize(n: int, budget: int | None = None) -> Factorization:
    """Complete prime factorization of a nonzero integer.

    Trial division by primes below ``TRIAL_DIVISION_BOUND``, then Brent's
    variant of Pollard rho with a seed derived from ``n``, so output and
    running time are reproducible. ``budget`` caps the number of rho
    iterations spent on cofactors of 2**64 or more; cofactors below 2**64 are
    always factored. Defaults to ``ROOTNUM_FACTOR_BUDGET`` or 10**6.

    Raises FactorizationIncomplete instead of returning a partial answer.
    """
    if not isinstance(n, int) or n == 0:
        raise DomainError("factorize needs a nonzero integer")
    if budget is None:
        budget = _budget_from_env()
    return _factorize_cached(n, budget)


@lru_cache(maxsize=1 << 16)
def _factorize_cached(n: int, budget: int) -> Factorization:
    sign = -1 if n < 0 else 1
    m = abs(n)
    found: dict[int, int] = {}
    for p in _TRIAL_PRIMES:
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            found[p] = e
    if m > 1:
        if m < TRIAL_DIVISION_BOUND**2:
            found[m] = found.get(m, 0) + 1
        else:
            _split(m, random.Random(m), _Budget(budget), found)
    return Factorization(sign, tuple(sorted(found.items())))


# ---------------------------------------------------------------------------
# squares and residues


def rational_sqrt(x: RationalLike) -> Fraction | None:
    """The non-negative rational square root of x, or None if x is not a square."""
    x = as_rational(x)
    if x < 0:
        return None
    a, b = x.numerator, x.denominator
    ra, rb = math.isqrt(a), math.isqrt(b)
    if ra * ra != a or rb * rb != b:
        return None
    return Fraction(ra, rb)


def is_square(x: RationalLike) -> bool:
    return rational_sqrt(x) is not None


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p, via Euler's criterion."""
    if p == 2:
        raise DomainError("legendre needs an odd prime")
    _require_prime(p)
    r = pow(a % p, (p - 1) // 2, p)
    if r == 0:
        return 0
    return 1 if r == 1 else -1

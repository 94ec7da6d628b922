"""Slow, independent reference computations used to check the package.

Nothing here imports from rootnum.
"""

from fractions import Fraction
from math import gcd


def naive_primes(n):
    return [p for p in range(2, n + 1) if all(p % q for q in range(2, int(p**0.5) + 1))]


def naive_ord(x, p):
    x = Fraction(x)
    k = 0
    num, den = abs(x.numerator), x.denominator
    while num % p == 0:
        num //= p
        k += 1
    while den % p == 0:
        den //= p
        k -= 1
    return k


def trial_division(n):
    sign = 1 if n > 0 else -1
    n = abs(n)
    out = []
    p = 2
    while n > 1:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e:
            out.append((p, e))
        p += 1
    return sign, out


def brute_root_number(t):
    """Sign from the valuation formula, scanning every prime up to the largest relevant integer."""
    t = Fraction(t)
    u, v = t.numerator, t.denominator
    w2 = 1 if naive_ord(t, 2) in (2, -2) or naive_ord(t * t - 1, 2) == 3 else -1
    sign = -w2
    for p in naive_primes(max(abs(u), v, abs(u * u - v * v)))[1:]:
        if naive_ord(t, p) != 0:
            sign = -sign
        elif p % 4 == 1 and naive_ord(t * t - 1, p) > 0:
            sign = -sign
    return sign


def brute_parameters(X):
    """Every a/b with 1 <= |a|, |b| <= X, deduplicated, minus +-1."""
    out = set()
    for a in range(-X, X + 1):
        for b in range(-X, X + 1):
            if a and b:
                out.add(Fraction(a, b))
    return out - {Fraction(1), Fraction(-1)}


def short_add(P, Q, a2, a4):
    """Chord-tangent law on y^2 = x^3 + a2 x^2 + a4 x; None is the identity."""
    if P is None:
        return Q
    if Q is None:
        return P
    (x1, y1), (x2, y2) = P, Q
    if x1 == x2 and y1 == -y2:
        return None
    if P == Q:
        lam = (3 * x1 * x1 + 2 * a2 * x1 + a4) / (2 * y1)
    else:
        lam = (y2 - y1) / (x2 - x1)
    x3 = lam * lam - a2 - x1 - x2
    return (x3, lam * (x1 - x3) - y1)


def repeated_add(n, P, a2, a4):
    R = None
    for _ in range(n):
        R = short_add(R, P, a2, a4)
    return R


def coprime(a, b):
    return gcd(a, b) == 1

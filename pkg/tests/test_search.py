import math
from fractions import Fraction as F

import pytest

from rootnum.curve import O, Point, add, curve_Et, negate, on_curve, point_order, torsion_A_t
from rootnum.exactq import DegenerateParameterError, DomainError
from rootnum.search import SearchBound, find_points, rank_witness, solutions_stream
from rootnum.triangles import order8_point, phi


def P(x, y):
    return Point(F(x), F(y))


def brute_points(t, max_den, max_num):
    """Points of y^2 = x(x+1)(x+t^2) with x = m/e^2 scaled by the denominator of t."""
    t = F(t)
    v = t.denominator
    found = {O}
    for e in range(1, max_den + 1):
        for m in range(-max_num * e * e, max_num * e * e + 1):
            if math.gcd(m, e) != 1:
                continue
            x = F(m, e * e) / v**2
            rhs = x * (x + 1) * (x + t * t)
            if rhs < 0:
                continue
            a, b = rhs.numerator, rhs.denominator
            if math.isqrt(a) ** 2 == a and math.isqrt(b) ** 2 == b:
                y = F(math.isqrt(a), math.isqrt(b))
                found |= {Point(x, y), Point(x, -y)}
    return found


def test_bound_validation():
    with pytest.raises(DomainError):
        SearchBound(0, 5)


def test_t7_includes_known_point():
    pts = find_points(7, SearchBound(1, 60))
    assert P(-25, 120) in pts and P(-25, -120) in pts


def test_t6_only_torsion():
    pts = find_points(6, SearchBound(6, 200))
    assert set(pts) == set(torsion_A_t(6)) and len(pts) == 8


@pytest.mark.parametrize("t, den, num", [(2, 2, 50), (7, 2, 60), (F(5, 7), 2, 30), (F(-3, 2), 2, 30)])
def test_matches_brute_force(t, den, num):
    assert set(find_points(t, SearchBound(den, num))) == brute_points(t, den, num)


def test_t2_only_torsion_at_small_bound():
    assert set(find_points(2, SearchBound(2, 50))) == set(torsion_A_t(2))


def test_points_on_curve_and_symmetric():
    for t in (7, F(5, 7), 10):
        m = curve_Et(t)
        pts = find_points(t, SearchBound(3, 80))
        assert len(pts) == len(set(pts))
        assert pts[0] == O
        for Q in pts:
            assert on_curve(Q, m)
            assert negate(Q, m) in pts


def test_deterministic_and_partition_independent():
    b = SearchBound(3, 80)
    ref = find_points(F(5, 7), b)
    assert find_points(F(5, 7), b) == ref
    assert find_points(F(5, 7), b, jobs=3) == ref


def test_degenerate():
    with pytest.raises(DegenerateParameterError):
        find_points(1, SearchBound())


def test_rank_witness_t7():
    W = rank_witness(7, SearchBound(1, 60))
    m = curve_Et(7)
    assert point_order(W, m) is None
    # same fiber of phi as the textbook point (-25, 120)
    assert phi(W, 7) == phi(P(-25, 120), 7)
    fiber = {add(S, T, m) for S in (P(-25, 120), P(-25, -120)) for T in torsion_A_t(7)}
    assert W in fiber


def test_rank_witness_none_for_t6():
    assert rank_witness(6, SearchBound(4, 100)) is None


def test_rank_witness_skips_order8_points():
    t, Q = order8_point(F(1, 2))
    assert Q in find_points(t, SearchBound(1, 1000))
    W = rank_witness(t, SearchBound(1, 1000))
    assert W is None or point_order(W, curve_Et(t)) is None


def test_solutions_stream():
    W = P(-25, 120)
    assert [str(T) for T in solutions_stream(7, W, 1)] == ["12/5 13/5 37/5"]
    three = solutions_stream(7, W, 3)
    assert len(set(three)) == 3
    for T in three:
        assert 1 + T.a**2 == T.b**2 and 49 + T.a**2 == T.c**2
    assert solutions_stream(7, W, 0) == []
    with pytest.raises(DomainError):
        solutions_stream(7, P(7, 56), 2)

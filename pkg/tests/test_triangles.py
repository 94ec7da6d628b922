import random
from fractions import Fraction as F

import pytest

from rootnum.curve import O, Point, add, curve_Et, multiply, negate, point_order, torsion_A_t
from rootnum.exactq import DomainError
from rootnum.rootnumber import in_T
from rootnum.search import SearchBound, rank_witness
from rootnum.triangles import (
    ConicPoint,
    TriangleTriple,
    classify,
    extra_torsion_report,
    g_orbit,
    halve,
    in_conic_open,
    on_conic,
    order8_point,
    phi,
    phi1,
    phi2,
    t1_family,
    triple_to_conic,
)


def P(x, y):
    return Point(F(x), F(y))


def T3(a, b, c, t):
    return TriangleTriple(F(a), F(b), F(c), F(t))


def C(r, s, w):
    return ConicPoint(F(r), F(s), F(w))


SEVEN = T3(F(12, 5), F(13, 5), F(37, 5), 7)
NINE16 = T3(F(3, 4), F(5, 4), F(15, 16), F(9, 16))


def test_phi_examples():
    assert phi(P(-25, 120), 7) == SEVEN
    assert phi(P(F(-27, 32), F(135, 512)), F(9, 16)) == NINE16
    with pytest.raises(DomainError):
        phi(P(7, 56), 7)
    with pytest.raises(DomainError):
        phi(P(1, 1), 7)


def test_triple_rejects_non_solutions():
    with pytest.raises(DomainError):
        T3(1, 2, 3, 7)
    with pytest.raises(DomainError):
        T3(F(-12, 5), F(13, 5), F(37, 5), 7)


def test_phi1_examples():
    assert phi1(O, 7) == C(0, 0, 1)
    image = phi1(P(-25, 120), 7)
    assert image == C(24, -168, 120)
    assert on_conic(image, 7) and in_conic_open(image, 7)
    node = phi1(P(0, 0), 7)
    assert node == C(49, 7, 0) and not in_conic_open(node, 7)


def test_phi1_sends_A_t_to_the_eight_boundary_points():
    t = F(7)
    images = {phi1(Q, t).normalized() for Q in torsion_A_t(t)}
    expected = {C(*c).normalized() for c in [(0, 0, 1), (-1, 1, 1), (t, 1, 0), (1, -1, 1),
                                             (1, 0, 0), (-1, -1, 1), (0, 1, 0), (1, 1, 1)]}
    assert images == expected


def test_phi2_examples():
    assert phi2(C(24, -168, 120), 7) == SEVEN
    assert phi2(C(F(1, 5), F(-7, 5), 1), 7) == SEVEN
    with pytest.raises(DomainError):
        phi2(C(1, 1, 1), 7)


def test_g_orbit_example():
    orbit = g_orbit(C(F(1, 5), F(-7, 5), 1))
    assert len(orbit) == 8
    for r, s in [(-5, F(-7, 5)), (F(1, 5), F(5, 7)), (F(-1, 5), F(7, 5))]:
        assert C(r, s, 1) in orbit
    assert all(in_conic_open(Q, 7) for Q in orbit)
    assert {phi2(Q, 7) for Q in orbit} == {SEVEN}


def test_triple_to_conic_examples():
    assert triple_to_conic(SEVEN) == C(F(1, 5), F(5, 7), 1)
    assert triple_to_conic(NINE16) == C(F(1, 2), F(1, 3), 1)
    assert triple_to_conic(T3(F(4, 3), F(5, 3), F(5, 3), 1)).r == F(1, 3)


def test_order8_point_examples():
    assert order8_point(2) == (F(9, 16), P(F(-27, 32), F(135, 512)))
    assert order8_point(3) == (F(16, 9), P(F(-32, 27), F(-160, 243)))
    assert order8_point(F(1, 2))[0] == F(9, 16)
    for bad in (0, 1, -1):
        with pytest.raises(DomainError):
            order8_point(bad)


@pytest.mark.parametrize("r", [2, 3, F(1, 2), F(5, 3), F(-7, 2), F(11, 4)])
def test_order8_point_properties(r):
    t, Q = order8_point(r)
    m = curve_Et(t)
    assert point_order(Q, m) == 8
    assert add(Q, Q, m) in torsion_A_t(t)
    assert point_order(add(Q, Q, m), m) == 4
    assert phi(Q, t).a ** 2 == t


def test_halve_finds_order8_points():
    t, Q = order8_point(2)
    m = curve_Et(t)
    halves = halve(add(Q, Q, m), t)
    assert Q in halves
    assert all(add(H, H, m) == add(Q, Q, m) for H in halves)
    assert halve(P(7, 56), 7) == []


def test_extra_torsion_examples():
    rep = extra_torsion_report(F(9, 16))
    assert rep.verdicts == (True,) * 5 and rep.r == F(1, 2)
    assert rep.triple == NINE16 and point_order(rep.witness, curve_Et(F(9, 16))) == 8
    assert extra_torsion_report(7).verdicts == (False,) * 5
    assert extra_torsion_report(4).verdicts == (False,) * 5
    with pytest.raises(DomainError):
        extra_torsion_report(1)


def test_extra_torsion_agrees_on_many_t():
    ts = {((1 - r * r) / (2 * r)) ** 2 for r in (F(a, b) for a in range(1, 9) for b in range(1, 9)) if r != 1}
    ts |= {F(a, b) for a in range(1, 15) for b in range(1, 15) if a != b}
    for t in ts:
        rep = extra_torsion_report(t)
        assert rep.consistent


def test_classify_examples():
    seven = classify(7, SearchBound(1, 60))
    assert seven.verdict == "InfinitelyMany" and not seven.conditional
    assert phi(seven.witness, 7) == SEVEN

    nine = classify(F(9, 16), SearchBound(2, 50))
    assert nine.verdict == "SingleSolution" and nine.triple == NINE16 and nine.conditional

    assert classify(1).verdict == "OneParameterFamily"

    six = classify(6, SearchBound(2, 50))
    assert six.verdict == "NoSolution" and six.conditional and six.root_number == 1
    assert classify(6, SearchBound(2, 50), strict=True).verdict == "Unresolved"
    d = six.to_dict()
    assert set(d) >= {"verdict", "witness", "bound", "conditional_flags"}
    assert d["bound"] == {"max_den": 2, "max_num": 50}
    assert all("conditional" in f for f in d["conditional_flags"])
    with pytest.raises(DomainError):
        classify(0)
    with pytest.raises(DomainError):
        classify(F(-2))


def test_t1_family():
    assert t1_family(F(1, 2)) == T3(F(3, 4), F(5, 4), F(5, 4), 1)
    assert t1_family(F(1, 3)) == T3(F(4, 3), F(5, 3), F(5, 3), 1)
    for bad in (1, 0, F(3, 2)):
        with pytest.raises(DomainError):
            t1_family(bad)


# --- properties over sampled points ------------------------------------------------


def _positive_rank_parameters(count):
    rng = random.Random(7)
    out = []
    while len(out) < count:
        t = F(rng.randint(2, 40), rng.randint(1, 12))
        if t == 1 or t in out or not in_T(t):
            continue
        W = rank_witness(t, SearchBound(2, 60))
        if W is not None:
            out.append((t, W))
    return out


def _sample_outside_A(t, W, how_many):
    m = curve_Et(t)
    A = torsion_A_t(t)
    pts = []
    k = 1
    while len(pts) < how_many:
        base = multiply(k, W, m)
        for T in A:
            pts.append(add(base, T, m))
        k += 1
    return pts[:how_many]


@pytest.fixture(scope="module")
def configurations():
    configs = [(F(7), P(-25, 120))] + _positive_rank_parameters(20)
    return configs


def test_phi_factors_through_conic(configurations):
    checked = 0
    for t, W in configurations:
        for Q in _sample_outside_A(t, W, 9):
            assert phi(Q, t) == phi2(phi1(Q, t), t)
            checked += 1
    for r in (2, 3):
        t, Q = order8_point(r)
        m = curve_Et(t)
        for T in torsion_A_t(t):
            R = add(Q, T, m)
            assert phi(R, t) == phi2(phi1(R, t), t)
            checked += 1
    assert checked >= 200


def test_eight_to_one_fibers(configurations):
    assert len(configurations) >= 20
    for t, W in configurations:
        m = curve_Et(t)
        A = torsion_A_t(t)
        pts = [add(S, T, m) for S in (W, negate(W, m)) for T in A]
        assert len(set(pts)) == 16 and not set(pts) & set(A)
        images = {}
        for Q in pts:
            images.setdefault(phi(Q, t), []).append(Q)
        assert sorted(len(v) for v in images.values()) == [8, 8]


def test_conic_round_trip_up_to_orbit(configurations):
    for t, W in configurations:
        for Q in _sample_outside_A(t, W, 4):
            C1 = phi1(Q, t)
            assert C1.normalized() in g_orbit(triple_to_conic(phi2(C1, t)))

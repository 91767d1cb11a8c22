from fractions import Fraction
from math import isqrt

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mod4forms import elliptic, squares
from mod4forms.elliptic import E, INFINITY, CurveError
from mod4forms.fields import PrimeField

SMALL_PRIMES = squares.odd_primes_up_to(200)


def test_curve_invariants():
    assert E.discriminant() == -256
    with pytest.raises(CurveError):
        elliptic.WeierstrassCurve(0, 0, 0)


@pytest.mark.parametrize("ell,count,trace", [(3, 6, -2), (5, 8, -2), (7, 12, -4)])
def test_small_point_counts(ell, count, trace):
    assert elliptic.count_points_prime(ell) == count
    assert elliptic.count_points_brute(ell) == count
    assert elliptic.trace_a(ell) == trace


@pytest.mark.parametrize("ell", SMALL_PRIMES)
def test_character_sum_matches_enumeration(ell):
    assert elliptic.count_points_prime(ell) == elliptic.count_points_brute(ell)


def test_hasse_bound():
    for ell in squares.odd_primes_up_to(3000):
        a = elliptic.trace_a(ell)
        assert a * a <= 4 * ell


def test_counts_are_even():
    # the rational 2-torsion point (-1, 0) survives reduction
    assert all(elliptic.count_points_prime(ell) % 2 == 0 for ell in SMALL_PRIMES)


def test_rational_group_law():
    Q2 = E.point(-1, 0)
    assert elliptic.point_double(E, Q2) is INFINITY
    P = E.point(1, 2)
    assert elliptic.point_add(E, P, Q2) == E.point(0, -1)
    assert elliptic.point_double(E, P) == E.point(Fraction(-3, 4), Fraction(5, 8))
    with pytest.raises(CurveError):
        elliptic.point_order(E, P)  # non-torsion
    assert elliptic.point_add(E, P, INFINITY) == P
    assert elliptic.point_add(E, P, elliptic.point_neg(E, P)) is INFINITY
    with pytest.raises(CurveError):
        E.point(1, 1)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([p for p in SMALL_PRIMES if p < 60]), st.data())
def test_group_law_over_prime_fields(ell, data):
    C = elliptic.prime_field_curve(ell)
    points = elliptic.affine_points(C, PrimeField(ell).elements())
    n = len(points) + 1
    assert n == elliptic.count_points_prime(ell)
    P = data.draw(st.sampled_from(points))
    Q = data.draw(st.sampled_from(points))
    R = data.draw(st.sampled_from(points))
    assert elliptic.scalar_mul(C, n, P) is INFINITY
    assert elliptic.point_add(C, P, Q) == elliptic.point_add(C, Q, P)
    lhs = elliptic.point_add(C, elliptic.point_add(C, P, Q), R)
    rhs = elliptic.point_add(C, P, elliptic.point_add(C, Q, R))
    assert lhs == rhs


def test_torsion_over_K():
    report = elliptic.torsion_verify()
    assert report.passed, report.failures
    EK, pts = elliptic.torsion_points()
    for j in (1, 2, 3):
        assert elliptic.point_double(EK, pts[f"P{j}"]) == pts[f"Q{j}"]
    assert elliptic.point_add(EK, pts["P1"], pts["P2"]) == pts["P3"]
    combos = elliptic.four_torsion_combinations(EK, pts["P1"], pts["P2"])
    assert combos[(0, 0)] is INFINITY
    assert len(set(combos.values())) == 16


def test_g_coefficients():
    g = elliptic.g_coefficients(100)
    assert g[1] == 1
    assert g[2] == g[4] == g[64] == 0
    assert g[3] == -2
    assert g[9] == g[3] ** 2 - 3 == 1
    assert g[15] == g[3] * g[5]
    assert g[27] == g[3] * g[9] - 3 * g[3]
    with pytest.raises(IndexError):
        g.coefficient(101)


def test_traces_are_independent_of_jobs():
    primes = squares.odd_primes_up_to(1500)
    assert elliptic.traces(primes, jobs=1) == elliptic.traces(primes, jobs=2)
    assert elliptic.g_coefficients(300, jobs=2) == elliptic.g_coefficients(300, jobs=1)


@pytest.mark.parametrize("D", elliptic.TWIST_DISCRIMINANTS)
def test_twist_traces(D):
    C = elliptic.quadratic_twist(E, D)
    assert C.discriminant() == D**6 * E.discriminant()
    for ell in squares.odd_primes_up_to(200):
        a_twist = ell + 1 - elliptic.count_points_brute(ell, C)
        assert a_twist == squares.legendre(D, ell) * elliptic.trace_a(ell)
        assert (a_twist - elliptic.trace_a(ell)) % 4 == 0


def test_twist_edge_cases():
    assert elliptic.quadratic_twist(E, 1) is E
    with pytest.raises(CurveError):
        elliptic.quadratic_twist(E, 3)


def test_quadratic_extension_counts():
    assert elliptic.count_points_quadratic(3) == 12
    assert elliptic.count_points_quadratic(5) == 32
    report = elliptic.frobenius_square_identity(11)
    assert report.passed
    assert report.count == report.expected == 144 - elliptic.trace_a(11) ** 2


def test_quadratic_extension_against_affine_enumeration():
    from mod4forms.fields import QuadraticExtension

    F = QuadraticExtension(7)
    C = E.base_change(F)
    assert len(elliptic.affine_points(C, F.elements())) + 1 == elliptic.count_points_quadratic(7)


def test_quadratic_extension_guard():
    with pytest.raises(CurveError):
        elliptic.count_points_quadratic(67)
    with pytest.raises(CurveError):
        elliptic.count_points_prime(2)


def test_isqrt_sanity_of_hasse_helper():
    # a_ell(E) is even because E has rational 2-torsion
    assert all(elliptic.trace_a(p) % 2 == 0 for p in SMALL_PRIMES)
    assert isqrt(4 * 199) >= max(abs(elliptic.trace_a(p)) for p in SMALL_PRIMES)

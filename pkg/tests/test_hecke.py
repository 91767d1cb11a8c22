from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mod4forms import hecke, qseries
from mod4forms.elliptic import NewformCoefficients


@pytest.fixture(scope="module")
def f3000():
    return qseries.build_f(3000)


def test_divisors():
    assert hecke.divisors(1) == [1]
    assert hecke.divisors(36) == [1, 2, 3, 4, 6, 9, 12, 18, 36]
    assert hecke.divisors(97) == [1, 97]


def test_t1_is_identity():
    d = qseries.delta(50)
    assert hecke.hecke_apply(d, 1) == d


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6, 7, 8, 9, 10, 12])
def test_delta_is_an_exact_eigenform(n):
    d = qseries.delta(40 * n)
    td = hecke.hecke_apply(d, n)
    assert td.prec == 40
    assert td == d[n] * d.truncate(40)


def test_precision_shrinks_by_the_index():
    d = qseries.delta(101)
    assert hecke.hecke_apply(d, 7).prec == 101 // 7


def test_displayed_hecke_values():
    f = qseries.build_f(20)
    t2 = hecke.hecke_apply(f, 2)
    t3 = hecke.hecke_apply(f, 3)
    assert t2.coeffs[1:4] == (1416, 34631124912, 5356057726176)
    diff = [t3[n] - 2 * f[n] for n in (1, 2, 3)]
    assert diff == [842652, 5356057723344, 113674493459566148]
    assert all(c % 4 == 0 for c in list(t2.coeffs[1:4]) + diff)


def test_f_is_a_weak_eigenform_mod_4(f3000):
    report = hecke.weak_eigenform_check(f3000, 2, [2, 3, 4, 5, 6, 7, 9], 300)
    assert report.passed
    assert report.operators == (2, 3, 4, 5, 6, 7, 9)


def test_f_is_not_a_weak_eigenform_mod_8(f3000):
    report = hecke.weak_eigenform_check(f3000, 3, [2, 3], 300)
    assert not report.passed


def test_delta_passes_at_every_modulus():
    d = qseries.delta(1000)
    for m in (1, 2, 5, 10):
        assert hecke.weak_eigenform_check(d, m, range(2, 11), 100).passed


@settings(max_examples=25, deadline=None)
@given(st.integers(2, 12), st.integers(2, 12))
def test_hecke_operators_commute(m, n):
    f = qseries.build_f(m * n * 12)
    lhs = hecke.hecke_apply(hecke.hecke_apply(f, m), n)
    rhs = hecke.hecke_apply(hecke.hecke_apply(f, n), m)
    prec = min(lhs.prec, rhs.prec)
    assert lhs.truncate(prec) == rhs.truncate(prec)


def test_tau_is_multiplicative():
    d = qseries.delta(400)
    for m in range(1, 20):
        for n in range(1, 20):
            if gcd(m, n) == 1:
                assert d[m * n] == d[m] * d[n]
    assert d[4] != d[2] * d[2]


def test_congruence_f_vs_delta_first_failure():
    f, d = qseries.build_f(20), qseries.delta(20)
    report = hecke.congruence_check(f, d, 2, 10)
    assert report.mismatch == (3, 2, 0)
    assert not report.passed


def test_congruence_is_reflexive_and_accepts_coefficient_objects():
    f = qseries.build_f(60)
    assert hecke.congruence_check(f, f, 2, 50).passed
    wrapper = NewformCoefficients(50, (0,) + f.coeffs[1:51])
    assert hecke.congruence_check(f, wrapper, 5, 50).passed


def test_s36_basis_is_triangular():
    assert hecke.s36_basis_triangularity_check()
    e4_6_d, e4_3_d2, d3 = hecke.s36_basis(10)
    assert qseries.build_f(10) == e4_6_d + 2 * d3


@pytest.mark.parametrize("k", sorted(hecke.HATADA_GENERATORS))
def test_hatada_generators(k):
    g = hecke.hatada_generator(k, 20)
    assert g.weight == k
    assert hecke.leading_term(g) == (1, 1)


def test_hatada_consistency():
    reports = hecke.hatada_consistency_check(hecke.HATADA_GENERATORS, 500)
    assert all(r.passed for r in reports.values())
    # E6 = 1 - 504 (...) and 504 = 8 (mod 16), so weight 18 breaks mod 16 at n = 2
    assert hecke.hatada_consistency_check([18], 50, m=3)[18].passed
    assert hecke.hatada_consistency_check([18], 50, m=4)[18].mismatch[0] == 2


@pytest.mark.parametrize(
    "call",
    [
        lambda: hecke.hecke_apply(qseries.delta(5), 0),
        lambda: hecke.hecke_apply(qseries.delta(5), 6),
        lambda: hecke.weak_eigenform_check(qseries.build_f(100), 2, [2], 300),
        lambda: hecke.weak_eigenform_check(qseries.eisenstein_e4(100), 2, [2], 10),
        lambda: hecke.congruence_check(qseries.delta(10), qseries.delta(10), 2, 10),
        lambda: hecke.hatada_generator(24, 10),
        lambda: hecke.s36_basis_triangularity_check(3),
    ],
)
def test_invalid_inputs_raise(call):
    with pytest.raises(ValueError):
        call()

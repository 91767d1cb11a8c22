from itertools import product

import pytest

from mod4forms import galois, squares, tower
from mod4forms.galois import D4, ONE, R, S, Mat2Z4, RepresentationError


@pytest.fixture(scope="module")
def K_auts():
    K, r, s = tower.build_K()
    return K, galois.d4_isomorphism(r, s)


@pytest.fixture(scope="module")
def L_auts():
    L, r, s = tower.build_L()
    return L, galois.d4_isomorphism(r, s)


def test_d4_relations():
    assert len(set(D4)) == 8
    assert galois.d4_word("rrrr") == ONE
    assert S * S == ONE
    assert galois.d4_word("srs") == galois.d4_inv(R)
    for g, h, k in product(D4, D4, D4):
        assert (g * h) * k == g * (h * k)
    for g in D4:
        assert g * galois.d4_inv(g) == ONE


def test_matrix_arithmetic():
    m = Mat2Z4.from_rows([[1, 2], [1, 1]])
    assert (m**2).rows() == [[3, 0], [2, 3]]
    assert m.order() == 4
    assert galois.IDENTITY.order() == 1
    with pytest.raises(ValueError):
        Mat2Z4(2, 0, 0, 2).order()


def test_rho_images():
    rho = galois.build_rho()
    assert rho(R) == Mat2Z4(1, 2, 1, 1)
    assert rho(S) == Mat2Z4(3, 2, 2, 3)
    assert rho(R * R) == Mat2Z4(3, 0, 2, 3)
    assert len({rho(g) for g in D4}) == 8


def test_rho_prime_images():
    rho_p = galois.build_rho_prime()
    assert rho_p(S) == Mat2Z4(1, 0, 1, 3)
    for g, h in product(D4, D4):
        assert rho_p(g * h) == rho_p(g) * rho_p(h)


def test_bad_representations_are_rejected():
    with pytest.raises(RepresentationError):
        galois.GaloisRepresentation("bad", Mat2Z4(1, 2, 1, 1), galois.IDENTITY)
    with pytest.raises(RepresentationError):
        galois.GaloisRepresentation("bad", Mat2Z4(1, 2, 0, 1), Mat2Z4(1, 0, 0, 3))  # r^2 = 1


def test_d4_isomorphism_is_a_homomorphism(K_auts):
    _, iso = K_auts
    assert len(set(iso.values())) == 8
    for g, h in product(D4, D4):
        assert iso[g * h] == tower.compose(iso[g], iso[h])


def test_frobenius_classes_L():
    assert galois.frobenius_class_L(73).elements == {ONE}
    assert galois.frobenius_class_L(41).elements == {R * R}
    assert galois.frobenius_class_L(3).elements == {S * R, S * R * R * R}
    assert galois.frobenius_class_L(5).elements == {R, R * R * R}
    assert galois.frobenius_class_L(7).elements == {S, S * R * R}


def test_quartic_residue_split_against_root_search():
    for ell in squares.odd_primes_up_to(1500):
        if ell % 8 == 1:
            has_root = any(pow(x, 4, ell) == 2 for x in range(ell))
            assert (galois.frobenius_class_L(ell).elements == {ONE}) == has_root


def _quadratic_signs(F, sigma):
    i, s2 = F.gen("i"), F.gen("sqrt2")
    return (1 if sigma(i) == i else -1), (1 if sigma(s2) == s2 else -1)


@pytest.mark.parametrize("which", ["K", "L"])
def test_frobenius_acts_on_quadratic_subfields_by_legendre_symbols(which, K_auts, L_auts):
    F, iso = K_auts if which == "K" else L_auts
    classify = galois.frobenius_class_K if which == "K" else galois.frobenius_class_L
    for ell in squares.odd_primes_up_to(400):
        expected = (squares.legendre(-1, ell), squares.legendre(2, ell))
        for g in classify(ell).elements:
            assert _quadratic_signs(F, iso[g]) == expected, (ell, g)


def test_traces_match_prime_rule():
    rho, rho_p = galois.build_rho(), galois.build_rho_prime()
    for ell in squares.odd_primes_up_to(500):
        rule = squares.f_mod4_rule(ell)
        assert galois.trace_mod4(rho, galois.frobenius_class_K(ell)) == rule
        assert galois.trace_mod4(rho_p, galois.frobenius_class_L(ell)) == rule


def test_complex_irrep_trace():
    assert galois.complex_irrep_trace(galois.frobenius_class_K(17)) == 2
    assert galois.complex_irrep_trace(galois.frobenius_class_K(3)) == 0
    assert galois.complex_irrep_trace(galois.frobenius_class_K(5)) == 0
    assert galois.complex_irrep_trace(galois.frobenius_class_L(41)) == -2


def test_weight1_noncongruence():
    for ell in (3, 5, 11, 13):
        cls = galois.frobenius_class_K(ell)
        assert galois.complex_irrep_trace(cls) % 4 != squares.f_mod4_rule(ell)
    report = galois.weight1_noncongruence_check(500)
    assert report.passed and report.primes_checked > 40


def test_torsion_matrices_equal_rho():
    m_r, m_s = galois.torsion_matrices()
    rho = galois.build_rho()
    assert (m_r, m_s) == (rho(R), rho(S))


def test_classes_are_rejected_for_bad_primes():
    for bad in (2, 9):
        with pytest.raises(ValueError):
            galois.frobenius_class_K(bad)
    with pytest.raises(ValueError):
        galois.FrobeniusClass("K", frozenset({R}))

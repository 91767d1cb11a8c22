import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mod4forms import tower
from mod4forms.tower import TowerError


@pytest.fixture(scope="module", params=["K", "L"])
def field(request):
    return tower.build_K() if request.param == "K" else tower.build_L()


def test_k_generators():
    K, r, s = tower.build_K()
    i, s2, g = K.gens()
    assert i * i == -1
    assert s2 * s2 == 2
    assert g * g == 1 + i
    assert K.degree == 8


def test_l_generators():
    L, r, s = tower.build_L()
    i, s2, t = L.gens()
    assert t * t == s2
    assert t**4 == 2


def test_inverses():
    K, _, _ = tower.build_K()
    i, s2, g = K.gens()
    assert s2.inverse() == s2 / 2
    assert (1 + i).inverse() == (1 - i) / 2
    assert g.inverse() * g == 1
    with pytest.raises(ZeroDivisionError):
        K.zero().inverse()


def test_r_of_sqrt_one_plus_i_squares_to_one_minus_i():
    K, r, _ = tower.build_K()
    i, _, g = K.gens()
    assert r(g) ** 2 == 1 - i


def test_presentation(field):
    F, r, s = field
    assert tower.order(r) == 4
    assert tower.order(s) == 2
    assert (s * r * s) == r**3
    group = tower.generated_group([r, s])
    assert len(group) == 8
    assert sum(1 for x in group if x.is_identity()) == 1


def test_rejects_a_map_that_is_not_a_homomorphism():
    K, _, _ = tower.build_K()
    i, s2, g = K.gens()
    with pytest.raises(TowerError):
        tower.make_automorphism(K, [i, s2, -i * g])  # (-i g)^2 = -(1+i) is not 1+i
    with pytest.raises(TowerError):
        tower.make_automorphism(K, [i + 1, s2, g])


def test_automorphisms_respect_arithmetic(field):
    F, r, s = field
    rng = random.Random(7)
    for sigma in tower.generated_group([r, s]):
        for _ in range(5):
            x, y = F.random_element(rng), F.random_element(rng)
            assert sigma(x * y) == sigma(x) * sigma(y)
            assert sigma(x + y) == sigma(x) + sigma(y)
            assert sigma(F.scalar(Fraction(3, 7))) == Fraction(3, 7)


TOWERS = {"K": tower.build_K()[0], "L": tower.build_L()[0]}


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32), st.sampled_from(sorted(TOWERS)))
def test_field_axioms(seed, name):
    F = TOWERS[name]
    rng = random.Random(seed)
    x, y, z = (F.random_element(rng) for _ in range(3))
    assert x * (y + z) == x * y + x * z
    assert (x * y) * z == x * (y * z)
    assert x * y == y * x
    if not x.is_zero():
        assert x * x.inverse() == F.one()
        assert (y / x) * x == y


def test_coercion_and_hashing():
    K, _, _ = tower.build_K()
    i = K.gen("i")
    assert 2 * i == i + i
    assert i - 1 == -(1 - i)
    assert len({i, i * 1, K.gen("sqrt2")}) == 2
    assert K.basis_label(7) == "i*sqrt2*sqrt(1+i)"

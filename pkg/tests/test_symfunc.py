from math import factorial

import pytest
from hypothesis import given, settings as hsettings, strategies as st
from sympy import GF, Rational

from core.errors import NotAForestError, PreconditionError
from services.generators import all_forests, random_forest, star
from services.symfunc import (
    HPoly,
    exp_specialize,
    h_to_schur,
    hpoly_mul,
    kostka,
    leaf_extension,
    monomial_expansion,
    principal_specialize,
    s_forest,
    schur_coeffs,
    schur_to_h,
    star_values_morphism,
)
from services.volume import v_apm

h = HPoly.h


def test_hpoly_arithmetic():
    p = h(1) * h(2) - h(3)
    assert p.terms == {(2, 1): 1, (3,): -1}
    assert hpoly_mul(h(1), h(1)).terms == {(1, 1): 1}
    assert (p - p).terms == {}
    assert p.degree() == 3
    with pytest.raises(PreconditionError):
        (h(1) + h(2)).degree()


def test_white_star_is_h_n():
    for n in range(1, 5):
        assert s_forest(star(n)) == h(n)


def test_black_star_is_e2(black_star2):
    assert s_forest(black_star2) == h(1) * h(1) - h(2)
    assert schur_coeffs(black_star2) == {(1, 1): 1}


def test_p3(p3):
    assert s_forest(p3) == h(1) * h(2) - h(3)
    assert schur_coeffs(p3) == {(2, 1): 1}


def test_disjoint_union_is_product(two_edges):
    assert s_forest(two_edges) == h(1) * h(1)
    assert schur_coeffs(two_edges) == {(2,): 1, (1, 1): 1}


def test_s_forest_refuses_cycles(c4):
    with pytest.raises(NotAForestError):
        s_forest(c4)


@pytest.mark.parametrize(
    "lam, mu, expected",
    [
        ((2, 1), (1, 1, 1), 2),
        ((3,), (1, 2), 1),
        ((2, 2), (2, 1, 1), 1),
        ((2, 2), (3, 1), 0),
        ((1, 1, 1), (1, 1, 1), 1),
    ],
)
def test_kostka(lam, mu, expected):
    assert kostka(lam, mu) == expected


def test_kostka_size_mismatch():
    with pytest.raises(PreconditionError):
        kostka((2,), (1, 2))


def test_basis_change_inverts():
    for g in all_forests(4):
        p = s_forest(g)
        assert schur_to_h(h_to_schur(p)) == p


def test_schur_coefficients_nonnegative():
    for g in all_forests(5):
        assert all(c > 0 for c in schur_coeffs(g).values())


def test_exp_specialization_is_normalized_volume():
    for g in all_forests(4):
        assert exp_specialize(s_forest(g)) == Rational(v_apm(g), factorial(g.n))


def test_principal_specialization(p3):
    assert principal_specialize(s_forest(p3), 2) == 2
    assert principal_specialize(h(2), 3) == 6
    with pytest.raises(PreconditionError):
        principal_specialize(h(1), 0)


def test_monomial_expansion():
    assert monomial_expansion({(1, 1): 1}, 2) == {(1, 1): 1}
    assert monomial_expansion({(2,): 1}, 2) == {(2, 0): 1, (1, 1): 1, (0, 2): 1}
    # s_{111} vanishes in two variables
    assert monomial_expansion({(1, 1, 1): 1}, 2) == {}


def test_leaf_extension_rebuilds_s_forest():
    values = {k: h(k) for k in range(1, 6)}
    for g in all_forests(4):
        assert leaf_extension(g, values, HPoly.one()) == s_forest(g)


@hsettings(max_examples=25, deadline=None)
@given(
    n=st.integers(min_value=1, max_value=7),
    seed=st.integers(min_value=0, max_value=2**32),
    star_values=st.lists(st.integers(min_value=-20, max_value=20), min_size=7, max_size=7),
)
def test_universality_over_integers(n, seed, star_values):
    g = random_forest(n, seed=seed)
    values = {k + 1: v for k, v in enumerate(star_values)}
    phi = star_values_morphism(values, 1)
    assert phi(s_forest(g)) == leaf_extension(g, values, 1)


def test_universality_over_finite_field():
    field = GF(101)
    values = {k: field(3 * k + 7) for k in range(1, 6)}
    phi = star_values_morphism(values, field(1))
    for g in all_forests(5):
        assert phi(s_forest(g)) == leaf_extension(g, values, field(1))

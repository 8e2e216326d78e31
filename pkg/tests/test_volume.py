from math import factorial

import pytest
from hypothesis import given, settings as hsettings, strategies as st

from core.errors import NotAForestError, PreconditionError
from services.generators import all_forests, caterpillar, path, random_forest, star
from services.lattice_points import v_ehrhart
from services.matchings import last_apm, random_apm_choice
from services.volume import (
    count_standard_labelings,
    enumerate_standard_labelings,
    product_rule,
    v_apm,
    v_leaf,
    volume,
)


def test_product_rule():
    assert product_rule([]) == 1
    assert product_rule([(1, 1), (1, 1)]) == 2
    # multinomial(5; 3, 2) * 2 * 1
    assert product_rule([(3, 2), (2, 1)]) == 20


@pytest.mark.parametrize("n", range(1, 7))
def test_stars_have_unit_volume(n):
    assert v_apm(star(n)) == 1
    assert v_leaf(star(n)) == 1


def test_black_star_has_unit_volume(black_star2):
    assert v_apm(black_star2) == 1
    assert v_leaf(black_star2) == 1
    assert v_ehrhart(black_star2) == 1


def test_paths(p3, p4):
    assert v_apm(p3) == v_leaf(p3) == 2
    assert v_apm(p4) == v_leaf(p4) == 5


def test_disjoint_edges(two_edges):
    assert v_apm(two_edges) == 2
    assert count_standard_labelings(two_edges) == 2


def test_recursions_refuse_cycles(c4):
    with pytest.raises(NotAForestError):
        v_apm(c4)
    with pytest.raises(NotAForestError):
        v_leaf(c4)
    assert volume(c4, "ehrhart") == 4


def test_unknown_method(p3):
    with pytest.raises(PreconditionError, match="unknown volume method"):
        volume(p3, "monte-carlo")


def test_methods_agree_on_small_forests():
    for g in all_forests(4):
        v = v_apm(g)
        assert v_leaf(g) == v
        assert v_ehrhart(g) == v
        assert count_standard_labelings(g) == v


def test_caterpillar_methods_agree():
    g = caterpillar(2, 1)
    assert v_apm(g) == v_leaf(g) == count_standard_labelings(g)


@hsettings(max_examples=25, deadline=None)
@given(n=st.integers(min_value=1, max_value=9), seed=st.integers(min_value=0, max_value=2**32))
def test_random_forests_apm_matches_leaf(n, seed):
    g = random_forest(n, seed=seed)
    v = v_apm(g)
    assert v == v_leaf(g)
    assert 1 <= v <= factorial(n)


def test_labelings_of_p3(p3):
    found = enumerate_standard_labelings(p3)
    assert len(found) == 2
    assert all(sorted(z) == [1, 2, 3] for z in found)
    assert found == sorted(found)


def test_labeling_count_ignores_apm_choice(p4):
    assert count_standard_labelings(p4, last_apm) == 5
    assert count_standard_labelings(p4, random_apm_choice(3)) == 5


def test_longer_path_is_larger():
    assert v_apm(path(5)) > v_apm(path(4))

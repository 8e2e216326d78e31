import numpy as np
import pytest
from hypothesis import given, settings as hsettings, strategies as st

from core.errors import NotAForestError, PreconditionError
from services.generators import path, random_leaf_triple, star
from services.graphs import canonical_key
from services.rewrites import leaf_recurrence_triple, leaf_step, unfold_leaf_recurrence
from services.volume import product_rule


def test_leaf_step_on_black_star(black_star2):
    # leaves 2 and 3 are white
    h, gp = leaf_step(black_star2, 2)
    assert [c.n for c in h.components()] == [1, 1]
    assert canonical_key(gp) == canonical_key(star(2))


def test_leaf_step_on_p3(p3):
    h, gp = leaf_step(p3, 1)
    assert sorted(c.n for c in h.components()) == [1, 2]
    assert gp.is_connected
    assert gp.distance_sum(1) == p3.distance_sum(1) - 1


def test_leaf_step_refuses_white_star():
    with pytest.raises(PreconditionError, match="base case"):
        leaf_step(star(3), 1)


def test_leaf_step_needs_white_root(p3):
    with pytest.raises(PreconditionError):
        leaf_step(p3, 2)


def test_unfold_with_volume_rules():
    assert unfold_leaf_recurrence(path(3), star=lambda n: 1, union=product_rule) == 2
    assert unfold_leaf_recurrence(path(4), star=lambda n: 1, union=product_rule) == 5


def test_unfold_refuses_cycles(c4):
    with pytest.raises(NotAForestError):
        unfold_leaf_recurrence(c4, star=lambda n: 1, union=lambda parts: 1)


def test_triple_from_empty_base():
    t = leaf_recurrence_triple(path(1).delete_edge(0))
    assert (t.g.n, t.g1.n, t.g2.n) == (2, 2, 2)
    assert len(t.g.components()) == 2
    assert t.g1.is_connected and t.g2.is_connected


def test_triple_rejects_same_component(p3):
    with pytest.raises(PreconditionError):
        leaf_recurrence_triple(p3, 1, 2)


def test_triple_rejects_same_color(two_edges):
    with pytest.raises(PreconditionError):
        leaf_recurrence_triple(two_edges, 1, 3)


@hsettings(max_examples=30, deadline=None)
@given(n=st.integers(min_value=2, max_value=8), seed=st.integers(min_value=0, max_value=2**32))
def test_random_triples_have_matching_sizes(n, seed):
    t = random_leaf_triple(np.random.default_rng(seed), n)
    assert t.g.n == t.g1.n == t.g2.n == n
    assert t.g.is_forest and t.g1.is_forest and t.g2.is_forest
    # G has one more component than G1 and G2
    assert len(t.g.components()) == len(t.g1.components()) + 1 == len(t.g2.components()) + 1

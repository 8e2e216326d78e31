import pytest

from core.errors import PreconditionError
from services.generators import (
    all_diagrams,
    caterpillar,
    diagrams_with_boxes,
    forests_with_edges,
    path,
    random_forest,
    star,
)
from services.graphs import Color, canonical_key


def test_star_and_path_shapes():
    g = star(4, Color.BLACK)
    assert g.n == 4 and g.color(1) is Color.BLACK
    p = path(5)
    assert p.n == 5 and p.is_connected
    assert [p.color(v) for v in (1, 2, 3)] == [Color.WHITE, Color.BLACK, Color.WHITE]


def test_caterpillar():
    g = caterpillar(3, 2)
    assert g.n == 2 + 3 * 2
    assert g.is_forest and g.is_connected
    with pytest.raises(PreconditionError):
        caterpillar(1, 0)


@pytest.mark.parametrize("factory", [lambda: star(0), lambda: path(0), lambda: random_forest(0)])
def test_empty_generators_rejected(factory):
    with pytest.raises(PreconditionError):
        factory()


def test_random_forest_is_deterministic():
    assert random_forest(8, seed=5) == random_forest(8, seed=5)
    g = random_forest(8, seed=-1)
    assert g.n == 8 and g.is_forest


@pytest.mark.parametrize("n, expected", [(1, 1), (2, 3)])
def test_forest_counts(n, expected):
    # two edges: white star, black star, two disjoint edges
    assert len(forests_with_edges(n)) == expected


def test_forests_are_pairwise_distinct():
    for n in range(1, 5):
        keys = [canonical_key(g) for g in forests_with_edges(n)]
        assert len(keys) == len(set(keys))
        assert all(g.is_forest and g.n == n for g in forests_with_edges(n))


def test_diagrams_match_forests_until_the_square():
    for n in range(1, 4):
        assert len(diagrams_with_boxes(n)) == len(forests_with_edges(n))
    # the 2x2 square is the only cycle with four boxes
    assert len(diagrams_with_boxes(4)) == len(forests_with_edges(4)) + 1


def test_all_diagrams_sizes():
    sizes = [d.n for d in all_diagrams(3)]
    assert sizes == sorted(sizes)
    assert set(sizes) == {1, 2, 3}

import pytest
from hypothesis import given, settings as hsettings, strategies as st

from core.errors import NotAForestError, PreconditionError
from services.diagrams import Diagram, diagram_to_graph, graph_to_diagram, young_diagram
from services.generators import all_diagrams, all_forests, random_forest, star
from services.matchings import (
    Transversal,
    all_apms,
    all_matchings,
    apm_transversal,
    classify,
    find_apm,
    is_almost_perfect,
    is_matching,
    is_special,
    last_apm,
    pinned_apm_choice,
    random_apm_choice,
    standard_form,
    transversal_of,
)


def test_single_edge_apm():
    assert find_apm(star(1)).edges == frozenset({0})


def test_p3_apms(p3):
    # edges: e0 = 1-2, e1 = 3-2, e2 = 3-4; the middle edge is e1
    assert is_almost_perfect(p3, {1})
    assert is_almost_perfect(p3, {0, 2})
    assert not is_almost_perfect(p3, {0})
    assert {m.edges for m in all_apms(p3)} == {frozenset({1}), frozenset({0, 2})}
    assert find_apm(p3).edges in {frozenset({1}), frozenset({0, 2})}
    assert find_apm(p3) == find_apm(p3)


def test_star_apm_is_lowest_edge():
    assert find_apm(star(3)).edges == frozenset({0})
    assert len(all_apms(star(3))) == 3


def test_isolated_edge_must_be_matched(two_edges):
    assert not is_almost_perfect(two_edges, set())
    assert not is_almost_perfect(two_edges, {0})
    assert is_almost_perfect(two_edges, {0, 1})


def test_non_matching_rejected(p3):
    assert not is_matching(p3, {0, 1})
    with pytest.raises(PreconditionError):
        is_almost_perfect(p3, {0, 1})


def test_every_forest_matching_is_special():
    for g in all_forests(4):
        assert all(is_special(g, m) for m in all_matchings(g))


def test_four_cycle_special_matchings(c4):
    # c4 edges: (1,1)=1-3, (1,2)=1-4, (2,1)=2-3, (2,2)=2-4
    assert not is_special(c4, {0, 3})
    assert not is_special(c4, {1, 2})
    assert all(is_special(c4, {e}) for e in range(4))


def test_find_apm_refuses_cycles(c4):
    with pytest.raises(NotAForestError):
        find_apm(c4)


@hsettings(max_examples=40, deadline=None)
@given(n=st.integers(min_value=1, max_value=9), seed=st.integers(min_value=0, max_value=2**32))
def test_canonical_apm_is_almost_perfect(n, seed):
    g = random_forest(n, seed=seed)
    m = find_apm(g)
    assert m.is_almost_perfect and m.is_special
    assert m in all_apms(g)


def test_alternative_choices_are_apms(p4):
    assert last_apm(p4).is_almost_perfect
    choose = random_apm_choice(11)
    assert choose(p4) == choose(p4)
    assert choose(p4) in all_apms(p4)


def test_pinned_choice_only_applies_to_the_top_graph(p4):
    for m in all_apms(p4):
        choose = pinned_apm_choice(p4, m)
        assert choose(p4) == m
        smaller = p4.delete_edge(0)
        assert choose(smaller) == find_apm(smaller)
    with pytest.raises(PreconditionError):
        pinned_apm_choice(p4, classify(p4, {0}))


def test_standard_form_of_row():
    d = young_diagram([4])
    sfd = standard_form(d, Transversal(((1, 1),)))
    assert sfd.u == 1
    assert sfd.diagram == d
    assert sfd.row_perm == {1: 1}


def test_standard_form_of_p3():
    d = Diagram([(1, 1), (2, 1), (2, 2)])
    sfd = standard_form(d, Transversal(((2, 1),)))
    assert sfd.diagram == Diagram([(1, 1), (1, 2), (2, 1)])
    assert sfd.transversal.boxes == ((1, 1),)
    assert sfd.to_original((1, 1)) == (2, 1)


def test_standard_form_refuses_non_special():
    with pytest.raises(PreconditionError):
        standard_form(young_diagram([2, 2]), Transversal(((1, 1), (2, 2))))


def test_transversal_rejects_shared_row():
    with pytest.raises(PreconditionError):
        Transversal(((1, 1), (1, 2)))


def _upper_boxes(sfd):
    u = sfd.u
    return [(i, j) for i, j in sfd.diagram.boxes if i < j <= u]


def test_standard_form_exists_exactly_for_special_transversals():
    for d in all_diagrams(4):
        g = diagram_to_graph(d)
        for m in all_matchings(g):
            U = transversal_of(d, m)
            if is_special(g, m):
                sfd = standard_form(d, U)
                assert not _upper_boxes(sfd)
                assert sfd.transversal.boxes == tuple((k, k) for k in range(1, len(m) + 1))
            else:
                with pytest.raises(PreconditionError):
                    standard_form(d, U)


def test_apm_transversal_of_forest_diagram(p4):
    d = graph_to_diagram(p4)
    U = apm_transversal(d)
    assert len(U) == len(find_apm(diagram_to_graph(d)).edges)

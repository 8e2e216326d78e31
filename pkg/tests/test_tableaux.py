import pytest

from core.errors import PreconditionError
from services.diagrams import Diagram, diagram_to_graph, graph_to_diagram, young_diagram
from services.generators import all_forests, star
from services.graphs import Color
from services.lattice_points import m_count
from services.matchings import Transversal, last_apm, standard_form
from services.symfunc import monomial_expansion, principal_specialize, s_forest, schur_coeffs
from services.tableaux import (
    derive_u_prime,
    horizontal_strips,
    ssyt_count,
    ssyt_enumerate,
    ssyt_generating_function,
    standard_tableaux,
    standard_tableaux_from_labelings,
    strips_of,
)
from services.volume import v_apm

P3_DIAGRAM = Diagram([(1, 1), (2, 1), (2, 2)])
DIAGONAL = Diagram([(1, 1), (2, 2)])
COLUMN = Diagram([(1, 1), (2, 1)])


def _p3_standard_form():
    return standard_form(P3_DIAGRAM, Transversal(((2, 1),)))


def test_derive_u_prime():
    assert derive_u_prime(_p3_standard_form()).boxes == ((1, 2),)
    diagonal = standard_form(DIAGONAL, Transversal(((1, 1), (2, 2))))
    assert derive_u_prime(diagonal).boxes == ((1, 1),)
    single = standard_form(young_diagram([1]), Transversal(((1, 1),)))
    assert derive_u_prime(single).boxes == ()


def test_derive_u_prime_needs_transversal():
    empty = standard_form(Diagram([]), Transversal(()))
    with pytest.raises(PreconditionError):
        derive_u_prime(empty)


def test_p3_strips():
    assert horizontal_strips(_p3_standard_form()) == {
        frozenset(),
        frozenset({(1, 1)}),
        frozenset({(1, 1), (1, 2)}),
    }


def test_diagonal_strips():
    diagonal = standard_form(DIAGONAL, Transversal(((1, 1), (2, 2))))
    assert len(horizontal_strips(diagonal)) == 4


def test_strips_never_share_a_column():
    for g in all_forests(4):
        for strip in strips_of(graph_to_diagram(g)):
            cols = [c for _, c in strip]
            assert len(cols) == len(set(cols))


def test_column_tableaux():
    assert ssyt_generating_function(COLUMN, 2) == {(1, 1): 1}
    tableaux = ssyt_enumerate(COLUMN, 2)
    assert len(tableaux) == 1
    assert sorted(tableaux[0].labels) == [1, 2]


def test_row_tableaux():
    row = young_diagram([2])
    assert ssyt_count(row, 2) == 3
    assert [t.content(2) for t in ssyt_enumerate(row, 2)] == [(2, 0), (1, 1), (0, 2)]


def test_ssyt_count_limits():
    assert ssyt_count(young_diagram([2]), 0) == 0
    assert ssyt_count(Diagram([]), 0) == 1
    with pytest.raises(PreconditionError):
        ssyt_count(young_diagram([2]), -1)


@pytest.mark.parametrize("N", [1, 2, 3])
def test_counts_match_principal_specialization(N):
    for g in all_forests(4):
        d = graph_to_diagram(g)
        count = ssyt_count(d, N)
        assert count == principal_specialize(s_forest(g), N)
        assert count == m_count(g, N)
        assert count == len(ssyt_enumerate(d, N))


@pytest.mark.parametrize("N", [2, 3])
def test_content_matches_schur_expansion(N):
    for g in all_forests(3):
        d = graph_to_diagram(g)
        assert ssyt_generating_function(d, N) == monomial_expansion(schur_coeffs(g), N)


def test_standard_tableaux_count_volume():
    for g in all_forests(4):
        d = graph_to_diagram(g)
        assert len(standard_tableaux(d)) == v_apm(g)


def test_standard_tableaux_are_labelings(p3):
    d = graph_to_diagram(p3)
    assert standard_tableaux(d) == standard_tableaux_from_labelings(d)


def test_counts_ignore_apm_choice(p4):
    d = graph_to_diagram(p4)
    assert ssyt_count(d, 3, last_apm) == ssyt_count(d, 3)


def test_star_has_single_standard_tableau():
    d = graph_to_diagram(star(3))
    # find_apm takes edge 0, so box (1,1) carries the largest label
    assert [t.labels for t in standard_tableaux(d)] == [(3, 2, 1)]
    assert diagram_to_graph(d).n == 3
    for n in range(1, 6):
        assert len(standard_tableaux(graph_to_diagram(star(n)))) == 1
        assert len(standard_tableaux(graph_to_diagram(star(n, Color.BLACK)))) == 1

import pytest

from core.errors import GraphValidationError, PreconditionError
from services.diagrams import (
    Diagram,
    diagram_to_graph,
    format_diagram_ascii,
    graph_to_diagram,
    parse_diagram_ascii,
    split_candidates,
    split_diagram,
    young_diagram,
)
from services.generators import all_diagrams, star
from services.graphs import Color, are_equivalent


def _equivalent(d: Diagram, e: Diagram) -> bool:
    return are_equivalent(diagram_to_graph(d), diagram_to_graph(e))


def test_star_is_a_row():
    assert graph_to_diagram(star(3)) == Diagram([(1, 1), (1, 2), (1, 3)])


def test_path_diagram(p3):
    assert graph_to_diagram(p3) == Diagram([(1, 1), (2, 1), (2, 2)])


def test_four_cycle_is_square(c4):
    assert graph_to_diagram(c4) == young_diagram([2, 2])


def test_row_is_white_star():
    g = diagram_to_graph(Diagram([(1, 1), (1, 2)]))
    center = g.is_star()
    assert g.n == 2 and g.color(center) is Color.WHITE


def test_column_is_black_star():
    g = diagram_to_graph(Diagram([(1, 1), (2, 1)]))
    center = g.is_star()
    assert g.n == 2 and g.color(center) is Color.BLACK


def test_diagonal_is_two_edges():
    g = diagram_to_graph(Diagram([(1, 1), (2, 2)]))
    assert len(g.components()) == 2


def test_box_k_is_edge_k(p4):
    d = graph_to_diagram(p4)
    whites, blacks = p4.whites(), p4.blacks()
    for (w, b), (r, c) in zip(p4.edges, d.boxes):
        assert whites[r - 1] == w and blacks[c - 1] == b


def test_roundtrip_up_to_equivalence():
    for d in all_diagrams(5):
        assert _equivalent(graph_to_diagram(diagram_to_graph(d)), d)


def test_ascii_roundtrip():
    text = "##.\n.##\n"
    d = parse_diagram_ascii(text)
    assert d.boxes == ((1, 1), (1, 2), (2, 2), (2, 3))
    assert format_diagram_ascii(d) == text


def test_ascii_rejects_other_characters():
    with pytest.raises(GraphValidationError):
        parse_diagram_ascii("#x\n")


def test_transpose_and_direct_sum():
    d = young_diagram([2, 1])
    assert d.transpose() == young_diagram([2, 1])
    summed = young_diagram([1]).direct_sum(young_diagram([1]))
    assert summed == Diagram([(1, 1), (2, 2)])


def test_split_diagonal_pair():
    d = Diagram([(1, 1), (2, 2)])
    d_a, d_b = split_diagram(d, (1, 1), (2, 2))
    assert d_a == Diagram([(2, 1), (2, 2)])
    assert _equivalent(d_b, Diagram([(1, 1), (2, 1)]))


def test_split_needs_distinct_rows_and_columns():
    d = Diagram([(1, 1), (1, 2)])
    with pytest.raises(PreconditionError):
        split_diagram(d, (1, 1), (1, 2))


def test_split_needs_empty_corners():
    with pytest.raises(PreconditionError):
        split_diagram(young_diagram([2, 2]), (1, 1), (2, 2))


def test_split_keeps_box_count():
    for d in all_diagrams(4):
        for b1, b2 in split_candidates(d):
            d_a, d_b = split_diagram(d, b1, b2)
            assert d_a.n == d.n and d_b.n == d.n

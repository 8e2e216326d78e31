import pytest

from core.config import settings
from core.errors import CapExceededError, PreconditionError
from services.characters import hook_dim, partitions
from services.diagrams import Diagram, graph_to_diagram, young_diagram
from services.generators import all_diagrams, all_forests, path, random_forest
from services.specht import (
    exact_rank,
    schur_tensor_span,
    specht_character,
    specht_decompose,
    specht_dim,
    specht_report,
)
from services.symfunc import monomial_expansion, schur_coeffs
from services.volume import v_apm

DIAGONAL = Diagram([(1, 1), (2, 2)])


@pytest.mark.parametrize("lam", [lam for n in range(1, 5) for lam in partitions(n)])
def test_young_diagram_dimension(lam):
    assert specht_dim(young_diagram(lam)) == hook_dim(lam)


def test_empty_diagram():
    assert specht_dim(Diagram([])) == 1
    assert specht_character(Diagram([])) == {(): 1}


def test_square_character(c4):
    d = graph_to_diagram(c4)
    assert specht_dim(d) == 2
    assert specht_character(d) == {
        (4,): 0,
        (3, 1): -1,
        (2, 2): 2,
        (2, 1, 1): 0,
        (1, 1, 1, 1): 2,
    }
    assert specht_decompose(d) == {(2, 2): 1}


def test_diagonal_is_regular_representation():
    assert specht_dim(DIAGONAL) == 2
    assert specht_decompose(DIAGONAL) == {(2,): 1, (1, 1): 1}


def test_dimension_is_volume_on_forests():
    for g in all_forests(4):
        assert specht_dim(graph_to_diagram(g)) == v_apm(g)


def test_decomposition_matches_schur_coefficients():
    for g in all_forests(4):
        assert specht_decompose(graph_to_diagram(g)) == schur_coeffs(g)


def test_exact_rank_agrees(p3):
    d = graph_to_diagram(p3)
    assert exact_rank(d) == specht_dim(d, confirm=True) == 2


def test_report_fields(p3):
    report = specht_report(graph_to_diagram(p3), confirm=True, tensor_N=2)
    assert report.dimension == 2
    assert report.decomposition == {(2, 1): 1}
    assert report.character[(1, 1, 1)] == 2
    assert report.confirmations == {"second_prime": 2, "rational": 2}
    assert report.tensor.dimension == 2


def test_report_can_skip_character():
    report = specht_report(young_diagram([3]), character=False, decompose=False)
    assert report.dimension == 1
    assert report.character is None and report.decomposition is None


def test_specht_cap(monkeypatch):
    monkeypatch.setattr(settings, "SPECHT_MAX_N", 3)
    with pytest.raises(CapExceededError) as err:
        specht_dim(young_diagram([2, 2]))
    assert err.value.cap_name == "SPECHT_MAX_N"


def test_tensor_span_of_column_and_row():
    column = schur_tensor_span(Diagram([(1, 1), (2, 1)]), 2)
    assert column.dimension == 1
    assert column.character == {(1, 1): 1}
    row = schur_tensor_span(young_diagram([2]), 2)
    assert row.dimension == 3
    assert row.character == {(2, 0): 1, (1, 1): 1, (0, 2): 1}


@pytest.mark.parametrize("lam", [(2, 1), (3,), (2, 2), (1, 1, 1)])
@pytest.mark.parametrize("N", [1, 2, 3])
def test_tensor_span_is_schur_polynomial(lam, N):
    report = schur_tensor_span(young_diagram(lam), N)
    assert report.character == monomial_expansion({lam: 1}, N)


@pytest.mark.parametrize("N", [1, 2, 3])
def test_tensor_character_of_forests_is_monomial_expansion(N):
    for g in all_forests(4) + [random_forest(5, seed=s) for s in range(4)]:
        report = schur_tensor_span(graph_to_diagram(g), N)
        assert report.character == monomial_expansion(schur_coeffs(g), N)


def test_confirmation_primes_agree_on_small_shapes():
    shapes = [graph_to_diagram(g) for g in all_forests(4)] + list(all_diagrams(4))
    for d in shapes:
        report = specht_report(d, character=False, decompose=False, confirm=True)
        assert report.confirmations["second_prime"] == report.dimension
        assert report.confirmations["rational"] == report.dimension


def test_tensor_span_limits(monkeypatch):
    with pytest.raises(PreconditionError):
        schur_tensor_span(young_diagram([2]), 0)
    monkeypatch.setattr(settings, "TENSOR_MAX_WORDS", 8)
    with pytest.raises(CapExceededError):
        schur_tensor_span(young_diagram([2, 2]), 2)


@pytest.mark.slow
def test_seven_edge_path():
    g = path(7)
    assert specht_dim(graph_to_diagram(g)) == v_apm(g)

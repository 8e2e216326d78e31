import numpy as np
from hypothesis import given, settings as hsettings, strategies as st

from services.echelon import ModularEchelon, matmul_mod, symmetric_lift

P = 2_147_483_629


@hsettings(max_examples=20, deadline=None)
@given(seed=st.integers(min_value=0, max_value=2**32))
def test_matmul_mod_matches_exact_integers(seed):
    rng = np.random.default_rng(seed)
    a = rng.integers(0, P, size=(4, 6), dtype=np.int64)
    b = rng.integers(0, P, size=(6, 3), dtype=np.int64)
    exact = [
        [sum(int(a[i, k]) * int(b[k, j]) for k in range(6)) % P for j in range(3)]
        for i in range(4)
    ]
    assert matmul_mod(a, b, P).tolist() == exact


def test_rank_of_dependent_rows():
    ech = ModularEchelon(3, 101)
    assert ech.insert(np.array([1, 2, 3]))
    assert ech.insert(np.array([0, 1, 1]))
    assert not ech.insert(np.array([2, 5, 7]))
    assert ech.rank == 2
    assert ech.contains(np.array([3, 7, 10]))
    assert not ech.contains(np.array([0, 0, 1]))


def test_insert_batch_reports_new_rows():
    ech = ModularEchelon(4, 7)
    batch = np.array([[1, 0, 0, 0], [2, 0, 0, 0], [0, 1, 0, 0], [1, 1, 0, 0]])
    assert ech.insert_batch(batch) == [0, 2]
    assert ech.rank == 2


def test_basis_is_reduced():
    ech = ModularEchelon(3, 11)
    ech.insert(np.array([1, 1, 0]))
    ech.insert(np.array([1, 0, 1]))
    pivot_block = ech.rows[:, ech.pivots]
    assert pivot_block.tolist() == [[1, 0], [0, 1]]


def test_coordinates_reconstruct_vector():
    ech = ModularEchelon(3, 13)
    ech.insert(np.array([1, 2, 0]))
    ech.insert(np.array([0, 1, 4]))
    vec = (3 * np.array([1, 2, 0]) + 5 * np.array([0, 1, 4])) % 13
    coords = ech.coordinates(vec)
    assert (matmul_mod(coords[None, :], ech.rows, 13)[0] == vec).all()


def test_symmetric_lift():
    assert symmetric_lift(100, 101) == -1
    assert symmetric_lift(50, 101) == 50
    assert symmetric_lift(-3, 7) == -3

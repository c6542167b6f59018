import numpy as np
import pytest

from entanglyze.entanglement import em_element, em_matrix
from entanglyze.errors import NotMaximallyEntangled, TooLarge
from entanglyze.optimize import mieb_matrix, optimal_breaking_axis, optimal_pair_axes
from entanglyze.oracle import (
    dense_bloch,
    dense_correlator,
    dense_em_matrix,
    dense_expectation,
    dense_mieb,
    dense_pauli,
    dense_recompute,
    disentangling_search,
    grid_search_breaking,
    grid_search_pair,
    run_sequence,
    sphere_grid,
)
from entanglyze.statevec import X, Y, Z, bloch_vector, correlator, expectation, factor
from entanglyze.states import brs_chain, ghz, random_state

from conftest import random_axis


def test_sphere_grid_shape():
    grid = sphere_grid(10)
    assert len(grid) == 17 * 36 + 2
    np.testing.assert_allclose(np.linalg.norm(grid.points, axis=1), 1.0)
    assert sphere_grid(10) is grid
    with pytest.raises(ValueError):
        sphere_grid(0)


def test_dense_pauli_bit_order():
    # qubit 0 is the most significant bit
    np.testing.assert_array_equal(dense_pauli(2, 0, X), np.kron([[0, 1], [1, 0]], np.eye(2)))
    m = dense_pauli(3, 1, Y)
    np.testing.assert_allclose(m, m.conj().T)
    np.testing.assert_allclose(m @ m, np.eye(8), atol=1e-15)


def test_dense_size_limit():
    with pytest.raises(TooLarge):
        dense_pauli(11, 0, X)


@pytest.mark.parametrize("seed", range(5))
def test_dense_matches_fast(seed):
    s = random_state(5, seed)
    rng = np.random.default_rng(seed)
    a, b = random_axis(rng), random_axis(rng)
    assert dense_expectation(s, 2, a) == pytest.approx(expectation(s, factor(2, a)), abs=1e-12)
    fs = [factor(0, a), factor(3, b), factor(4, Z)]
    assert dense_correlator(s, fs) == pytest.approx(correlator(s, fs), abs=1e-12)
    np.testing.assert_allclose(dense_bloch(s, 1), bloch_vector(s, 1), atol=1e-12)
    axes = [random_axis(rng) for _ in range(5)]
    np.testing.assert_allclose(dense_em_matrix(s, axes), em_matrix(s, axes).g, atol=1e-12)
    np.testing.assert_allclose(dense_mieb(s, 3), mieb_matrix(s, 3).b, atol=1e-12)
    assert dense_recompute(s, "em_element", 0, 1, a, b) == pytest.approx(em_element(s, 0, 1, a, b), abs=1e-12)


def test_dense_recompute_unknown_quantity():
    with pytest.raises(ValueError):
        dense_recompute(ghz(2), "nope")


def test_grid_pair_below_eigen():
    s = random_state(3, 42)
    grid = grid_search_pair(s, 0, 1, res=2.0)
    sol = optimal_pair_axes(s, 0, 1)
    assert grid.value <= sol.value + 1e-9
    assert sol.value - grid.value < 2e-3  # 2 degree lattice


def test_grid_pair_hits_exact_axes():
    grid = grid_search_pair(ghz(3), 0, 2, res=5.0)
    assert grid.value == pytest.approx(1.0, abs=1e-12)


def test_grid_breaking_brs3():
    res = grid_search_breaking(brs_chain(3), 0, res=5.0)
    assert res.value == pytest.approx(2.0, abs=1e-12)
    assert abs(res.axis.x) == pytest.approx(1.0)
    assert res.value <= optimal_breaking_axis(brs_chain(3), 0).eigenvalue + 1e-9


def test_grid_breaking_validation():
    with pytest.raises(ValueError):
        grid_search_breaking(ghz(3), 0, res=6)
    with pytest.raises(NotMaximallyEntangled):
        grid_search_breaking(random_state(3, 0), 0)


def test_run_sequence_takes_possible_outcome():
    seq = run_sequence(ghz(3), [(0, Z), (1, -Z)])
    # after (0, z, +1) qubit 1 is |0>, so -z can only give -1
    assert [o for _, _, o in seq.steps] == [1, -1]
    assert seq.residual < 1e-12


def test_disentangling_search_none_when_impossible():
    options = [(q, a) for q in range(4) for a in (X, Y, Z)]
    assert disentangling_search(brs_chain(4), [options]) is None
    found = disentangling_search(brs_chain(4), [options, options])
    assert found is not None and found.residual < 1e-9

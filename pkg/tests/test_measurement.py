import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entanglyze.entanglement import ed_all, ed_single, em_element, total_entanglement
from entanglyze.errors import (
    DuplicateQubit,
    NotMaximallyEntangled,
    QubitOverlap,
    ZeroDenominator,
    ZeroProbabilityOutcome,
)
from entanglyze.measurement import (
    measure_sequence,
    operator_gap,
    outcome_probability,
    project,
    sequential_expectation_formula,
    verify_theorem1,
)
from entanglyze.optimize import optimal_pair_axes
from entanglyze.oracle import disentangling_search
from entanglyze.statevec import X, Y, Z, bloch_vector, correlator, expectation, factor, make_state
from entanglyze.states import (
    SupersingletParams,
    brs_chain,
    ghz,
    product_state,
    random_state,
    supersinglet_s4,
)

from conftest import BUILTIN, random_axis


def test_project_eigenstate():
    post, rec = project(make_state(1, [1, 0]), 0, Z, 1)
    np.testing.assert_allclose(post.amplitudes, [1, 0])
    assert rec.probability == pytest.approx(1.0)
    assert rec.outcome == 1 and rec.qubit == 0


def test_project_orthogonal_outcome():
    with pytest.raises(ZeroProbabilityOutcome):
        project(make_state(1, [1, 0]), 0, Z, -1)


def test_project_outcome_validation():
    with pytest.raises(ValueError):
        project(ghz(2), 0, Z, 0)


def test_ghz3_z_measurement_disentangles():
    post, rec = project(ghz(3), 0, Z, 1)
    assert rec.probability == pytest.approx(0.5)
    for q in range(3):
        assert np.linalg.norm(bloch_vector(post, q)) == pytest.approx(1.0, abs=1e-12)


def test_ghz3_x_measurement_leaves_bell_pair():
    # x is not GHZ3's breaking axis: <X0 X1> = 0, so qubits 1, 2 stay maximally entangled
    post, _ = project(ghz(3), 0, X, 1)
    np.testing.assert_allclose(ed_all(post), [0, 1, 1], atol=1e-12)


def test_brs3_single_measurement_disentangles():
    post, _ = project(brs_chain(3), 0, X, 1)
    assert total_entanglement(post) < 1e-12


def test_measure_sequence_basics():
    s = ghz(3)
    post, recs = measure_sequence(s, [])
    np.testing.assert_array_equal(post.amplitudes, s.amplitudes)
    assert recs == []
    with pytest.raises(DuplicateQubit):
        measure_sequence(s, [(0, X), (0, Z)])


def test_measure_sequence_second_step_implicit():
    once, _ = project(ghz(3), 0, Z, 1)
    twice, recs = measure_sequence(ghz(3), [(0, Z), (1, Z)])
    assert recs[1].probability == pytest.approx(1.0)
    assert abs(abs(np.vdot(once.amplitudes, twice.amplitudes)) - 1) < 1e-12


def test_measure_sequence_reports_failing_step():
    with pytest.raises(ZeroProbabilityOutcome) as info:
        measure_sequence(ghz(3), [(0, Z), (1, Z)], outcomes=[1, -1])
    assert info.value.step == 1


def test_brs5_two_measurements_disentangle():
    s = brs_chain(5)
    options = [(q, a) for q in range(5) for a in (X, Y, Z)]
    found = disentangling_search(s, [options, options])
    assert found is not None and len(found.steps) == 2
    assert found.residual < 1e-9
    # and no single measurement suffices
    assert disentangling_search(s, [options]) is None


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 10_000), data=st.data())
def test_outcome_probabilities_sum_to_one(seed, data):
    n = data.draw(st.integers(1, 5))
    s = random_state(n, seed)
    q = data.draw(st.integers(0, n - 1))
    m = random_axis(np.random.default_rng(seed))
    total = outcome_probability(s, q, m, 1) + outcome_probability(s, q, m, -1)
    assert abs(total - 1) < 1e-12


# --- closed-form sequential expectation ------------------------------------

def test_formula_empty_set_is_plain_expectation():
    s = random_state(3, 4)
    f = factor(1, (0.0, 0.6, 0.8))
    assert sequential_expectation_formula(s, [], f) == pytest.approx(expectation(s, f), abs=1e-14)


def test_formula_single_measurement_is_ratio():
    s = random_state(4, 2)
    rng = np.random.default_rng(0)
    m, v = random_axis(rng), random_axis(rng)
    ratio = (expectation(s, factor(2, v)) + correlator(s, [factor(2, v), factor(0, m)])) / (
        1 + expectation(s, factor(0, m))
    )
    assert sequential_expectation_formula(s, [(0, m)], factor(2, v)) == pytest.approx(ratio, abs=1e-12)
    post, _ = project(s, 0, m, 1)
    assert expectation(post, factor(2, v)) == pytest.approx(ratio, abs=1e-12)


def test_formula_ghz4_cross_check():
    s = ghz(4)
    measured = [(0, X), (1, X)]
    post, _ = measure_sequence(s, measured)
    want = expectation(post, factor(2, X))
    assert sequential_expectation_formula(s, measured, factor(2, X)) == pytest.approx(want, abs=1e-12)


def test_formula_literal_truncation_disagrees():
    # dropping the full-size subset breaks the identity with the projector chain
    s = random_state(5, 1)
    measured = [(0, (0.6, 0, 0.8)), (3, Y), (4, Z)]
    post, _ = measure_sequence(s, measured)
    want = expectation(post, factor(2, X))
    assert sequential_expectation_formula(s, measured, factor(2, X)) == pytest.approx(want, abs=1e-12)
    assert abs(sequential_expectation_formula(s, measured, factor(2, X), literal=True) - want) > 1e-3


def test_formula_errors():
    s = ghz(3)
    with pytest.raises(QubitOverlap):
        sequential_expectation_formula(s, [(0, X)], factor(0, Z))
    with pytest.raises(DuplicateQubit):
        sequential_expectation_formula(s, [(0, X), (0, Z)], factor(1, Z))
    with pytest.raises(ZeroDenominator):
        sequential_expectation_formula(make_state(2, [1, 0, 0, 0]), [(0, -Z)], factor(1, Z))


@settings(max_examples=40, deadline=None)
@given(seed=st.integers(0, 10_000), data=st.data())
def test_formula_matches_projector_chain(seed, data):
    n = data.draw(st.integers(2, 6))
    s = random_state(n, seed)
    rng = np.random.default_rng(seed)
    order = data.draw(st.permutations(range(n)))
    k = data.draw(st.integers(0, n - 1))
    measured = [(q, random_axis(rng)) for q in order[:k]]
    target = factor(order[k], random_axis(rng))
    post, _ = measure_sequence(s, measured)
    assert abs(sequential_expectation_formula(s, measured, target) - expectation(post, target)) < 1e-10


# --- collapse identities -------------------------------------------------

def test_collapse_identity_ghz3():
    res = verify_theorem1(ghz(3), 0, Z, 1, Z)
    assert res.lhs == pytest.approx(1.0) and res.rhs == pytest.approx(1.0)
    assert res.residual < 1e-12
    res = verify_theorem1(ghz(3), 0, X, 1, X)
    assert res.lhs == pytest.approx(0.0, abs=1e-12) and res.residual < 1e-12


def test_collapse_identity_supersinglet():
    res = verify_theorem1(supersinglet_s4(SupersingletParams(0, 1)), 0, Z, 1, Z)
    assert res.lhs == pytest.approx(-1.0) and res.rhs == pytest.approx(-1.0)


def test_collapse_identity_requires_maximal_entanglement():
    with pytest.raises(NotMaximallyEntangled) as info:
        verify_theorem1(product_state([(0, 0, 1), (1, 0, 0)]), 0, Z, 1, Z)
    assert info.value.qubit == 0


@pytest.mark.parametrize("name", sorted(BUILTIN))
def test_collapse_identity_random_axes(name):
    s = BUILTIN[name]
    rng = np.random.default_rng(7)
    for _ in range(30):
        nu, mu = rng.choice(s.n_qubits, 2, replace=False)
        res = verify_theorem1(s, int(nu), random_axis(rng), int(mu), random_axis(rng))
        assert res.residual < 1e-10


@pytest.mark.parametrize("name", sorted(BUILTIN))
def test_unit_correlator_breaks_partner(name):
    s = BUILTIN[name]
    for mu, nu in itertools.permutations(range(s.n_qubits), 2):
        sol = optimal_pair_axes(s, mu, nu)
        if abs(sol.value - 1) < 1e-10:
            post, _ = project(s, nu, sol.v_nu, 1)
            assert ed_single(post, mu) < 1e-10


@pytest.mark.parametrize("name", sorted(BUILTIN))
def test_unit_correlator_makes_qubits_equivalent(name):
    s = BUILTIN[name]
    n = s.n_qubits
    checked = 0
    for v in (X, Y, Z, -X, -Y, -Z):
        for mu, nu in itertools.combinations(range(n), 2):
            if abs(correlator(s, [factor(mu, v), factor(nu, v)]) - 1) < 1e-10:
                checked += 1
                assert operator_gap(s, mu, nu, v) < 1e-9
                for eta in range(n):
                    if eta in (mu, nu):
                        continue
                    a = correlator(s, [factor(eta, v), factor(nu, v)])
                    b = correlator(s, [factor(eta, v), factor(mu, v)])
                    assert abs(a - b) < 1e-10
                    triple = correlator(s, [factor(eta, v), factor(mu, v), factor(nu, v)])
                    assert abs(triple - expectation(s, factor(eta, v))) < 1e-10
    if name.startswith("ghz"):
        assert checked > 0


@pytest.mark.parametrize("name", sorted(BUILTIN))
def test_post_measurement_diagonal(name):
    s = BUILTIN[name]
    rng = np.random.default_rng(11)
    for _ in range(10):
        nu, mu = (int(x) for x in rng.choice(s.n_qubits, 2, replace=False))
        m, v = random_axis(rng), random_axis(rng)
        post, _ = project(s, nu, m, 1)
        g_numu = em_element(s, nu, mu, m, v)
        assert abs(em_element(post, mu, mu, v, v) - (1 - g_numu**2)) < 1e-10

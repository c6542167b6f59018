import math

import numpy as np
import pytest

from entanglyze.entanglement import ed_all, ed_single
from entanglyze.errors import BadNorm, BadSize, StateSpecError
from entanglyze.statevec import write_state
from entanglyze.states import (
    BellKind,
    SupersingletParams,
    apply_local_unitaries,
    bell,
    brs_chain,
    brs_chain_product_form,
    ghz,
    parse_state_spec,
    product_state,
    random_maximally_entangled,
    random_state,
    random_unitary,
    supersinglet_s4,
)


def idx(bits):
    return int(bits, 2)


@pytest.mark.parametrize("n", range(2, 11))
def test_brs_phase_map_matches_product_form(n):
    np.testing.assert_allclose(brs_chain(n).amplitudes, brs_chain_product_form(n).amplitudes, atol=1e-12)


def test_brs_generic_phi_matches_exponential_at_pi():
    # general-phi branch evaluated at a hair from pi against the exact-sign branch
    np.testing.assert_allclose(brs_chain(5, math.pi * (1 + 1e-15)).amplitudes, brs_chain(5).amplitudes, atol=1e-12)


@pytest.mark.parametrize("n", range(2, 11))
def test_brs_maximally_entangled(n):
    # E_mu = 1 for every qubit (the "=0" sentence in the source is a typo)
    np.testing.assert_allclose(ed_all(brs_chain(n)), 1.0, atol=1e-10)


def test_brs_phi_zero_is_plus_plus():
    s = brs_chain(2, 0.0)
    np.testing.assert_allclose(s.amplitudes, np.full(4, 0.5))
    np.testing.assert_allclose(ed_all(s), 0.0, atol=1e-12)


def test_brs_bad_size():
    with pytest.raises(BadSize):
        brs_chain(1)
    with pytest.raises(BadSize):
        ghz(1)


def test_ghz_definitions():
    np.testing.assert_allclose(ghz(2).amplitudes, bell(BellKind.PSI_PLUS).amplitudes)
    np.testing.assert_allclose(ed_all(ghz(3)), 1.0)


def test_bell_kinds():
    r = 1 / math.sqrt(2)
    np.testing.assert_allclose(bell("phi-").amplitudes, [0, r, -r, 0])
    np.testing.assert_allclose(bell("phi+").amplitudes, [0, r, r, 0])
    np.testing.assert_allclose(bell("psi+").amplitudes, [r, 0, 0, r])
    np.testing.assert_allclose(bell("psi-").amplitudes, [r, 0, 0, -r])
    for k in BellKind:
        np.testing.assert_allclose(ed_all(bell(k)), 1.0)


def test_supersinglet_basis_strings():
    s1 = supersinglet_s4(SupersingletParams(1, 0)).amplitudes
    assert s1[idx("0011")] == pytest.approx(1 / math.sqrt(3))
    assert s1[idx("1100")] == pytest.approx(1 / math.sqrt(3))
    assert s1[idx("0101")] == pytest.approx(-0.5 / math.sqrt(3))


def test_supersinglet_b_is_two_singlets():
    singlet = bell("phi-").amplitudes
    np.testing.assert_allclose(supersinglet_s4(SupersingletParams(0, 1)).amplitudes, np.kron(singlet, singlet), atol=1e-15)


def test_supersinglet_params_norm():
    with pytest.raises(BadNorm):
        SupersingletParams(1, 1)


@pytest.mark.parametrize("a,b", [(1, 0), (0, 1), (0.6, 0.8j), (math.sqrt(3) / 2, -0.5)])
def test_supersinglet_maximal_and_lu_invariant(a, b):
    s = supersinglet_s4(SupersingletParams(a, b))
    np.testing.assert_allclose(ed_all(s), 1.0, atol=1e-10)
    rng = np.random.default_rng(3)
    for _ in range(20):
        u = random_unitary(rng)
        rotated = apply_local_unitaries(s, [u] * 4)
        overlap = np.vdot(s.amplitudes, rotated.amplitudes)
        phase = overlap / abs(overlap)
        assert np.linalg.norm(rotated.amplitudes - phase * s.amplitudes) < 1e-9


def test_random_unitary_is_unitary():
    u = random_unitary(np.random.default_rng(0))
    np.testing.assert_allclose(u.conj().T @ u, np.eye(2), atol=1e-14)


def test_product_states():
    np.testing.assert_allclose(product_state([(0, 0, 1)]).amplitudes, [1, 0])
    np.testing.assert_allclose(product_state([(0, 0, -1)]).amplitudes, [0, 1], atol=1e-15)
    s = product_state([(1, 0, 0), (0, 0, 1)])
    r = 1 / math.sqrt(2)
    np.testing.assert_allclose(s.amplitudes, [r, 0, r, 0], atol=1e-15)
    np.testing.assert_allclose(ed_all(s), 0.0, atol=1e-12)


def test_random_state_deterministic():
    np.testing.assert_array_equal(random_state(2, 42).amplitudes, random_state(2, 42).amplitudes)
    assert abs(np.linalg.norm(random_state(3, 9).amplitudes) - 1) < 1e-12
    assert ed_single(random_state(1, 5), 0) < 1e-10
    with pytest.raises(BadSize):
        random_state(0, 1)


@pytest.mark.parametrize("seed", range(10))
def test_random_maximally_entangled(seed):
    np.testing.assert_allclose(ed_all(random_maximally_entangled(4, seed)), 1.0, atol=1e-10)


def test_parse_state_spec(tmp_path):
    assert parse_state_spec("ghz:3").n_qubits == 3
    np.testing.assert_allclose(parse_state_spec("brs:4").amplitudes, brs_chain(4).amplitudes)
    np.testing.assert_allclose(parse_state_spec("brs:3:0").amplitudes, brs_chain(3, 0.0).amplitudes)
    np.testing.assert_allclose(parse_state_spec("bell:phi-").amplitudes, bell("phi-").amplitudes)
    np.testing.assert_allclose(
        parse_state_spec("s4:0,0,1,0").amplitudes, supersinglet_s4(SupersingletParams(0, 1)).amplitudes
    )
    path = tmp_path / "s.json"
    write_state(path, ghz(3))
    np.testing.assert_array_equal(parse_state_spec(f"file:{path}").amplitudes, ghz(3).amplitudes)
    for bad in ("file:/nonexistent.json", "ghz:x", "nope:3", "s4:1,2", "bell:omega"):
        with pytest.raises(StateSpecError):
            parse_state_spec(bad)


def test_bell_neutral_names_and_aliases():
    assert list(BellKind) == [BellKind.ODD_PLUS, BellKind.ODD_MINUS, BellKind.EVEN_PLUS, BellKind.EVEN_MINUS]
    assert BellKind.PHI_MINUS is BellKind.ODD_MINUS
    assert BellKind("psi+") is BellKind.EVEN_PLUS
    singlet = bell(BellKind.ODD_MINUS).amplitudes
    np.testing.assert_allclose(singlet, [0, 2**-0.5, -(2**-0.5), 0])

"""Projective measurements: single-qubit state update, sequences of
measurements and the closed-form post-measurement expectation."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .entanglement import MAX_ENT_TOL, ed_single
from .errors import (
    DuplicateQubit,
    NotMaximallyEntangled,
    QubitOverlap,
    ZeroDenominator,
    ZeroProbabilityOutcome,
)
from .statevec import (
    Axis,
    PauliFactor,
    StateVector,
    _pauli_kernel,
    _real_checked,
    as_axis,
    axis_vector,
    correlator,
    expectation,
    factor,
)

ZERO_PROB = 1e-14
MAX_SUBSET = 20


@dataclass(frozen=True)
class MeasurementRecord:
    qubit: int
    axis: Axis
    outcome: int
    probability: float

    def to_dict(self):
        return {
            "qubit": self.qubit,
            "axis": list(self.axis),
            "outcome": self.outcome,
            "probability": self.probability,
        }


def _projected(s: StateVector, q: int, m: np.ndarray, outcome: int) -> np.ndarray:
    return 0.5 * (s.amplitudes + outcome * _pauli_kernel(s.amplitudes, s.n_qubits, q, m))


def outcome_probability(s: StateVector, q: int, m, outcome: int = 1) -> float:
    q = s.check_qubit(q)
    amps = _projected(s, q, axis_vector(m), _check_outcome(outcome))
    return float(np.vdot(amps, amps).real)


def _check_outcome(outcome) -> int:
    if outcome not in (1, -1):
        raise ValueError(f"outcome must be +1 or -1, got {outcome!r}")
    return int(outcome)


def project(s: StateVector, q: int, m, outcome: int = 1) -> tuple[StateVector, MeasurementRecord]:
    """Collapse qubit ``q`` onto the ``outcome`` eigenspace of ``m . sigma``."""
    q = s.check_qubit(q)
    outcome = _check_outcome(outcome)
    axis = as_axis(m)
    amps = _projected(s, q, axis.vec, outcome)
    prob = float(np.vdot(amps, amps).real)
    if prob <= ZERO_PROB:
        raise ZeroProbabilityOutcome(
            f"outcome {outcome:+d} of qubit {q} along {tuple(axis)} has probability {prob:.3e}"
        )
    post = StateVector(s.n_qubits, amps / np.sqrt(prob))
    return post, MeasurementRecord(q, axis, outcome, min(prob, 1.0))


def measure_sequence(s: StateVector, seq, outcomes=None) -> tuple[StateVector, list[MeasurementRecord]]:
    """Apply projectors one after another; probabilities in the records are conditional.

    ``outcomes`` defaults to +1 at every step; a scalar applies to all steps.
    """
    seq = [(int(q), as_axis(m)) for q, m in seq]
    qubits = [q for q, _ in seq]
    if len(set(qubits)) != len(qubits):
        raise DuplicateQubit(f"qubits measured twice in {qubits}")
    if outcomes is None or np.isscalar(outcomes):
        outcomes = [1 if outcomes is None else int(outcomes)] * len(seq)
    records = []
    state = s
    for k, ((q, m), out) in enumerate(zip(seq, outcomes)):
        try:
            state, rec = project(state, q, m, out)
        except ZeroProbabilityOutcome as exc:
            raise ZeroProbabilityOutcome(f"step {k}: {exc}", step=k) from exc
        records.append(rec)
    return state, records


def sequential_expectation_formula(s: StateVector, measured, target: PauliFactor, literal: bool = False) -> float:
    """Expectation of ``target`` after +1 projections on ``measured``, from pre-measurement correlators.

    Expanding ``prod_nu (I + s_nu)/2`` gives a sum over all subsets ``X`` of
    the measured set, so numerator and denominator are sums of correlators
    ``<s_target prod_X s_m>`` and ``<prod_X s_m>`` over subsets of every size
    ``0..M``.  ``literal=True`` drops the full-size subset (sizes ``0..M-1``
    only); that truncation does not agree with the projector chain and is kept
    for comparison.
    """
    measured = [(s.check_qubit(q), as_axis(m)) for q, m in measured]
    qubits = [q for q, _ in measured]
    if len(set(qubits)) != len(qubits):
        raise DuplicateQubit(f"qubits repeated in measured set {qubits}")
    tq = s.check_qubit(target.qubit)
    if tq in qubits:
        raise QubitOverlap(f"target qubit {tq} is also measured")
    m_count = len(measured)
    if m_count > MAX_SUBSET:
        raise ValueError(f"at most {MAX_SUBSET} measured qubits supported")
    max_size = m_count - 1 if literal and m_count > 0 else m_count

    n = s.n_qubits
    amps = s.amplitudes
    sig_target = _pauli_kernel(amps, n, tq, axis_vector(target.axis))
    num = 0.0 + 0.0j
    den = 0.0 + 0.0j

    # depth-first over subsets, carrying prod_X sigma|s>
    def visit(start: int, vec: np.ndarray, size: int):
        nonlocal num, den
        num += np.vdot(sig_target, vec)
        den += np.vdot(amps, vec)
        if size == max_size:
            return
        for i in range(start, m_count):
            q, m = measured[i]
            visit(i + 1, _pauli_kernel(vec, n, q, m.vec), size + 1)

    visit(0, amps, 0)
    num_r = _real_checked(complex(num), "numerator")
    den_r = _real_checked(complex(den), "denominator")
    if abs(den_r) <= ZERO_PROB:
        raise ZeroDenominator("measured projector chain annihilates the state")
    return num_r / den_r


@dataclass(frozen=True)
class CollapseCheck:
    lhs: float
    rhs: float
    residual: float


def verify_theorem1(s: StateVector, nu: int, m, mu: int, v, tol: float = MAX_ENT_TOL) -> CollapseCheck:
    """Compare the post-measurement expectation on ``mu`` with the pre-measurement correlator."""
    for q in (nu, mu):
        e = ed_single(s, q)
        if abs(1.0 - e) > tol:
            raise NotMaximallyEntangled(f"qubit {q} has ED {e:.12g}, not 1", qubit=q)
    post, _ = project(s, nu, m, 1)
    lhs = expectation(post, factor(mu, v))
    rhs = correlator(s, [factor(mu, v), factor(nu, m)])
    return CollapseCheck(lhs, rhs, abs(lhs - rhs))


def operator_gap(s: StateVector, mu: int, nu: int, v) -> float:
    """``|| s_v^nu |s> - s_v^mu |s> ||``; zero when the two observables act alike on ``s``."""
    mu, nu = s.check_qubit(mu), s.check_qubit(nu)
    a = axis_vector(v)
    diff = _pauli_kernel(s.amplitudes, s.n_qubits, nu, a) - _pauli_kernel(s.amplitudes, s.n_qubits, mu, a)
    return float(np.linalg.norm(diff))

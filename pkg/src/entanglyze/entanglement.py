"""Entanglement distance, the entanglement metric (a Pauli covariance matrix)
and maximal-entanglement detection."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import LengthMismatch
from .statevec import (
    StateVector,
    _pauli_kernel,
    _real_checked,
    as_axis,
    axis_vector,
    bloch_vector,
)

MAX_ENT_TOL = 1e-8


def ed_single(s: StateVector, q: int) -> float:
    """Entanglement distance of one qubit: ``1 - |Bloch vector|^2``, clamped to [0, 1]."""
    r = bloch_vector(s, q)
    return float(min(1.0, max(0.0, 1.0 - float(r @ r))))


def ed_all(s: StateVector) -> np.ndarray:
    return np.array([ed_single(s, q) for q in range(s.n_qubits)])


def total_entanglement(s: StateVector) -> float:
    return float(np.sum(ed_all(s)))


def em_element(s: StateVector, mu: int, nu: int, v_mu, v_nu) -> float:
    """Covariance ``<s_mu s_nu> - <s_mu><s_nu>`` of two Pauli observables.

    For ``mu == nu`` the product of the observable with itself is taken as the
    identity, giving the variance ``1 - <s_mu>^2`` (``v_nu`` is ignored).
    """
    mu, nu = s.check_qubit(mu), s.check_qubit(nu)
    a_mu = axis_vector(v_mu)
    amps, n = s.amplitudes, s.n_qubits
    sig_mu = _pauli_kernel(amps, n, mu, a_mu)
    e_mu = _real_checked(complex(np.vdot(amps, sig_mu)), "expectation")
    if mu == nu:
        return 1.0 - e_mu * e_mu
    a_nu = axis_vector(v_nu)
    sig_nu = _pauli_kernel(amps, n, nu, a_nu)
    e_nu = _real_checked(complex(np.vdot(amps, sig_nu)), "expectation")
    corr = _real_checked(complex(np.vdot(sig_mu, sig_nu)), "correlator")
    return corr - e_mu * e_nu


@dataclass(frozen=True, eq=False)
class EntanglementMetric:
    n: int
    g: np.ndarray
    axes: tuple

    def __post_init__(self):
        g = np.array(self.g, dtype=float)
        g.setflags(write=False)
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "axes", tuple(as_axis(a) for a in self.axes))


def em_matrix(s: StateVector, axes) -> EntanglementMetric:
    axes = [as_axis(a) for a in axes]
    n = s.n_qubits
    if len(axes) != n:
        raise LengthMismatch(f"need {n} axes, got {len(axes)}")
    amps = s.amplitudes
    images = np.stack([_pauli_kernel(amps, n, q, axes[q].vec) for q in range(n)])
    raw = images.conj() @ images.T  # <s|s_mu s_nu|s>
    ex = np.array([_real_checked(complex(np.vdot(amps, images[q])), "expectation") for q in range(n)])
    g = np.empty((n, n))
    for mu in range(n):
        g[mu, mu] = 1.0 - ex[mu] ** 2
        for nu in range(mu + 1, n):
            val = _real_checked(complex(raw[mu, nu]), "correlator") - ex[mu] * ex[nu]
            g[mu, nu] = g[nu, mu] = val
    return EntanglementMetric(n, g, tuple(axes))


@dataclass(frozen=True)
class MaxEntReport:
    per_qubit: tuple
    overall: bool

    def __bool__(self):
        return self.overall


def is_maximally_entangled(s: StateVector, tol: float = MAX_ENT_TOL) -> MaxEntReport:
    if tol <= 0:
        raise ValueError("tol must be positive")
    flags = tuple(bool(np.linalg.norm(bloch_vector(s, q)) < tol) for q in range(s.n_qubits))
    return MaxEntReport(flags, all(flags))

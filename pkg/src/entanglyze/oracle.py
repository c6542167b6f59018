"""Brute-force cross-checks for the fast paths.

Sphere-grid searches stand in for the eigen-solutions of the optimizer, and
dense Kronecker-product recomputation stands in for the strided Pauli kernels.
Both are deliberately naive and are meant for small instances.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import reduce

import numpy as np
from scipy.spatial import cKDTree

from .entanglement import MAX_ENT_TOL, is_maximally_entangled
from .errors import NotMaximallyEntangled, TooLarge
from .statevec import Axis, StateVector, axis_vector
from .optimize import spin_correlation_matrix

DENSE_MAX_QUBITS = 10


@dataclass(frozen=True, eq=False)
class SphereGrid:
    """theta-phi lattice at ``resolution_deg`` plus both poles, in (theta, phi) lexicographic order."""

    resolution_deg: float
    points: np.ndarray  # (K, 3)

    @classmethod
    def build(cls, resolution_deg: float) -> "SphereGrid":
        if resolution_deg <= 0:
            raise ValueError("resolution must be positive")
        n_theta = int(round(180.0 / resolution_deg))
        n_phi = int(round(360.0 / resolution_deg))
        theta = np.deg2rad(resolution_deg * np.arange(1, n_theta))
        phi = np.deg2rad(resolution_deg * np.arange(n_phi))
        tt, pp = np.meshgrid(theta, phi, indexing="ij")
        body = np.stack([np.sin(tt) * np.cos(pp), np.sin(tt) * np.sin(pp), np.cos(tt)], axis=-1).reshape(-1, 3)
        pts = np.vstack([[0.0, 0.0, 1.0], body, [0.0, 0.0, -1.0]])
        return cls(float(resolution_deg), pts)

    def __len__(self):
        return len(self.points)

    def axis(self, i: int) -> Axis:
        return Axis.normalized(self.points[i])


_GRIDS: dict[float, SphereGrid] = {}


def sphere_grid(resolution_deg: float) -> SphereGrid:
    grid = _GRIDS.get(resolution_deg)
    if grid is None:
        grid = _GRIDS[resolution_deg] = SphereGrid.build(resolution_deg)
    return grid


@dataclass(frozen=True)
class GridPairResult:
    v_mu: Axis
    v_nu: Axis
    value: float


def grid_search_pair(s: StateVector, mu: int, nu: int, res: float = 1.0) -> GridPairResult:
    """Exhaustive max of ``v^T C v'`` over all pairs of grid points.

    For a fixed ``v`` the best grid partner of ``u = C^T v`` is the grid point
    nearest to ``u/|u|`` (maximal cosine), so a KD-tree query replaces the
    inner loop without skipping any pair.
    """
    if res > 10:
        raise ValueError("grid resolution must be <= 10 degrees")
    grid = sphere_grid(res)
    pts = grid.points
    c = spin_correlation_matrix(s, mu, nu).c
    u = pts @ c  # row k: C^T v_k
    norms = np.linalg.norm(u, axis=1)
    live = norms > 0
    # zero rows score 0 with any partner; querying the origin would defeat the tree
    partner = np.zeros(len(pts), dtype=int)
    if np.any(live):
        _, partner[live] = cKDTree(pts).query(u[live] / norms[live, None])
    values = np.where(live, np.einsum("ij,ij->i", u, pts[partner]), 0.0)
    best = int(np.argmax(values))
    return GridPairResult(grid.axis(best), grid.axis(int(partner[best])), float(values[best]))


@dataclass(frozen=True, eq=False)
class GridBreakingResult:
    axis: Axis
    value: float
    values: np.ndarray


def _batch_bloch(batch: np.ndarray, n: int, q: int) -> np.ndarray:
    view = batch.reshape(batch.shape[0], 1 << q, 2, 1 << (n - q - 1))
    a0, a1 = view[:, :, 0, :], view[:, :, 1, :]
    cross = np.einsum("bij,bij->b", a0.conj(), a1)
    pz = np.einsum("bij,bij->b", a0.conj(), a0).real - np.einsum("bij,bij->b", a1.conj(), a1).real
    return np.stack([2 * cross.real, 2 * cross.imag, pz], axis=1)


def grid_search_breaking(s: StateVector, nu: int, res: float = 5.0, targets=None, chunk: int = 4096) -> GridBreakingResult:
    """Measure ``nu`` (+1 outcome) along every grid axis and record the entanglement lost by the targets.

    Each post-measurement state is built explicitly and renormalized; nothing
    relies on the correlator identities the MIEB matrix is derived from.
    """
    if res > 5:
        raise ValueError("breaking grid resolution must be <= 5 degrees")
    nu = s.check_qubit(nu)
    n = s.n_qubits
    if targets is None:
        targets = [q for q in range(n) if q != nu]
    targets = sorted(set(targets))
    rep = is_maximally_entangled(s, MAX_ENT_TOL)
    for q in [nu, *targets]:
        if not rep.per_qubit[q]:
            raise NotMaximallyEntangled(f"qubit {q} is not maximally entangled", qubit=q)
    grid = sphere_grid(res)
    dense = [dense_pauli(n, nu, e) for e in np.eye(3)] if n <= DENSE_MAX_QUBITS else None
    amps = s.amplitudes
    if dense is not None:
        images = np.stack([m @ amps for m in dense])
    else:
        from .statevec import pauli_images

        images = pauli_images(s, nu)
    before = sum(1.0 - float(np.sum(_batch_bloch(amps[None, :], n, q) ** 2)) for q in targets)
    out = np.empty(len(grid))
    for start in range(0, len(grid), chunk):
        m = grid.points[start:start + chunk]
        post = 0.5 * (amps[None, :] + m @ images)
        post /= np.linalg.norm(post, axis=1)[:, None]
        after = np.zeros(len(m))
        for q in targets:
            r = _batch_bloch(post, n, q)
            after += np.clip(1.0 - np.sum(r * r, axis=1), 0.0, 1.0)
        out[start:start + len(m)] = before - after
    best = int(np.argmax(out))
    return GridBreakingResult(grid.axis(best), float(out[best]), out)


# --- dense Kronecker recomputation -----------------------------------------

_PAULI = (
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)


def _check_size(n: int):
    if n > DENSE_MAX_QUBITS:
        raise TooLarge(f"dense recomputation limited to {DENSE_MAX_QUBITS} qubits, got {n}")


def dense_pauli(n: int, q: int, axis) -> np.ndarray:
    """Full ``2^n x 2^n`` matrix of ``v . sigma`` on qubit ``q`` (qubit 0 leftmost)."""
    _check_size(n)
    v = axis_vector(axis)
    local = v[0] * _PAULI[0] + v[1] * _PAULI[1] + v[2] * _PAULI[2]
    mats = [np.eye(2, dtype=complex)] * n
    mats[q] = local
    return reduce(np.kron, mats)


def _dense_product(n, factors):
    return reduce(lambda a, b: a @ b, (dense_pauli(n, q, ax) for q, ax in factors), np.eye(1 << n, dtype=complex))


def dense_expectation(s: StateVector, q: int, axis) -> float:
    _check_size(s.n_qubits)
    a = s.amplitudes
    return float(np.real(a.conj() @ dense_pauli(s.n_qubits, q, axis) @ a))


def dense_correlator(s: StateVector, factors) -> float:
    _check_size(s.n_qubits)
    a = s.amplitudes
    factors = [(f.qubit, f.axis) if hasattr(f, "qubit") else f for f in factors]
    return float(np.real(a.conj() @ _dense_product(s.n_qubits, factors) @ a))


def dense_em_element(s: StateVector, mu: int, nu: int, v_mu, v_nu) -> float:
    e_mu = dense_expectation(s, mu, v_mu)
    if mu == nu:
        return 1.0 - e_mu * e_mu
    return dense_correlator(s, [(mu, v_mu), (nu, v_nu)]) - e_mu * dense_expectation(s, nu, v_nu)


def dense_em_matrix(s: StateVector, axes) -> np.ndarray:
    n = s.n_qubits
    return np.array([[dense_em_element(s, i, j, axes[i], axes[j]) for j in range(n)] for i in range(n)])


def dense_mieb(s: StateVector, nu: int, targets=None) -> np.ndarray:
    """``B[j,k] = <s| s_j^nu Sigma s_k^nu |s>`` with ``Sigma`` assembled as a dense operator."""
    n = s.n_qubits
    _check_size(n)
    if targets is None:
        targets = [q for q in range(n) if q != nu]
    a = s.amplitudes
    sigma = np.zeros((1 << n, 1 << n), dtype=complex)
    for mu in targets:
        for e in np.eye(3):
            pa = dense_pauli(n, mu, e) @ a
            sigma += np.outer(pa, pa.conj())  # p |s><s| p
    sig_nu = [dense_pauli(n, nu, e) for e in np.eye(3)]
    return np.array([[np.real(a.conj() @ sj @ sigma @ sk @ a) for sk in sig_nu] for sj in sig_nu])


def dense_bloch(s: StateVector, q: int) -> np.ndarray:
    return np.array([dense_expectation(s, q, e) for e in np.eye(3)])


_DENSE = {
    "expectation": dense_expectation,
    "correlator": dense_correlator,
    "em_element": dense_em_element,
    "em_matrix": dense_em_matrix,
    "mieb": dense_mieb,
    "bloch": dense_bloch,
}


def dense_recompute(s: StateVector, quantity: str, *args, **kwargs):
    """Dispatch to a dense recomputation by name (``expectation``, ``correlator``,
    ``em_element``, ``em_matrix``, ``mieb``, ``bloch``)."""
    try:
        fn = _DENSE[quantity]
    except KeyError:
        raise ValueError(f"unknown quantity {quantity!r}; choose from {sorted(_DENSE)}") from None
    return fn(s, *args, **kwargs)


# --- measurement-sequence search -------------------------------------------

@dataclass(frozen=True)
class DisentanglingSequence:
    steps: tuple  # (qubit, Axis, outcome)
    residual: float  # total entanglement left


def _measure_any(state: StateVector, q: int, axis):
    from .measurement import ZERO_PROB, outcome_probability, project

    out = 1 if outcome_probability(state, q, axis, 1) > ZERO_PROB else -1
    post, _ = project(state, q, axis, out)
    return post, out


def run_sequence(s: StateVector, steps) -> DisentanglingSequence:
    """Measure ``(qubit, axis)`` steps in order, taking +1 unless it is impossible."""
    from .entanglement import total_entanglement

    state = s
    done = []
    for q, axis in steps:
        state, out = _measure_any(state, q, axis)
        done.append((q, Axis.normalized(axis), out))
    return DisentanglingSequence(tuple(done), total_entanglement(state))


def disentangling_search(s: StateVector, choices, tol: float = 1e-9, limit: int = 200_000):
    """First sequence drawn from ``choices`` (one list of ``(qubit, axis)`` options per step)
    that leaves total entanglement below ``tol``; ``None`` if none is found."""
    import itertools

    for k, steps in enumerate(itertools.product(*choices)):
        if k >= limit:
            break
        qubits = [q for q, _ in steps]
        if len(set(qubits)) != len(qubits):
            continue
        seq = run_sequence(s, steps)
        if seq.residual < tol:
            return seq
    return None

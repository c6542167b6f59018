"""Measurement-axis optimization.

Two eigenproblems drive everything here:

* the spin correlation matrix ``C[i, j] = <s_i^mu s_j^nu>`` of a qubit pair,
  whose top singular triple gives the axes maximizing the pair correlator;
* the MIEB matrix ``B^nu`` of one qubit, whose top eigenpair gives the axis
  whose measurement destroys the most entanglement on a target set, and how
  much.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from ._parallel import pmap
from .entanglement import MAX_ENT_TOL, em_matrix, is_maximally_entangled
from .errors import NotMaximallyEntangled, NuInTargets, SameQubit
from .linalg import degeneracy, sym3_eigen
from .statevec import Axis, StateVector, X, as_axis, pauli_images

DEGEN_TOL = 1e-9
ZERO_MIEB = 1e-10
NO_FIRST_ORDER = "no first-order breaking"


@dataclass(frozen=True, eq=False)
class Corr3:
    mu: int
    nu: int
    c: np.ndarray


@dataclass(frozen=True, eq=False)
class Mieb3:
    nu: int
    targets: frozenset
    b: np.ndarray


@dataclass(frozen=True)
class PairSolution:
    v_mu: Axis
    v_nu: Axis
    value: float
    degeneracy: int


@dataclass(frozen=True)
class BreakingSolution:
    axis: Axis
    eigenvalue: float
    degeneracy: int
    flags: tuple = ()


@dataclass(frozen=True)
class AxisSolution:
    axes: tuple
    objective: float
    degeneracy: tuple
    mieb_top: tuple
    flags: tuple = field(default_factory=tuple)


def _clean_axis(v) -> Axis:
    v = np.where(np.abs(v) < 1e-13, 0.0, v)
    return as_axis(v / np.linalg.norm(v))


def _correlations(images_a: np.ndarray, images_b: np.ndarray) -> np.ndarray:
    # <s|s_i^a s_j^b|s> = <s_i^a s|s_j^b s>; real for distinct qubits
    return (images_a.conj() @ images_b.T).real


def spin_correlation_matrix(s: StateVector, mu: int, nu: int) -> Corr3:
    mu, nu = s.check_qubit(mu), s.check_qubit(nu)
    if mu == nu:
        raise SameQubit(f"spin correlation matrix needs two distinct qubits, got {mu}")
    return Corr3(mu, nu, _correlations(pauli_images(s, mu), pauli_images(s, nu)))


def optimal_pair_axes(s: StateVector, mu: int, nu: int) -> PairSolution:
    """Axes maximizing ``v_mu^T C v_nu`` over the unit sphere, with the maximum."""
    c = spin_correlation_matrix(s, mu, nu).c
    eig = sym3_eigen(c.T @ c)
    sing = np.sqrt(np.clip(eig.values, 0.0, None))
    v_nu = eig.vectors[:, 0]
    u = c @ v_nu
    lam = float(np.linalg.norm(u))
    if lam < 1e-12:
        return PairSolution(X, X, 0.0, 3)
    v_mu = u / lam
    return PairSolution(_clean_axis(v_mu), _clean_axis(v_nu), lam, degeneracy(sing, DEGEN_TOL))


def mieb_matrix(s: StateVector, nu: int, targets=None) -> Mieb3:
    """``B[j, k] = sum_{mu in targets, i} <s_j^nu s_i^mu> <s_i^mu s_k^nu>``."""
    nu = s.check_qubit(nu)
    if targets is None:
        targets = [q for q in range(s.n_qubits) if q != nu]
    targets = frozenset(s.check_qubit(q) for q in targets)
    if nu in targets:
        raise NuInTargets(f"qubit {nu} cannot be its own target")
    img_nu = pauli_images(s, nu)
    b = np.zeros((3, 3))
    for mu in sorted(targets):
        cm = _correlations(img_nu, pauli_images(s, mu))
        b += cm @ cm.T
    return Mieb3(nu, targets, 0.5 * (b + b.T))


def _require_max_ent(s: StateVector, qubits, tol=MAX_ENT_TOL):
    rep = is_maximally_entangled(s, tol)
    for q in qubits:
        if not rep.per_qubit[q]:
            return q
    return None


def optimal_breaking_axis(s: StateVector, nu: int, targets=None, strict: bool = True) -> BreakingSolution:
    """Top eigenpair of the MIEB matrix of ``nu``.

    The eigenvalue equals the entanglement lost by the targets when ``nu`` is
    measured along the returned axis, provided the state is maximally
    entangled.  With ``strict=False`` a non-maximal state only adds a flag.
    """
    mieb = mieb_matrix(s, nu, targets)
    flags = []
    bad = _require_max_ent(s, [mieb.nu, *sorted(mieb.targets)])
    if bad is not None:
        if strict:
            raise NotMaximallyEntangled(f"qubit {bad} is not maximally entangled", qubit=bad)
        flags.append(f"qubit {bad} not maximally entangled")
    eig = sym3_eigen(mieb.b)
    top = float(eig.values[0])
    if top < ZERO_MIEB:
        flags.append(NO_FIRST_ORDER)
        return BreakingSolution(X, max(top, 0.0), 3, tuple(flags))
    deg = degeneracy(eig.values, DEGEN_TOL)
    axis = X if deg == 3 else _clean_axis(eig.vectors[:, 0])
    return BreakingSolution(axis, top, deg, tuple(flags))


def _top_space(values: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    if values[0] < ZERO_MIEB:
        return np.eye(3)
    return vectors[:, : degeneracy(values, DEGEN_TOL)]


def optimal_axis_set(s: StateVector) -> AxisSolution:
    """Heuristic axis set built from MIEB top eigenvectors.

    Qubits are fixed in descending order of top MIEB eigenvalue.  Each new
    axis is chosen inside the qubit's top eigenspace (both signs tried) to
    maximize first ``sum |g|`` and then ``sum g`` against the qubits already
    fixed.  If every qubit is isotropic the uniform x set is returned.
    """
    n = s.n_qubits
    flags = []
    if not is_maximally_entangled(s):
        flags.append("state not maximally entangled: MIEB eigenvalues are not breaking amounts")
    images = [pauli_images(s, q) for q in range(n)]

    def spectrum(nu):
        b = np.zeros((3, 3))
        for mu in range(n):
            if mu != nu:
                cm = _correlations(images[nu], images[mu])
                b += cm @ cm.T
        return sym3_eigen(0.5 * (b + b.T))

    spectra = pmap(spectrum, range(n))
    tops = [float(e.values[0]) for e in spectra]
    spaces = [_top_space(e.values, e.vectors) for e in spectra]
    degs = tuple(sp.shape[1] for sp in spaces)

    if all(d == 3 for d in degs):
        axes = (X,) * n
        if all(t < ZERO_MIEB for t in tops):
            flags.append(NO_FIRST_ORDER + " on every qubit")
        else:
            flags.append("isotropic: uniform axis set")
    else:
        order = sorted(range(n), key=lambda q: (-tops[q], q))
        fixed: dict[int, np.ndarray] = {}
        for nu in order:
            space = spaces[nu]
            pulls = []
            for mu, v_mu in fixed.items():
                pulls.append(_correlations(images[mu], images[nu]).T @ v_mu)
            cands = []
            for w in pulls + list(np.eye(3)):
                p = space @ (space.T @ w)
                norm = np.linalg.norm(p)
                if norm > 1e-12:
                    cands.append(p / norm)
            if not cands:
                cands = [space[:, 0]]
            best, best_score = None, None
            for c in cands:
                for sign in (1.0, -1.0):
                    cand = sign * c
                    vals = [w @ cand for w in pulls]
                    score = (sum(abs(x) for x in vals), sum(vals))
                    if best_score is None or (
                        score[0] > best_score[0] + 1e-12
                        or (abs(score[0] - best_score[0]) <= 1e-12 and score[1] > best_score[1] + 1e-12)
                    ):
                        best, best_score = cand, score
            fixed[nu] = best
            if tops[nu] < ZERO_MIEB:
                flags.append(f"qubit {nu}: {NO_FIRST_ORDER}")
        axes = tuple(_clean_axis(fixed[q]) for q in range(n))

    g = em_matrix(s, axes).g
    objective = float(np.sum(np.abs(np.triu(g, 1))))
    return AxisSolution(axes, objective, degs, tuple(tops), tuple(flags))


@dataclass(frozen=True)
class PairwiseProbe:
    pairs: tuple  # (mu, nu, pair optimum, achieved |correlator|)
    max_deficit: float

    @property
    def consistent(self) -> bool:
        return self.max_deficit < 1e-9


def pairwise_probe(s: StateVector, axes) -> PairwiseProbe:
    """Check whether one axis set attains every pairwise correlator optimum."""
    axes = [as_axis(a) for a in axes]
    rows = []
    worst = 0.0
    for mu in range(s.n_qubits):
        for nu in range(mu + 1, s.n_qubits):
            opt = optimal_pair_axes(s, mu, nu).value
            c = spin_correlation_matrix(s, mu, nu).c
            got = abs(float(axes[mu].vec @ c @ axes[nu].vec))
            rows.append((mu, nu, opt, got))
            worst = max(worst, opt - got)
    return PairwiseProbe(tuple(rows), worst)

"""Worked reference matrices for BRS chains and 4-qubit supersinglets, recomputed
and compared against their closed forms."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .entanglement import em_matrix
from .optimize import mieb_matrix, optimal_axis_set
from .states import SupersingletParams, brs_chain, supersinglet_s4
from .statevec import X, Z
from .structure import persistency_upper_bound

DEVIATION_LIMIT = 1e-9

DIAG_X = np.diag([1.0, 0.0, 0.0])
DIAG_Z = np.diag([0.0, 0.0, 1.0])
BRS3_EM = np.array([[1, 1, -1], [1, 1, -1], [-1, -1, 1]], dtype=float)
BRS4_EM = np.array([[1, 1, 0, 0], [1, 1, 0, 0], [0, 0, 1, -1], [0, 0, -1, 1]], dtype=float)


@dataclass
class Check:
    name: str
    computed: object
    expected: object
    deviation: float

    @property
    def ok(self) -> bool:
        return self.deviation <= DEVIATION_LIMIT

    def to_dict(self):
        def plain(v):
            return v.tolist() if isinstance(v, np.ndarray) else v

        return {
            "name": self.name,
            "computed": plain(self.computed),
            "expected": plain(self.expected),
            "deviation": self.deviation,
            "ok": self.ok,
        }


def _mat_check(name, computed, expected) -> Check:
    computed = np.asarray(computed, dtype=float)
    expected = np.asarray(expected, dtype=float)
    return Check(name, computed, expected, float(np.max(np.abs(computed - expected))))


def _count_check(name, computed: int, expected: int) -> Check:
    return Check(name, int(computed), int(expected), float(abs(computed - expected)))


def sign_aligned(g: np.ndarray, reference: np.ndarray) -> np.ndarray:
    """Apply the flips ``eps_mu eps_nu`` that best match ``reference`` (greedy from qubit 0)."""
    n = g.shape[0]
    eps = np.ones(n)
    for nu in range(1, n):
        agree = sum(g[mu, nu] * eps[mu] * reference[mu, nu] for mu in range(nu))
        eps[nu] = -1.0 if agree < 0 else 1.0
    return g * np.outer(eps, eps)


def supersinglet_abg(a: complex, b: complex) -> tuple[float, float, float]:
    cross = (np.conj(a) * b).real
    alpha = abs(a) ** 2 / 3 - abs(b) ** 2
    beta = 2 / 3 * (math.sqrt(3) * cross - abs(a) ** 2)
    gamma = -2 / 3 * (math.sqrt(3) * cross + abs(a) ** 2)
    return alpha, beta, gamma


def supersinglet_em(alpha: float, beta: float, gamma: float) -> np.ndarray:
    return np.array(
        [
            [1, alpha, gamma, beta],
            [alpha, 1, beta, gamma],
            [gamma, beta, 1, alpha],
            [beta, gamma, alpha, 1],
        ]
    )


def supersinglet_samples(n_mod: int = 5, n_phase: int = 5, global_phase: float = 0.3):
    """(a, b) pairs on a grid of |a| and relative phase."""
    out = []
    for mod in np.linspace(0.0, 1.0, n_mod):
        for rel in np.linspace(0.0, 2 * math.pi, n_phase, endpoint=False):
            a = mod * np.exp(1j * global_phase)
            b = math.sqrt(max(0.0, 1.0 - mod * mod)) * np.exp(1j * (global_phase + rel))
            out.append((complex(a), complex(b)))
    return out


def brs_checks() -> list[Check]:
    checks = []
    s3 = brs_chain(3)
    for nu, want in ((0, 2 * DIAG_X), (1, 2 * DIAG_Z), (2, 2 * DIAG_X)):
        checks.append(_mat_check(f"BRS3 MIEB nu={nu}", mieb_matrix(s3, nu).b, want))
    checks.append(_mat_check("BRS3 EM axes (x,z,x)", em_matrix(s3, [X, Z, X]).g, BRS3_EM))
    g_opt = em_matrix(s3, optimal_axis_set(s3).axes).g
    checks.append(_mat_check("BRS3 EM optimized axes (up to eps flips)", sign_aligned(g_opt, BRS3_EM), BRS3_EM))

    s4 = brs_chain(4)
    for nu, want in ((0, DIAG_X), (1, DIAG_Z), (2, DIAG_Z), (3, DIAG_X)):
        checks.append(_mat_check(f"BRS4 MIEB nu={nu}", mieb_matrix(s4, nu).b, want))
    checks.append(_mat_check("BRS4 EM axes (x,z,z,x)", em_matrix(s4, [X, Z, Z, X]).g, BRS4_EM))
    g_opt = em_matrix(s4, optimal_axis_set(s4).axes).g
    checks.append(_mat_check("BRS4 EM optimized axes (up to eps flips)", sign_aligned(g_opt, BRS4_EM), BRS4_EM))
    checks.append(_count_check("BRS4 blocks", persistency_upper_bound(s4).n_blocks, 2))

    for n in range(5, 11):
        s = brs_chain(n)
        edge = {0: DIAG_X, 1: DIAG_Z, n - 2: DIAG_Z, n - 1: DIAG_X}
        worst = 0.0
        for nu in range(n):
            want = edge.get(nu, np.zeros((3, 3)))
            worst = max(worst, float(np.max(np.abs(mieb_matrix(s, nu).b - want))))
        checks.append(Check(f"BRS{n} MIEB pattern (interior zero)", worst, 0.0, worst))
        checks.append(_count_check(f"BRS{n} blocks", persistency_upper_bound(s).n_blocks, n - 2))
    return checks


def supersinglet_checks() -> list[Check]:
    checks = []
    worst_em, worst_b = 0.0, 0.0
    for a, b in supersinglet_samples():
        s = supersinglet_s4(SupersingletParams(a, b))
        g = em_matrix(s, [X] * 4).g
        worst_em = max(worst_em, float(np.max(np.abs(g - supersinglet_em(*supersinglet_abg(a, b))))))
        for nu in range(4):
            mb = mieb_matrix(s, nu).b
            worst_b = max(worst_b, float(np.max(np.abs(mb - np.trace(mb) / 3 * np.eye(3)))))
    checks.append(Check("S4(a,b) EM vs alpha/beta/gamma (25 samples)", worst_em, 0.0, worst_em))
    checks.append(Check("S4(a,b) MIEB proportional to identity", worst_b, 0.0, worst_b))

    alpha, beta, gamma = supersinglet_abg(1, 0)
    checks.append(_mat_check("S4(1,0) alpha,beta,gamma", [alpha, beta, gamma], [1 / 3, -2 / 3, -2 / 3]))

    for phi_a, phi_b in ((0.0, 0.0), (0.4, 0.4), (0.0, math.pi), (0.2, 1.3)):
        a = math.sqrt(3) / 2 * np.exp(1j * phi_a)
        b = 0.5 * np.exp(1j * phi_b)
        c2 = math.cos((phi_a - phi_b) / 2) ** 2
        s2 = math.sin((phi_a - phi_b) / 2) ** 2
        want = np.array([[1, 0, -c2, -s2], [0, 1, -s2, -c2], [-c2, -s2, 1, 0], [-s2, -c2, 0, 1]])
        g = em_matrix(supersinglet_s4(SupersingletParams(a, b)), [X] * 4).g
        checks.append(_mat_check(f"S4 special case phi_a={phi_a:.3g} phi_b={phi_b:.3g}", g, want))
        if abs(c2 - 1) < 1e-12 or abs(s2 - 1) < 1e-12:
            bound = persistency_upper_bound(supersinglet_s4(SupersingletParams(a, b)), [X] * 4)
            checks.append(_count_check(f"S4 special case phi_a={phi_a:.3g} phi_b={phi_b:.3g} blocks", bound.n_blocks, 2))

    bound = persistency_upper_bound(supersinglet_s4(SupersingletParams(0, 1)))
    checks.append(_count_check("S4(0,1) blocks", bound.n_blocks, 2))
    checks.append(Check("S4(0,1) blocks are Bell pairs", [list(b) for b in bound.partition.blocks], [[0, 1], [2, 3]],
                        0.0 if bound.partition.blocks == ((0, 1), (2, 3)) else 1.0))
    return checks


def all_checks() -> list[Check]:
    return brs_checks() + supersinglet_checks()

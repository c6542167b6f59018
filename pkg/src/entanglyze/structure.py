"""Block structure of a quantized entanglement metric and the resulting upper
bound on the persistency of entanglement."""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components

from .entanglement import EntanglementMetric, em_matrix, is_maximally_entangled
from .statevec import StateVector

QUANT_TOL = 1e-6
NOT_APPLICABLE = "not applicable (entries not all 0 or +-1)"


@dataclass(frozen=True)
class Violation:
    mu: int
    nu: int
    value: float
    rounded: int


@dataclass(frozen=True, eq=False)
class Quantized:
    matrix: np.ndarray
    exact: bool
    violations: tuple = ()


@dataclass(frozen=True, eq=False)
class BlockPartition:
    quantized: np.ndarray
    blocks: tuple
    exact: bool
    transitive: bool = True
    sign_consistent: bool = True
    signs: tuple = ()
    flags: tuple = field(default_factory=tuple)

    @property
    def n_blocks(self) -> int:
        return len(self.blocks)


def quantize_em(em, tol: float = QUANT_TOL) -> Quantized:
    """Snap EM entries to {-1, 0, +1}; entries further than ``tol`` from those are reported."""
    if not 0 < tol < 0.5:
        raise ValueError("tol must lie in (0, 0.5)")
    g = em.g if isinstance(em, EntanglementMetric) else np.asarray(em, dtype=float)
    n = g.shape[0]
    q = np.zeros((n, n), dtype=int)
    violations = []
    for mu in range(n):
        for nu in range(mu, n):
            val = float(g[mu, nu])
            mag = abs(val)
            if mag > 1 - tol:
                r = int(np.sign(val))
            elif mag < tol:
                r = 0
            else:
                r = int(np.sign(val)) if mag >= 0.5 else 0
                violations.append(Violation(mu, nu, val, r))
            q[mu, nu] = q[nu, mu] = r
    return Quantized(q, not violations, tuple(violations))


def block_partition(quantized, exact: bool = True) -> BlockPartition:
    """Connected components of the non-zero off-diagonal pattern, smallest member first.

    Each component is checked for transitivity (all internal entries +-1) and
    for sign consistency (entries factor as ``eps_mu * eps_nu``).
    """
    if isinstance(quantized, Quantized):
        exact = quantized.exact
        quantized = quantized.matrix
    q = np.asarray(quantized, dtype=int)
    n = q.shape[0]
    adj = (q != 0).astype(int)
    np.fill_diagonal(adj, 0)
    _, labels = connected_components(csr_matrix(adj), directed=False)
    groups: dict[int, list[int]] = {}
    for idx, lab in enumerate(labels):
        groups.setdefault(int(lab), []).append(idx)
    blocks = tuple(sorted((tuple(sorted(g)) for g in groups.values()), key=lambda b: b[0]))

    transitive = True
    consistent = True
    signs = np.ones(n, dtype=int)
    flags = []
    for block in blocks:
        root = block[0]
        for mu in block[1:]:
            signs[mu] = q[root, mu] if q[root, mu] != 0 else 1
        for i, mu in enumerate(block):
            for nu in block[i + 1:]:
                if q[mu, nu] == 0:
                    transitive = False
                    flags.append(f"block {list(block)}: entry ({mu},{nu}) is 0")
                elif q[mu, nu] != signs[mu] * signs[nu]:
                    consistent = False
                    flags.append(f"block {list(block)}: sign of ({mu},{nu}) breaks eps_mu*eps_nu")
    return BlockPartition(q, blocks, bool(exact), transitive, consistent, tuple(int(x) for x in signs), tuple(flags))


@dataclass(frozen=True, eq=False)
class PersistencyBound:
    n_blocks: int
    bound: int | None
    partition: BlockPartition
    axes: tuple
    em: EntanglementMetric
    note: str

    @property
    def applicable(self) -> bool:
        return self.bound is not None


def persistency_upper_bound(s: StateVector, axes=None, tol: float = QUANT_TOL) -> PersistencyBound:
    """Block count of the EM under ``axes`` (or the optimized axis set) as an upper bound on P_e.

    The bound is only claimed when every EM entry is 0 or +-1 within ``tol``
    and each block is transitive; the true persistency can be smaller, since
    the EM only sees single measurements.
    """
    if axes is None:
        from .optimize import optimal_axis_set

        axes = optimal_axis_set(s).axes
    em = em_matrix(s, axes)
    part = block_partition(quantize_em(em, tol))
    if not is_maximally_entangled(s):
        bound = None
        note = "not applicable (state not maximally entangled)"
    elif part.exact and part.transitive:
        bound = part.n_blocks
        note = "upper bound; true persistency may be smaller"
    else:
        bound = None
        note = NOT_APPLICABLE
    return PersistencyBound(part.n_blocks, bound, part, em.axes, em, note)

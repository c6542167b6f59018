"""Constructors for the canonical states: BRS chains, GHZ, Bell pairs, 4-qubit
supersinglets, product states and seeded random states."""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import BadNorm, BadSize, StateSpecError
from .statevec import StateVector, apply_single_qubit, axis_vector, make_state, read_state


def _basis_index(bits: str) -> int:
    return int(bits, 2)


def brs_chain(n: int, phi: float = math.pi) -> StateVector:
    """``U(phi)|+>^n`` on an open 1-D chain.

    ``U(phi) = exp(-i phi sum_mu P0^mu P1^(mu+1))`` is diagonal in the
    computational basis, so each basis state just picks up
    ``exp(-i phi * #{mu : q_mu = 0, q_mu+1 = 1})``.
    """
    if n < 2:
        raise BadSize(f"BRS chain needs n >= 2, got {n}")
    idx = np.arange(1 << n)
    bits = (idx[:, None] >> (n - 1 - np.arange(n))[None, :]) & 1
    count = np.sum((bits[:, :-1] == 0) & (bits[:, 1:] == 1), axis=1)
    if phi == math.pi:
        phase = np.where(count % 2, -1.0, 1.0).astype(np.complex128)  # exact signs
    else:
        phase = np.exp(-1j * phi * count)
    amps = phase / math.sqrt(1 << n)
    return StateVector(n, amps)


def brs_chain_product_form(n: int) -> StateVector:
    """BRS chain at phi = pi via the factor product of ``(I - Z_mu + Z_mu+1 + Z_mu Z_mu+1)/2``."""
    if n < 2:
        raise BadSize(f"BRS chain needs n >= 2, got {n}")
    idx = np.arange(1 << n)
    z = 1 - 2 * ((idx[:, None] >> (n - 1 - np.arange(n))[None, :]) & 1)
    amps = np.full(1 << n, 1.0 / math.sqrt(1 << n), dtype=np.complex128)
    for mu in range(n - 1):
        amps = amps * (1 - z[:, mu] + z[:, mu + 1] + z[:, mu] * z[:, mu + 1]) / 2
    return StateVector(n, amps)


def ghz(n: int) -> StateVector:
    if n < 2:
        raise BadSize(f"GHZ needs n >= 2, got {n}")
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[0] = amps[-1] = 1 / math.sqrt(2)
    return StateVector(n, amps)


class BellKind(enum.Enum):
    """Bell pairs by parity and relative sign.

    The string values follow the source text, where phi is odd parity and psi
    even: ``ODD_MINUS`` ("phi-") is the singlet ``(|01> - |10>)/sqrt2`` and
    ``EVEN_PLUS`` ("psi+") is ``(|00> + |11>)/sqrt2``.  The ``PHI_*``/``PSI_*``
    names are aliases.
    """

    ODD_PLUS = "phi+"
    ODD_MINUS = "phi-"
    EVEN_PLUS = "psi+"
    EVEN_MINUS = "psi-"
    PHI_PLUS = "phi+"
    PHI_MINUS = "phi-"
    PSI_PLUS = "psi+"
    PSI_MINUS = "psi-"


_BELL = {
    BellKind.ODD_PLUS: ("01", "10", 1),
    BellKind.ODD_MINUS: ("01", "10", -1),
    BellKind.EVEN_PLUS: ("00", "11", 1),
    BellKind.EVEN_MINUS: ("00", "11", -1),
}


def bell(kind) -> StateVector:
    kind = BellKind(kind) if not isinstance(kind, BellKind) else kind
    first, second, sign = _BELL[kind]
    amps = np.zeros(4, dtype=np.complex128)
    amps[_basis_index(first)] = 1 / math.sqrt(2)
    amps[_basis_index(second)] = sign / math.sqrt(2)
    return StateVector(2, amps)


@dataclass(frozen=True)
class SupersingletParams:
    a: complex
    b: complex

    def __post_init__(self):
        norm2 = abs(self.a) ** 2 + abs(self.b) ** 2
        if abs(norm2 - 1.0) > 1e-12:
            raise BadNorm(f"|a|^2 + |b|^2 = {norm2!r}, expected 1")


def _s4_basis() -> tuple[np.ndarray, np.ndarray]:
    s1 = np.zeros(16, dtype=np.complex128)
    for bits in ("0011", "1100"):
        s1[_basis_index(bits)] = 1.0
    for bits in ("0101", "0110", "1001", "1010"):
        s1[_basis_index(bits)] = -0.5
    s1 /= math.sqrt(3)
    s2 = np.zeros(16, dtype=np.complex128)
    for bits, sign in (("0101", 1), ("1010", 1), ("0110", -1), ("1001", -1)):
        s2[_basis_index(bits)] = sign / 2
    return s1, s2


S4_ONE, S4_TWO = _s4_basis()


def supersinglet_s4(p: SupersingletParams) -> StateVector:
    if not isinstance(p, SupersingletParams):
        p = SupersingletParams(*p)
    return StateVector(4, p.a * S4_ONE + p.b * S4_TWO)


def _single_qubit_state(v) -> np.ndarray:
    x, y, z = axis_vector(v)
    theta = math.acos(max(-1.0, min(1.0, z)))
    phase = math.atan2(y, x)
    return np.array([math.cos(theta / 2), np.exp(1j * phase) * math.sin(theta / 2)])


def product_state(blochs) -> StateVector:
    blochs = list(blochs)
    if not blochs:
        raise BadSize("product state needs at least one qubit")
    amps = np.ones(1, dtype=np.complex128)
    for v in blochs:
        amps = np.kron(amps, _single_qubit_state(v))
    return StateVector(len(blochs), amps)


def random_state(n: int, seed: int) -> StateVector:
    if n < 1:
        raise BadSize(f"need n >= 1, got {n}")
    rng = np.random.default_rng(seed)
    amps = rng.standard_normal(1 << n) + 1j * rng.standard_normal(1 << n)
    return make_state(n, amps)


def random_unitary(rng: np.random.Generator) -> np.ndarray:
    """Haar-random 2x2 unitary (QR of a complex Ginibre matrix, phases fixed)."""
    z = (rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))) / math.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def apply_local_unitaries(s: StateVector, unitaries) -> StateVector:
    out = s
    for q, u in enumerate(unitaries):
        out = apply_single_qubit(out, q, u)
    return out


def random_maximally_entangled(n: int, seed: int) -> StateVector:
    """Random local-unitary rotation of a maximally entangled seed state.

    Local unitaries leave every single-qubit reduced state unchanged up to
    rotation, so the result stays maximally entangled on every qubit.  For
    n = 4 the seed is a random supersinglet mixed with GHZ / BRS material.
    """
    rng = np.random.default_rng(seed)
    if n == 4:
        choice = rng.integers(3)
        if choice == 0:
            ab = rng.standard_normal(4)
            ab /= np.linalg.norm(ab)
            base = supersinglet_s4(SupersingletParams(complex(ab[0], ab[1]), complex(ab[2], ab[3])))
        elif choice == 1:
            base = ghz(4)
        else:
            base = brs_chain(4)
    elif n >= 2:
        base = brs_chain(n) if rng.integers(2) else ghz(n)
    else:
        raise BadSize("maximally entangled states need n >= 2")
    return apply_local_unitaries(base, [random_unitary(rng) for _ in range(n)])


# --- CLI state-spec strings -------------------------------------------------

def parse_state_spec(spec: str) -> StateVector:
    """Build a state from ``ghz:N``, ``brs:N[:phi]``, ``bell:KIND``,
    ``s4:a_re,a_im,b_re,b_im``, ``random:N[:seed]`` or ``file:PATH``."""
    kind, _, rest = spec.partition(":")
    kind = kind.strip().lower()
    try:
        if kind == "ghz":
            return ghz(int(rest))
        if kind == "brs":
            parts = rest.split(":")
            phi = float(parts[1]) if len(parts) > 1 and parts[1] else math.pi
            return brs_chain(int(parts[0]), phi)
        if kind == "bell":
            return bell(BellKind(rest.strip().lower()))
        if kind == "s4":
            vals = [float(t) for t in rest.split(",")]
            if len(vals) != 4:
                raise StateSpecError("s4 needs a_re,a_im,b_re,b_im")
            a, b = complex(vals[0], vals[1]), complex(vals[2], vals[3])
            norm = math.sqrt(abs(a) ** 2 + abs(b) ** 2)
            if norm == 0:
                raise StateSpecError("s4 parameters are all zero")
            return supersinglet_s4(SupersingletParams(a / norm, b / norm))
        if kind == "random":
            parts = rest.split(":")
            seed = int(parts[1]) if len(parts) > 1 else 0
            return random_state(int(parts[0]), seed)
        if kind == "file":
            path = Path(rest)
            if not path.is_file():
                raise StateSpecError(f"state file not found: {rest}")
            return read_state(path)
    except StateSpecError:
        raise
    except (ValueError, KeyError, OSError) as exc:
        raise StateSpecError(f"bad state spec {spec!r}: {exc}") from exc
    raise StateSpecError(f"unknown state kind in {spec!r}")

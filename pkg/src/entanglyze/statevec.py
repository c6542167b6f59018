"""Dense pure states of N qubits and Pauli-observable algebra on them.

Amplitude index ``i`` encodes the ket ``|q0 q1 ... q_{N-1}>`` with qubit 0 as the
most significant bit, so ``|0011>`` is index 3 for four qubits.  Pauli
observables are never materialised as ``2^N x 2^N`` matrices: each one is
applied by a strided kernel on a ``(2^q, 2, 2^(N-q-1))`` view of the amplitudes.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    BadAxis,
    ContractViolation,
    DuplicateQubit,
    EmptyFactors,
    LengthMismatch,
    QubitOutOfRange,
    ZeroNorm,
)

AXIS_TOL = 1e-12
NORM_TOL = 1e-10
IMAG_TOL = 1e-10


@dataclass(frozen=True)
class Axis:
    """Real unit 3-vector (a measurement direction on the Bloch sphere)."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        n2 = self.x * self.x + self.y * self.y + self.z * self.z
        if not np.isfinite(n2) or abs(n2 - 1.0) > AXIS_TOL:
            raise BadAxis(f"axis ({self.x}, {self.y}, {self.z}) is not a unit vector")

    @classmethod
    def normalized(cls, v: Iterable[float]) -> "Axis":
        arr = np.asarray(list(v), dtype=float)
        if arr.shape != (3,):
            raise BadAxis(f"axis needs 3 components, got {arr.shape}")
        norm = np.linalg.norm(arr)
        if not np.isfinite(norm) or norm == 0.0:
            raise BadAxis("zero or non-finite axis vector")
        arr = arr / norm
        return cls(float(arr[0]), float(arr[1]), float(arr[2]))

    @property
    def vec(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def __iter__(self):
        return iter((self.x, self.y, self.z))

    def __neg__(self) -> "Axis":
        return Axis(-self.x, -self.y, -self.z)


X = Axis(1.0, 0.0, 0.0)
Y = Axis(0.0, 1.0, 0.0)
Z = Axis(0.0, 0.0, 1.0)
PAULI_AXES = (X, Y, Z)


def axis_vector(v) -> np.ndarray:
    """Coerce an ``Axis`` or 3-sequence to a validated unit ndarray."""
    if isinstance(v, Axis):
        return v.vec
    arr = np.asarray(v, dtype=float)
    if arr.shape != (3,):
        raise BadAxis(f"axis needs 3 components, got shape {arr.shape}")
    if abs(float(arr @ arr) - 1.0) > AXIS_TOL:
        raise BadAxis(f"axis {arr.tolist()} is not a unit vector")
    return arr


def as_axis(v) -> Axis:
    if isinstance(v, Axis):
        return v
    a = axis_vector(v)
    return Axis(float(a[0]), float(a[1]), float(a[2]))


@dataclass(frozen=True)
class PauliFactor:
    """The observable ``v . sigma`` acting on one qubit."""

    qubit: int
    axis: Axis

    def __post_init__(self):
        object.__setattr__(self, "axis", as_axis(self.axis))


def factor(qubit: int, axis) -> PauliFactor:
    return PauliFactor(int(qubit), as_axis(axis))


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized, immutable amplitude vector of ``n_qubits`` qubits."""

    n_qubits: int
    amplitudes: np.ndarray = field(repr=False)

    def __post_init__(self):
        amps = np.array(self.amplitudes, dtype=np.complex128)
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return 1 << self.n_qubits

    def __len__(self):
        return self.dim

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.amplitudes, dtype=dtype)

    def check_qubit(self, q: int) -> int:
        if not 0 <= int(q) < self.n_qubits:
            raise QubitOutOfRange(f"qubit {q} out of range for {self.n_qubits}-qubit state")
        return int(q)

    def overlap(self, other: "StateVector") -> complex:
        return complex(np.vdot(self.amplitudes, other.amplitudes))

    def __repr__(self):
        return f"StateVector(n_qubits={self.n_qubits})"


def make_state(n_qubits: int, amplitudes) -> StateVector:
    amps = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
    if n_qubits < 1 or amps.size != 1 << n_qubits:
        raise LengthMismatch(f"expected {1 << max(n_qubits, 0)} amplitudes, got {amps.size}")
    norm = np.linalg.norm(amps)
    if not np.isfinite(norm) or norm == 0.0:
        raise ZeroNorm("state vector has zero norm")
    if abs(norm - 1.0) > 4 * np.finfo(float).eps:
        amps = amps / norm
    return StateVector(n_qubits, amps)


def _wrap(n_qubits: int, amps: np.ndarray) -> StateVector:
    # internal: amps already normalized and owned
    return StateVector(n_qubits, amps)


def _pauli_kernel(amps: np.ndarray, n: int, q: int, v: np.ndarray) -> np.ndarray:
    """Return ``(v . sigma)_q amps`` for a flat (or batched, leading axis) amplitude array."""
    lead = amps.shape[:-1]
    view = amps.reshape(lead + (1 << q, 2, 1 << (n - q - 1)))
    a0 = view[..., 0, :]
    a1 = view[..., 1, :]
    x, y, z = v
    off_lo = complex(x, y)   # <1|sigma_v|0>
    off_hi = complex(x, -y)  # <0|sigma_v|1>
    out = np.empty_like(view)
    out[..., 0, :] = z * a0 + off_hi * a1
    out[..., 1, :] = off_lo * a0 - z * a1
    return out.reshape(amps.shape)


def apply_pauli(s: StateVector, f: PauliFactor) -> StateVector:
    q = s.check_qubit(f.qubit)
    return _wrap(s.n_qubits, _pauli_kernel(s.amplitudes, s.n_qubits, q, axis_vector(f.axis)))


def _real_checked(value: complex, what: str) -> float:
    if abs(value.imag) > IMAG_TOL:
        raise ContractViolation(f"{what} has imaginary residue {value.imag:.3e}")
    return float(value.real)


def expectation(s: StateVector, f: PauliFactor) -> float:
    q = s.check_qubit(f.qubit)
    out = _pauli_kernel(s.amplitudes, s.n_qubits, q, axis_vector(f.axis))
    return _real_checked(complex(np.vdot(s.amplitudes, out)), "expectation")


def _check_factors(s: StateVector, factors: Sequence[PauliFactor]):
    if len(factors) == 0:
        raise EmptyFactors("correlator needs at least one factor")
    seen = set()
    for f in factors:
        q = s.check_qubit(f.qubit)
        if q in seen:
            raise DuplicateQubit(f"qubit {q} appears twice in correlator")
        seen.add(q)


def apply_product(s: StateVector, factors: Sequence[PauliFactor]) -> np.ndarray:
    """Raw amplitudes of ``prod_f sigma_f |s>`` (factors on distinct qubits)."""
    amps = s.amplitudes
    for f in factors:
        amps = _pauli_kernel(amps, s.n_qubits, f.qubit, axis_vector(f.axis))
    return amps


def correlator(s: StateVector, factors: Sequence[PauliFactor]) -> float:
    factors = list(factors)
    _check_factors(s, factors)
    out = apply_product(s, factors)
    return _real_checked(complex(np.vdot(s.amplitudes, out)), "correlator")


def bloch_vector(s: StateVector, q: int) -> np.ndarray:
    q = s.check_qubit(q)
    n = s.n_qubits
    view = s.amplitudes.reshape(1 << q, 2, 1 << (n - q - 1))
    a0 = view[:, 0, :]
    a1 = view[:, 1, :]
    cross = complex(np.vdot(a0, a1))  # sum conj(a0) a1
    p0 = float(np.vdot(a0, a0).real)
    p1 = float(np.vdot(a1, a1).real)
    return np.array([2.0 * cross.real, 2.0 * cross.imag, p0 - p1])


def pauli_images(s: StateVector, q: int) -> np.ndarray:
    """Stack of ``sigma_i^q |s>`` for i = x, y, z; shape (3, 2^N)."""
    q = s.check_qubit(q)
    return np.stack([_pauli_kernel(s.amplitudes, s.n_qubits, q, a.vec) for a in PAULI_AXES])


# --- JSON state files -------------------------------------------------------

def state_to_json(s: StateVector) -> str:
    body = ",\n    ".join(f"[{a.real:.17g}, {a.imag:.17g}]" for a in s.amplitudes)
    return f'{{\n  "n_qubits": {s.n_qubits},\n  "amplitudes": [\n    {body}\n  ]\n}}\n'


def state_from_json(text: str) -> StateVector:
    data = json.loads(text)
    try:
        n = int(data["n_qubits"])
        raw = data["amplitudes"]
    except (KeyError, TypeError) as exc:
        raise LengthMismatch(f"malformed state file: {exc}") from exc
    amps = np.array([complex(float(re), float(im)) for re, im in raw], dtype=np.complex128)
    return make_state(n, amps)


def write_state(path, s: StateVector):
    with open(path, "w") as fh:
        fh.write(state_to_json(s))


def read_state(path) -> StateVector:
    with open(path) as fh:
        return state_from_json(fh.read())


def apply_single_qubit(s: StateVector, q: int, u) -> StateVector:
    """Apply an arbitrary 2x2 matrix ``u`` to qubit ``q`` (no renormalization)."""
    q = s.check_qubit(q)
    u = np.asarray(u, dtype=np.complex128)
    n = s.n_qubits
    view = s.amplitudes.reshape(1 << q, 2, 1 << (n - q - 1))
    out = np.einsum("ab,ibj->iaj", u, view)
    return StateVector(n, out.reshape(-1))

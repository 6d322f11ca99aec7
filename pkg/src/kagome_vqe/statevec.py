"""Dense state vectors: basis states, Heisenberg gates, singlets and sampling.

Qubit q is bit q of the amplitude index. Bit value 0 is spin down and 1 is
spin up. Bitstrings are written with character i giving qubit i.

Physical spin components in Pauli units are (X, -Y, -Z) on each qubit, so an
up spin carries S^z = +1. This is a rotation by pi about x, which leaves the
Heisenberg pair term unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels as K

MAX_QUBITS = 24
AXES = ("x", "y", "z")
BASES = ("X", "Y", "Z")

_H = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2)
_SDG = np.diag([1, -1j])
_ROT = {"X": _H, "Y": _H @ _SDG, "Z": None}


class StateVector:
    """2**n complex amplitudes with qubit 0 as the least significant bit."""

    __slots__ = ("n_qubits", "amplitudes")

    def __init__(self, n_qubits: int, amplitudes: np.ndarray):
        if not 1 <= n_qubits <= MAX_QUBITS:
            raise ValueError(f"n_qubits must be in 1..{MAX_QUBITS}, got {n_qubits}")
        amps = np.ascontiguousarray(amplitudes, dtype=np.complex128)
        if amps.shape != (1 << n_qubits,):
            raise ValueError("amplitude array has the wrong length")
        self.n_qubits = n_qubits
        self.amplitudes = amps

    def copy(self) -> "StateVector":
        return StateVector(self.n_qubits, self.amplitudes.copy())

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def to_bytes(self) -> bytes:
        """Little-endian interleaved (re, im) doubles."""
        return self.amplitudes.astype("<c16").tobytes()

    @classmethod
    def from_bytes(cls, n_qubits: int, data: bytes) -> "StateVector":
        return cls(n_qubits, np.frombuffer(data, dtype="<c16").copy())

    def __repr__(self):
        return f"StateVector(n_qubits={self.n_qubits})"


def bits_to_index(bits: str) -> int:
    return sum(1 << i for i, ch in enumerate(bits) if ch == "1")


def index_to_bits(index: int, n: int) -> str:
    return "".join("1" if (index >> i) & 1 else "0" for i in range(n))


def init_basis_state(n: int, bits: str | None = None) -> StateVector:
    bits = "0" * n if bits is None else bits
    if len(bits) != n or set(bits) - {"0", "1"}:
        raise ValueError(f"bits must be a length-{n} string over 0/1")
    if not 1 <= n <= MAX_QUBITS:
        raise ValueError(f"n must be in 1..{MAX_QUBITS}")
    amps = np.zeros(1 << n, dtype=np.complex128)
    amps[bits_to_index(bits)] = 1.0
    return StateVector(n, amps)


def _check_pair(state: StateVector, k: int, l: int):
    n = state.n_qubits
    if k == l or not (0 <= k < n and 0 <= l < n):
        raise IndexError(f"invalid qubit pair {(k, l)} for {n} qubits")


def apply_heisenberg(state: StateVector, pair, angle: float) -> StateVector:
    """exp(-i angle (XX + YY + ZZ)) on ``pair``, in place."""
    k, l = int(pair[0]), int(pair[1])
    _check_pair(state, k, l)
    K.heis_gate(state.amplitudes, k, l, float(angle))
    return state


def apply_swap(state: StateVector, pair) -> StateVector:
    k, l = int(pair[0]), int(pair[1])
    _check_pair(state, k, l)
    K.swap_gate(state.amplitudes, k, l)
    return state


def apply_1q(state: StateVector, q: int, u: np.ndarray) -> StateVector:
    n = state.n_qubits
    view = state.amplitudes.reshape(1 << (n - 1 - q), 2, 1 << q)
    a0 = view[:, 0, :].copy()
    a1 = view[:, 1, :].copy()
    view[:, 0, :] = u[0, 0] * a0 + u[0, 1] * a1
    view[:, 1, :] = u[1, 0] * a0 + u[1, 1] * a1
    return state


def apply_2q(state: StateVector, k: int, l: int, u: np.ndarray) -> StateVector:
    """Apply a 4x4 unitary indexed by 2*bit_k + bit_l."""
    _check_pair(state, k, l)
    n = state.n_qubits
    t = state.amplitudes.reshape((2,) * n)
    ak, al = n - 1 - k, n - 1 - l
    t = np.moveaxis(t, (ak, al), (0, 1))
    shape = t.shape
    out = (u @ t.reshape(4, -1)).reshape(shape)
    state.amplitudes[:] = np.moveaxis(out, (0, 1), (ak, al)).reshape(-1)
    return state


def _pair_gate(*ops):
    out = np.eye(4, dtype=complex)
    for op in ops:
        out = op @ out
    return out


_I2 = np.eye(2)
_X = np.array([[0, 1], [1, 0]], dtype=complex)
_Z = np.diag([1.0 + 0j, -1.0])
_CNOT = np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
# Z_k X_l CNOT_kl H_k, rightmost acting first; first tensor factor is qubit k
SINGLET_PREP = _pair_gate(np.kron(_H, _I2), _CNOT, np.kron(_I2, _X), np.kron(_Z, _I2))
SINGLET_UNPREP = SINGLET_PREP.conj().T


def apply_singlet_prep(state: StateVector, pair) -> StateVector:
    return apply_2q(state, int(pair[0]), int(pair[1]), SINGLET_PREP)


def apply_singlet_unprep(state: StateVector, pair) -> StateVector:
    return apply_2q(state, int(pair[0]), int(pair[1]), SINGLET_UNPREP)


def _same_n(a: StateVector, b: StateVector):
    if a.n_qubits != b.n_qubits:
        raise ValueError("states have different qubit counts")


def overlap(a: StateVector, b: StateVector) -> complex:
    _same_n(a, b)
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def fidelity(a: StateVector, b: StateVector) -> float:
    return min(1.0, abs(overlap(a, b)) ** 2)


def infidelity(a: StateVector, b: StateVector) -> float:
    return 1.0 - fidelity(a, b)


def _popcounts(n: int) -> np.ndarray:
    idx = np.arange(1 << n, dtype=np.int64)
    c = np.zeros_like(idx)
    for q in range(n):
        c += (idx >> q) & 1
    return c


def outcome_values(n: int, basis: str) -> np.ndarray:
    """Total physical spin (Pauli units) of each outcome index in ``basis``."""
    pc = _popcounts(n)
    if basis == "X":
        return n - 2 * pc
    if basis in ("Y", "Z"):
        return 2 * pc - n
    raise ValueError(f"unknown basis {basis!r}")


def rotate_to_basis(state: StateVector, basis: str) -> StateVector:
    """Copy of ``state`` rotated so that a Z measurement reads ``basis``."""
    out = state.copy()
    u = _ROT[basis]
    if u is not None:
        for q in range(out.n_qubits):
            apply_1q(out, q, u)
    return out


def _axis_moments(state: StateVector, axis: str):
    basis = axis.upper()
    probs = rotate_to_basis(state, basis).probabilities()
    vals = outcome_values(state.n_qubits, basis).astype(float)
    mean = float(probs @ vals)
    var = float(probs @ (vals - mean) ** 2)
    return mean, var


def total_spin(state: StateVector, axis: str = "z") -> float:
    """Expectation of the total spin component along ``axis`` (Pauli units)."""
    return _axis_moments(state, axis.lower())[0]


def total_spin_z(state: StateVector) -> float:
    return total_spin(state, "z")


def sector_check(state: StateVector, axis: str, value: float, tol: float = 1e-10) -> bool:
    """True if ``state`` is an eigenstate of total spin ``axis`` with ``value``."""
    mean, var = _axis_moments(state, axis.lower())
    return abs(mean - value) < tol and var < tol


@dataclass
class ShotBatch:
    """Measurement outcomes; ``outcomes`` holds the kept basis-state indices."""

    basis: str
    n_qubits: int
    outcomes: np.ndarray
    post_selected: bool
    kept: int
    discarded: int

    @property
    def total(self) -> int:
        return self.kept + self.discarded

    def bitstrings(self) -> list[str]:
        return [index_to_bits(int(i), self.n_qubits) for i in self.outcomes]

    def spins(self) -> np.ndarray:
        """(kept, n) array of per-qubit physical outcomes in {-1, +1}."""
        bits = (self.outcomes[:, None] >> np.arange(self.n_qubits)) & 1
        sign = -1 if self.basis == "X" else 1
        return sign * (2 * bits - 1)

    def to_csv(self) -> str:
        return "bits\n" + "".join(b + "\n" for b in self.bitstrings())


def sample(
    state: StateVector,
    basis: str,
    shots: int,
    seed,
    post_select: bool = False,
    expected: float = 0.0,
) -> ShotBatch:
    """Sample ``shots`` outcomes of measuring every qubit in ``basis``.

    With ``post_select`` shots whose summed outcomes differ from ``expected``
    are discarded.
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    if basis not in BASES:
        raise ValueError(f"unknown basis {basis!r}")
    rng = np.random.default_rng(seed)
    probs = rotate_to_basis(state, basis).probabilities()
    cdf = np.cumsum(probs)
    cdf /= cdf[-1]
    idx = np.searchsorted(cdf, rng.random(shots), side="right")
    idx = np.minimum(idx, len(cdf) - 1).astype(np.int64)
    discarded = 0
    if post_select:
        vals = outcome_values(state.n_qubits, basis)[idx]
        keep = vals == expected
        discarded = int(shots - keep.sum())
        idx = idx[keep]
    return ShotBatch(basis, state.n_qubits, idx, post_select, len(idx), discarded)

"""Simulator for a chain of double wells driven by the exchanged gate set.

Pulses are ``exp(-i * strength * G * tau)`` with ``G`` one of ``X(k)``,
``Z(1)``, ``Z(2)``, ``Z(k) Z(k+1)`` or the two-well interaction
``diag(E1, E2, E2, E1) + c_e (XX + YY)`` on an adjacent pair. Updates touch
only the one or two affected qubits; no ``2**n x 2**n`` matrix is built.

Basis index bits run from qubit 1 (most significant) to qubit n.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import CapacityError, ConstraintError, RepresentationError
from .pauli import PauliString

MAX_VECTOR_QUBITS = 20
MAX_DENSITY_QUBITS = 12
STATE_TOL = 1e-9
_EIG_FLOOR = 1e-13

PULSE_KINDS = ("X", "Z", "ZZ", "INTERACT")
Z_QUBITS = (1, 2)

EXCHANGE_SWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
)
EXCHANGE_BASIS = ("AB,0", "BA,0", "AB,1", "BA,1")


@dataclass(frozen=True, eq=False)
class ChainState:
    """Immutable n-qubit register held as amplitudes or a density matrix."""

    n_qubits: int
    data: np.ndarray
    representation: str = "vector"

    def __post_init__(self):
        n = self.n_qubits
        if n < 1:
            raise ValueError(f"n_qubits must be positive, got {n}")
        data = np.array(self.data, dtype=complex)
        dim = 1 << n
        if self.representation == "vector":
            if n > MAX_VECTOR_QUBITS:
                raise CapacityError(f"state vectors are limited to {MAX_VECTOR_QUBITS} qubits")
            if data.shape != (dim,):
                raise ValueError(f"expected {dim} amplitudes, got shape {data.shape}")
            if abs(np.linalg.norm(data) - 1.0) > STATE_TOL:
                raise ValueError(f"amplitudes must have unit norm, got {np.linalg.norm(data):.12g}")
        elif self.representation == "density":
            if n > MAX_DENSITY_QUBITS:
                raise CapacityError(f"density matrices are limited to {MAX_DENSITY_QUBITS} qubits")
            if data.shape != (dim, dim):
                raise ValueError(f"expected a {dim}x{dim} matrix, got shape {data.shape}")
            if np.max(np.abs(data - data.conj().T)) > STATE_TOL:
                raise ValueError("density matrix must be Hermitian")
            if abs(np.trace(data) - 1.0) > STATE_TOL:
                raise ValueError("density matrix must have unit trace")
            if np.linalg.eigvalsh(data)[0] < -STATE_TOL:
                raise ValueError("density matrix must be positive semidefinite")
        else:
            raise ValueError(f"representation must be 'vector' or 'density', got {self.representation!r}")
        data.flags.writeable = False
        object.__setattr__(self, "data", data)

    @classmethod
    def _wrap(cls, n_qubits, data, representation):
        # internal results are valid by construction; skip the O(4**n) checks
        state = object.__new__(cls)
        data.flags.writeable = False
        object.__setattr__(state, "n_qubits", n_qubits)
        object.__setattr__(state, "data", data)
        object.__setattr__(state, "representation", representation)
        return state

    @property
    def dim(self) -> int:
        return 1 << self.n_qubits

    @property
    def is_vector(self) -> bool:
        return self.representation == "vector"

    def to_density(self) -> ChainState:
        if not self.is_vector:
            return self
        if self.n_qubits > MAX_DENSITY_QUBITS:
            raise CapacityError(f"density matrices are limited to {MAX_DENSITY_QUBITS} qubits")
        psi = self.data
        return ChainState._wrap(self.n_qubits, np.outer(psi, psi.conj()), "density")

    def __repr__(self) -> str:
        return f"ChainState(n_qubits={self.n_qubits}, representation={self.representation!r})"


@dataclass(frozen=True)
class GatePulse:
    """One gate pulse; ``qubit`` is 1-based and is the first of the pair for ZZ/INTERACT."""

    kind: str
    qubit: int
    tau: float
    strength: float = 1.0
    E1: float = 0.0
    E2: float = 0.0
    c_e: float = 0.0

    @property
    def angle(self) -> float:
        return self.strength * self.tau

    def validate(self, n_qubits: int) -> None:
        if self.kind not in PULSE_KINDS:
            raise ConstraintError(f"unknown pulse kind {self.kind!r}; expected one of {PULSE_KINDS}")
        for name in ("tau", "strength", "E1", "E2", "c_e"):
            if not math.isfinite(getattr(self, name)):
                raise ConstraintError(f"{name} must be finite")
        k = self.qubit
        if self.kind == "X":
            if not 1 <= k <= n_qubits:
                raise ConstraintError(f"X pulse qubit {k} out of range 1..{n_qubits}")
        elif self.kind == "Z":
            if k not in Z_QUBITS or k > n_qubits:
                raise ConstraintError(f"Z pulses act only on qubits {Z_QUBITS} of the chain, got {k}")
        elif not 1 <= k <= n_qubits - 1:
            raise ConstraintError(
                f"{self.kind} acts on adjacent qubits (k, k+1); k={k} invalid for {n_qubits} qubits"
            )

    def generator_terms(self, n_qubits: int) -> list[tuple[float, PauliString]]:
        """Generator ``G`` as a Pauli sum (without ``strength``)."""
        self.validate(n_qubits)
        k = self.qubit
        single = PauliString.single
        if self.kind in ("X", "Z"):
            return [(1.0, single(n_qubits, k, self.kind))]
        zz = PauliString.from_label("I" * (k - 1) + "ZZ" + "I" * (n_qubits - k - 1))
        if self.kind == "ZZ":
            return [(1.0, zz)]
        pad = ("I" * (k - 1), "I" * (n_qubits - k - 1))
        terms = [
            ((self.E1 + self.E2) / 2, PauliString.identity(n_qubits)),
            ((self.E1 - self.E2) / 2, zz),
        ]
        if self.c_e:
            terms.append((self.c_e, PauliString.from_label(pad[0] + "XX" + pad[1])))
            terms.append((self.c_e, PauliString.from_label(pad[0] + "YY" + pad[1])))
        return terms

    def inverse(self) -> GatePulse:
        return GatePulse(self.kind, self.qubit, -self.tau, self.strength, self.E1, self.E2, self.c_e)


def _local_update(pulse: GatePulse):
    """(width, is_diagonal, matrix or diagonal) of ``exp(-i angle G)`` on the touched qubits."""
    th = pulse.angle
    if pulse.kind == "X":
        c, s = math.cos(th), math.sin(th)
        return 1, False, np.array([[c, -1j * s], [-1j * s, c]])
    if pulse.kind == "Z":
        return 1, False, np.diag([np.exp(-1j * th), np.exp(1j * th)])
    if pulse.kind == "ZZ":
        a, b = np.exp(-1j * th), np.exp(1j * th)
        return 2, True, np.array([a, b, b, a])
    p1 = np.exp(-1j * th * pulse.E1)
    p2 = np.exp(-1j * th * pulse.E2)
    if pulse.c_e == 0:
        return 2, True, np.array([p1, p2, p2, p1])
    # XX + YY = 2 (|01><10| + |10><01|)
    c, s = math.cos(2 * pulse.c_e * th), math.sin(2 * pulse.c_e * th)
    u = np.zeros((4, 4), dtype=complex)
    u[0, 0] = u[3, 3] = p1
    u[1, 1] = u[2, 2] = p2 * c
    u[1, 2] = u[2, 1] = -1j * p2 * s
    return 2, False, u


def _apply_local(buf, n_bits, qubit, width, diagonal, op, backend):
    if width == 1:
        kernels.apply_1q(buf, n_bits, qubit, op, backend)
    elif diagonal:
        kernels.apply_diag_2q(buf, n_bits, qubit, op, backend)
    else:
        kernels.apply_2q(buf, n_bits, qubit, op, backend)


def apply_pulse(state: ChainState, pulse: GatePulse, backend: str | None = None) -> ChainState:
    """New state after ``exp(-i * strength * G * tau)``."""
    pulse.validate(state.n_qubits)
    n = state.n_qubits
    width, diagonal, op = _local_update(pulse)
    if state.is_vector:
        buf = state.data.copy()
        _apply_local(buf, n, pulse.qubit, width, diagonal, op, backend)
        return ChainState._wrap(n, buf, "vector")
    # vec(U rho U^dag) = (U kron conj(U)) vec(rho): row bits are qubits 1..n, column bits n+1..2n
    buf = np.ascontiguousarray(state.data).reshape(-1).copy()
    _apply_local(buf, 2 * n, pulse.qubit, width, diagonal, op, backend)
    _apply_local(buf, 2 * n, n + pulse.qubit, width, diagonal, np.conj(op), backend)
    return ChainState._wrap(n, buf.reshape(1 << n, 1 << n), "density")


def run_schedule(state: ChainState, pulses: Iterable[GatePulse], backend: str | None = None) -> ChainState:
    """Apply pulses left to right."""
    pulses = list(pulses)
    for i, p in enumerate(pulses):
        try:
            p.validate(state.n_qubits)
        except ConstraintError as exc:
            raise ConstraintError(f"pulse {i}: {exc}") from exc
    for p in pulses:
        state = apply_pulse(state, p, backend)
    return state


def inverse_schedule(pulses: Sequence[GatePulse]) -> list[GatePulse]:
    return [p.inverse() for p in reversed(pulses)]


def _basis_state(n, index, representation):
    if representation == "vector":
        data = np.zeros(1 << n, dtype=complex)
        data[index] = 1.0
    else:
        data = np.zeros((1 << n, 1 << n), dtype=complex)
        data[index, index] = 1.0
    return ChainState(n, data, representation)


def initialize_zero(n: int, representation: str = "vector") -> ChainState:
    """``|0...0>``, the state of two freshly joined chains."""
    return _basis_state(n, 0, representation)


KET_MINUS = np.array([-1.0, 1.0], dtype=complex) / math.sqrt(2.0)


def initialize_minus(n: int, representation: str = "vector") -> ChainState:
    """``|->...|->`` with ``|-> = (|1> - |0>)/sqrt(2)``, the radiative ground state."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n > MAX_VECTOR_QUBITS:
        raise CapacityError(f"state vectors are limited to {MAX_VECTOR_QUBITS} qubits")
    # amplitude of index b is (-1)**(number of zero bits) / 2**(n/2)
    zeros = n - np.array([bin(i).count("1") for i in range(1 << n)])
    psi = np.where(zeros % 2 == 0, 1.0, -1.0).astype(complex) / math.sqrt(2.0) ** n
    state = ChainState(n, psi, "vector")
    return state if representation == "vector" else state.to_density()


def probabilities(state: ChainState) -> np.ndarray:
    if state.is_vector:
        p = np.abs(state.data) ** 2
    else:
        p = np.clip(np.diagonal(state.data).real, 0.0, None)
    return p / p.sum()


def bitstring(index: int, n_qubits: int) -> str:
    return format(index, f"0{n_qubits}b")


def sample(state: ChainState, shots: int, seed: int) -> np.ndarray:
    """``shots`` basis indices drawn from the measurement distribution."""
    if shots < 0:
        raise ValueError("shots must be nonnegative")
    rng = np.random.default_rng(seed)
    return rng.choice(state.dim, size=shots, p=probabilities(state))


def histogram(state: ChainState, shots: int, seed: int) -> dict[str, int]:
    """Counts per observed bitstring, keys sorted."""
    idx, counts = np.unique(sample(state, shots, seed), return_counts=True)
    return {bitstring(int(i), state.n_qubits): int(c) for i, c in zip(idx, counts)}


def measure(state: ChainState, seed: int) -> tuple[str, ChainState]:
    """Projective measurement of every qubit; returns the bitstring and collapsed state."""
    index = int(sample(state, 1, seed)[0])
    return bitstring(index, state.n_qubits), _basis_state(state.n_qubits, index, state.representation)


@dataclass(frozen=True)
class SeparationOutcome:
    """Terms ``amplitude |K_A>|K_B>`` after the double chain is split."""

    n_qubits: int
    entries: tuple[tuple[str, str, complex], ...]


_TO_A = str.maketrans("01", "AB")
_FROM_A = str.maketrans("AB", "01")
_COMPLEMENT = str.maketrans("AB", "BA")


def _pure_amplitudes(state: ChainState) -> np.ndarray:
    if state.is_vector:
        return state.data
    w, v = np.linalg.eigh(state.data)
    if w[-1] < 1.0 - STATE_TOL:
        raise RepresentationError("mixed density matrix has no pure-state factorisation to separate")
    psi = v[:, -1]
    k = int(np.argmax(np.abs(psi)))
    return psi * (abs(psi[k]) / psi[k])


def separate(state: ChainState, tol: float = 1e-14) -> SeparationOutcome:
    """Relabel each basis term ``|K>`` as ``|K_A>|not K_A>`` (``0 -> A``, ``1 -> B``).

    Amplitudes with modulus at or below ``tol`` are dropped.
    """
    psi = _pure_amplitudes(state)
    n = state.n_qubits
    entries = []
    for index in np.flatnonzero(np.abs(psi) > tol):
        label_a = bitstring(int(index), n).translate(_TO_A)
        entries.append((label_a, label_a.translate(_COMPLEMENT), complex(psi[index])))
    return SeparationOutcome(n, tuple(entries))


def recombine(outcome: SeparationOutcome) -> ChainState:
    """Inverse relabelling of :func:`separate`."""
    psi = np.zeros(1 << outcome.n_qubits, dtype=complex)
    for label_a, label_b, amp in outcome.entries:
        if label_b != label_a.translate(_COMPLEMENT):
            raise ValueError(f"{label_b} is not the complement of {label_a}")
        psi[int(label_a.translate(_FROM_A), 2)] = amp
    return ChainState(outcome.n_qubits, psi, "vector")


def conditional_exchange(state, strict: bool = False) -> np.ndarray:
    """SWAP-basis transfer of a separated pair superposition onto an ancilla.

    ``state`` is a 4-vector or 4x4 density matrix in the basis
    ``|AB>|0>, |BA>|0>, |AB>|1>, |BA>|1>``, mapping
    ``(a|AB> + b|BA>)|0>`` to ``|AB>(a|0> + b|1>)``. With ``strict`` a
    warning is issued if the ancilla is not in ``|0>``.
    """
    arr = np.asarray(state, dtype=complex)
    if arr.shape == (4,):
        excited = np.abs(arr[2:]).max()
        out = EXCHANGE_SWAP @ arr
    elif arr.shape == (4, 4):
        excited = np.abs(np.diagonal(arr)[2:]).max()
        out = EXCHANGE_SWAP @ arr @ EXCHANGE_SWAP.T
    else:
        raise ValueError(f"expected a 4-vector or 4x4 matrix, got shape {arr.shape}")
    if strict and excited > STATE_TOL:
        warnings.warn("ancilla is not in |0>; the exchange does not transfer the pair state", RuntimeWarning)
    return out


def exchange_with_environment(alpha: complex, beta: complex, env_overlap: complex) -> np.ndarray:
    """Ancilla density matrix after exchange when the pair branches carry
    environment states with ``<e0|e1> = env_overlap``.

    The coherence ``alpha * conj(beta)`` is multiplied by ``conj(env_overlap)``.
    """
    if abs(env_overlap) > 1.0 + 1e-12:
        raise ValueError("environment overlap must have modulus at most 1")
    if abs(abs(alpha) ** 2 + abs(beta) ** 2 - 1.0) > STATE_TOL:
        raise ValueError("|alpha|^2 + |beta|^2 must be 1")
    coh = alpha * np.conj(beta) * np.conj(env_overlap)
    return np.array([[abs(alpha) ** 2, coh], [np.conj(coh), abs(beta) ** 2]], dtype=complex)


def dephase(state: ChainState, qubit: int, gamma: float) -> ChainState:
    """Scale coherences between ``|0>_k`` and ``|1>_k`` by ``1 - gamma``."""
    if state.is_vector:
        raise RepresentationError("dephasing needs a density matrix; use state.to_density()")
    if not 0.0 <= gamma <= 1.0:
        raise ValueError(f"gamma must lie in [0, 1], got {gamma}")
    n = state.n_qubits
    if not 1 <= qubit <= n:
        raise ValueError(f"qubit {qubit} out of range 1..{n}")
    bit = (np.arange(1 << n) >> (n - qubit)) & 1
    scale = np.where(bit[:, None] != bit[None, :], 1.0 - gamma, 1.0)
    return ChainState._wrap(n, state.data * scale, "density")


def fidelity(a: ChainState, b: ChainState) -> float:
    """Uhlmann fidelity; ``|<a|b>|**2`` for two pure states."""
    if a.n_qubits != b.n_qubits:
        raise ValueError("states have different sizes")
    if a.is_vector and b.is_vector:
        return float(abs(np.vdot(a.data, b.data)) ** 2)
    if a.is_vector or b.is_vector:
        psi, rho = (a.data, b.data) if a.is_vector else (b.data, a.data)
        return float(np.vdot(psi, rho @ psi).real)
    w, v = np.linalg.eigh(a.data)
    # roundoff eigenvalues of rank-deficient states would add ~sqrt(eps) each
    w = np.where(w > _EIG_FLOOR, w, 0.0)
    root = (v * np.sqrt(w)) @ v.conj().T
    inner = np.linalg.eigvalsh(root @ b.data @ root)
    inner = np.where(inner > _EIG_FLOOR, inner, 0.0)
    return float(np.sum(np.sqrt(inner)) ** 2)

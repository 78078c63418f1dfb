"""Pauli strings, their products, and the generator families of the gate array.

An n-qubit Pauli string is stored symplectically as two integers ``x_mask``
and ``z_mask`` plus a phase ``i**phase_exp``. Bit ``n - k`` of each mask
belongs to qubit ``k`` (1-based), so qubit 1 is the leftmost tensor factor
and the most significant bit of a basis index, and the masks can be used
directly as basis-index bit patterns. Per qubit::

    (x, z) = (0, 0) -> I
    (x, z) = (1, 0) -> X
    (x, z) = (1, 1) -> Y
    (x, z) = (0, 1) -> Z
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .errors import DimensionError, check_dense

log = logging.getLogger(__name__)

PHASES = (1, 1j, -1, -1j)

SIGMA_I = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)

_CHAR_TO_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_BITS_TO_CHAR = {v: k for k, v in _CHAR_TO_BITS.items()}
_PHASE_PREFIX = {"": 0, "+": 0, "i": 1, "+i": 1, "-": 2, "-i": 3}

FAMILIES = ("clifford_e", "d_set", "enew", "enew_symmetric")


def _popcount(v: int) -> int:
    return bin(v).count("1")


@dataclass(frozen=True)
class PauliString:
    """Tensor product of single-qubit Paulis times a power of ``i``."""

    n_qubits: int
    x_mask: int
    z_mask: int
    phase_exp: int = 0

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError(f"n_qubits must be positive, got {self.n_qubits}")
        limit = 1 << self.n_qubits
        if not (0 <= self.x_mask < limit and 0 <= self.z_mask < limit):
            raise ValueError(f"masks must fit in {self.n_qubits} bits")
        object.__setattr__(self, "phase_exp", self.phase_exp % 4)

    @classmethod
    def from_label(cls, label: str) -> PauliString:
        """Parse labels like ``"XZ"``, ``"-IY"`` or ``"iXX"``."""
        body = label.lstrip("+-i")
        prefix = label[: len(label) - len(body)]
        if prefix not in _PHASE_PREFIX:
            raise ValueError(f"bad phase prefix {prefix!r} in {label!r}")
        if not body:
            raise ValueError("empty Pauli label")
        x = z = 0
        for ch in body:
            try:
                xb, zb = _CHAR_TO_BITS[ch]
            except KeyError:
                raise ValueError(f"{label!r} contains {ch!r}, expected I, X, Y, Z") from None
            x = (x << 1) | xb
            z = (z << 1) | zb
        return cls(len(body), x, z, _PHASE_PREFIX[prefix])

    @classmethod
    def identity(cls, n_qubits: int) -> PauliString:
        return cls(n_qubits, 0, 0)

    @classmethod
    def single(cls, n_qubits: int, qubit: int, op: str) -> PauliString:
        """``op`` acting on ``qubit`` (1-based), identity elsewhere."""
        if not 1 <= qubit <= n_qubits:
            raise ValueError(f"qubit {qubit} out of range 1..{n_qubits}")
        return cls.from_label("I" * (qubit - 1) + op + "I" * (n_qubits - qubit))

    @property
    def phase(self) -> complex:
        return PHASES[self.phase_exp]

    @property
    def label(self) -> str:
        chars = []
        for k in range(self.n_qubits - 1, -1, -1):
            chars.append(_BITS_TO_CHAR[(self.x_mask >> k) & 1, (self.z_mask >> k) & 1])
        prefix = ("", "i", "-", "-i")[self.phase_exp]
        return prefix + "".join(chars)

    @property
    def weight(self) -> int:
        return _popcount(self.x_mask | self.z_mask)

    def is_hermitian(self) -> bool:
        return self.phase_exp in (0, 2)

    def __mul__(self, other: PauliString) -> PauliString:
        return pauli_mul(self, other)

    def __neg__(self) -> PauliString:
        return PauliString(self.n_qubits, self.x_mask, self.z_mask, self.phase_exp + 2)

    def __repr__(self) -> str:
        return f"PauliString({self.label!r})"


def _check_same_size(p: PauliString, q: PauliString) -> None:
    if p.n_qubits != q.n_qubits:
        raise DimensionError(f"size mismatch: {p.n_qubits} vs {q.n_qubits} qubits")


def pauli_mul(p: PauliString, q: PauliString) -> PauliString:
    """Exact product ``p @ q`` with the phase tracked as a power of ``i``."""
    _check_same_size(p, q)
    full = (1 << p.n_qubits) - 1
    px, py, pz = p.x_mask & ~p.z_mask, p.x_mask & p.z_mask, p.z_mask & ~p.x_mask & full
    qx, qy, qz = q.x_mask & ~q.z_mask, q.x_mask & q.z_mask, q.z_mask & ~q.x_mask & full
    # XY = iZ, YZ = iX, ZX = iY; reversed orders give -i
    cyclic = _popcount((px & qy) | (py & qz) | (pz & qx))
    anticyclic = _popcount((py & qx) | (pz & qy) | (px & qz))
    return PauliString(
        p.n_qubits,
        p.x_mask ^ q.x_mask,
        p.z_mask ^ q.z_mask,
        p.phase_exp + q.phase_exp + cyclic - anticyclic,
    )


def anticommutes(p: PauliString, q: PauliString) -> bool:
    """True iff ``p q = -q p`` (odd symplectic overlap)."""
    _check_same_size(p, q)
    return _popcount((p.x_mask & q.z_mask) ^ (q.x_mask & p.z_mask)) % 2 == 1


def hermitian_representative(p: PauliString) -> PauliString:
    """Drop a stray factor of ``i`` so the string is Hermitian."""
    if p.is_hermitian():
        return p
    return PauliString(p.n_qubits, p.x_mask, p.z_mask, p.phase_exp - 1)


def to_matrix(p: PauliString) -> np.ndarray:
    """Dense ``2**n x 2**n`` matrix of a Pauli string."""
    check_dense(p.n_qubits)
    dim = 1 << p.n_qubits
    cols = np.arange(dim)
    rows = cols ^ p.x_mask
    parity = np.zeros(dim, dtype=np.int64)
    z = p.z_mask
    bit = 0
    while z:
        if z & 1:
            parity ^= (cols >> bit) & 1
        z >>= 1
        bit += 1
    phase = PHASES[(p.phase_exp + _popcount(p.x_mask & p.z_mask)) % 4]
    out = np.zeros((dim, dim), dtype=complex)
    out[rows, cols] = phase * (1 - 2 * parity)
    return out


def tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product of two square matrices."""
    a = np.asarray(a)
    b = np.asarray(b)
    for m in (a, b):
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionError(f"expected square matrix, got shape {m.shape}")
    dim = a.shape[0] * b.shape[0]
    check_dense(max(dim - 1, 1).bit_length())
    return np.kron(a, b)


@dataclass(frozen=True)
class GeneratorSet:
    n_qubits: int
    members: tuple[PauliString, ...]
    label: str

    def __iter__(self) -> Iterator[PauliString]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def matrices(self) -> list[np.ndarray]:
        return [to_matrix(m) for m in self.members]


def clifford_e(n: int) -> list[PauliString]:
    """``e_{2k} = Z..Z X I..I`` and ``e_{2k+1} = Z..Z Y I..I`` for k < n."""
    out = []
    for k in range(n):
        tail = "I" * (n - k - 1)
        out.append(PauliString.from_label("Z" * k + "X" + tail))
        out.append(PauliString.from_label("Z" * k + "Y" + tail))
    return out


def g2_generator(n: int) -> PauliString:
    """Extra generator ``e_0 e_1 e_2`` that makes the Clifford family universal.

    The bare product is ``i * X^(2)``; the Hermitian ``X^(2)`` is returned.
    """
    if n < 2:
        raise ValueError(f"g_2 needs at least 2 qubits, got {n}")
    e = clifford_e(n)
    product = pauli_mul(e[0], pauli_mul(e[1], e[2]))
    rep = hermitian_representative(product)
    if rep != product:
        log.debug("g_2 product %s stored as Hermitian %s", product.label, rep.label)
    return rep


def _nearest_neighbour(n: int, op: str) -> list[PauliString]:
    return [
        PauliString.from_label("I" * k + op + op + "I" * (n - k - 2))
        for k in range(n - 1)
    ]


def make_generators(n: int, label: str) -> GeneratorSet:
    """Build one of the named Hermitian generator families on ``n`` qubits.

    ``clifford_e``
        the 2n anticommuting Clifford generators.
    ``d_set``
        ``X^(1)``, ``Z^(k)`` for all k and ``X^(k) X^(k+1)``; the one- and
        two-qubit form of the Clifford family (2n members).
    ``enew``
        the exchanged universal set ``Z^(1)``, ``Z^(2)``, ``X^(k)`` and
        ``Z^(k) Z^(k+1)`` (2n + 1 members). For n = 1 it reduces to
        ``Z^(1), X^(1)``.
    ``enew_symmetric``
        ``enew`` without the two ``Z`` gates (2n - 1 members).
    """
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    single = PauliString.single
    if label == "clifford_e":
        members = clifford_e(n)
    elif label == "d_set":
        members = [single(n, 1, "X")]
        members += [single(n, k, "Z") for k in range(1, n + 1)]
        members += _nearest_neighbour(n, "X")
    elif label == "enew":
        members = [single(n, 1, "Z")]
        if n >= 2:
            members.append(single(n, 2, "Z"))
        members += [single(n, k, "X") for k in range(1, n + 1)]
        members += _nearest_neighbour(n, "Z")
    elif label == "enew_symmetric":
        members = [single(n, k, "X") for k in range(1, n + 1)]
        members += _nearest_neighbour(n, "Z")
    else:
        raise ValueError(f"unknown family {label!r}; expected one of {FAMILIES}")
    return GeneratorSet(n, tuple(members), label)


def pauli_sum_matrix(terms: Sequence[tuple[float, PauliString]]) -> np.ndarray:
    """Dense matrix of ``sum_k c_k P_k``."""
    if not terms:
        raise ValueError("empty Pauli sum")
    out = None
    for coef, p in terms:
        m = coef * to_matrix(p)
        out = m if out is None else out + m
    return out

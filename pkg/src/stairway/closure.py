"""Lie-algebra closure of Hermitian generators and the dimension checks of
the gate families.

Hermitian matrices form a real vector space with the Hilbert-Schmidt inner
product ``Re tr(A^dag B)``; a ``d x d`` matrix is handled as the real vector
of its ``2 d**2`` real and imaginary parts so that Gram-Schmidt stays real
and every basis element stays Hermitian.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import CapacityError, DimensionError, check_dense
from .pauli import FAMILIES, make_generators

DEFAULT_RANK_TOL = 1e-9
MAX_FAMILY_QUBITS = 4


@dataclass(frozen=True)
class ClosureResult:
    dimension: int
    basis: np.ndarray  # (dimension, d, d), HS-orthonormal Hermitian matrices
    iterations: int
    rank_tolerance: float


def _as_real(mats: np.ndarray) -> np.ndarray:
    flat = mats.reshape(mats.shape[0], -1)
    return np.concatenate([flat.real, flat.imag], axis=1)


class _Basis:
    """Growing orthonormal basis with two-pass Gram-Schmidt."""

    def __init__(self, dim: int, rank_tol: float):
        self.dim = dim
        self.rank_tol = rank_tol
        self.capacity = dim * dim
        self.vectors = np.zeros((self.capacity, 2 * dim * dim))
        self.size = 0

    def residual(self, v: np.ndarray) -> np.ndarray:
        q = self.vectors[: self.size]
        for _ in range(2):
            v = v - q.T @ (q @ v)
        return v

    def screen(self, vecs: np.ndarray) -> np.ndarray:
        """Normalised candidates whose residual survives the current basis."""
        norms = np.linalg.norm(vecs, axis=1)
        vecs = vecs[norms > self.rank_tol]
        if vecs.shape[0] == 0:
            return vecs
        vecs = vecs / np.linalg.norm(vecs, axis=1)[:, None]
        q = self.vectors[: self.size]
        res = vecs
        for _ in range(2):
            res = res - (res @ q.T) @ q
        return vecs[np.linalg.norm(res, axis=1) > self.rank_tol]

    def offer(self, v: np.ndarray) -> bool:
        norm = np.linalg.norm(v)
        if norm <= self.rank_tol:
            return False
        r = self.residual(v / norm)
        rn = np.linalg.norm(r)
        if rn <= self.rank_tol:
            return False
        if self.size >= self.capacity:
            raise CapacityError("closure exceeded the dimension of the Hermitian space")
        self.vectors[self.size] = r / rn
        self.size += 1
        return True

    def matrices(self, start: int = 0, stop: int | None = None) -> np.ndarray:
        stop = self.size if stop is None else stop
        half = self.dim * self.dim
        block = self.vectors[start:stop]
        return (block[:, :half] + 1j * block[:, half:]).reshape(-1, self.dim, self.dim)


def _validate_generators(generators) -> np.ndarray:
    mats = [np.asarray(g, dtype=complex) for g in generators]
    if not mats:
        raise ValueError("need at least one generator")
    dim = mats[0].shape[0]
    for m in mats:
        if m.ndim != 2 or m.shape != (dim, dim):
            raise DimensionError(f"generators must all be {dim}x{dim}, got {m.shape}")
    n_qubits = max(dim - 1, 1).bit_length()
    check_dense(n_qubits)
    stack = np.stack(mats)
    scale = max(1.0, float(np.max(np.abs(stack))))
    if np.max(np.abs(stack - stack.conj().transpose(0, 2, 1))) > 1e-10 * scale:
        raise ValueError("generators must be Hermitian")
    if not np.any(np.abs(stack) > 0):
        raise ValueError("at least one generator must be nonzero")
    return stack


def _commutators(batch: np.ndarray, m: np.ndarray) -> np.ndarray:
    """``i [B_a, m]`` for every ``B_a`` in ``batch``."""
    return 1j * (batch @ m - m @ batch)


def lie_closure(generators: Sequence[np.ndarray], rank_tol: float = DEFAULT_RANK_TOL) -> ClosureResult:
    """Orthonormal basis of the real Lie algebra generated under ``(A, B) -> i[A, B]``.

    Each sweep commutes every element added by the previous sweep with every
    element of lower index, in index order, and keeps commutators whose
    normalised residual against the current basis exceeds ``rank_tol``.
    Iteration stops at the first sweep that adds nothing.
    """
    if rank_tol <= 0:
        raise ValueError("rank_tol must be positive")
    stack = _validate_generators(generators)
    dim = stack.shape[1]
    basis = _Basis(dim, rank_tol)
    for v in _as_real(stack):
        basis.offer(v)

    frontier = 0
    iterations = 0
    while frontier < basis.size:
        iterations += 1
        stop = basis.size
        for j in range(frontier, stop):
            mj = basis.matrices(j, j + 1)[0]
            lower = basis.matrices(0, j)
            if lower.shape[0] == 0:
                continue
            for v in basis.screen(_as_real(_commutators(lower, mj))):
                basis.offer(v)
        frontier = stop

    return ClosureResult(basis.size, basis.matrices(), iterations, rank_tol)


def closure_defect(result: ClosureResult) -> float:
    """Largest normalised residual of ``i[B_a, B_b]`` over all basis pairs.

    Below ``result.rank_tolerance`` means one more full sweep would add nothing.
    """
    mats = result.basis
    if mats.shape[0] == 0:
        return 0.0
    q = _as_real(mats)
    worst = 0.0
    for j in range(mats.shape[0]):
        vecs = _as_real(_commutators(mats, mats[j]))
        norms = np.linalg.norm(vecs, axis=1)
        keep = norms > result.rank_tolerance
        if not np.any(keep):
            continue
        vecs = vecs[keep] / norms[keep, None]
        for _ in range(2):
            vecs = vecs - (vecs @ q.T) @ q
        worst = max(worst, float(np.max(np.linalg.norm(vecs, axis=1))))
    return worst


def su_dimension(n_qubits: int) -> int:
    """Dimension of su(2**n), the ceiling for traceless generators."""
    return 4**n_qubits - 1


def is_universal(generators, n_qubits: int, rank_tol: float = DEFAULT_RANK_TOL) -> bool:
    return lie_closure(generators, rank_tol).dimension >= su_dimension(n_qubits)


def predicted_dimension(label: str, n: int) -> int:
    """Expected closure dimension of a named family.

    ``clifford_e`` and ``d_set`` generate spin(2n+1), ``enew_symmetric``
    generates spin(2n), both of dimension k(k-1)/2; ``enew`` is universal.
    """
    if label in ("clifford_e", "d_set"):
        k = 2 * n + 1
    elif label == "enew_symmetric":
        k = 2 * n
    elif label == "enew":
        return su_dimension(n)
    else:
        raise ValueError(f"unknown family {label!r}")
    return k * (k - 1) // 2


def check_family_dimensions(n: int, families=FAMILIES, rank_tol: float = DEFAULT_RANK_TOL):
    """Map each family label to ``(computed, predicted)`` closure dimensions."""
    if not 2 <= n <= MAX_FAMILY_QUBITS:
        raise CapacityError(f"family checks run for 2 <= n <= {MAX_FAMILY_QUBITS}, got {n}")
    out = {}
    for label in families:
        gens = make_generators(n, label).matrices()
        out[label] = (lie_closure(gens, rank_tol).dimension, predicted_dimension(label, n))
    return out

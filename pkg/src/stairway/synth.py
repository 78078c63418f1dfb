"""Unitaries from Hamiltonians: Pauli exponentials, the exact Clifford
commutator gate, Lie-Trotter products and their error orders.

Gates here follow the ``exp(+i H t)`` convention. Physical evolution in
:mod:`stairway.well` and :mod:`stairway.chain` uses ``exp(-i H t)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DimensionError, PreconditionError
from .pauli import PauliString, anticommutes, pauli_mul, to_matrix

DEFAULT_DELTAS = (0.2, 0.1, 0.05, 0.025, 0.0125)

HERMITIAN_TOL = 1e-10
UNITARY_TOL = 1e-8


def _square(m, name="matrix"):
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionError(f"{name} must be square, got shape {m.shape}")
    return m


def _check_hermitian(h, name="H"):
    h = _square(h, name)
    scale = max(1.0, float(np.max(np.abs(h))) if h.size else 1.0)
    if np.max(np.abs(h - h.conj().T)) > HERMITIAN_TOL * scale:
        raise ValueError(f"{name} is not Hermitian")
    return h


def _check_pair(h1, h2):
    h1 = _check_hermitian(h1, "H1")
    h2 = _check_hermitian(h2, "H2")
    if h1.shape != h2.shape:
        raise DimensionError(f"shape mismatch: {h1.shape} vs {h2.shape}")
    return h1, h2


def exp_pauli(p: PauliString, phi: float) -> np.ndarray:
    """``exp(i phi P)`` for a Hermitian Pauli string, using ``P**2 = 1``."""
    if not p.is_hermitian():
        raise ValueError(f"{p.label} is not Hermitian (phase {p.phase})")
    m = to_matrix(p)
    out = 1j * math.sin(phi) * m
    out[np.diag_indices_from(out)] += math.cos(phi)
    return out


def matrix_exp(h, t: float) -> np.ndarray:
    """``exp(i H t)`` for Hermitian ``H`` by eigendecomposition."""
    h = _check_hermitian(h)
    h = 0.5 * (h + h.conj().T)
    w, v = np.linalg.eigh(h)
    return (v * np.exp(1j * w * t)) @ v.conj().T


def commutator_generator(h1, h2) -> np.ndarray:
    """The Hermitian ``i [H1, H2]``."""
    h1, h2 = _check_pair(h1, h2)
    return 1j * (h1 @ h2 - h2 @ h1)


def commutator_pauli(hk: PauliString, hj: PauliString) -> PauliString:
    """``i Hk Hj`` as a Pauli string, i.e. ``i[Hk, Hj]/2`` for an anticommuting pair."""
    _check_clifford_pair(hk, hj)
    prod = pauli_mul(hk, hj)
    return PauliString(prod.n_qubits, prod.x_mask, prod.z_mask, prod.phase_exp + 1)


def _check_clifford_pair(hk, hj):
    for p in (hk, hj):
        if not p.is_hermitian():
            raise ValueError(f"{p.label} is not Hermitian")
    if not anticommutes(hk, hj):
        raise PreconditionError(
            f"{hk.label} and {hj.label} commute; their commutator is zero"
        )


def clifford_commutator_gate(hk: PauliString, hj: PauliString, tau: float) -> np.ndarray:
    """``exp(i pi/4 Hk) exp(i tau Hj) exp(-i pi/4 Hk)`` for anticommuting Paulis.

    Equal to ``exp(-tau Hk Hj)`` for every ``tau``: the commutator direction
    is reached with a first-order duration and no approximation error.
    """
    _check_clifford_pair(hk, hj)
    quarter = exp_pauli(hk, math.pi / 4)
    return quarter @ exp_pauli(hj, tau) @ quarter.conj().T


def trotter_sum(h1, h2, delta: float) -> np.ndarray:
    """``exp(i H1 delta) exp(i H2 delta)``, approximating ``exp(i (H1+H2) delta)``."""
    h1, h2 = _check_pair(h1, h2)
    return matrix_exp(h1, delta) @ matrix_exp(h2, delta)


def trotter_commutator(h1, h2, delta: float) -> np.ndarray:
    """Group commutator ``U1 U2 U1^-1 U2^-1`` with ``Uk = exp(i Hk delta)``."""
    h1, h2 = _check_pair(h1, h2)
    u1 = matrix_exp(h1, delta)
    u2 = matrix_exp(h2, delta)
    return u1 @ u2 @ u1.conj().T @ u2.conj().T


def _check_unitary(u, name):
    u = _square(u, name)
    err = np.max(np.abs(u.conj().T @ u - np.eye(u.shape[0])))
    if err > UNITARY_TOL:
        raise ValueError(f"{name} is not unitary (max deviation {err:.2e})")
    return u


def error_norm(u, v) -> float:
    """Phase-invariant distance ``min_|c|=1 ||U - c V||_F / sqrt(dim)``.

    For unitaries ``||U - cV||_F**2 = 2 dim - 2 Re(conj(c) tr(V^dag U))``,
    minimised by aligning ``c`` with ``tr(V^dag U)``. The norm is then taken
    directly; the closed form loses half the digits to cancellation.
    """
    u = _check_unitary(u, "U")
    v = _check_unitary(v, "V")
    if u.shape != v.shape:
        raise DimensionError(f"shape mismatch: {u.shape} vs {v.shape}")
    overlap = np.vdot(v, u)
    c = overlap / abs(overlap) if abs(overlap) > 0 else 1.0
    return float(np.linalg.norm(u - c * v) / math.sqrt(u.shape[0]))


@dataclass(frozen=True)
class SynthesisReport:
    deltas: tuple[float, ...]
    errors: tuple[float, ...]
    fitted_slope: float
    target_order: int | None = None


def fit_error_order(points: Sequence[tuple[float, float]], target_order: int | None = None) -> SynthesisReport:
    """Least-squares slope of ``log(error)`` against ``log(delta)``."""
    points = list(points)
    if len(points) < 4:
        raise ValueError(f"need at least 4 (delta, error) points, got {len(points)}")
    deltas = np.array([float(d) for d, _ in points])
    errors = np.array([float(e) for _, e in points])
    if not np.all(np.isfinite(errors)):
        raise ValueError("errors must be finite")
    if np.any(errors <= 0):
        raise ValueError("errors must be positive to take logarithms")
    if np.any(deltas <= 0):
        raise ValueError("step sizes must be positive")
    steps = np.diff(deltas)
    if not (np.all(steps > 0) or np.all(steps < 0)):
        raise ValueError("step sizes must be strictly monotone")
    slope = float(np.polyfit(np.log(deltas), np.log(errors), 1)[0])
    return SynthesisReport(tuple(deltas.tolist()), tuple(errors.tolist()), slope, target_order)


def scan_trotter_sum(h1, h2, deltas=DEFAULT_DELTAS):
    """Errors of the product formula against ``exp(i (H1+H2) delta)``."""
    h1, h2 = _check_pair(h1, h2)
    return [(d, error_norm(trotter_sum(h1, h2, d), matrix_exp(h1 + h2, d))) for d in deltas]


def scan_trotter_commutator(h1, h2, deltas=DEFAULT_DELTAS):
    """Errors of the group commutator against ``exp(i (i[H1,H2]) delta**2)``."""
    gen = commutator_generator(h1, h2)
    return [
        (d, error_norm(trotter_commutator(h1, h2, d), matrix_exp(gen, d * d)))
        for d in deltas
    ]


def scan_composite(h1, h2, taus=DEFAULT_DELTAS):
    """Build ``exp(i (i[H1,H2]) tau)`` from the group commutator with ``delta = sqrt(tau)``."""
    gen = commutator_generator(h1, h2)
    return [
        (t, error_norm(trotter_commutator(h1, h2, math.sqrt(t)), matrix_exp(gen, t)))
        for t in taus
    ]


def scan_clifford(hk: PauliString, hj: PauliString, taus=DEFAULT_DELTAS):
    """Errors of the Clifford construction of ``exp(i (i[Hk,Hj]) tau)``.

    ``i[Hk,Hj] = 2 i Hk Hj`` for an anticommuting pair, so the gate is run
    with duration ``2 tau``.
    """
    gen = commutator_generator(to_matrix(hk), to_matrix(hj))
    return [
        (t, error_norm(clifford_commutator_gate(hk, hj, 2.0 * t), matrix_exp(gen, t)))
        for t in taus
    ]

"""Two-level double-well physics in units with hbar = 1.

Evolution is physical, ``|psi(t)> = exp(-i H t) |psi>``. Basis state ``|0>``
is the particle in the first well, ``|1>`` in the second.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegeneracyError
from .pauli import SIGMA_I, SIGMA_X, SIGMA_Y, SIGMA_Z

NORM_TOL = 1e-10
DENSITY_TOL = 1e-9


@dataclass(frozen=True)
class TwoLevelHamiltonian:
    """``[[H00, H01], [conj(H01), H11]]``."""

    H00: float
    H11: float
    H01: complex = 0.0

    def __post_init__(self):
        object.__setattr__(self, "H00", float(self.H00))
        object.__setattr__(self, "H11", float(self.H11))
        object.__setattr__(self, "H01", complex(self.H01))

    @property
    def H10(self) -> complex:
        return self.H01.conjugate()

    @property
    def matrix(self) -> np.ndarray:
        return np.array([[self.H00, self.H01], [self.H10, self.H11]], dtype=complex)

    @classmethod
    def from_pauli(cls, h0=0.0, h1=0.0, h2=0.0, h3=0.0) -> TwoLevelHamiltonian:
        """Inverse of :func:`decompose`: ``h0 1 + h1 X + h2 Y + h3 Z``."""
        return cls(h0 + h3, h0 - h3, complex(h1, -h2))

    @classmethod
    def from_axis(cls, hr, hx, hy, hz, h0=0.0) -> TwoLevelHamiltonian:
        return cls.from_pauli(h0, hr * hx, hr * hy, hr * hz)


@dataclass(frozen=True)
class PauliDecomposition:
    h0: float
    h1: float
    h2: float
    h3: float
    hr: float
    hx: float
    hy: float
    hz: float

    def matrix(self) -> np.ndarray:
        return self.h0 * SIGMA_I + self.h1 * SIGMA_X + self.h2 * SIGMA_Y + self.h3 * SIGMA_Z


@dataclass(frozen=True)
class BlochVector:
    rx: float
    ry: float
    rz: float

    @property
    def length(self) -> float:
        return math.sqrt(self.rx**2 + self.ry**2 + self.rz**2)

    @property
    def p0(self) -> float:
        return (1.0 + self.rz) / 2.0

    @property
    def p1(self) -> float:
        return (1.0 - self.rz) / 2.0

    def is_pure(self, tol: float = 1e-9) -> bool:
        return abs(self.length - 1.0) <= tol

    def as_array(self) -> np.ndarray:
        return np.array([self.rx, self.ry, self.rz])


@dataclass(frozen=True)
class OscillationTrace:
    times: np.ndarray
    p0_values: np.ndarray
    params: TwoLevelHamiltonian

    @property
    def p1_values(self) -> np.ndarray:
        return 1.0 - self.p0_values


def eigen_energies(h: TwoLevelHamiltonian) -> tuple[float, float]:
    """Stationary energies ``(E+, E-)`` with ``E+ >= E-``."""
    mean = (h.H00 + h.H11) / 2.0
    split = math.sqrt(((h.H00 - h.H11) / 2.0) ** 2 + abs(h.H01) ** 2)
    return mean + split, mean - split


def _fix_phase(v: np.ndarray) -> np.ndarray:
    idx = 0 if abs(v[0]) > 1e-15 else 1
    return v * (abs(v[idx]) / v[idx])


def eigen_states(h: TwoLevelHamiltonian) -> tuple[np.ndarray, np.ndarray]:
    """Normalised eigenvectors ``(v+, v-)`` as amplitudes on ``|0>, |1>``.

    Uses ``(c0, c1) ~ (H01, E - H00)``, falling back to the equivalent
    ``(E - H11, H10)`` when the first row vanishes. The first nonzero
    component of each vector is made real and positive.
    """
    e_plus, e_minus = eigen_energies(h)
    if e_plus == e_minus:
        raise DegeneracyError("H is proportional to the identity; every state is stationary")
    out = []
    for e in (e_plus, e_minus):
        a = np.array([h.H01, e - h.H00], dtype=complex)
        b = np.array([e - h.H11, h.H10], dtype=complex)
        v = a if np.linalg.norm(a) >= np.linalg.norm(b) else b
        out.append(_fix_phase(v / np.linalg.norm(v)))
    return out[0], out[1]


def decompose(h: TwoLevelHamiltonian) -> PauliDecomposition:
    """Coefficients of ``H = h0 1 + h1 X + h2 Y + h3 Z`` and the axis form.

    With ``Y = [[0, -i], [i, 0]]`` the off-diagonal is ``H01 = h1 - i h2``,
    so ``h2 = (H10 - H01) / 2i = -Im H01``.
    """
    h0 = (h.H00 + h.H11) / 2.0
    h1 = h.H01.real
    h2 = ((h.H10 - h.H01) / 2j).real
    h3 = (h.H00 - h.H11) / 2.0
    hr = math.sqrt(h1 * h1 + h2 * h2 + h3 * h3)
    if hr > 0:
        hx, hy, hz = h1 / hr, h2 / hr, h3 / hr
    else:
        hx = hy = hz = 0.0
    return PauliDecomposition(h0, h1, h2, h3, hr, hx, hy, hz)


def propagator(h: TwoLevelHamiltonian, t: float) -> np.ndarray:
    """Closed form ``exp(-i H t) = exp(-i h0 t)(cos(hr t) 1 - i sin(hr t) n.sigma)``."""
    d = decompose(h)
    axis = d.hx * SIGMA_X + d.hy * SIGMA_Y + d.hz * SIGMA_Z
    return np.exp(-1j * d.h0 * t) * (math.cos(d.hr * t) * SIGMA_I - 1j * math.sin(d.hr * t) * axis)


def _check_state(psi) -> np.ndarray:
    psi = np.asarray(psi, dtype=complex)
    if psi.shape != (2,):
        raise ValueError(f"expected a 2-component state, got shape {psi.shape}")
    if abs(np.linalg.norm(psi) - 1.0) > NORM_TOL:
        raise ValueError(f"state must be normalised, norm is {np.linalg.norm(psi):.12g}")
    return psi


def evolve(h: TwoLevelHamiltonian, psi0, t: float) -> np.ndarray:
    return propagator(h, t) @ _check_state(psi0)


def transfer_time(h: TwoLevelHamiltonian) -> float:
    """First time of maximal transfer out of ``|0>``: ``pi / (E+ - E-)``."""
    e_plus, e_minus = eigen_energies(h)
    if e_plus == e_minus:
        raise DegeneracyError("no oscillation for H proportional to the identity")
    return math.pi / (e_plus - e_minus)


def max_transfer(h: TwoLevelHamiltonian) -> float:
    """Largest ``p1`` reachable from ``|0>``: ``hx**2 + hy**2``."""
    d = decompose(h)
    return d.hx**2 + d.hy**2


def rabi_trace(h: TwoLevelHamiltonian, psi0, t_grid) -> OscillationTrace:
    """``p0(t) = |<0|psi(t)>|**2`` on an increasing time grid."""
    psi0 = _check_state(psi0)
    t = np.asarray(t_grid, dtype=float)
    if t.ndim != 1 or t.size == 0:
        raise ValueError("time grid must be a non-empty 1-D sequence")
    if np.any(np.diff(t) <= 0):
        raise ValueError("time grid must be strictly increasing")
    d = decompose(h)
    c = np.cos(d.hr * t)
    s = np.sin(d.hr * t)
    # <0| exp(-iHt) |psi0> without the global phase exp(-i h0 t)
    row0 = np.stack([c - 1j * s * d.hz, -1j * s * (d.hx - 1j * d.hy)], axis=1)
    amp0 = row0 @ psi0
    p0 = np.clip(np.abs(amp0) ** 2, 0.0, 1.0)
    return OscillationTrace(t, p0, h)


def bloch_from_density(rho) -> BlochVector:
    """``r_nu = tr(rho sigma_nu)`` for a valid single-qubit density matrix."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (2, 2):
        raise ValueError(f"expected a 2x2 density matrix, got shape {rho.shape}")
    if np.max(np.abs(rho - rho.conj().T)) > DENSITY_TOL:
        raise ValueError("density matrix must be Hermitian")
    if abs(np.trace(rho) - 1.0) > DENSITY_TOL:
        raise ValueError("density matrix must have unit trace")
    if np.linalg.eigvalsh(rho)[0] < -DENSITY_TOL:
        raise ValueError("density matrix must be positive semidefinite")
    return BlochVector(
        float(np.trace(rho @ SIGMA_X).real),
        float(np.trace(rho @ SIGMA_Y).real),
        float(np.trace(rho @ SIGMA_Z).real),
    )


def bloch_from_state(psi) -> BlochVector:
    psi = _check_state(psi)
    return bloch_from_density(np.outer(psi, psi.conj()))

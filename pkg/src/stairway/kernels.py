"""Backend selection for the state-vector kernels.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
numpy versions in ``_pykernels`` are used. ``STAIRWAY_KERNELS=python``
forces the fallback.
"""

import os

import numpy as np

from . import _pykernels

BACKENDS = {"python": _pykernels}

try:
    from . import _ckernels
except ImportError:
    _ckernels = None
else:
    BACKENDS["cython"] = _ckernels

if os.environ.get("STAIRWAY_KERNELS", "").lower() == "python" or _ckernels is None:
    BACKEND = "python"
else:
    BACKEND = "cython"

_active = BACKENDS[BACKEND]


def get_backend(name=None):
    """Kernel module by name; the import-time choice when ``name`` is None."""
    if name is None:
        return _active
    try:
        return BACKENDS[name]
    except KeyError:
        raise ValueError(f"kernel backend {name!r} not available; have {sorted(BACKENDS)}") from None


def _check(psi, n_qubits, qubit, width):
    if not (isinstance(psi, np.ndarray) and psi.dtype == np.complex128 and psi.flags.c_contiguous):
        raise TypeError("state must be a C-contiguous complex128 array")
    if psi.ndim != 1 or psi.shape[0] != 1 << n_qubits:
        raise ValueError(f"state of length {psi.shape} does not hold {n_qubits} qubits")
    if not 1 <= qubit <= n_qubits - width + 1:
        raise ValueError(f"qubit {qubit} out of range for a {width}-qubit update on {n_qubits} qubits")


def apply_1q(psi, n_qubits, qubit, u, backend=None):
    """``u`` (2x2) on ``qubit``, in place."""
    _check(psi, n_qubits, qubit, 1)
    u = np.ascontiguousarray(u, dtype=np.complex128)
    get_backend(backend).apply_1q(psi, n_qubits, qubit, u)


def apply_2q(psi, n_qubits, qubit, u, backend=None):
    """``u`` (4x4) on adjacent qubits ``qubit, qubit + 1``, in place."""
    _check(psi, n_qubits, qubit, 2)
    u = np.ascontiguousarray(u, dtype=np.complex128)
    get_backend(backend).apply_2q(psi, n_qubits, qubit, u)


def apply_diag_2q(psi, n_qubits, qubit, d, backend=None):
    """Diagonal ``d`` (length 4) on adjacent qubits ``qubit, qubit + 1``, in place."""
    _check(psi, n_qubits, qubit, 2)
    d = np.ascontiguousarray(d, dtype=np.complex128)
    get_backend(backend).apply_diag_2q(psi, n_qubits, qubit, d)

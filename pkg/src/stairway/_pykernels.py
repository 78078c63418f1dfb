"""Pure-numpy in-place state-vector updates.

Reference implementation of the compiled kernels in ``_ckernels.pyx``.
Qubit ``k`` (1-based) is bit ``n - k`` of a basis index, so a state of ``n``
qubits reshapes to ``(2**(k-1), 2, 2**(n-k))`` around qubit ``k``.
"""

import numpy as np


def apply_1q(psi, n_qubits, qubit, u):
    view = psi.reshape(1 << (qubit - 1), 2, -1)
    view[...] = np.einsum("ij,ajb->aib", u, view)


def apply_2q(psi, n_qubits, qubit, u):
    view = psi.reshape(1 << (qubit - 1), 4, -1)
    view[...] = np.einsum("ij,ajb->aib", u, view)


def apply_diag_2q(psi, n_qubits, qubit, d):
    view = psi.reshape(1 << (qubit - 1), 4, -1)
    view *= d[None, :, None]

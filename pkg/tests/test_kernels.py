import os
import subprocess
import sys

import numpy as np
import pytest

from stairway import kernels


def random_vec(rng, n):
    psi = rng.normal(size=1 << n) + 1j * rng.normal(size=1 << n)
    return psi / np.linalg.norm(psi)


def random_unitary(rng, d):
    q, r = np.linalg.qr(rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d)))
    return q * (np.diagonal(r) / abs(np.diagonal(r)))


def embed(op, n, qubit, width):
    return np.kron(np.kron(np.eye(1 << (qubit - 1)), op), np.eye(1 << (n - qubit - width + 1)))


def test_python_backend_always_present():
    assert "python" in kernels.BACKENDS
    assert kernels.BACKEND in kernels.BACKENDS


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_1q_against_kron(rng, backend, n):
    for qubit in range(1, n + 1):
        psi = random_vec(rng, n)
        u = random_unitary(rng, 2)
        expected = embed(u, n, qubit, 1) @ psi
        kernels.apply_1q(psi, n, qubit, u, backend)
        assert np.max(np.abs(psi - expected)) < 1e-14


@pytest.mark.parametrize("n", [2, 3, 4])
def test_2q_against_kron(rng, backend, n):
    for qubit in range(1, n):
        psi = random_vec(rng, n)
        u = random_unitary(rng, 4)
        expected = embed(u, n, qubit, 2) @ psi
        kernels.apply_2q(psi, n, qubit, u, backend)
        assert np.max(np.abs(psi - expected)) < 1e-14

        psi = random_vec(rng, n)
        d = np.exp(1j * rng.uniform(0, 6, 4))
        expected = embed(np.diag(d), n, qubit, 2) @ psi
        kernels.apply_diag_2q(psi, n, qubit, d, backend)
        assert np.max(np.abs(psi - expected)) < 1e-14


@pytest.mark.skipif("cython" not in kernels.BACKENDS, reason="compiled kernels not built")
def test_backends_agree(rng):
    for _ in range(40):
        n = int(rng.integers(2, 13))
        psi = random_vec(rng, n)
        a, b = psi.copy(), psi.copy()
        kind = rng.integers(3)
        if kind == 0:
            q, u = int(rng.integers(1, n + 1)), random_unitary(rng, 2)
            kernels.apply_1q(a, n, q, u, "python")
            kernels.apply_1q(b, n, q, u, "cython")
        elif kind == 1:
            q, u = int(rng.integers(1, n)), random_unitary(rng, 4)
            kernels.apply_2q(a, n, q, u, "python")
            kernels.apply_2q(b, n, q, u, "cython")
        else:
            q, d = int(rng.integers(1, n)), np.exp(1j * rng.uniform(0, 6, 4))
            kernels.apply_diag_2q(a, n, q, d, "python")
            kernels.apply_diag_2q(b, n, q, d, "cython")
        assert np.max(np.abs(a - b)) < 1e-14


def test_argument_checks(backend):
    psi = np.zeros(8, dtype=complex)
    with pytest.raises(ValueError):
        kernels.apply_1q(psi, 3, 4, np.eye(2), backend)
    with pytest.raises(ValueError):
        kernels.apply_2q(psi, 3, 3, np.eye(4), backend)
    with pytest.raises(ValueError):
        kernels.apply_1q(psi, 2, 1, np.eye(2), backend)
    with pytest.raises(TypeError):
        kernels.apply_1q(np.zeros(8), 3, 1, np.eye(2), backend)
    with pytest.raises(TypeError):
        kernels.apply_1q(np.zeros(16, dtype=complex)[::2], 3, 1, np.eye(2), backend)
    with pytest.raises(ValueError):
        kernels.get_backend("fortran")


def test_environment_forces_fallback():
    env = dict(os.environ, STAIRWAY_KERNELS="python")
    out = subprocess.run(
        [sys.executable, "-c", "from stairway import kernels; print(kernels.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"

# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled in-place state-vector updates.

Same contract as :mod:`stairway._pykernels`; argument checking is done by
:mod:`stairway.kernels` before either backend is called. Arithmetic is done
on the interleaved (re, im) float64 view: C99 complex multiplication goes
through a NaN-safe library call that is several times slower.
"""

import numpy as np


cdef inline void _mat2(double* p0, double* p1, double[8] m) noexcept nogil:
    cdef double ar = p0[0], ai = p0[1], br = p1[0], bi = p1[1]
    p0[0] = m[0] * ar - m[1] * ai + m[2] * br - m[3] * bi
    p0[1] = m[0] * ai + m[1] * ar + m[2] * bi + m[3] * br
    p1[0] = m[4] * ar - m[5] * ai + m[6] * br - m[7] * bi
    p1[1] = m[4] * ai + m[5] * ar + m[6] * bi + m[7] * br


cdef inline void _scale(double* p, double dr, double di) noexcept nogil:
    cdef double ar = p[0], ai = p[1]
    p[0] = dr * ar - di * ai
    p[1] = dr * ai + di * ar


def _floats(psi):
    return np.asarray(psi).view(np.float64)


def apply_1q(psi, int n_qubits, int qubit, u):
    cdef double[::1] v = _floats(psi)
    cdef double[::1] uf = _floats(np.ascontiguousarray(u).reshape(-1))
    cdef Py_ssize_t dim = v.shape[0] // 2
    cdef Py_ssize_t stride = (<Py_ssize_t>1) << (n_qubits - qubit)
    cdef Py_ssize_t base, i
    cdef double m[8]
    cdef double* p = &v[0]
    for i in range(8):
        m[i] = uf[i]
    with nogil:
        base = 0
        while base < dim:
            for i in range(base, base + stride):
                _mat2(p + 2 * i, p + 2 * (i + stride), m)
            base += 2 * stride


def apply_2q(psi, int n_qubits, int qubit, u):
    cdef double[::1] v = _floats(psi)
    cdef double[::1] uf = _floats(np.ascontiguousarray(u).reshape(-1))
    cdef Py_ssize_t dim = v.shape[0] // 2
    cdef Py_ssize_t s = (<Py_ssize_t>1) << (n_qubits - qubit - 1)
    cdef double m[32]
    cdef double ar[4]
    cdef double ai[4]
    cdef double re, im
    cdef Py_ssize_t base, i, r, c, k
    cdef double* p = &v[0]
    for k in range(32):
        m[k] = uf[k]
    with nogil:
        base = 0
        while base < dim:
            for i in range(base, base + s):
                for r in range(4):
                    k = 2 * (i + r * s)
                    ar[r] = p[k]
                    ai[r] = p[k + 1]
                for r in range(4):
                    re = 0.0
                    im = 0.0
                    for c in range(4):
                        k = 8 * r + 2 * c
                        re = re + m[k] * ar[c] - m[k + 1] * ai[c]
                        im = im + m[k] * ai[c] + m[k + 1] * ar[c]
                    k = 2 * (i + r * s)
                    p[k] = re
                    p[k + 1] = im
            base += 4 * s


def apply_diag_2q(psi, int n_qubits, int qubit, d):
    cdef double[::1] v = _floats(psi)
    cdef double[::1] df = _floats(np.ascontiguousarray(d))
    cdef Py_ssize_t dim = v.shape[0] // 2
    cdef Py_ssize_t s = (<Py_ssize_t>1) << (n_qubits - qubit - 1)
    cdef Py_ssize_t base, i
    cdef int r
    cdef double* p = &v[0]
    cdef double dd[8]
    for r in range(8):
        dd[r] = df[r]
    with nogil:
        base = 0
        while base < dim:
            for r in range(4):
                for i in range(base + r * s, base + (r + 1) * s):
                    _scale(p + 2 * i, dd[2 * r], dd[2 * r + 1])
            base += 4 * s

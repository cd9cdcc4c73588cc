# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops; see ``_kernels_py`` for the reference semantics."""
import numpy as np

cimport numpy as cnp
from libc.math cimport sqrt

cnp.import_array()

ctypedef double complex cplx


cdef inline double cabs(cplx z) noexcept nogil:
    return sqrt(z.real * z.real + z.imag * z.imag)


def character_residual(rows, add):
    cdef const cplx[:, ::1] R = np.ascontiguousarray(rows, dtype=complex)
    cdef const Py_ssize_t[:, ::1] A = np.ascontiguousarray(add, dtype=np.intp)
    cdef Py_ssize_t p, x, y, n = R.shape[1]
    cdef double worst = 0.0, d
    with nogil:
        for p in range(R.shape[0]):
            for x in range(n):
                for y in range(n):
                    d = cabs(R[p, x] * R[p, y] - R[p, A[x, y]])
                    if d > worst:
                        worst = d
    return worst


def dalembert_residual(rows, add, sub):
    cdef const cplx[:, ::1] R = np.ascontiguousarray(rows, dtype=complex)
    cdef const Py_ssize_t[:, ::1] A = np.ascontiguousarray(add, dtype=np.intp)
    cdef const Py_ssize_t[:, ::1] S = np.ascontiguousarray(sub, dtype=np.intp)
    cdef Py_ssize_t p, x, y, n = R.shape[1]
    cdef double worst = 0.0, d
    with nogil:
        for p in range(R.shape[0]):
            for x in range(n):
                for y in range(n):
                    d = cabs(R[p, x] * R[p, y] - 0.5 * (R[p, A[x, y]] + R[p, S[x, y]]))
                    if d > worst:
                        worst = d
    return worst


def group_convolve(f, g, sub):
    cdef const cplx[::1] F = np.ascontiguousarray(f, dtype=complex)
    cdef const cplx[::1] G = np.ascontiguousarray(g, dtype=complex)
    cdef const Py_ssize_t[:, ::1] S = np.ascontiguousarray(sub, dtype=np.intp)
    cdef Py_ssize_t x, u, n = F.shape[0]
    out = np.zeros(n, dtype=complex)
    cdef cplx[::1] O = out
    cdef cplx acc
    with nogil:
        for x in range(n):
            acc = 0
            for u in range(n):
                acc = acc + F[u] * G[S[x, u]]
            O[x] = acc
    return out


def cosine_convolve(f, g, add, sub):
    cdef const cplx[::1] F = np.ascontiguousarray(f, dtype=complex)
    cdef const cplx[::1] G = np.ascontiguousarray(g, dtype=complex)
    cdef const Py_ssize_t[:, ::1] A = np.ascontiguousarray(add, dtype=np.intp)
    cdef const Py_ssize_t[:, ::1] S = np.ascontiguousarray(sub, dtype=np.intp)
    cdef Py_ssize_t x, u, n = F.shape[0]
    out = np.zeros(n, dtype=complex)
    cdef cplx[::1] O = out
    cdef cplx acc
    with nogil:
        for x in range(n):
            acc = 0
            for u in range(n):
                acc = acc + F[u] * (G[A[x, u]] + G[S[x, u]])
            O[x] = 0.5 * acc
    return out


def causal_trapezoid(f, g, double h):
    fc = np.ascontiguousarray(f, dtype=complex)
    gc = np.ascontiguousarray(g, dtype=complex)
    cdef const double[::1] fr = np.ascontiguousarray(fc.real)
    cdef const double[::1] fi = np.ascontiguousarray(fc.imag)
    cdef const double[::1] gr = np.ascontiguousarray(gc.real)
    cdef const double[::1] gi = np.ascontiguousarray(gc.imag)
    cdef Py_ssize_t i, j, n = fr.shape[0]
    out = np.zeros(n, dtype=complex)
    cdef cplx[::1] O = out
    cdef double ar, ai
    with nogil:
        for i in range(1, n):
            ar = 0.5 * (fr[0] * gr[i] - fi[0] * gi[i] + fr[i] * gr[0] - fi[i] * gi[0])
            ai = 0.5 * (fr[0] * gi[i] + fi[0] * gr[i] + fr[i] * gi[0] + fi[i] * gr[0])
            for j in range(1, i):
                ar = ar + fr[j] * gr[i - j] - fi[j] * gi[i - j]
                ai = ai + fr[j] * gi[i - j] + fi[j] * gr[i - j]
            O[i] = h * ar + 1j * (h * ai)
    return out


def exponential_equation_residual(row):
    cdef const cplx[::1] R = np.ascontiguousarray(row, dtype=complex)
    cdef Py_ssize_t i, j, n = R.shape[0]
    cdef double worst = 0.0, d
    with nogil:
        for i in range(n):
            for j in range(n - i):
                d = cabs(R[i + j] - R[i] * R[j])
                if d > worst:
                    worst = d
    return worst

# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled versions of the hot loops in ``_kernels_py``.

Loops over beta columns are independent and run under ``prange``; each
column accumulates in a fixed order so results do not depend on the thread
count.
"""

import numpy as np
cimport numpy as cnp
from cython.parallel cimport prange
from libc.math cimport exp, floor, cos, sin

cnp.import_array()

ctypedef double complex cplx


cdef inline Py_ssize_t _stencil(double x, double lo, double h, Py_ssize_t n,
                                int order, double* w) noexcept nogil:
    """Fill ``w[0..order]`` and return the stencil start, or -1 outside."""
    cdef double t = (x - lo) / h
    cdef Py_ssize_t start, k, m
    cdef double tau, acc
    if t < -1e-9 or t > n - 1 + 1e-9:
        return -1
    start = <Py_ssize_t>floor(t + 0.5) - order // 2
    if start < 0:
        start = 0
    if start > n - 1 - order:
        start = n - 1 - order
    tau = t - start
    for k in range(order + 1):
        acc = 1.0
        for m in range(order + 1):
            if m != k:
                acc = acc * (tau - m) / (k - m)
        w[k] = acc
    return start


def dilate_rows(values, rows, factors, double lo, double h, int order):
    cdef const cplx[:, ::1] vals = np.ascontiguousarray(values, dtype=np.complex128)
    cdef Py_ssize_t nv = vals.shape[0], nb = vals.shape[1]
    out_arr = np.zeros((nv, nb), dtype=np.complex128)
    cdef cplx[:, ::1] out = out_arr
    cdef const cnp.int64_t[::1] rr = np.ascontiguousarray(rows, dtype=np.int64)
    cdef const double[::1] fac = np.ascontiguousarray(factors, dtype=np.float64)
    cdef Py_ssize_t nr = rr.shape[0], r, i, j, s, st
    cdef double w[9]
    cdef cplx acc
    with nogil:
        for r in range(nr):
            i = rr[r]
            for j in range(nb):
                st = _stencil(fac[r] * (lo + j * h), lo, h, nb, order, w)
                if st < 0:
                    continue
                acc = 0
                for s in range(order + 1):
                    acc = acc + vals[i, st + s] * w[s]
                out[i, j] = acc
    return out_arr


def twisted_conv(a, b, a_rows, b_rows, v, double scale, double lo, double h, int order):
    cdef const cplx[:, ::1] A = np.ascontiguousarray(a, dtype=np.complex128)
    cdef const cplx[:, ::1] B = np.ascontiguousarray(b, dtype=np.complex128)
    cdef const double[::1] vv = np.ascontiguousarray(v, dtype=np.float64)
    cdef const cnp.int64_t[::1] ar = np.ascontiguousarray(a_rows, dtype=np.int64)
    br_arr = np.asarray(b_rows, dtype=np.int64)
    cdef Py_ssize_t nv = A.shape[0], nb = A.shape[1], c0 = (nv - 1) // 2
    out_arr = np.zeros((nv, nb), dtype=np.complex128)
    if br_arr.size == 0 or len(ar) == 0:
        return out_arr
    cdef cplx[:, ::1] out = out_arr
    cdef Py_ssize_t m_lo = br_arr.min(), m_hi = br_arr.max()
    cdef Py_ssize_t j
    cdef int nthreads = _threads()
    for j in prange(nb, nogil=True, schedule="static", num_threads=nthreads):
        _conv_column(A, B, out, ar, vv, scale, lo, h, order, j, nv, nb, c0, m_lo, m_hi)
    return out_arr


cdef void _conv_column(const cplx[:, ::1] A, const cplx[:, ::1] B, cplx[:, ::1] out,
                       const cnp.int64_t[::1] ar, const double[::1] vv, double scale,
                       double lo, double h, int order, Py_ssize_t j,
                       Py_ssize_t nv, Py_ssize_t nb, Py_ssize_t c0,
                       Py_ssize_t m_lo, Py_ssize_t m_hi) noexcept nogil:
    cdef double wts[9]
    cdef Py_ssize_t r, i, m, k, s, st
    cdef cplx aval, gval
    cdef double beta = lo + j * h
    for r in range(ar.shape[0]):
        i = ar[r]
        aval = A[i, j]
        if aval == 0:
            continue
        st = _stencil(exp(-scale * vv[i]) * beta, lo, h, nb, order, wts)
        if st < 0:
            continue
        for m in range(m_lo, m_hi + 1):
            k = i + m - c0
            if k < 0 or k >= nv:
                continue
            gval = 0
            for s in range(order + 1):
                gval = gval + B[m, st + s] * wts[s]
            out[k, j] = out[k, j] + aval * gval


def twisted_phase_sum(F, G, a, b, Py_ssize_t ca, Py_ssize_t cb):
    cdef const cplx[:, ::1] FF = np.ascontiguousarray(F, dtype=np.complex128)
    cdef const cplx[:, ::1] GG = np.ascontiguousarray(G, dtype=np.complex128)
    cdef const double[::1] av = np.ascontiguousarray(a, dtype=np.float64)
    cdef const double[::1] bv = np.ascontiguousarray(b, dtype=np.float64)
    cdef Py_ssize_t na = FF.shape[0], nb = FF.shape[1]
    out_arr = np.zeros((na, nb), dtype=np.complex128)
    cdef cplx[:, ::1] out = out_arr
    cdef Py_ssize_t p
    cdef int nthreads = _threads()
    for p in prange(na, nogil=True, schedule="static", num_threads=nthreads):
        _phase_row(FF, GG, out, av, bv, ca, cb, p, na, nb)
    return out_arr


cdef void _phase_row(const cplx[:, ::1] FF, const cplx[:, ::1] GG, cplx[:, ::1] out,
                     const double[::1] av, const double[::1] bv, Py_ssize_t ca, Py_ssize_t cb,
                     Py_ssize_t p, Py_ssize_t na, Py_ssize_t nb) noexcept nogil:
    cdef Py_ssize_t q, r, s, gp, gq
    cdef double ph
    cdef cplx acc, f
    for q in range(nb):
        acc = 0
        for r in range(na):
            gp = p - r + ca
            if gp < 0 or gp >= na:
                continue
            for s in range(nb):
                f = FF[r, s]
                if f == 0:
                    continue
                gq = q - s + cb
                if gq < 0 or gq >= nb:
                    continue
                ph = 0.5 * (av[p] * bv[s] - av[r] * bv[q])
                acc = acc + f * GG[gp, gq] * (cos(ph) + 1j * sin(ph))
        out[p, q] = acc


def _threads():
    import os
    try:
        n = int(os.environ.get("KAPPA_STAR_THREADS", "1"))
    except ValueError:
        n = 1
    return max(1, n)

# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops for depth and distance computations.

Same contracts and the same accumulation order as ``_fallback.py``.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport sqrt, fabs

cnp.import_array()

BACKEND = "cython"


def _column_order(x):
    # argsort of each column, stored row-major as T x n; tie order is irrelevant
    return np.ascontiguousarray(np.asarray(x).T).argsort(axis=1)


cdef void _le_counts(const double[:, ::1] x, const Py_ssize_t[:, ::1] order,
                     Py_ssize_t[:, ::1] counts) noexcept nogil:
    # counts[i, j] = #{k : x[k, j] <= x[i, j]}: walk each sorted column from
    # the top, tracking the last position of the current run of equal values
    cdef Py_ssize_t n = x.shape[0], T = x.shape[1]
    cdef Py_ssize_t j, p, last, cur, nxt
    for j in range(T):
        last = n
        nxt = -1
        p = n - 1
        while p >= 0:
            cur = order[j, p]
            if nxt >= 0 and x[cur, j] != x[nxt, j]:
                last = p + 1
            counts[cur, j] = last
            nxt = cur
            p -= 1


def le_counts(X):
    cdef const double[:, ::1] x = np.ascontiguousarray(X, dtype=np.float64)
    cdef Py_ssize_t n = x.shape[0], T = x.shape[1]
    cdef const Py_ssize_t[:, ::1] order = _column_order(x)
    counts_arr = np.empty((n, T), dtype=np.intp)
    cdef Py_ssize_t[:, ::1] counts = counts_arr
    with nogil:
        _le_counts(x, order, counts)
    return counts_arr


def fm_depth_scores(X, w):
    cdef const double[:, ::1] x = np.ascontiguousarray(X, dtype=np.float64)
    cdef const double[::1] wt = np.ascontiguousarray(w, dtype=np.float64)
    cdef Py_ssize_t n = x.shape[0], T = x.shape[1]
    cdef const Py_ssize_t[:, ::1] order = _column_order(x)
    cdef Py_ssize_t[:, ::1] counts = np.empty((n, T), dtype=np.intp)
    out_arr = np.zeros(n)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, j, c
    with nogil:
        _le_counts(x, order, counts)
        for i in range(n):
            for j in range(T):
                # 2n * (1 - |1/2 - c/n|) is the integer 2n - |n - 2c|
                c = n - 2 * counts[i, j]
                if c < 0:
                    c = -c
                out[i] = out[i] + wt[j] * <double>(2 * n - c)
            out[i] = out[i] / (2.0 * n)
    return out_arr


def pairwise_l2(X, w):
    cdef const double[:, ::1] x = np.ascontiguousarray(X, dtype=np.float64)
    cdef const double[::1] wt = np.ascontiguousarray(w, dtype=np.float64)
    cdef Py_ssize_t n = x.shape[0], T = x.shape[1]
    out_arr = np.zeros((n, n))
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, k, j
    cdef double acc, d
    with nogil:
        for i in range(n):
            for k in range(i + 1, n):
                acc = 0.0
                for j in range(T):
                    d = x[i, j] - x[k, j]
                    acc = acc + wt[j] * (d * d)
                acc = sqrt(acc)
                out[i, k] = acc
                out[k, i] = acc
    return out_arr


def pairwise_linf(X):
    cdef const double[:, ::1] x = np.ascontiguousarray(X, dtype=np.float64)
    cdef Py_ssize_t n = x.shape[0], T = x.shape[1]
    out_arr = np.zeros((n, n))
    cdef double[:, ::1] out = out_arr
    cdef Py_ssize_t i, k, j
    cdef double acc, d
    with nogil:
        for i in range(n):
            for k in range(i + 1, n):
                acc = 0.0
                for j in range(T):
                    d = fabs(x[i, j] - x[k, j])
                    if d > acc:
                        acc = d
                out[i, k] = acc
                out[k, i] = acc
    return out_arr


def l2_to_reference(Y, ref, w):
    cdef const double[:, ::1] y = np.ascontiguousarray(Y, dtype=np.float64)
    cdef const double[::1] r = np.ascontiguousarray(ref, dtype=np.float64)
    cdef const double[::1] wt = np.ascontiguousarray(w, dtype=np.float64)
    cdef Py_ssize_t m = y.shape[0], T = y.shape[1]
    out_arr = np.empty(m)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, j
    cdef double acc, d
    with nogil:
        for i in range(m):
            acc = 0.0
            for j in range(T):
                d = y[i, j] - r[j]
                acc = acc + wt[j] * (d * d)
            out[i] = sqrt(acc)
    return out_arr


def linf_to_reference(Y, ref):
    cdef const double[:, ::1] y = np.ascontiguousarray(Y, dtype=np.float64)
    cdef const double[::1] r = np.ascontiguousarray(ref, dtype=np.float64)
    cdef Py_ssize_t m = y.shape[0], T = y.shape[1]
    out_arr = np.empty(m)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, j
    cdef double acc, d
    with nogil:
        for i in range(m):
            acc = 0.0
            for j in range(T):
                d = fabs(y[i, j] - r[j])
                if d > acc:
                    acc = d
            out[i] = acc
    return out_arr

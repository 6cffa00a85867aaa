# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops. Mirrors emlab._kernels_py exactly."""

import numpy as np
cimport numpy as cnp
from libc.math cimport fabs

cnp.import_array()


cdef Py_ssize_t _find(Py_ssize_t[::1] parent, Py_ssize_t x) noexcept nogil:
    cdef Py_ssize_t root = x, nxt
    while parent[root] != root:
        root = parent[root]
    while parent[x] != root:
        nxt = parent[x]
        parent[x] = root
        x = nxt
    return root


def component_labels(Py_ssize_t n, src, dst):
    cdef const cnp.int64_t[::1] s = np.ascontiguousarray(src, dtype=np.int64)
    cdef const cnp.int64_t[::1] d = np.ascontiguousarray(dst, dtype=np.int64)
    if s.shape[0] != d.shape[0]:
        raise ValueError("src and dst differ in length")
    parent_arr = np.arange(n, dtype=np.intp)
    cdef Py_ssize_t[::1] parent = parent_arr
    labels_arr = np.full(n, -1, dtype=np.int64)
    cdef cnp.int64_t[::1] labels = labels_arr
    cdef Py_ssize_t i, a, b, ra, rb, k = 0
    with nogil:
        for i in range(s.shape[0]):
            a = s[i]
            b = d[i]
            if a < 0 or a >= n or b < 0 or b >= n:
                with gil:
                    raise IndexError("vertex out of range")
            ra = _find(parent, a)
            rb = _find(parent, b)
            if ra != rb:
                if ra < rb:
                    parent[rb] = ra
                else:
                    parent[ra] = rb
        for i in range(n):
            ra = _find(parent, i)
            if labels[ra] < 0:
                labels[ra] = k
                k += 1
            labels[i] = labels[ra]
    return labels_arr


def cheb_t(int m, x):
    cdef const double[::1] xv = np.ascontiguousarray(x, dtype=np.float64).ravel()
    out_arr = np.empty(xv.shape[0], dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    cdef int k
    cdef double t0, t1, t2, xx
    with nogil:
        for i in range(xv.shape[0]):
            xx = xv[i]
            if m == 0:
                out[i] = 1.0
                continue
            t0 = 1.0
            t1 = xx
            for k in range(1, m):
                t2 = 2.0 * xx * t1 - t0
                t0 = t1
                t1 = t2
            out[i] = t1
    return out_arr.reshape(np.shape(x))


def cheb_u(int m, x):
    cdef const double[::1] xv = np.ascontiguousarray(x, dtype=np.float64).ravel()
    out_arr = np.empty(xv.shape[0], dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i
    cdef int k
    cdef double u0, u1, u2, xx
    with nogil:
        for i in range(xv.shape[0]):
            xx = xv[i]
            if m < 0:
                out[i] = 0.0
                continue
            if m == 0:
                out[i] = 1.0
                continue
            u0 = 1.0
            u1 = 2.0 * xx
            for k in range(1, m):
                u2 = 2.0 * xx * u1 - u0
                u0 = u1
                u1 = u2
            out[i] = u1
    return out_arr.reshape(np.shape(x))


def pair_stubs(Py_ssize_t n, stubs):
    """Pair consecutive stubs; return (ok, u, v) with u < v sorted."""
    cdef const cnp.int64_t[::1] st = np.ascontiguousarray(stubs, dtype=np.int64)
    cdef Py_ssize_t m = st.shape[0] // 2, i
    keys_arr = np.empty(m, dtype=np.int64)
    cdef cnp.int64_t[::1] keys = keys_arr
    cdef cnp.int64_t a, b
    empty = np.empty(0, dtype=np.int64)
    if st.shape[0] % 2:
        raise ValueError("odd number of stubs")
    for i in range(m):
        a = st[2 * i]
        b = st[2 * i + 1]
        if a == b:
            return False, empty, empty
        if a > b:
            a, b = b, a
        keys[i] = a * n + b
    keys_arr.sort()
    for i in range(1, m):
        if keys[i] == keys[i - 1]:
            return False, empty, empty
    return True, keys_arr // n, keys_arr % n

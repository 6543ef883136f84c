# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled truncated convolution kernels; same contract as ``_kernels_py``."""
import numpy as np

BACKEND = "cython"


def conv_int(list a, list b, u):
    cdef const long long[:] codes = u.codes_arr
    cdef const long long[:] lookup = u.lookup_arr
    cdef const long long[:] degs = u.degs_arr
    cdef const long long[:] deg_end = u.deg_end_arr
    cdef Py_ssize_t order = u.order
    cdef Py_ssize_t n = len(a)
    cdef Py_ssize_t i, j, jj, k, lim, nb
    cdef long long ci
    cdef list out = [0] * n
    cdef object ai, bj
    cdef long long[:] nz = np.empty(n, dtype=np.int64)
    nb = 0
    for j in range(n):
        if b[j]:
            nz[nb] = j
            nb += 1
    for i in range(n):
        ai = a[i]
        if not ai:
            continue
        ci = codes[i]
        lim = deg_end[order - degs[i]]
        for jj in range(nb):
            j = nz[jj]
            if j >= lim:
                break
            k = lookup[ci + codes[j]]
            out[k] = out[k] + ai * b[j]
    return out


def conv_complex(a, b, u):
    cdef const long long[:] codes = u.codes_arr
    cdef const long long[:] lookup = u.lookup_arr
    cdef const long long[:] degs = u.degs_arr
    cdef const long long[:] deg_end = u.deg_end_arr
    cdef Py_ssize_t order = u.order
    cdef double complex[:] av = np.asarray(a, dtype=np.complex128)
    cdef double complex[:] bv = np.asarray(b, dtype=np.complex128)
    cdef Py_ssize_t n = av.shape[0]
    res = np.zeros(n, dtype=np.complex128)
    cdef double complex[:] out = res
    cdef Py_ssize_t i, j, lim
    cdef long long ci
    cdef double complex ai
    for i in range(n):
        ai = av[i]
        if ai == 0:
            continue
        ci = codes[i]
        lim = deg_end[order - degs[i]]
        for j in range(lim):
            if bv[j] != 0:
                out[lookup[ci + codes[j]]] += ai * bv[j]
    return [complex(z) for z in res]

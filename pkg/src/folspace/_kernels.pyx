# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled hypercube kernels."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def influence_counts(labels, int n):
    cdef cnp.ndarray[cnp.int8_t, ndim=1] lab = np.ascontiguousarray(labels, dtype=np.int8)
    if lab.shape[0] != (1 << n):
        raise ValueError("labels must have length 2^n")
    cdef cnp.ndarray[cnp.int64_t, ndim=1] out = np.zeros(n, dtype=np.int64)
    cdef Py_ssize_t size = lab.shape[0]
    cdef Py_ssize_t x, bit
    cdef long long count
    cdef int i
    for i in range(n):
        bit = (<Py_ssize_t>1) << (n - 1 - i)
        count = 0
        for x in range(size):
            if lab[x] != lab[x ^ bit]:
                count += 1
        out[i] = count
    return out


def label_sum(labels):
    cdef cnp.ndarray[cnp.int8_t, ndim=1] lab = np.ascontiguousarray(labels, dtype=np.int8)
    cdef long long total = 0
    cdef Py_ssize_t x
    for x in range(lab.shape[0]):
        total += lab[x]
    return int(total)

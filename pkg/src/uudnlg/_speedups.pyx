# cython: boundscheck=False, wraparound=False
"""Cython implementations of the hot inner loops; see _kernels_py for the
pure-Python twins and kernels for the import-time selection."""

from libc.stdlib cimport free, malloc


def lcs_length(a, b):
    """Length of the longest common subsequence of two int sequences."""
    if len(b) > len(a):
        a, b = b, a
    cdef Py_ssize_t n = len(a)
    cdef Py_ssize_t m = len(b)
    if n == 0 or m == 0:
        return 0
    cdef long *xs = <long *> malloc(n * sizeof(long))
    cdef long *ys = <long *> malloc(m * sizeof(long))
    cdef long *row = <long *> malloc((m + 1) * sizeof(long))
    if xs == NULL or ys == NULL or row == NULL:
        free(xs); free(ys); free(row)
        raise MemoryError()
    cdef Py_ssize_t i, j
    cdef long prev_diag, prev_row, result
    try:
        for i in range(n):
            xs[i] = a[i]
        for j in range(m):
            ys[j] = b[j]
        for j in range(m + 1):
            row[j] = 0
        for i in range(n):
            prev_diag = 0
            for j in range(1, m + 1):
                prev_row = row[j]
                if xs[i] == ys[j - 1]:
                    row[j] = prev_diag + 1
                elif row[j - 1] > row[j]:
                    row[j] = row[j - 1]
                prev_diag = prev_row
        result = row[m]
    finally:
        free(xs)
        free(ys)
        free(row)
    return result

# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: Legendre tables, batched Frobenius traces,
exhaustive group-order histograms, and Kronecker-symbol tables."""

import numpy as np

cimport numpy as cnp
from libc.stdint cimport int64_t, int8_t

cnp.import_array()


cdef int c_kronecker(long long d, long long n) noexcept:
    cdef long long a
    cdef int result = 1
    cdef int twos = 0
    cdef long long r, tmp
    if n == 0:
        return 1 if (d == 1 or d == -1) else 0
    if d % 2 == 0 and n % 2 == 0:
        return 0
    while n % 2 == 0:
        n //= 2
        twos += 1
    r = d % 8
    if r < 0:
        r += 8
    if twos % 2 == 1 and (r == 3 or r == 5):
        result = -result
    a = d % n
    if a < 0:
        a += n
    while a != 0:
        while a % 2 == 0:
            a //= 2
            if n % 8 == 3 or n % 8 == 5:
                result = -result
        tmp = a
        a = n
        n = tmp
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a = a % n
    return result if n == 1 else 0


def legendre_table(int p):
    """chi[v] = Legendre symbol (v|p) for v in [0, p), as int8."""
    cdef cnp.ndarray[int8_t, ndim=1] chi = np.full(p, -1, dtype=np.int8)
    cdef int64_t v
    for v in range(p):
        chi[(v * v) % p] = 1
    chi[0] = 0
    return chi


def trace_batch(int p, object s_obj, object t_obj):
    """Frobenius traces a_p for curves y^2 = x^3 + s*x + t over F_p."""
    cdef cnp.ndarray[int64_t, ndim=1] s = np.ascontiguousarray(s_obj, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] t = np.ascontiguousarray(t_obj, dtype=np.int64)
    cdef cnp.ndarray[int8_t, ndim=1] chi = legendre_table(p)
    cdef cnp.ndarray[int64_t, ndim=1] cube = np.empty(p, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] out = np.empty(len(s), dtype=np.int64)
    cdef int64_t x, i, acc, si, ti, v
    cdef Py_ssize_t n = len(s)
    for x in range(p):
        cube[x] = (x * x % p) * x % p
    for i in range(n):
        si = s[i] % p
        ti = t[i] % p
        acc = 0
        for x in range(p):
            v = (cube[x] + si * x + ti) % p
            acc += chi[v]
        out[i] = -acc
    return out


def order_counts(int p):
    """counts[N] = number of nonsingular (s, t) in [0,p)^2 with group order N."""
    cdef cnp.ndarray[int8_t, ndim=1] chi = legendre_table(p)
    cdef cnp.ndarray[int64_t, ndim=1] cube = np.empty(p, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] counts = np.zeros(2 * p + 2, dtype=np.int64)
    cdef cnp.ndarray[int64_t, ndim=1] f = np.empty(p, dtype=np.int64)
    cdef int64_t s, t, x, acc, disc, order
    for x in range(p):
        cube[x] = (x * x % p) * x % p
    for s in range(p):
        for x in range(p):
            f[x] = (cube[x] + s * x) % p
        for t in range(p):
            disc = (4 * s * s % p * s + 27 * t * t) % p
            if disc == 0:
                continue
            acc = 0
            for x in range(p):
                acc += chi[(f[x] + t) % p]
            order = p + 1 + acc
            counts[order] += 1
    return counts


def kronecker_table(long long d, Py_ssize_t n):
    """kronecker(d, i) for i in [0, n), as int8."""
    cdef cnp.ndarray[int8_t, ndim=1] out = np.empty(n, dtype=np.int8)
    cdef Py_ssize_t i
    for i in range(n):
        out[i] = c_kronecker(d, i)
    return out

# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops. Signatures mirror :mod:`siegel_lab._pykernels`."""

import numpy as np
cimport numpy as cnp
from libc.math cimport cos, sin, pow, M_PI

cnp.import_array()


def sieve_flags(Py_ssize_t limit):
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] arr = np.ones(limit + 1, dtype=np.uint8)
    cdef unsigned char[::1] flags = arr
    cdef Py_ssize_t i, j
    flags[0] = 0
    if limit >= 1:
        flags[1] = 0
    i = 4
    while i <= limit:
        flags[i] = 0
        i += 2
    i = 3
    while i * i <= limit:
        if flags[i]:
            j = i * i
            while j <= limit:
                flags[j] = 0
                j += 2 * i
        i += 2
    return arr


def goldbach_scan(const unsigned char[::1] flags, long long n, long long lo, long long cap):
    """Ordered count of prime pairs p1 + p2 = n with lo <= p1, p2 <= cap."""
    cdef long long p, other, half = n // 2
    cdef long long count = 0
    cdef long long start = lo if lo > 2 else 2
    p = start
    while p <= half:
        other = n - p
        if other <= cap and p <= cap and flags[p] and flags[other]:
            if other == p:
                count += 1
            else:
                count += 2
        p += 1
    return count


def prime_exp_sums(const long long[::1] primes, long long q):
    """z_k = sum_p e(k p / q) for k = 1..q with Neumaier-compensated sums."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] re_out = np.zeros(q, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] im_out = np.zeros(q, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ctab = np.empty(q, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] stab = np.empty(q, dtype=np.float64)
    cdef double[::1] c = ctab
    cdef double[::1] s = stab
    cdef Py_ssize_t i, m = primes.shape[0]
    cdef long long k, r, pm
    cdef double sr, cr, si, ci, t, v
    for r in range(q):
        c[r] = cos(2.0 * M_PI * r / q)
        s[r] = sin(2.0 * M_PI * r / q)
    for k in range(1, q + 1):
        sr = 0.0
        cr = 0.0
        si = 0.0
        ci = 0.0
        for i in range(m):
            pm = primes[i] % q
            r = (k * pm) % q
            v = c[r]
            t = sr + v
            if abs(sr) >= abs(v):
                cr += (sr - t) + v
            else:
                cr += (v - t) + sr
            sr = t
            v = s[r]
            t = si + v
            if abs(si) >= abs(v):
                ci += (si - t) + v
            else:
                ci += (v - t) + si
            si = t
        re_out[k - 1] = sr + cr
        im_out[k - 1] = si + ci
    return re_out, im_out


def l_partial_sum(const double[::1] vre, const double[::1] vim, long long N, double sigma):
    """sum_{n=1}^{N} v[n mod q] n^{-sigma}, compensated."""
    cdef Py_ssize_t q = vre.shape[0]
    cdef long long n
    cdef Py_ssize_t r = 0
    cdef double w, sr = 0.0, cr = 0.0, si = 0.0, ci = 0.0, t, v
    for n in range(1, N + 1):
        r += 1
        if r == q:
            r = 0
        if vre[r] == 0.0 and vim[r] == 0.0:
            continue
        w = pow(<double>n, -sigma)
        v = vre[r] * w
        t = sr + v
        if abs(sr) >= abs(v):
            cr += (sr - t) + v
        else:
            cr += (v - t) + sr
        sr = t
        v = vim[r] * w
        t = si + v
        if abs(si) >= abs(v):
            ci += (si - t) + v
        else:
            ci += (v - t) + si
        si = t
    return sr + cr, si + ci

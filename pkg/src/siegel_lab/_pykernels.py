"""Pure-Python/numpy versions of the compiled kernels in ``_ckernels.pyx``."""

import math

import numpy as np

_CHUNK = 1 << 20


def sieve_flags(limit):
    flags = np.ones(limit + 1, dtype=np.uint8)
    flags[:2] = 0
    flags[4::2] = 0
    for i in range(3, math.isqrt(limit) + 1, 2):
        if flags[i]:
            flags[i * i :: 2 * i] = 0
    return flags


def goldbach_scan(flags, n, lo, cap):
    half = n // 2
    start = max(lo, 2)
    if half < start:
        return 0
    p = np.arange(start, half + 1)
    other = n - p
    ok = (other <= cap) & (flags[p] != 0) & (flags[np.minimum(other, len(flags) - 1)] != 0)
    hits = p[ok]
    diag = int(np.count_nonzero(hits * 2 == n))
    return 2 * (len(hits) - diag) + diag


def prime_exp_sums(primes, q):
    primes = np.asarray(primes, dtype=np.int64) % q
    angles = 2.0 * math.pi * np.arange(q) / q
    ctab, stab = np.cos(angles), np.sin(angles)
    re_out = np.empty(q)
    im_out = np.empty(q)
    for k in range(1, q + 1):
        r = (k * primes) % q
        re_out[k - 1] = math.fsum(ctab[r])
        im_out[k - 1] = math.fsum(stab[r])
    return re_out, im_out


def l_partial_sum(vre, vim, N, sigma):
    vre = np.asarray(vre, dtype=np.float64)
    vim = np.asarray(vim, dtype=np.float64)
    q = len(vre)
    parts_re, parts_im = [], []
    for lo in range(1, N + 1, _CHUNK):
        n = np.arange(lo, min(lo + _CHUNK, N + 1), dtype=np.float64)
        r = np.arange(lo, lo + len(n)) % q
        w = n ** (-sigma)
        parts_re.append(math.fsum(vre[r] * w))
        parts_im.append(math.fsum(vim[r] * w))
    return math.fsum(parts_re), math.fsum(parts_im)

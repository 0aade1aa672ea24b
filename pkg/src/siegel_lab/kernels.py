"""Backend selection for the hot loops.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
numpy implementations in ``_pykernels`` take over. Both expose::

    sieve_flags(limit) -> uint8 array of length limit + 1
    goldbach_scan(flags, n, lo, cap) -> int
    prime_exp_sums(primes, q) -> (re, im) arrays indexed by k - 1
    l_partial_sum(vre, vim, N, sigma) -> (re, im)
"""

import numpy as np

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    _BACKENDS["compiled"] = _ckernels

_active = "compiled" if _ckernels is not None else "python"


def available_backends():
    return sorted(_BACKENDS)


def backend():
    return _active


def set_backend(name):
    """Switch the active backend; returns the previous name."""
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"unknown or unavailable backend {name!r}; have {available_backends()}")
    prev, _active = _active, name
    return prev


def _impl():
    return _BACKENDS[_active]


def sieve_flags(limit):
    return _impl().sieve_flags(int(limit))


def goldbach_scan(flags, n, lo, cap):
    return int(_impl().goldbach_scan(flags, int(n), int(lo), int(cap)))


def prime_exp_sums(primes, q):
    primes = np.ascontiguousarray(primes, dtype=np.int64)
    return _impl().prime_exp_sums(primes, int(q))


def l_partial_sum(vre, vim, N, sigma):
    vre = np.ascontiguousarray(vre, dtype=np.float64)
    vim = np.ascontiguousarray(vim, dtype=np.float64)
    re, im = _impl().l_partial_sum(vre, vim, int(N), float(sigma))
    return float(re), float(im)

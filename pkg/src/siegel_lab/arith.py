"""Exact integer arithmetic: sieving, factorization, multiplicative functions,
the Kronecker symbol and the offset logarithmic integral."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.special import expi

from . import kernels
from .errors import CapacityError, DomainError

DEFAULT_MEMORY_CAP = 10**8
_memory_cap = int(os.environ.get("SIEGEL_LAB_MEMORY_CAP", DEFAULT_MEMORY_CAP))


def memory_cap() -> int:
    return _memory_cap


def set_memory_cap(cap: int) -> int:
    """Set the largest sieve limit allowed; returns the previous cap."""
    global _memory_cap
    if cap < 2:
        raise DomainError("memory cap must be at least 2")
    prev, _memory_cap = _memory_cap, int(cap)
    return prev


@dataclass(frozen=True)
class Factorization:
    n: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prod = 1
        last = 1
        for p, e in self.factors:
            if p <= last or e < 1:
                raise DomainError(f"malformed factorization {self.factors}")
            last = p
            prod *= p**e
        if prod != self.n:
            raise DomainError(f"factors {self.factors} do not multiply to {self.n}")

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def __iter__(self):
        return iter(self.factors)


@dataclass(frozen=True, eq=False)
class PrimeTable:
    """Primality flags and the ascending list of primes up to ``limit``."""

    limit: int
    flags: np.ndarray
    primes: np.ndarray

    def is_prime(self, n: int) -> bool:
        if n > self.limit:
            raise CapacityError(f"{n} exceeds prime table limit {self.limit}")
        return n >= 0 and bool(self.flags[n])

    def primes_in(self, lo: float, hi: float) -> np.ndarray:
        """Primes p with lo < p <= hi."""
        if math.floor(hi) > self.limit:
            raise CapacityError(f"range end {hi} exceeds prime table limit {self.limit}")
        a = np.searchsorted(self.primes, math.floor(lo), side="right")
        b = np.searchsorted(self.primes, math.floor(hi), side="right")
        return self.primes[a:b]

    def count(self, x: float) -> int:
        """pi(x)."""
        return len(self.primes_in(0, x))

    def __len__(self):
        return len(self.primes)


def sieve_primes(limit: int) -> PrimeTable:
    limit = int(limit)
    if limit < 2:
        raise CapacityError(f"sieve limit must be >= 2, got {limit}")
    if limit > _memory_cap:
        raise CapacityError(f"sieve limit {limit} exceeds memory cap {_memory_cap}")
    flags = kernels.sieve_flags(limit)
    flags.setflags(write=False)
    primes = np.flatnonzero(flags).astype(np.int64)
    primes.setflags(write=False)
    return PrimeTable(limit, flags, primes)


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    return tuple(int(p) for p in np.flatnonzero(kernels.sieve_flags(1 << 17)))


def factor_limit() -> int:
    """Largest n that trial division over the built-in prime table factors completely."""
    return _small_primes()[-1] ** 2


@lru_cache(maxsize=1 << 16)
def factorize(n: int) -> Factorization:
    n = int(n)
    if n < 1:
        raise DomainError(f"cannot factor {n}")
    if n > factor_limit():
        raise CapacityError(f"factorization is limited to n <= {factor_limit()}")
    m = n
    out = []
    for p in _small_primes():
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            out.append((p, e))
    if m > 1:
        out.append((m, 1))
    return Factorization(n, tuple(out))


def _as_factorization(f) -> Factorization:
    return f if isinstance(f, Factorization) else factorize(f)


def euler_phi(f) -> int:
    f = _as_factorization(f)
    out = 1
    for p, e in f:
        out *= (p - 1) * p ** (e - 1)
    return out


def mobius(f) -> int:
    f = _as_factorization(f)
    if any(e > 1 for _, e in f):
        return 0
    return -1 if len(f.factors) % 2 else 1


def omega(f) -> int:
    return len(_as_factorization(f).factors)


def divisors(f) -> list[int]:
    f = _as_factorization(f)
    divs = [1]
    for p, e in f:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def kronecker(d: int, n: int) -> int:
    """Kronecker symbol (d/n), extending Jacobi to even and negative n."""
    d, n = int(d), int(n)
    if n == 0:
        return 1 if abs(d) == 1 else 0
    if d % 2 == 0 and n % 2 == 0:
        return 0
    sign = 1
    if n < 0:
        n = -n
        if d < 0:
            sign = -1
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v % 2 and d % 8 in (3, 5):
        sign = -sign
    # Jacobi (d/n), n odd positive
    a = d % n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                sign = -sign
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            sign = -sign
        a %= n
    return sign if n == 1 else 0


_LI2 = float(expi(math.log(2.0)))


def li(x: float) -> float:
    """Logarithmic integral from 2: int_2^x dt / log t.

    The lower limit is 2, not 0, so li(2) == 0 and li(x) = Li0(x) - 1.04516...
    """
    x = float(x)
    if not x >= 2.0:
        raise DomainError(f"li(x) needs x >= 2, got {x}")
    if x == 2.0:
        return 0.0
    return float(expi(math.log(x))) - _LI2

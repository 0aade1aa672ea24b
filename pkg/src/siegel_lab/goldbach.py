"""Goldbach representation counts, the Hardy-Littlewood singular series and
the auditor for the exceptional-set version of the weak conjecture."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Optional

import mpmath
import numpy as np

from . import kernels
from .arith import PrimeTable, factorize, mobius, sieve_primes
from .errors import CapacityError, DomainError, PreconditionError


class Variant(str, Enum):
    ALL = "all-primes"
    EXCLUDE_2 = "exclude-2"
    CAPPED = "exclude-2-cap-x"


@dataclass(frozen=True)
class GoldbachCount:
    n: int
    count: int
    variant: Variant
    cap: Optional[float] = None


def _bounds(n: int, variant: Variant, x: Optional[float]) -> tuple[int, int]:
    variant = Variant(variant)
    lo = 2 if variant is Variant.ALL else 3
    if variant is Variant.CAPPED:
        if x is None:
            raise DomainError("the capped variant needs x")
        cap = min(n, math.floor(x))
    else:
        cap = n
    return lo, cap


def goldbach_count(n: int, variant: Variant | str = Variant.ALL, table: Optional[PrimeTable] = None,
                   x: Optional[float] = None) -> GoldbachCount:
    """Ordered count of (p1, p2) with p1 + p2 = n under the variant's constraints."""
    n = int(n)
    if n < 2:
        raise DomainError("n must be at least 2")
    variant = Variant(variant)
    lo, cap = _bounds(n, variant, x)
    need = min(n, cap)
    if table is None:
        table = sieve_primes(max(need, 2))
    if table.limit < need:
        raise CapacityError(f"prime table limit {table.limit} < {need} needed for n = {n}")
    count = kernels.goldbach_scan(table.flags, n, lo, cap)
    return GoldbachCount(n, count, variant, x if variant is Variant.CAPPED else None)


def goldbach_counts_upto(nmax: int, variant: Variant | str, table: PrimeTable,
                         x: Optional[float] = None) -> np.ndarray:
    """Ordered counts for every n = 0..nmax at once, by FFT self-convolution.

    For the capped variant every prime is at most x; otherwise at most nmax.
    """
    variant = Variant(variant)
    lo = 2 if variant is Variant.ALL else 3
    cap = math.floor(x) if variant is Variant.CAPPED else nmax
    if variant is Variant.CAPPED and x is None:
        raise DomainError("the capped variant needs x")
    cap = min(cap, nmax)
    if table.limit < cap:
        raise CapacityError(f"prime table limit {table.limit} < {cap}")
    ind = np.zeros(cap + 1)
    ps = table.primes[(table.primes >= lo) & (table.primes <= cap)]
    ind[ps] = 1.0
    size = 1 << (2 * cap + 1).bit_length()
    f = np.fft.rfft(ind, size)
    conv = np.fft.irfft(f * f, size)[: nmax + 1]
    out = np.rint(conv)
    err = float(np.abs(conv - out).max()) if len(conv) else 0.0
    if err > 0.25:
        raise ArithmeticError(f"FFT convolution not exact (max rounding error {err})")
    res = np.zeros(nmax + 1, dtype=np.int64)
    res[: len(out)] = out.astype(np.int64)
    return res


@dataclass(frozen=True)
class TwinPrimeConstant:
    value: float
    truncation: int
    tail_bound: float


@lru_cache(maxsize=8)
def twin_prime_constant(truncation: int = 1000, dps: int = 40) -> TwinPrimeConstant:
    """C2 = prod_{p>2} (1 - 1/(p-1)^2).

    Exact product for p <= truncation; beyond it
    log(1 - 1/(p-1)^2) = -sum_{j>=2} (2^j - 2)/j p^-j, and the prime sums
    sum_{p>P} p^-s come from Moebius inversion of log zeta with the
    small-prime Euler factors removed.
    """
    P = int(truncation)
    if P < 10:
        raise DomainError("truncation must be at least 10")
    small = [int(p) for p in sieve_primes(P).primes]
    with mpmath.workdps(dps):
        eps = mpmath.mpf(10) ** (-dps + 5)
        head = mpmath.fsum(mpmath.log(1 - mpmath.mpf(1) / (p - 1) ** 2) for p in small if p > 2)

        @lru_cache(maxsize=None)
        def log_zeta_tail(s):
            z = mpmath.zeta(s)
            for p in small:
                z *= 1 - mpmath.power(p, -s)
            return mpmath.log(z)

        def prime_tail(j):
            # sum_{p > P} p^-j; stop once P^(1-kj) is below working precision
            tot = mpmath.mpf(0)
            k = 1
            while mpmath.power(P, 1 - k * j) > eps:
                mu = mobius(k)
                if mu:
                    tot += mpmath.mpf(mu) / k * log_zeta_tail(k * j)
                k += 1
            return tot

        tail = mpmath.mpf(0)
        j = 2
        while True:
            coef = (mpmath.mpf(2) ** j - 2) / j
            # sum_{n > P} n^-j <= P^(1-j) / (j - 1)
            if coef * mpmath.power(P, 1 - j) / (j - 1) < eps:
                break
            tail += coef * prime_tail(j)
            j += 1
        # remaining j-terms: geometric with ratio 2/P
        rest = coef * mpmath.power(P, 1 - j) / (j - 1) / (1 - mpmath.mpf(2) / P)
        logc = head - tail
        value = mpmath.exp(logc)
        bound = float(value * (mpmath.exp(rest + eps) - 1))
        return TwinPrimeConstant(float(value), P, bound)


def singular_series(n: int) -> float:
    """2 C2 prod_{p | n, p > 2} (p-1)/(p-2) * n / log^2 n."""
    n = int(n)
    if n < 4 or n % 2:
        raise DomainError("singular series needs an even n >= 4")
    c2 = twin_prime_constant().value
    prod = 1.0
    for p, _ in factorize(n):
        if p > 2:
            prod *= (p - 1) / (p - 2)
    return 2.0 * c2 * prod * n / math.log(n) ** 2


def hl_ratio(n: int, table: Optional[PrimeTable] = None) -> float:
    """g(n) over its Hardy-Littlewood prediction; far from 1 for small n."""
    n = int(n)
    if n < 4 or n % 2:
        raise DomainError("hl_ratio needs an even n >= 4")
    return goldbach_count(n, Variant.ALL, table).count / singular_series(n)


@dataclass(frozen=True)
class Exception_:
    n: int
    count: int
    threshold: float


@dataclass(frozen=True)
class GoldbachAuditReport:
    q: int
    x: float
    delta: float
    tested: int
    first_n: Optional[int]
    last_n: Optional[int]
    exceptions: tuple[Exception_, ...]
    allowance: int
    min_ratio: Optional[float] = field(default=None)

    @property
    def exception_count(self) -> int:
        return len(self.exceptions)

    @property
    def verdict(self) -> bool:
        return self.exception_count <= self.allowance

    def as_dict(self) -> dict:
        return {
            "q": self.q,
            "x": self.x,
            "delta": self.delta,
            "tested": self.tested,
            "first_n": self.first_n,
            "last_n": self.last_n,
            "exception_count": self.exception_count,
            "exceptions": [e.__dict__ for e in self.exceptions],
            "allowance": self.allowance,
            "min_ratio": self.min_ratio,
            "verdict": "pass" if self.verdict else "fail",
        }


# audit sets larger than this use one FFT convolution instead of per-n scans
_SCAN_AUDIT_LIMIT = 2000


def audit_set(q: int, x: float) -> np.ndarray:
    """Even multiples n of q with x/2 < n <= x."""
    step = q if q % 2 == 0 else 2 * q
    start = (math.floor(x / 2) // step + 1) * step
    return np.arange(start, math.floor(x) + 1, step, dtype=np.int64)


def whle_audit(q: int, x: float, delta: float = 0.5, table: Optional[PrimeTable] = None,
               counts: Optional[np.ndarray] = None) -> GoldbachAuditReport:
    """Check g(n) >= delta n / log^2 n on the audit set, allowing floor(x / 8q) failures.

    ``counts`` may carry precomputed capped counts indexed by n (shared across q).
    """
    if q < 1:
        raise DomainError("q must be positive")
    if q > x / 4:
        raise PreconditionError(f"q = {q} > x/4 = {x / 4}: the standing assumption q <= x/4 fails")
    if delta < 0:
        raise DomainError("delta must be non-negative")
    ns = audit_set(q, x)
    if counts is None:
        if table is None:
            table = sieve_primes(math.floor(x))
        if len(ns) > _SCAN_AUDIT_LIMIT:
            g = goldbach_counts_upto(math.floor(x), Variant.CAPPED, table, x)[ns]
        else:
            g = np.array([goldbach_count(int(n), Variant.CAPPED, table, x).count for n in ns], dtype=np.int64)
    else:
        if len(counts) <= (ns[-1] if len(ns) else 0):
            raise CapacityError("precomputed counts do not reach x")
        g = counts[ns]
    logn = np.log(ns.astype(np.float64))
    scale = ns / logn**2
    thresh = delta * scale
    bad = np.flatnonzero(g < thresh)
    exc = tuple(Exception_(int(ns[i]), int(g[i]), float(thresh[i])) for i in bad)
    ratio = float((g / scale).min()) if len(ns) else None
    return GoldbachAuditReport(
        q, x, delta, len(ns),
        int(ns[0]) if len(ns) else None, int(ns[-1]) if len(ns) else None,
        exc, math.floor(x / (8 * q)), ratio,
    )

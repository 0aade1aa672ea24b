"""Numerical audit of the Goldbach-sum argument bounding an exceptional zero.

S = sum_{k=1}^q (sum_{2<p<=x} e(kp/q))^2 is computed directly from the
exponential sums and by folding into Goldbach counts of multiples of q; the
Ramanujan/Gauss identities that reduce S to its main terms are checked for
each q; the closing inequality chain is a what-if calculator driven by a
hypothetical zero beta.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from . import kernels
from .arith import PrimeTable, euler_phi, factorize, li, sieve_primes
from .characters import (
    DirichletCharacter,
    gauss_sum,
    gauss_sums_all,
    primitive_characters,
    ramanujan_sum,
    real_odd_characters,
)
from .errors import DomainError
from .goldbach import Variant, goldbach_count, goldbach_counts_upto
from .lfunction import integral_term

_SCAN_LIMIT = 10**5


@dataclass(frozen=True)
class SumSDecomposition:
    q: int
    x: float
    S_direct: float
    S_imag_residual: float
    S_folded: Optional[float] = None
    main_li: Optional[float] = None
    main_zero: Optional[float] = None
    residual: Optional[float] = None
    error_envelope: Optional[float] = None

    def as_dict(self) -> dict:
        return asdict(self)


def _table_for(x: float, table: Optional[PrimeTable]) -> PrimeTable:
    need = max(2, math.floor(x))
    if table is None or table.limit < need:
        table = sieve_primes(need)
    return table


def sum_S_direct(q: int, x: float, table: Optional[PrimeTable] = None) -> SumSDecomposition:
    if q < 2:
        raise DomainError("q must be at least 2")
    table = _table_for(x, table)
    ps = table.primes_in(2, x)
    if len(ps) == 0:
        return SumSDecomposition(q, x, 0.0, 0.0)
    re, im = kernels.prime_exp_sums(ps, q)
    s_re = math.fsum(np.concatenate([re * re, -(im * im)]))
    s_im = 2.0 * math.fsum(re * im)
    return SumSDecomposition(q, x, s_re, s_im)


def sum_S_folded(q: int, x: float, table: Optional[PrimeTable] = None,
                 counts: Optional[np.ndarray] = None) -> int:
    """q * sum over n <= 2x with q | n of the capped count (2 < p1, p2 <= x).

    ``counts`` may hold precomputed capped counts for n = 0..2x.
    """
    if q < 2:
        raise DomainError("q must be at least 2")
    top = math.floor(2 * x)
    if counts is not None:
        if len(counts) <= top:
            raise DomainError("precomputed counts do not reach 2x")
        return q * int(counts[q : top + 1 : q].sum())
    table = _table_for(x, table)
    ns = range(q, top + 1, q)
    if x <= _SCAN_LIMIT:
        total = sum(goldbach_count(n, Variant.CAPPED, table, x).count for n in ns)
    else:
        counts = goldbach_counts_upto(top, Variant.CAPPED, table, x)
        total = int(counts[q::q].sum())
    return q * total


@dataclass(frozen=True)
class Step2Identities:
    q: int
    mixed_term: Optional[float]  # max |sum_k c_q(k) tau_k(chi)|, primitive chi
    ramanujan_sum_total: int  # sum_k c_q(k), expected 0
    ramanujan_square_total: int  # sum_k c_q(k)^2
    ramanujan_square_expected: int  # q phi(q)
    gauss_square_term: Optional[float]  # max deviation over real primitive chi
    gauss_square_values: tuple[float, ...]
    n_primitive: int
    n_real_primitive: int

    @property
    def deviations(self) -> dict:
        return {
            "mixed_term": self.mixed_term or 0.0,
            "ramanujan_sum": abs(self.ramanujan_sum_total),
            "ramanujan_square": abs(self.ramanujan_square_total - self.ramanujan_square_expected),
            "gauss_square": self.gauss_square_term or 0.0,
        }

    def passes(self, tol_per_q: float = 1e-8) -> bool:
        return all(v <= tol_per_q * self.q for v in self.deviations.values())

    def as_dict(self) -> dict:
        d = asdict(self)
        d["deviations"] = self.deviations
        return d


def step2_identities(q: int) -> Step2Identities:
    if q < 3:
        raise DomainError("q must be at least 3")
    phi = euler_phi(q)
    c = np.array([ramanujan_sum(q, k) for k in range(1, q + 1)], dtype=np.int64)
    c_total = int(c.sum())
    c_sq = int((c * c).sum())
    prims = primitive_characters(q)
    mixed = None
    gauss_dev = None
    gvals = []
    nreal = 0
    if prims:
        mixed = 0.0
        # tau_k for k = 1..q sits at index k mod q
        idx = np.arange(1, q + 1) % q
        for chi in prims:
            tau = gauss_sums_all(chi)[idx]
            mixed = max(mixed, abs(complex(np.dot(c, tau))))
        gauss_dev = 0.0
        units = [k for k in range(1, q) if math.gcd(k, q) == 1]
        for chi in prims:
            if not chi.is_real:
                continue
            nreal += 1
            t1 = gauss_sum(chi, 1)
            vals = chi.values
            s = sum(t1 * t1 * np.conj(vals[k]) ** 2 for k in units) / phi**2
            target = q / phi * chi.parity
            gvals.append(float(s.real))
            gauss_dev = max(gauss_dev, float(abs(s - target)))
    return Step2Identities(q, mixed, c_total, c_sq, q * phi, gauss_dev, tuple(gvals), len(prims), nreal)


def explicit_decomposition(
    q: int,
    x: float,
    chi: Optional[DirichletCharacter] = None,
    beta: Optional[float] = None,
    table: Optional[PrimeTable] = None,
    fold: bool = True,
) -> SumSDecomposition:
    """S against (q/phi) li(x)^2 + (q/phi) chi(-1) x^(2 beta) / (beta^2 log^2 x)."""
    if beta is not None and chi is None:
        raise DomainError("beta needs a character")
    if beta is not None and not 0 < beta <= 1:
        raise DomainError("beta must lie in (0, 1]")
    table = _table_for(x, table)
    d = sum_S_direct(q, x, table)
    phi = euler_phi(q)
    ratio = q / phi
    main_li = ratio * li(x) ** 2
    main_zero = 0.0
    if beta is not None:
        main_zero = ratio * chi.parity * x ** (2 * beta) / (beta**2 * math.log(x) ** 2)
    envelope = x**2 / math.log(x) ** 3 * ratio**2
    folded = float(sum_S_folded(q, x, table)) if fold else None
    return SumSDecomposition(
        q, x, d.S_direct, d.S_imag_residual, folded, main_li,
        main_zero if beta is not None else None, d.S_direct - main_li - main_zero, envelope,
    )


@dataclass(frozen=True)
class Step3Audit:
    q: int
    x: float
    delta: float
    beta: float
    c3: float
    ctilde: float
    lhs: float  # x^(2 beta - 2)
    rhs: float  # 1 - (delta/8) phi/q
    error_allowance: float  # q/(phi log x) + q^3 exp(-ctilde sqrt(log x)), constants set to 1
    chain_holds: bool  # lhs <= rhs + error_allowance
    q_le_x_over_4: bool
    q_le_exp_C_sqrt_log_x: bool
    window_lower: float  # (4 log q / ctilde)^2
    window_upper: float  # c3 log^2 q
    x_in_window: bool
    large_q_condition: bool  # 16 c1 / log^2 q <= delta phi^2 / q^2
    log_step_bound: float  # log(1 - delta phi / 16q) / (2 log x)
    c: float  # delta / (32 c3)
    implied_gap: float  # c phi / (q log^2 q)
    one_minus_beta: float
    verdict: bool  # 1 - beta >= implied_gap

    @property
    def admissible(self) -> bool:
        return self.q_le_x_over_4 and self.q_le_exp_C_sqrt_log_x and self.x_in_window

    def as_dict(self) -> dict:
        d = asdict(self)
        d["admissible"] = self.admissible
        return d


def default_c3(ctilde: float = 1.0) -> float:
    return (4.0 / ctilde) ** 2 + 1.0


def step3_audit(
    q: int,
    x: float,
    delta: float,
    beta: float,
    c3: Optional[float] = None,
    ctilde: float = 1.0,
    C: float = 1.0,
    c1: float = 1.0,
) -> Step3Audit:
    if not 0 < beta < 1:
        raise DomainError("beta must lie in (0, 1)")
    if not 0 < delta < 8:
        raise DomainError(f"delta = {delta} violates 0 < delta < 8 (the chain needs delta < 8)")
    if ctilde <= 0:
        raise DomainError("ctilde must be positive")
    if c3 is None:
        c3 = default_c3(ctilde)
    if not c3 > (4.0 / ctilde) ** 2:
        raise DomainError(f"c3 = {c3} violates c3 > (4/ctilde)^2 = {(4.0 / ctilde) ** 2}")
    if q < 3 or x <= 2:
        raise DomainError("need q >= 3 and x > 2")
    phi = euler_phi(q)
    lq = math.log(q)
    lx = math.log(x)
    lhs = x ** (2 * beta - 2)
    rhs = 1.0 - delta / 8.0 * phi / q
    allowance = q / (phi * lx) + q**3 * math.exp(-ctilde * math.sqrt(lx))
    w_lo = (4.0 * lq / ctilde) ** 2
    w_hi = c3 * lq * lq
    c = delta / (32.0 * c3)
    gap = c * phi / (q * lq * lq)
    return Step3Audit(
        q, x, delta, beta, c3, ctilde,
        lhs, rhs, allowance, lhs <= rhs + allowance,
        q <= x / 4, q <= math.exp(C * math.sqrt(lx)),
        w_lo, w_hi, w_lo <= lx <= w_hi,
        16.0 * c1 / lq**2 <= delta * phi**2 / q**2,
        math.log1p(-delta * phi / (16.0 * q)) / (2.0 * lx),
        c, gap, 1.0 - beta, (1.0 - beta) >= gap,
    )


@dataclass(frozen=True)
class EligibilityResult:
    q: int
    qualifying: tuple[int, ...]
    odd_real_count: int

    @property
    def eligible(self) -> bool:
        return len(self.qualifying) == 1

    def as_dict(self) -> dict:
        return {"q": self.q, "qualifying": list(self.qualifying), "eligible": self.eligible,
                "odd_real_count": self.odd_real_count}


def qualifying_divisors(q: int) -> tuple[int, ...]:
    """Divisors of q that are 4 or a prime = 3 (mod 4)."""
    out = [4] if q % 4 == 0 else []
    out += [p for p, _ in factorize(q) if p % 4 == 3]
    return tuple(sorted(out))


def eligible_modulus(q: int) -> EligibilityResult:
    if q < 3:
        raise DomainError("q must be at least 3")
    return EligibilityResult(q, qualifying_divisors(q), len(real_odd_characters(q)))

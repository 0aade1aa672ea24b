"""L(sigma, chi) on the real segment, real-zero scanning, PNT in progressions
and the catalogue of lower/upper bounds for L(1, chi).

The series is summed to a multiple N of q. The tail sum_{n>N} chi(n) n^-s is
handled by repeated summation by parts against the periodic (mean-zero)
iterated partial sums of chi: each level contributes an exact term
nu_j * Delta^j h(N+1) and the last level is bounded by
max|C_K| * Delta^K h(N+1) <= max|C_K| * (s)_K * (N+1)^(-s-K).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Optional

import mpmath
import numpy as np
from scipy.special import expi

from . import kernels
from .arith import euler_phi, factorize, li, sieve_primes, PrimeTable
from .characters import DirichletCharacter, char_value
from .errors import DomainError, UnsupportedError

MAX_ABEL_ORDER = 8
EULER_GAMMA = 0.57721566490153286


@dataclass(frozen=True)
class LEvalResult:
    value: complex | float
    N: int
    tail_bound: float
    tol: float
    abel_order: int


@dataclass(frozen=True)
class _PeriodData:
    nu: tuple[complex, ...]
    maxabs: tuple[float, ...]


@lru_cache(maxsize=4096)
def _period_data(chi: DirichletCharacter) -> _PeriodData:
    q = chi.modulus
    # c[i - 1] = chi(N + i) for i = 1..q, N a multiple of q
    c = np.roll(np.asarray(chi.values, dtype=complex), -1)
    nus, maxes = [], []
    for _ in range(MAX_ABEL_ORDER + 1):
        C = np.cumsum(c)
        C[-1] = 0.0  # complete period; zero up to rounding
        nu = C.mean()
        nus.append(complex(nu))
        maxes.append(float(np.abs(C).max()) * (1 + 1e-12) + 1e-300)
        c = C - nu
    return _PeriodData(tuple(nus), tuple(maxes))


def _rising(s: float, k: int) -> float:
    out = 1.0
    for i in range(k):
        out *= s + i
    return out


def _forward_differences(n: int, sigma: float, k: int) -> list[float]:
    """Delta^j h(n) for j < k, h(t) = t^-sigma, Delta h(n) = h(n) - h(n+1).

    One difference table in extended precision: the j-th difference cancels
    about j * log10(n) digits.
    """
    if k <= 1:
        return [n ** (-sigma)][:k]
    dps = 20 + k * (len(str(n)) + 1)
    with mpmath.workdps(dps):
        s = -mpmath.mpf(sigma)
        row = [mpmath.power(n + i, s) for i in range(k)]
        out = [float(row[0])]
        for _ in range(1, k):
            row = [a - b for a, b in zip(row, row[1:])]
            out.append(float(row[0]))
        return out


def _choose_truncation(pd: _PeriodData, q: int, sigma: float, tol: float) -> tuple[int, int]:
    best = None
    for k in range(MAX_ABEL_ORDER + 1):
        need = (pd.maxabs[k] * _rising(sigma, k) / tol) ** (1.0 / (sigma + k))
        N = max(q, q * math.ceil(max(need - 1.0, 0.0) / q))
        cost = N + 50 * k
        if best is None or cost < best[0]:
            best = (cost, N, k)
    return best[1], best[2]


def evaluate_L(chi: DirichletCharacter, sigma: float, tol: float = 1e-10) -> LEvalResult:
    if chi.is_principal:
        raise UnsupportedError("L(s, chi_0) has a pole at s = 1; principal characters are not supported")
    if not sigma > 0:
        raise DomainError(f"sigma must be positive, got {sigma}")
    if sigma > 2:
        raise DomainError(f"sigma must be at most 2, got {sigma}")
    if tol < 1e-12:
        raise DomainError(f"tolerance {tol} below the supported floor 1e-12")
    q = chi.modulus
    pd = _period_data(chi)
    N, k = _choose_truncation(pd, q, sigma, tol)
    vals = chi.values
    re, im = kernels.l_partial_sum(vals.real, vals.imag, N, sigma)
    total = complex(re, im)
    for nu, diff in zip(pd.nu, _forward_differences(N + 1, sigma, k)):
        total += nu * diff
    bound = pd.maxabs[k] * _rising(sigma, k) * (N + 1) ** (-sigma - k)
    value = total.real if chi.is_real else total
    return LEvalResult(value, N, bound, tol, k)


@dataclass(frozen=True)
class ZeroBracket:
    lo: float
    hi: float
    beta: float
    residual: float
    exceptional: bool


@dataclass(frozen=True)
class ZeroScanReport:
    character: str
    sigma_lo: float
    sigma_hi: float
    step: float
    zeros: tuple[ZeroBracket, ...]
    grid_points: int

    def as_dict(self) -> dict:
        return {
            "character": self.character,
            "sigma_lo": self.sigma_lo,
            "sigma_hi": self.sigma_hi,
            "step": self.step,
            "grid_points": self.grid_points,
            "zeros": [z.__dict__ for z in self.zeros],
        }


def exceptional_region_test(beta: float, q: int, c: float = 1.0) -> bool:
    """Is 1 - beta <= c / log(q * q)?  The boundary counts as inside."""
    if not 0 < beta < 1:
        raise DomainError("beta must lie in (0, 1)")
    if q < 3 or c <= 0:
        raise DomainError("need q >= 3 and c > 0")
    gap = 1.0 - beta
    bound = c / (2.0 * math.log(q))
    return gap <= bound or math.isclose(gap, bound, rel_tol=1e-12)


def scan_real_zeros(
    chi: Optional[DirichletCharacter],
    sigma_lo: float,
    sigma_hi: float,
    step: float,
    refine_tol: float = 1e-12,
    func: Optional[Callable[[float], float]] = None,
    region_c: float = 1.0,
    eval_tol: float = 1e-12,
) -> ZeroScanReport:
    """Bracket sign changes of L(sigma, chi) on a grid and bisect each one.

    ``func`` replaces the L-function (self-test hook); ``chi`` may then be None.
    """
    if func is None:
        if chi is None or not chi.is_real or chi.is_principal:
            raise DomainError("zero scanning needs a real non-principal character")

        def func(s):
            return evaluate_L(chi, s, eval_tol).value

    if not (0 < sigma_lo < sigma_hi <= 1) or step <= 0:
        raise DomainError("need 0 < sigma_lo < sigma_hi <= 1 and step > 0")
    n = int(math.floor((sigma_hi - sigma_lo) / step + 1e-9))
    grid = [sigma_lo + i * step for i in range(n + 1)]
    if grid[-1] < sigma_hi - 1e-12:
        grid.append(sigma_hi)
    vals = [func(s) for s in grid]
    q = chi.modulus if chi is not None else 3
    zeros = []
    for (a, fa), (b, fb) in zip(zip(grid, vals), zip(grid[1:], vals[1:])):
        if fa == 0:
            zeros.append(ZeroBracket(a, a, a, 0.0, exceptional_region_test(a, q, region_c)))
            continue
        if fa * fb > 0 or fb == 0:
            continue
        lo, hi, flo = a, b, fa
        while hi - lo > refine_tol:
            mid = 0.5 * (lo + hi)
            fm = func(mid)
            if fm == 0:
                lo = hi = mid
                break
            if (fm > 0) == (flo > 0):
                lo, flo = mid, fm
            else:
                hi = mid
        beta = 0.5 * (lo + hi)
        zeros.append(ZeroBracket(a, b, beta, abs(func(beta)), exceptional_region_test(beta, q, region_c)))
    if vals and vals[-1] == 0:
        s = grid[-1]
        zeros.append(ZeroBracket(s, s, s, 0.0, s < 1 and exceptional_region_test(s, q, region_c)))
    label = chi.label if chi is not None else "synthetic"
    return ZeroScanReport(label, sigma_lo, sigma_hi, step, tuple(zeros), len(grid))


@dataclass(frozen=True)
class IntegralTerm:
    integral: float
    leading: float
    remainder: float


def integral_term(beta: float, x: float) -> IntegralTerm:
    """int_2^x u^(beta-1) / log u du = Ei(beta log x) - Ei(beta log 2)."""
    if not 0 < beta <= 1:
        raise DomainError("beta must lie in (0, 1]")
    if x < 4:
        raise DomainError("x must be at least 4")
    lx = math.log(x)
    integral = float(expi(beta * lx) - expi(beta * math.log(2.0)))
    leading = x**beta / (beta * lx)
    return IntegralTerm(integral, leading, integral - leading)


@dataclass(frozen=True)
class PntApResidual:
    x: float
    q: int
    a: int
    exact_count: int
    main_term: float
    exceptional_term: float
    residual: float


def pnt_ap_residual(
    x: float,
    q: int,
    a: int,
    chi: Optional[DirichletCharacter] = None,
    beta: Optional[float] = None,
    table: Optional[PrimeTable] = None,
) -> PntApResidual:
    if math.gcd(a, q) != 1:
        raise DomainError(f"gcd({a}, {q}) > 1")
    if x < 100:
        raise DomainError("x must be at least 100")
    if (chi is None) != (beta is None):
        raise DomainError("supply both the character and beta, or neither")
    if table is None or table.limit < x:
        table = sieve_primes(int(x))
    ps = table.primes_in(2, x)
    exact = int(np.count_nonzero(ps % q == a % q))
    phi = euler_phi(q)
    main = li(x) / phi
    exc = 0.0
    if chi is not None:
        if not chi.is_real:
            raise DomainError("exceptional term needs a real character")
        if chi.modulus != q:
            raise DomainError("character modulus differs from q")
        v = char_value(chi, a)
        sign = 0 if v == 0 else (1 if v.t == 0 else -1)
        exc = -sign / phi * integral_term(beta, x).integral
    return PntApResidual(x, q, a % q, exact, main, exc, exact - main - exc)


@dataclass(frozen=True)
class BoundRow:
    name: str
    threshold: float
    kind: str  # "lower", "upper" or "window"
    applicable: bool
    holds: Optional[bool]
    heuristic: bool
    upper: Optional[float] = None
    note: str = ""


@dataclass(frozen=True)
class BoundsReport:
    character: str
    q: int
    L1: float
    rows: tuple[BoundRow, ...]
    info: tuple[str, ...] = field(default=())

    def row(self, name: str) -> BoundRow:
        for r in self.rows:
            if r.name == name:
                return r
        raise KeyError(name)

    def as_dict(self) -> dict:
        return {
            "character": self.character,
            "q": self.q,
            "L1": self.L1,
            "rows": [r.__dict__ for r in self.rows],
            "info": list(self.info),
        }


def bounds_table(q: int, L1: float, label: str = "", siegel_eps: float = 0.1) -> BoundsReport:
    """Compare a value of L(1, chi) for a real primitive chi mod q with the catalogue."""
    sq = math.sqrt(q)
    rows = []
    elem = 1.0 / sq
    rows.append(BoundRow("elementary", elem, "lower", True, L1 > elem, True, note="implied constant set to 1"))
    oest = math.pi / (55.0 * sq) * math.log(q)
    for p, _ in factorize(q):
        oest *= 1.0 - 2.0 * math.sqrt(p) / (p + 1.0)
    rows.append(BoundRow("oesterle", oest, "lower", True, L1 > oest, False))
    benn = 12.0 / sq
    app = q > 6677
    rows.append(
        BoundRow("bennett", benn, "lower", app, (L1 > benn) if app else None, False,
                 note="" if app else "not applicable: conductor <= 6677")
    )
    llq = math.log(math.log(q))
    eg = math.exp(EULER_GAMMA)
    lw_lo = math.pi**2 / (12.0 * eg * llq)
    lw_hi = 2.0 * eg * llq
    rows.append(
        BoundRow("littlewood", lw_lo, "window", True, lw_lo <= L1 <= lw_hi, True, upper=lw_hi,
                 note="GRH-conditional, o(1) terms dropped")
    )
    sieg = q ** (-siegel_eps)
    rows.append(
        BoundRow("siegel", sieg, "lower", True, L1 > sieg, True,
                 note=f"c(eps) = 1, eps = {siegel_eps}; ineffective constant")
    )
    info = (
        f"two-sided relation under GRH with one exception: 1-beta << L(1,chi) << (1-beta)*(loglog q)^2,"
        f" (loglog q)^2 = {llq * llq:.12g}",
    )
    return BoundsReport(label, q, L1, tuple(rows), info)


def bounds_report(chi: DirichletCharacter, siegel_eps: float = 0.1) -> BoundsReport:
    if not (chi.is_real and chi.is_primitive) or chi.is_principal:
        raise DomainError("bounds report needs a real primitive non-principal character")
    L1 = evaluate_L(chi, 1.0, 1e-8).value
    return bounds_table(chi.modulus, L1, chi.label, siegel_eps)

"""Reduced binary quadratic forms of discriminant -q, class numbers, R_q and
the Goldfeld comparator for the location of an exceptional zero."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .arith import factorize
from .characters import kronecker_character
from .errors import DomainError
from .lfunction import evaluate_L

MAX_Q = 10**7


@dataclass(frozen=True, order=True)
class QuadForm:
    a: int
    b: int
    c: int

    @property
    def discriminant(self) -> int:
        return self.b * self.b - 4 * self.a * self.c

    def is_reduced(self) -> bool:
        a, b, c = self.a, self.b, self.c
        return a >= 1 and -a < b <= a <= c and not (a == c and b < 0)


@dataclass(frozen=True)
class ClassData:
    q: int
    forms: tuple[QuadForm, ...]
    R: Fraction

    @property
    def discriminant(self) -> int:
        return -self.q

    @property
    def h(self) -> int:
        return len(self.forms)

    @property
    def w(self) -> int:
        return unit_count(self.q)


def unit_count(q: int) -> int:
    return {3: 6, 4: 4}.get(q, 2)


def enumerate_reduced_forms(q: int) -> ClassData:
    """All reduced (a, b, c) with b^2 - 4ac = -q, ordered by a then b."""
    q = int(q)
    if q < 3 or q % 4 not in (0, 3):
        raise DomainError(f"-{q} is not a discriminant (need q = 0 or 3 mod 4, q >= 3)")
    if q > MAX_Q:
        raise DomainError(f"q = {q} exceeds the enumeration cap {MAX_Q}")
    forms = []
    a = 1
    while 3 * a * a <= q:
        for b in range(-a + 1, a + 1):
            num = b * b + q
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            forms.append(QuadForm(a, b, c))
        a += 1
    R = sum((Fraction(1, f.a) for f in forms), Fraction(0))
    return ClassData(q, tuple(forms), R)


def is_fundamental(q: int) -> bool:
    """Is -q a fundamental discriminant?"""
    if q < 3:
        return False
    if q % 4 == 3:
        return all(e == 1 for _, e in factorize(q))
    if q % 4 == 0:
        m = q // 4
        return m % 4 in (1, 2) and all(e == 1 for _, e in factorize(m))
    return False


def is_fundamental_discriminant(d: int) -> bool:
    """Is d (of either sign, d != 1) a fundamental discriminant?"""
    d = int(d)
    if d in (0, 1):
        return False
    if d % 4 == 1:
        return all(e == 1 for _, e in factorize(abs(d)))
    if d % 4 == 0:
        m = d // 4
        return m % 4 in (2, 3) and all(e == 1 for _, e in factorize(abs(m)))
    return False


@dataclass(frozen=True)
class ClassNumberCheck:
    q: int
    h: int
    w: int
    L_direct: float
    L_formula: float
    diff: float


def class_number_formula_check(q: int, tol: float = 1e-8) -> ClassNumberCheck:
    """L(1, (-q/.)) summed directly against 2 pi h / (w sqrt q)."""
    if not is_fundamental(q):
        raise DomainError(f"-{q} is not a fundamental discriminant")
    data = enumerate_reduced_forms(q)
    w = unit_count(q)
    formula = 2.0 * math.pi * data.h / (w * math.sqrt(q))
    direct = evaluate_L(kronecker_character(-q), 1.0, tol).value
    return ClassNumberCheck(q, data.h, w, direct, formula, direct - formula)


def class_number_L1(q: int) -> float:
    """L(1, (-q/.)) through the class number formula."""
    if not is_fundamental(q):
        raise DomainError(f"-{q} is not a fundamental discriminant")
    return 2.0 * math.pi * enumerate_reduced_forms(q).h / (unit_count(q) * math.sqrt(q))


@dataclass(frozen=True)
class GoldfeldComparison:
    q: int
    beta: float
    L1: float
    R: float
    lhs: float
    rhs: float
    ratio: float


def goldfeld_comparator(q: int, beta: float, L1: Optional[float] = None) -> GoldfeldComparison:
    """1 - beta against (6 / pi^2) L(1, chi) / R_q."""
    if not 0 < beta < 1:
        raise DomainError("beta must lie in (0, 1)")
    if not is_fundamental(q):
        raise DomainError(f"-{q} is not a fundamental discriminant")
    if L1 is None:
        L1 = evaluate_L(kronecker_character(-q), 1.0, 1e-10).value
    R = float(enumerate_reduced_forms(q).R)
    lhs = 1.0 - beta
    rhs = 6.0 / math.pi**2 * L1 / R
    return GoldfeldComparison(q, beta, L1, R, lhs, rhs, lhs / rhs)

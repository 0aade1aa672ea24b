"""Dirichlet characters mod q.

A character is stored as one exponent per cyclic factor of (Z/qZ)^x, so its
values are exact roots of unity e(t/m); floats only appear when a sum is
converted at the end.
"""

from __future__ import annotations

import cmath
import itertools
import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .arith import euler_phi, factorize, mobius
from .errors import CapacityError, DomainError

MAX_MODULUS = 10**6


@dataclass(frozen=True)
class RootOfUnity:
    """e(t/m) = exp(2 pi i t / m), kept in lowest terms."""

    t: int
    m: int

    def __post_init__(self):
        if self.m < 1:
            raise DomainError("denominator must be positive")
        t = self.t % self.m
        g = math.gcd(t, self.m)
        object.__setattr__(self, "t", t // g)
        object.__setattr__(self, "m", self.m // g)

    def __mul__(self, other):
        if isinstance(other, RootOfUnity):
            m = self.m * other.m // math.gcd(self.m, other.m)
            return RootOfUnity(self.t * (m // self.m) + other.t * (m // other.m), m)
        return complex(self) * other

    __rmul__ = __mul__

    def __pow__(self, k: int):
        return RootOfUnity(self.t * k, self.m)

    def conjugate(self) -> RootOfUnity:
        return RootOfUnity(-self.t, self.m)

    def __complex__(self):
        if 4 % self.m == 0:
            return (1 + 0j, 1j, -1 + 0j, -1j)[self.t * 4 // self.m]
        return cmath.exp(2j * math.pi * self.t / self.m)

    def to_complex(self) -> complex:
        return complex(self)

    def is_real(self) -> bool:
        return self.m <= 2


ONE = RootOfUnity(0, 1)


@dataclass(frozen=True, eq=False)
class UnitGroupStructure:
    """(Z/qZ)^x as a product of cyclic groups with per-residue discrete logs.

    ``generators[i]`` is a residue mod q of multiplicative order ``orders[i]``;
    ``local_moduli[i]`` is the prime power the factor lives on.
    ``dlog[i, a]`` is the exponent of generator i in a, or -1 if gcd(a, q) > 1.
    """

    q: int
    generators: tuple[int, ...]
    orders: tuple[int, ...]
    local_moduli: tuple[int, ...]
    dlog: np.ndarray

    @property
    def components(self) -> list[tuple[int, int]]:
        return list(zip(self.generators, self.orders))

    @cached_property
    def phi(self) -> int:
        return math.prod(self.orders)

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*self.orders) if self.orders else 1

    @cached_property
    def unit_mask(self) -> np.ndarray:
        return np.gcd(np.arange(self.q), self.q) == 1

    def log(self, a: int) -> tuple[int, ...] | None:
        a %= self.q
        if math.gcd(a, self.q) != 1:
            return None
        return tuple(int(row[a]) for row in self.dlog)


def _primitive_root(p: int) -> int:
    fs = [r for r, _ in factorize(p - 1)]
    for g in range(2, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in fs):
            return g
    return 1  # p == 2


def _crt_lift(residue: int, pk: int, q: int) -> int:
    """The x mod q with x = residue (mod pk) and x = 1 (mod q / pk)."""
    rest = q // pk
    if rest == 1:
        return residue % q
    # x = 1 + rest * t with rest * t = residue - 1 (mod pk)
    t = (residue - 1) * pow(rest, -1, pk) % pk
    return (1 + rest * t) % q


@lru_cache(maxsize=64)
def unit_group(q: int) -> UnitGroupStructure:
    q = int(q)
    if q < 1 or q > MAX_MODULUS:
        raise CapacityError(f"modulus {q} outside 1..{MAX_MODULUS}")
    residues = np.arange(q)
    gens, orders, moduli, rows = [], [], [], []
    for p, e in factorize(q):
        pk = p**e
        local = residues % pk
        if p == 2:
            if e == 1:
                continue
            if e == 2:
                tab = np.array([-1, 0, -1, 1])
                gens.append(_crt_lift(3, 4, q))
                orders.append(2)
                moduli.append(4)
                rows.append(tab[local])
                continue
            sign_tab = np.full(pk, -1, dtype=np.int64)
            five_tab = np.full(pk, -1, dtype=np.int64)
            x = 1
            for j in range(pk // 4):
                sign_tab[x] = 0
                five_tab[x] = j
                sign_tab[pk - x] = 1
                five_tab[pk - x] = j
                x = x * 5 % pk
            gens += [_crt_lift(pk - 1, pk, q), _crt_lift(5, pk, q)]
            orders += [2, pk // 4]
            moduli += [pk, pk]
            rows += [sign_tab[local], five_tab[local]]
            continue
        g = _primitive_root(p)
        if e > 1 and pow(g, p - 1, p * p) == 1:
            g += p
        order = pk - pk // p
        tab = np.full(pk, -1, dtype=np.int64)
        x = 1
        for j in range(order):
            tab[x] = j
            x = x * g % pk
        gens.append(_crt_lift(g, pk, q))
        orders.append(order)
        moduli.append(pk)
        rows.append(tab[local])
    nonunit = np.gcd(residues, q) != 1
    if rows:
        dlog = np.vstack(rows).astype(np.int32)
        dlog[:, nonunit] = -1
    else:
        dlog = np.zeros((0, q), dtype=np.int32)
    dlog.setflags(write=False)
    return UnitGroupStructure(q, tuple(gens), tuple(orders), tuple(moduli), dlog)


@dataclass(frozen=True, eq=False)
class DirichletCharacter:
    group: UnitGroupStructure
    exponents: tuple[int, ...]

    def __post_init__(self):
        if len(self.exponents) != len(self.group.orders):
            raise DomainError("one exponent per cyclic component required")
        norm = tuple(e % o for e, o in zip(self.exponents, self.group.orders))
        object.__setattr__(self, "exponents", norm)

    @property
    def modulus(self) -> int:
        return self.group.q

    def __eq__(self, other):
        if not isinstance(other, DirichletCharacter):
            return NotImplemented
        return self.modulus == other.modulus and self.exponents == other.exponents

    def __hash__(self):
        return hash((self.modulus, self.exponents))

    def __repr__(self):
        return f"DirichletCharacter(q={self.modulus}, exponents={self.exponents})"

    @property
    def label(self) -> str:
        return f"{self.modulus}:[{','.join(map(str, self.exponents))}]"

    def __call__(self, n: int):
        return char_value(self, n)

    @cached_property
    def order(self) -> int:
        return math.lcm(1, *(o // math.gcd(e, o) for e, o in zip(self.exponents, self.group.orders)))

    @cached_property
    def is_principal(self) -> bool:
        return not any(self.exponents)

    @cached_property
    def is_real(self) -> bool:
        return self.order <= 2

    @cached_property
    def parity(self) -> int:
        if self.modulus <= 2:
            return 1
        v = char_value(self, -1)
        return 1 if v.t == 0 else -1

    @cached_property
    def conductor(self) -> int:
        return conductor(self)

    @cached_property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    @cached_property
    def exponent_table(self) -> np.ndarray:
        """t with chi(a) = e(t / order) per residue a, -1 off the units."""
        m = self.order
        g = self.group
        if not g.orders:
            return np.where(g.unit_mask, 0, -1)
        acc = np.zeros(g.q, dtype=np.int64)
        for e, o, row in zip(self.exponents, g.orders, g.dlog):
            if e:
                acc += (e * m // o) * row.astype(np.int64)
        acc %= m
        acc[~g.unit_mask] = -1
        acc.setflags(write=False)
        return acc

    @cached_property
    def values(self) -> np.ndarray:
        """Complex values chi(0), ..., chi(q - 1)."""
        t = self.exponent_table
        m = self.order
        angle = 2.0 * math.pi * np.where(t < 0, 0, t) / m
        out = np.cos(angle) + 1j * np.sin(angle)
        if m <= 2:
            out = out.real.round() + 0j
        elif m == 4:
            out = np.round(out.real) + 1j * np.round(out.imag)
        out[t < 0] = 0
        out.setflags(write=False)
        return out

    def conjugate(self) -> DirichletCharacter:
        return DirichletCharacter(self.group, tuple(-e for e in self.exponents))

    def __mul__(self, other: DirichletCharacter) -> DirichletCharacter:
        if self.modulus != other.modulus:
            raise DomainError("characters have different moduli")
        return DirichletCharacter(self.group, tuple(a + b for a, b in zip(self.exponents, other.exponents)))


def char_value(chi: DirichletCharacter, n: int) -> RootOfUnity | int:
    """chi(n) as an exact root of unity, or the integer 0 when gcd(n, q) > 1."""
    logs = chi.group.log(n)
    if logs is None:
        return 0
    m = chi.order
    t = sum((e * m // o) * d for e, o, d in zip(chi.exponents, chi.group.orders, logs))
    return RootOfUnity(t, m)


def enumerate_characters(q: int) -> list[DirichletCharacter]:
    g = unit_group(q)
    return [DirichletCharacter(g, ex) for ex in itertools.product(*(range(o) for o in g.orders))]


def principal_character(q: int) -> DirichletCharacter:
    g = unit_group(q)
    return DirichletCharacter(g, (0,) * len(g.orders))


def real_characters(q: int) -> list[DirichletCharacter]:
    """Characters of order <= 2, in the same order as enumerate_characters."""
    g = unit_group(q)
    choices = [(0, o // 2) if o % 2 == 0 else (0,) for o in g.orders]
    return [DirichletCharacter(g, ex) for ex in itertools.product(*choices)]


def real_odd_characters(q: int) -> list[DirichletCharacter]:
    return [chi for chi in real_characters(q) if chi.parity == -1]


def primitive_characters(q: int) -> list[DirichletCharacter]:
    return [chi for chi in enumerate_characters(q) if chi.is_primitive]


def conductor(chi: DirichletCharacter) -> int:
    """Product of the local conductors of the CRT components."""
    g = chi.group
    f = 1
    i = 0
    n = len(g.orders)
    while i < n:
        pk = g.local_moduli[i]
        e, o = chi.exponents[i], g.orders[i]
        if pk % 2 == 0 and pk >= 8:
            # (sign, 5) pair for 2^k, k >= 3
            b, ob = chi.exponents[i + 1], g.orders[i + 1]
            d = ob // math.gcd(b, ob)
            if d > 1:
                f *= 4 * d
            elif e:
                f *= 4
            i += 2
            continue
        if e:
            d = o // math.gcd(e, o)
            if pk == 4:
                f *= 4
            else:
                p = factorize(pk).factors[0][0]
                j = 1
                while d % p == 0:
                    d //= p
                    j += 1
                f *= p**j
        i += 1
    return f


def primitive_inducer(chi: DirichletCharacter) -> DirichletCharacter:
    """The primitive character mod conductor(chi) that induces chi."""
    f = chi.conductor
    q = chi.modulus
    h = unit_group(f)
    ex = []
    for gen, o in zip(h.generators, h.orders):
        n = gen
        while math.gcd(n, q) != 1:
            n += f
        v = char_value(chi, n)
        if o % v.m:
            raise AssertionError("inducer exponent is not integral")
        ex.append(v.t * (o // v.m))
    psi = DirichletCharacter(h, tuple(ex))
    return psi


def kronecker_character(d: int) -> DirichletCharacter:
    """The real character mod |d| whose values match kronecker(d, .)."""
    from .arith import kronecker

    q = abs(int(d))
    want = np.array([kronecker(d, a) for a in range(q)], dtype=np.int64)
    for chi in real_characters(q):
        if np.array_equal(chi.values.real.astype(np.int64), want):
            return chi
    raise DomainError(f"kronecker({d}, .) is not a character mod {q}")


def ramanujan_sum(q: int, k: int) -> int:
    """c_q(k) = mu(q/g) phi(q) / phi(q/g) with g = gcd(k, q)."""
    if q < 1:
        raise DomainError("q must be positive")
    g = math.gcd(k, q)
    r = q // g
    return mobius(r) * euler_phi(q) // euler_phi(r)


def ramanujan_sum_direct(q: int, k: int) -> float:
    """sum over units a mod q of cos(2 pi k a / q); the sine parts cancel."""
    a = np.arange(1, q + 1)
    a = a[np.gcd(a, q) == 1]
    r = (k * a) % q
    return math.fsum(np.cos(2.0 * math.pi * r / q))


def gauss_sum(chi: DirichletCharacter, k: int) -> complex:
    """tau_k(chi) = sum_a e(a k / q) chi(a).

    Terms are collected exactly as multiplicities of e(j / L) with
    L = lcm(q, order), then summed with fsum.
    """
    q = chi.modulus
    m = chi.order
    L = math.lcm(q, m)
    t = chi.exponent_table
    a = np.flatnonzero(t >= 0)
    j = (a * (k % q) * (L // q) + t[a] * (L // m)) % L
    counts = np.bincount(j, minlength=L)
    nz = np.flatnonzero(counts)
    ang = 2.0 * math.pi * nz / L
    return complex(math.fsum(counts[nz] * np.cos(ang)), math.fsum(counts[nz] * np.sin(ang)))


def gauss_sums_all(chi: DirichletCharacter) -> np.ndarray:
    """tau_k(chi) for k = 0, ..., q - 1 (k taken mod q) via one FFT."""
    q = chi.modulus
    return q * np.fft.ifft(chi.values)

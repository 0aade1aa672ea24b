import math

import mpmath
import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from siegel_lab import arith
from siegel_lab.arith import (
    Factorization,
    divisors,
    euler_phi,
    factorize,
    kronecker,
    li,
    mobius,
    omega,
    sieve_primes,
)
from siegel_lab.errors import CapacityError, DomainError


def trial_division_primes(n):
    return [p for p in range(2, n + 1) if all(p % d for d in range(2, math.isqrt(p) + 1))]


class TestSieve:
    def test_small(self):
        assert sieve_primes(10).primes.tolist() == [2, 3, 5, 7]

    def test_hundred_matches_trial_division(self):
        assert sieve_primes(100).primes.tolist() == trial_division_primes(100)

    def test_million_count(self, table_1e6):
        # frozen from sympy.primepi(10**6)
        assert len(table_1e6) == 78498
        assert len(table_1e6) == int(sympy.primepi(10**6))

    def test_flags_agree_with_sympy(self, table_1e4):
        assert table_1e4.primes.tolist() == list(sympy.primerange(2, 10**4 + 1))
        assert table_1e4.is_prime(9973) and not table_1e4.is_prime(9999)

    def test_primes_in_half_open(self, table_1e4):
        assert table_1e4.primes_in(2, 10).tolist() == [3, 5, 7]
        assert table_1e4.primes_in(2.5, 2.9).tolist() == []
        assert table_1e4.count(100) == 25

    def test_capacity(self, table_1e4):
        with pytest.raises(CapacityError):
            sieve_primes(1)
        with pytest.raises(CapacityError):
            table_1e4.primes_in(0, 10**5)
        prev = arith.set_memory_cap(1000)
        try:
            with pytest.raises(CapacityError):
                sieve_primes(1001)
            assert len(sieve_primes(1000)) == 168
        finally:
            arith.set_memory_cap(prev)


class TestFactorize:
    def test_examples(self):
        assert factorize(1).factors == ()
        assert factorize(12).factors == ((2, 2), (3, 1))
        assert factorize(6677).factors == ((11, 1), (607, 1))

    @given(st.integers(min_value=1, max_value=10**10))
    @settings(max_examples=200, deadline=None)
    def test_against_sympy(self, n):
        assert dict(factorize(n).factors) == sympy.factorint(n)

    def test_largest_supported(self):
        lim = arith.factor_limit()
        p = int(sympy.prevprime(lim))
        assert factorize(p).factors == ((p, 1),)
        with pytest.raises(CapacityError):
            factorize(lim + 1)

    def test_validation(self):
        with pytest.raises(DomainError):
            Factorization(12, ((2, 1), (3, 1)))
        with pytest.raises(DomainError):
            factorize(0)


class TestMultiplicative:
    def test_conventions(self):
        assert (euler_phi(1), mobius(1), omega(1)) == (1, 1, 0)
        assert (euler_phi(12), mobius(12), omega(12)) == (4, 0, 2)
        assert (euler_phi(4), mobius(4), omega(4)) == (2, 0, 1)

    @given(st.integers(min_value=1, max_value=10**7))
    @settings(max_examples=200, deadline=None)
    def test_against_sympy(self, n):
        assert euler_phi(n) == sympy.totient(n)
        assert mobius(n) == sympy.mobius(n)
        assert divisors(n) == sympy.divisors(n)

    def test_accepts_factorization(self):
        assert euler_phi(factorize(360)) == 96


class TestKronecker:
    def test_examples(self):
        assert kronecker(17, 1) == 1
        assert kronecker(-3, 3) == 0
        assert kronecker(-4, 3) == -1

    def test_quadratic_residue_brute_force(self):
        # odd prime n: (d/n) from the squares mod n
        for n in sympy.primerange(3, 60):
            squares = {a * a % n for a in range(1, n)}
            for d in range(-40, 41):
                want = 0 if d % n == 0 else (1 if d % n in squares else -1)
                assert kronecker(d, n) == want

    @given(st.integers(-10**6, 10**6), st.integers(1, 10**6).filter(lambda n: n % 2))
    @settings(max_examples=300, deadline=None)
    def test_jacobi_agrees_with_sympy(self, d, n):
        assert kronecker(d, n) == sympy.jacobi_symbol(d % n, n)

    @given(st.integers(-500, 500), st.integers(1, 300), st.integers(1, 300))
    @settings(max_examples=300, deadline=None)
    def test_multiplicative_in_n(self, d, m, n):
        assert kronecker(d, m * n) == kronecker(d, m) * kronecker(d, n)

    def test_two_and_negative(self):
        # (d/2) = 0 for even d, 1 for d = +-1 mod 8, -1 for d = +-3 mod 8
        for d in range(-30, 31):
            want = 0 if d % 2 == 0 else (1 if d % 8 in (1, 7) else -1)
            assert kronecker(d, 2) == want
        assert kronecker(-1, -1) == -1
        assert kronecker(5, -1) == 1


class TestLi:
    def test_boundary(self):
        assert li(2) == 0.0
        with pytest.raises(DomainError):
            li(1.5)

    @pytest.mark.parametrize("x", [2.5, 10, 1000, 10**6, 1e9])
    def test_against_mpmath(self, x):
        want = float(mpmath.li(x) - mpmath.li(2))
        assert li(x) == pytest.approx(want, rel=1e-12)

    def test_against_quadrature(self):
        val, _ = quad(lambda t: 1 / math.log(t), 2, 10, epsabs=1e-12, epsrel=1e-12)
        assert li(10) == pytest.approx(val, abs=1e-10)
        assert li(10) == pytest.approx(5.1204, abs=5e-5)
        assert li(1e6) == pytest.approx(78626.5, abs=0.05)

    def test_monotone_and_asymptotic(self):
        xs = np.linspace(2.01, 1e4, 500)
        vals = [li(x) for x in xs]
        assert all(b > a for a, b in zip(vals, vals[1:]))
        r = li(1e6) * math.log(1e6) / 1e6
        assert 0.9 <= r <= 1.2

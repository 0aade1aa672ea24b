import cmath
import math

import pytest
import sympy

from siegel_lab.arith import euler_phi, li, sieve_primes
from siegel_lab.characters import kronecker_character, real_odd_characters
from siegel_lab.errors import DomainError
from siegel_lab.theorem_lab import (
    default_c3,
    eligible_modulus,
    explicit_decomposition,
    qualifying_divisors,
    step2_identities,
    step3_audit,
    sum_S_direct,
    sum_S_folded,
)


def brute_S(q, x):
    """sum_k (sum_{2<p<=x} e(kp/q))^2 with plain complex exponentials."""
    ps = list(sympy.primerange(3, math.floor(x) + 1))
    return sum(sum(cmath.exp(2j * math.pi * k * p / q) for p in ps) ** 2 for k in range(1, q + 1))


class TestSumS:
    def test_q3_x10(self):
        d = sum_S_direct(3, 10)
        assert d.S_direct == pytest.approx(9, abs=1e-12)
        assert sum_S_folded(3, 10) == 9
        assert brute_S(3, 10) == pytest.approx(9, abs=1e-10)

    def test_empty(self):
        assert sum_S_direct(3, 2.5).S_direct == 0
        assert sum_S_folded(3, 2.5) == 0

    def test_q4_x100_is_real(self):
        d = sum_S_direct(4, 100)
        assert abs(d.S_imag_residual) <= 1e-9 * abs(d.S_direct)
        assert d.S_direct == pytest.approx(brute_S(4, 100).real, rel=1e-12)
        assert sum_S_folded(4, 100) == 1144

    def test_q2_x100(self):
        assert sum_S_direct(2, 100).S_direct == pytest.approx(sum_S_folded(2, 100), rel=1e-9)

    @pytest.mark.parametrize("q", [3, 5, 12, 17, 30, 60])
    def test_against_brute_force(self, q):
        assert sum_S_direct(q, 2000).S_direct == pytest.approx(brute_S(q, 2000).real, rel=1e-11)

    def test_fold_identity_sweep(self, table_1e4):
        for x in (10**3, 10**4):
            for q in range(3, 61):
                d = sum_S_direct(q, x, table_1e4)
                f = sum_S_folded(q, x, table_1e4)
                assert abs(d.S_direct - f) <= 1e-9 * max(1, f)
                assert abs(d.S_imag_residual) <= 1e-6 * (1 + abs(d.S_direct))

    def test_fft_and_scan_folds_agree(self):
        table = sieve_primes(2 * 10**5)
        # x above the scan limit goes through the FFT route
        for q in (3, 7, 20):
            assert sum_S_folded(q, 2 * 10**5, table) == pytest.approx(sum_S_direct(q, 2 * 10**5, table).S_direct, rel=1e-9)


class TestStep2:
    def test_examples(self):
        r5 = step2_identities(5)
        assert r5.ramanujan_sum_total == 0 and r5.ramanujan_square_total == 20
        r3 = step2_identities(3)
        assert r3.gauss_square_values == (pytest.approx(-1.5, abs=1e-12),)
        assert step2_identities(4).ramanujan_square_total == 8

    @pytest.mark.parametrize("q", range(3, 201))
    def test_all_pass(self, q):
        r = step2_identities(q)
        assert r.passes(1e-8)
        assert r.ramanujan_square_expected == q * euler_phi(q)

    def test_domain(self):
        with pytest.raises(DomainError):
            step2_identities(2)


class TestExplicitDecomposition:
    def test_q3_million(self, table_1e6):
        d = explicit_decomposition(3, 10**6, table=table_1e6, fold=False)
        assert d.main_li == pytest.approx(1.5 * li(1e6) ** 2)
        assert d.main_li == pytest.approx(1.5 * 78626.5**2, rel=1e-5)
        assert d.main_zero is None
        assert d.residual == pytest.approx(d.S_direct - d.main_li)

    def test_beta_one(self, table_1e4):
        x = 10**4
        d = explicit_decomposition(4, x, kronecker_character(-4), 1.0, table_1e4)
        assert d.main_zero == pytest.approx(-(4 / 2) * x**2 / math.log(x) ** 2)
        assert d.S_folded == pytest.approx(d.S_direct, rel=1e-9)

    def test_tiny_x(self):
        d = explicit_decomposition(5, 2.5, fold=True)
        assert d.S_direct == 0 and d.S_folded == 0
        assert d.main_li == pytest.approx(5 / 4 * li(2.5) ** 2) and d.main_li > 0
        assert d.residual == pytest.approx(-d.main_li)

    def test_beta_needs_character(self):
        with pytest.raises(DomainError):
            explicit_decomposition(3, 100, None, 0.9)


class TestStep3:
    def gap(self, q, delta, c3):
        return delta / (32 * c3) * euler_phi(q) / (q * math.log(q) ** 2)

    def test_constructed_pass(self):
        q, delta = 10**4, 0.5
        c3 = default_c3(1.0)
        beta = 1 - 2 * self.gap(q, delta, c3)
        a = step3_audit(q, 1e12, delta, beta, c3)
        assert a.verdict and a.c == pytest.approx(delta / (32 * c3))

    def test_constructed_fail(self):
        # c3 = 16 needs c3 > (4/ctilde)^2, so ctilde = 2 here
        a = step3_audit(10**4, 1e12, 0.5, 1 - 1e-12, c3=16, ctilde=2.0)
        assert not a.verdict

    def test_delta_bounds(self):
        with pytest.raises(DomainError, match="delta < 8"):
            step3_audit(100, 1e6, 8.0, 0.9)
        with pytest.raises(DomainError):
            step3_audit(100, 1e6, 0.0, 0.9)

    def test_c3_constraint(self):
        with pytest.raises(DomainError, match="4/ctilde"):
            step3_audit(100, 1e6, 0.5, 0.9, c3=16, ctilde=1.0)

    def test_flags(self):
        q = 20
        lq = math.log(q)
        x_in = math.exp(16.5 * lq**2)  # window [16 lq^2, 17 lq^2] at ctilde = 1
        a = step3_audit(q, x_in, 0.5, 0.99)
        assert a.x_in_window and a.q_le_x_over_4
        assert a.window_lower == pytest.approx(16 * lq**2) and a.window_upper == pytest.approx(17 * lq**2)
        assert a.q_le_exp_C_sqrt_log_x
        b = step3_audit(1000, 1e6, 0.5, 0.99)
        assert not b.x_in_window and b.q_le_exp_C_sqrt_log_x is False
        assert b.lhs == pytest.approx(1e6 ** (2 * 0.99 - 2))
        assert b.rhs == pytest.approx(1 - 0.5 / 8 * euler_phi(1000) / 1000)


class TestEligibility:
    def test_examples(self):
        e3 = eligible_modulus(3)
        assert e3.qualifying == (3,) and e3.eligible and e3.odd_real_count == 1
        e12 = eligible_modulus(12)
        assert e12.qualifying == (3, 4) and not e12.eligible
        e20 = eligible_modulus(20)
        assert e20.qualifying == (4,) and e20.eligible

    def test_eligible_20_has_two_odd_real_characters(self):
        # the uniqueness claim fails here: chi_-4 induced to 20 and chi_-20
        odd = real_odd_characters(20)
        assert sorted(c.conductor for c in odd) == [4, 20]

    @pytest.mark.parametrize("q", range(3, 400))
    def test_qualifying_divisors(self, q):
        want = [4] if q % 4 == 0 else []
        want += [p for p in sympy.primefactors(q) if p % 4 == 3]
        assert qualifying_divisors(q) == tuple(sorted(want))

    def test_multi_qualifying_never_unique(self):
        for q in range(3, 2001):
            e = eligible_modulus(q)
            if len(e.qualifying) >= 2:
                assert e.odd_real_count != 1

    def test_unique_exactly_for_cyclic_two_part(self):
        # one odd real character iff q in {4, p^k, 2 p^k} with p = 3 mod 4
        for q in range(3, 600):
            f = sympy.factorint(q)
            odd = {p: k for p, k in f.items() if p != 2}
            special = q == 4 or (len(odd) == 1 and next(iter(odd)) % 4 == 3 and f.get(2, 0) <= 1)
            assert (eligible_modulus(q).odd_real_count == 1) == special

import math

import mpmath
import numpy as np
import pytest
from scipy.integrate import quad

from siegel_lab.arith import li
from siegel_lab.characters import (
    enumerate_characters,
    kronecker_character,
    primitive_characters,
    principal_character,
    real_characters,
)
from siegel_lab.errors import DomainError, UnsupportedError
from siegel_lab.lfunction import (
    bounds_report,
    bounds_table,
    evaluate_L,
    exceptional_region_test,
    integral_term,
    pnt_ap_residual,
    scan_real_zeros,
)


def hurwitz_L(chi, s):
    """Independent oracle: L(s, chi) = q^-s sum_a chi(a) zeta(s, a/q); digamma form at s = 1."""
    q = chi.modulus
    mpmath.mp.dps = 30
    total = mpmath.mpc(0)
    for a in range(1, q + 1):
        v = complex(chi.values[a % q])
        if v == 0:
            continue
        if s == 1:
            total += v * mpmath.digamma(mpmath.mpf(a) / q)
        else:
            total += v * mpmath.zeta(s, mpmath.mpf(a) / q)
    val = -total / q if s == 1 else total * mpmath.mpf(q) ** (-s)
    return complex(val)


class TestEvaluateL:
    def test_ground_truth(self):
        assert evaluate_L(kronecker_character(-4), 1.0, 1e-10).value == pytest.approx(math.pi / 4, abs=1e-10)
        assert evaluate_L(kronecker_character(-3), 1.0, 1e-10).value == pytest.approx(
            math.pi / (3 * math.sqrt(3)), abs=1e-10
        )
        assert math.pi / (3 * math.sqrt(3)) == pytest.approx(0.60459979, abs=1e-8)

    def test_leibniz_oracle(self):
        # alternating series with exact Euler-transformed sum from mpmath
        leib = float(mpmath.nsum(lambda k: (-1) ** k / (2 * k + 1), [0, mpmath.inf]))
        assert evaluate_L(kronecker_character(-4), 1.0, 1e-12).value == pytest.approx(leib, abs=2e-12)

    @pytest.mark.parametrize("q", [5, 7, 8, 12, 13, 15, 16, 21, 24, 40])
    @pytest.mark.parametrize("s", [0.3, 0.5, 0.8, 1.0, 1.5, 2.0])
    def test_against_hurwitz(self, q, s):
        for chi in enumerate_characters(q):
            if chi.is_principal:
                continue
            r = evaluate_L(chi, s, 1e-11)
            assert complex(r.value) == pytest.approx(hurwitz_L(chi, s), abs=5e-11)
            assert r.tail_bound <= 1e-11

    def test_tolerance_is_honoured(self):
        for chi in real_characters(163)[1:]:
            for tol in (1e-4, 1e-8, 1e-12):
                r = evaluate_L(chi, 0.6, tol)
                assert abs(r.value - hurwitz_L(chi, 0.6).real) <= tol

    def test_conjugate_symmetry(self):
        chi = [c for c in enumerate_characters(5) if c.order == 4][0]
        a = evaluate_L(chi, 0.8).value
        b = evaluate_L(chi.conjugate(), 0.8).value
        assert b == pytest.approx(a.conjugate(), abs=1e-12)
        assert abs(a.imag) > 0.01

    def test_real_characters_give_real_values(self):
        assert isinstance(evaluate_L(kronecker_character(-7), 1.0).value, float)

    def test_domain(self):
        chi = kronecker_character(-3)
        with pytest.raises(UnsupportedError):
            evaluate_L(principal_character(5), 1.0)
        for bad in (0.0, -1.0, 2.5):
            with pytest.raises(DomainError):
                evaluate_L(chi, bad)
        with pytest.raises(DomainError):
            evaluate_L(chi, 1.0, 1e-13)


class TestZeroScan:
    def test_chi_minus3_and_minus4(self):
        for d in (-3, -4):
            rep = scan_real_zeros(kronecker_character(d), 0.5, 0.999, 1e-3, 1e-12)
            assert rep.zeros == ()
            assert rep.grid_points == 500

    def test_dense_evaluation_oracle_positive(self):
        chi = kronecker_character(-3)
        for s in np.linspace(0.5, 0.999, 30):
            assert hurwitz_L(chi, s).real > 0

    def test_synthetic_hook(self):
        rep = scan_real_zeros(None, 0.5, 0.999, 1e-3, 1e-12, func=lambda s: s - 0.9)
        assert len(rep.zeros) == 1
        assert rep.zeros[0].beta == pytest.approx(0.9, abs=1e-12)

    def test_synthetic_multiple_roots(self):
        f = lambda s: (s - 0.61234) * (s - 0.95) * (s - 0.7777)  # noqa: E731
        rep = scan_real_zeros(None, 0.5, 0.999, 1e-3, 1e-12, func=f)
        assert [round(z.beta, 10) for z in rep.zeros] == [0.61234, 0.7777, 0.95]

    def test_rejects_complex_character(self):
        chi = [c for c in enumerate_characters(5) if c.order == 4][0]
        with pytest.raises(DomainError):
            scan_real_zeros(chi, 0.5, 0.9, 1e-2)


class TestExceptionalRegion:
    def test_examples(self):
        assert exceptional_region_test(1 - 1e-6, 10**4, 1.0)
        assert not exceptional_region_test(0.5, 10**4, 1.0)
        for q in (3, 17, 10**4, 10**6):
            beta = 1 - 1.0 / (2 * math.log(q))
            assert exceptional_region_test(beta, q, 1.0)
            assert not exceptional_region_test(beta - 1e-6, q, 1.0)


class TestIntegralTerm:
    def test_beta_one_is_li(self):
        it = integral_term(1.0, 1e6)
        assert it.integral == pytest.approx(li(1e6), rel=1e-14)
        assert it.leading == pytest.approx(72382.4, abs=0.05)
        assert abs(it.remainder) <= 4 * 1e6 / math.log(1e6) ** 2

    @pytest.mark.parametrize("beta,x", [(0.5, 4), (0.7, 100), (0.95, 1e5), (0.3, 50)])
    def test_two_quadratures(self, beta, x):
        f = lambda u: u ** (beta - 1) / math.log(u)  # noqa: E731
        q1, _ = quad(f, 2, x, epsabs=1e-13, epsrel=1e-13, limit=200)
        q2 = float(mpmath.quad(lambda u: u ** (beta - 1) / mpmath.log(u), [2, x]))
        assert integral_term(beta, x).integral == pytest.approx(q1, rel=1e-9)
        assert q1 == pytest.approx(q2, rel=1e-8)

    def test_midpoint_small_x(self):
        n = 200000
        h = 2.0 / n
        u = 2 + h * (np.arange(n) + 0.5)
        mid = float(np.sum(u ** (-0.5) / np.log(u)) * h)
        assert integral_term(0.5, 4).integral == pytest.approx(mid, abs=1e-8)

    def test_domain(self):
        with pytest.raises(DomainError):
            integral_term(0, 100)
        with pytest.raises(DomainError):
            integral_term(0.5, 3)


class TestPntAp:
    def test_counts(self, table_1e6):
        r1 = pnt_ap_residual(1e6, 3, 1, table=table_1e6)
        r2 = pnt_ap_residual(1e6, 3, 2, table=table_1e6)
        # frozen from sympy.primerange(3, 10**6 + 1) filtered by residue
        assert r1.exact_count == 39231
        assert r2.exact_count == 39265
        assert r1.exact_count + r2.exact_count == 78496
        assert r1.exceptional_term == 0.0
        assert r1.main_term == pytest.approx(li(1e6) / 2)

    @pytest.mark.parametrize("q", [3, 4, 5, 7])
    def test_residual_within_two_percent(self, q, table_1e6):
        for a in range(1, q):
            if math.gcd(a, q) == 1:
                r = pnt_ap_residual(1e6, q, a, table=table_1e6)
                assert abs(r.residual) <= 0.02 * r.main_term

    def test_exceptional_term_sign(self, table_1e6):
        chi = kronecker_character(-4)
        r1 = pnt_ap_residual(1e5, 4, 1, chi, 0.8, table_1e6)
        r3 = pnt_ap_residual(1e5, 4, 3, chi, 0.8, table_1e6)
        assert r1.exceptional_term < 0 < r3.exceptional_term
        assert r1.exceptional_term == pytest.approx(-integral_term(0.8, 1e5).integral / 2)

    def test_domain(self, table_1e6):
        with pytest.raises(DomainError):
            pnt_ap_residual(1e6, 4, 2, table=table_1e6)
        with pytest.raises(DomainError):
            pnt_ap_residual(1e6, 4, 1, kronecker_character(-4), None, table_1e6)


class TestBounds:
    def test_chi_minus4_elementary(self):
        rep = bounds_report(kronecker_character(-4))
        assert rep.L1 == pytest.approx(math.pi / 4, abs=1e-8)
        row = rep.row("elementary")
        assert row.threshold == 0.5 and row.holds

    def test_chi_minus3_oesterle(self):
        rep = bounds_report(kronecker_character(-3))
        want = math.pi / (55 * math.sqrt(3)) * math.log(3) * (1 - 2 * math.sqrt(3) / 4)
        assert rep.row("oesterle").threshold == pytest.approx(want, rel=1e-12)
        assert want == pytest.approx(0.00486, abs=1e-5)
        assert rep.row("oesterle").holds

    def test_bennett_applicability(self):
        assert not bounds_table(6677, 1.0).row("bennett").applicable
        row = bounds_table(6679, 1.0).row("bennett")
        assert row.applicable and row.threshold == pytest.approx(12 / math.sqrt(6679))

    def test_heuristic_flags(self):
        rep = bounds_report(kronecker_character(-163))
        assert rep.row("oesterle").heuristic is False
        assert rep.row("siegel").heuristic and rep.row("elementary").heuristic

    def test_requires_real_primitive(self):
        with pytest.raises(DomainError):
            bounds_report([c for c in real_characters(12) if c.conductor == 3][0])

    @pytest.mark.parametrize("q", range(3, 120))
    def test_unconditional_rows_hold(self, q):
        for chi in primitive_characters(q):
            if chi.is_real and chi.parity == -1:
                rep = bounds_report(chi)
                assert rep.row("oesterle").holds

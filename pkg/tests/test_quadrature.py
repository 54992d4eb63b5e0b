"""Engine tests: closed-form integrals and series with known values.

Expected values come from Gamma-function identities and from mpmath's
arbitrary-precision zeta/polylog, independent of the engine under test.
"""

import math

import mpmath
import pytest

from screened_casimir import (ConvergenceError, RatioBoundError,
                              integrate_semi_infinite, polylog3,
                              sum_geometric_like, zeta3)

ZETA3 = float(mpmath.zeta(3))
ZETA4 = float(mpmath.zeta(4))


def gamma_integral(k, c):
    """int_0^inf q^k e^{-c q} dq = k! / c^(k+1)."""
    return math.factorial(k) / c ** (k + 1)


GAMMA_CASES = [(k, c) for k in (0, 1, 2, 3, 4, 6) for c in (0.5, 1.0, 2.0)]


class TestIntegrateSemiInfinite:
    @pytest.mark.parametrize("k,c", GAMMA_CASES)
    def test_gamma_family(self, k, c):
        res = integrate_semi_infinite(lambda q: q**k * math.exp(-c * q), 1.0 / c,
                                      tol=1e-12)
        assert res.converged
        assert res.value == pytest.approx(gamma_integral(k, c), rel=1e-12)

    def test_q2_exp_minus_2q(self):
        res = integrate_semi_infinite(lambda q: q * q * math.exp(-2 * q), 0.5,
                                      tol=1e-12)
        assert res.converged
        assert res.value == pytest.approx(0.25, rel=1e-12)

    def test_q_exp_minus_q(self):
        res = integrate_semi_infinite(lambda q: q * math.exp(-q), 1.0, tol=1e-12)
        assert res.value == pytest.approx(1.0, rel=1e-12)

    def test_zero_integrand(self):
        res = integrate_semi_infinite(lambda q: 0.0, 1.0)
        assert res.converged
        assert res.value == 0.0

    def test_determinism(self):
        f = lambda q: q**3 * math.exp(-1.5 * q) / (1.0 + q)
        first = integrate_semi_infinite(f, 1.0 / 1.5, tol=1e-11)
        second = integrate_semi_infinite(f, 1.0 / 1.5, tol=1e-11)
        assert first == second

    def test_rejects_bad_scale(self):
        with pytest.raises(ValueError):
            integrate_semi_infinite(lambda q: q, 0.0)

    def test_rejects_bad_tol(self):
        with pytest.raises(ValueError):
            integrate_semi_infinite(lambda q: q, 1.0, tol=0.0)


class TestSumGeometricLike:
    def test_polylog_li3_one_ninth(self):
        value = sum_geometric_like(lambda n: (1 / 9) ** n / n**3,
                                   ratio_bound=1 / 9, tol=1e-13)
        assert value.value == pytest.approx(float(mpmath.polylog(3, 1 / 9)),
                                            rel=1e-13)
        assert value.tail_bound <= 1e-13 * abs(value.value)

    def test_zeta3_power_fallback(self):
        value = sum_geometric_like(lambda n: 1.0 / n**3, ratio_bound=1.0,
                                   tol=1e-12)
        assert value.value == pytest.approx(ZETA3, rel=1e-12)

    def test_zeta4_power_fallback(self):
        value = sum_geometric_like(lambda n: 1.0 / n**4, ratio_bound=1.0,
                                   tol=1e-12)
        assert value.value == pytest.approx(ZETA4, rel=1e-12)

    def test_plain_geometric(self):
        x = 0.37
        value = sum_geometric_like(lambda n: x**n, ratio_bound=x, tol=1e-13)
        assert value.value == pytest.approx(x / (1 - x), rel=1e-13)

    def test_single_nonzero_term(self):
        value = sum_geometric_like(lambda n: 0.7 if n == 1 else 0.0,
                                   ratio_bound=0.5, tol=1e-12)
        assert value.value == 0.7

    def test_all_zero(self):
        value = sum_geometric_like(lambda n: 0.0, ratio_bound=0.5, tol=1e-12)
        assert value.value == 0.0

    def test_ratio_violation_raises(self):
        with pytest.raises(RatioBoundError):
            sum_geometric_like(lambda n: 2.0**n, ratio_bound=0.5, tol=1e-12)

    def test_divergent_power_raises(self):
        with pytest.raises(ConvergenceError):
            sum_geometric_like(lambda n: 1.0 / n, ratio_bound=1.0, tol=1e-12,
                               max_terms=4096)

    def test_rejects_bad_ratio(self):
        with pytest.raises(ValueError):
            sum_geometric_like(lambda n: 0.0, ratio_bound=1.5)


class TestHelpers:
    def test_zeta3_helper(self):
        assert zeta3(1e-13) == pytest.approx(ZETA3, rel=1e-12)

    def test_polylog3_values(self):
        for x in (0.1, 1 / 9, 0.5, 0.81, 0.95):
            assert polylog3(x, 1e-13) == pytest.approx(
                float(mpmath.polylog(3, x)), rel=1e-12)

    def test_polylog3_zero(self):
        assert polylog3(0.0) == 0.0

    def test_polylog3_at_one_is_zeta3(self):
        assert polylog3(1.0, 1e-12) == pytest.approx(ZETA3, rel=1e-11)


class TestToleranceHonesty:
    """Reported error estimates must dominate the true error.

    Over a mixed suite of >= 20 closed-form integrals and series, the
    report must be >= the true error in at least 95% of cases and never
    low by more than a factor of 10.
    """

    def _cases(self):
        cases = []
        for k, c in GAMMA_CASES:  # 18 integrals
            res = integrate_semi_infinite(lambda q, k=k, c=c: q**k * math.exp(-c * q),
                                          1.0 / c, tol=1e-11)
            cases.append((res.abs_error_estimate,
                          abs(res.value - gamma_integral(k, c))))
        for x in (0.2, 0.5, 0.9):  # 3 geometric series
            res = sum_geometric_like(lambda n, x=x: x**n / n**3, ratio_bound=x,
                                     tol=1e-11)
            cases.append((res.tail_bound,
                          abs(res.value - float(mpmath.polylog(3, x)))))
        for p, exact in ((3, ZETA3), (4, ZETA4)):  # 2 power-law series
            res = sum_geometric_like(lambda n, p=p: 1.0 / n**p, ratio_bound=1.0,
                                     tol=1e-11)
            cases.append((res.tail_bound, abs(res.value - exact)))
        return cases

    def test_error_estimates_honest(self):
        cases = self._cases()
        assert len(cases) >= 20
        covered = sum(1 for report, true in cases if report >= true)
        assert covered >= math.ceil(0.95 * len(cases))
        for report, true in cases:
            assert true <= 10.0 * report + 1e-15

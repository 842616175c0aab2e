"""Order fits, ratio machinery, root finders and the comparison table."""

import math

import numpy as np
import pytest

from fracorder import (
    AbsShift,
    Affine,
    BracketingError,
    DegenerateFitError,
    DomainError,
    ErrorReport,
    Exponential,
    Interval,
    NormKind,
    OperatorKind,
    Power,
    error_l1,
    error_linf,
    error_sweep,
    fit_order,
    gamma,
    ln_gamma,
    mittag_leffler_one,
    ratio_cf_over_c_l1,
    ratio_limit,
    s_star,
    t_star,
    table1,
)

C = OperatorKind.CAPUTO
CF = OperatorKind.CAPUTO_FABRIZIO
RL = OperatorKind.RIEMANN_LIOUVILLE
I01 = Interval(0.0, 1.0)

# ten-digit reference values for the comparison table, m -> (T=1, T=m-1)
TABLE_REFERENCE = {
    3: (1.592207522, 0.8881460240),
    4: (1.991876242, 0.8179851126),
    5: (2.344504178, 0.7816816178),
    6: (2.669821563, 0.7594559202),
}


def synthetic_reports(betas, values):
    return [
        ErrorReport(C, beta, NormKind.L1, I01, value, 1) for beta, value in zip(betas, values)
    ]


class TestFitOrder:
    def test_exact_power_law(self):
        betas = [0.1, 0.05, 0.02, 0.01]
        fit = fit_order(synthetic_reports(betas, [3.0 * b**0.7 for b in betas]))
        assert fit.r_hat == pytest.approx(0.7, abs=1e-12)
        assert fit.log_c_hat == pytest.approx(math.log(3.0), abs=1e-12)
        assert fit.residual <= 1e-12
        assert fit.n_points == 4

    def test_cf_exponential_rate(self):
        betas = list(np.logspace(-1, -4, 37))
        reports = error_sweep(Exponential(), CF, NormKind.L1, betas, I01)
        fit = fit_order(reports)
        assert 0.95 <= fit.r_hat <= 1.01

    def test_rl_constant_refused(self):
        betas = list(np.logspace(-1, -3, 25))
        reports = error_sweep(Affine(0.0, 1.0), RL, NormKind.L1, betas, I01)
        with pytest.raises(DegenerateFitError, match="do not decay"):
            fit_order(reports)

    def test_zero_values_refused(self):
        betas = [0.1, 0.05, 0.02, 0.01]
        with pytest.raises(DegenerateFitError, match="non-positive"):
            fit_order(synthetic_reports(betas, [1.0, 0.5, 0.0, 0.1]))

    def test_non_power_law_refused(self):
        betas = [0.1, 0.05, 0.02, 0.01, 0.005]
        values = [1.0, 1e-3, 1.0, 1e-3, 1.0]  # wildly oscillating
        with pytest.raises(DegenerateFitError, match="power law"):
            fit_order(synthetic_reports(betas, values))

    def test_needs_four_points(self):
        betas = [0.1, 0.05, 0.02]
        with pytest.raises(DomainError):
            fit_order(synthetic_reports(betas, [b for b in betas]))

    def test_mixed_sweeps_rejected(self):
        betas = [0.1, 0.05, 0.02, 0.01]
        reports = synthetic_reports(betas, [b for b in betas])
        other = ErrorReport(CF, 0.005, NormKind.L1, I01, 0.005, 1)
        with pytest.raises(DomainError):
            fit_order(reports + [other])


class TestRatioFiniteBeta:
    def test_tends_to_table_values(self):
        got = ratio_cf_over_c_l1(3, 1.0, 1e-4)
        assert got.value == pytest.approx(1.5922, abs=1e-2)
        got = ratio_cf_over_c_l1(3, 2.0, 1e-4)
        assert got.value == pytest.approx(0.8881, abs=1e-2)

    def test_numerator_matches_l1_error(self):
        # the closed-form numerator must equal the adaptively integrated
        # L1 error of t^m under the exponential-kernel derivative
        for m, T, beta in [(3, 1.5, 0.2), (4, 2.0, 0.35), (2, 1.0, 0.1)]:
            rate = (1.0 - beta) / beta
            numerator = (
                T**m
                / (1.0 - beta)
                * (gamma(m + 1.0) * mittag_leffler_one(m + 1.0, -rate * T) - beta)
            )
            report = error_l1(Power(float(m), 0.0), CF, beta, Interval(0.0, T))
            assert report.value == pytest.approx(numerator, abs=1e-7)

    def test_denominator_matches_l1_error(self):
        for m, T, beta in [(3, 1.5, 0.2), (2, 1.0, 0.1)]:
            denominator = (
                T**m
                / gamma(m + beta + 1.0)
                * (gamma(m + beta + 1.0) - gamma(m + 1.0) * T**beta)
            )
            report = error_l1(Power(float(m), 0.0), C, beta, Interval(0.0, T))
            assert report.value == pytest.approx(denominator, abs=1e-7)

    def test_domain(self):
        with pytest.raises(DomainError):
            ratio_cf_over_c_l1(3, 2.5, 0.1)  # T > m - 1
        with pytest.raises(DomainError):
            ratio_cf_over_c_l1(1, 0.5, 0.1)
        with pytest.raises(DomainError):
            ratio_cf_over_c_l1(3, 1.0, 0.0)


class TestRatioLimit:
    def test_reference_values(self):
        assert ratio_limit(3, 1.0).value == pytest.approx(1.592207522, abs=1e-8)
        assert ratio_limit(5, 4.0).value == pytest.approx(0.7816816178, abs=1e-8)
        assert ratio_limit(6, 1.0).value == pytest.approx(2.669821563, abs=1e-8)

    def test_digamma_expression(self):
        # independent recomputation from the digamma recurrence
        euler_gamma = 0.5772156649015329
        psi4 = 11.0 / 6.0 - euler_gamma
        assert ratio_limit(3, 1.0).value == pytest.approx(2.0 / psi4, rel=1e-12)

    def test_domain(self):
        with pytest.raises(DomainError):
            ratio_limit(3, 0.0)
        with pytest.raises(DomainError):
            ratio_limit(3, 2.00001)
        with pytest.raises(DomainError):
            ratio_limit(2.5, 1.0)


class TestTable:
    def test_rows(self):
        rows = table1()
        assert [m for m, _, _ in rows] == [3, 4, 5, 6]
        for m, at_one, at_top in rows:
            ref_one, ref_top = TABLE_REFERENCE[m]
            assert at_one == pytest.approx(ref_one, abs=1e-8)
            assert at_top == pytest.approx(ref_top, abs=1e-8)

    def test_finite_beta_approach(self):
        for m, _, _ in table1():
            for T in (1.0, float(m - 1)):
                finite = ratio_cf_over_c_l1(m, T, 1e-5).value
                limit = ratio_limit(m, T).value
                assert abs(finite - limit) <= 1e-2


class TestTStar:
    def test_known_value(self):
        # for m=2, beta=1/2 the defining equation reduces to (1-e^-x)/x = 1/2
        # with v = x beta/(1-beta); bisect it independently
        lo, hi = 1.0, 3.0
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if (1.0 - math.exp(-mid)) / mid > 0.5:
                lo = mid
            else:
                hi = mid
        oracle = 0.5 * (lo + hi)  # equals v since beta/(1-beta) = 1
        assert t_star(2, 0.5) == pytest.approx(oracle, abs=1e-8)
        assert t_star(2, 0.5) == pytest.approx(1.59362426, abs=1e-6)

    def test_bound_and_residual(self):
        rng = np.random.default_rng(2024)
        for _ in range(40):
            m = int(rng.integers(2, 9))
            beta = float(rng.uniform(0.01, 0.99))
            v = t_star(m, beta)
            assert v >= m - 1
            rate = (1.0 - beta) / beta
            residual = gamma(float(m)) * mittag_leffler_one(float(m), -rate * v) - beta
            assert abs(residual) <= 1e-9

    def test_domain(self):
        with pytest.raises(DomainError):
            t_star(1, 0.5)
        with pytest.raises(DomainError):
            t_star(3, 0.0)


class TestSStar:
    def test_known_value(self):
        assert s_star(2, 0.5) == pytest.approx((gamma(2.5) / gamma(2.0)) ** 2, rel=1e-13)

    def test_bound_and_residual(self):
        rng = np.random.default_rng(99)
        for _ in range(40):
            m = int(rng.integers(2, 9))
            beta = float(rng.uniform(0.01, 0.99))
            w = s_star(m, beta)
            assert w >= m - 1
            residual = math.exp(
                beta * math.log(w) + ln_gamma(float(m)) - ln_gamma(m + beta)
            ) - 1.0
            assert abs(residual) <= 1e-9

    def test_small_beta_limit(self):
        # s*(beta) -> e^(Psi(m)) as beta -> 0
        from fracorder import digamma

        for m in (2, 5):
            assert s_star(m, 1e-6) == pytest.approx(math.exp(digamma(float(m))), abs=1e-4)
        assert s_star(2, 1e-6) == pytest.approx(1.5262, abs=1e-3)


class TestSupNormExamples:
    def test_identity_function_verdict(self):
        # sup-norm error of f(t) = t: Caputo error is exactly 1 and the
        # exponential-kernel error is at least 1, so the ratio is >= 1
        for beta in (0.1, 0.01):
            c = error_linf(Affine(1.0, 0.0), C, beta, I01)
            cf = error_linf(Affine(1.0, 0.0), CF, beta, I01)
            assert c.value == pytest.approx(1.0, abs=1e-12)
            assert cf.value >= c.value - 1e-12

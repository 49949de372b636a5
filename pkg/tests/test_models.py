import numpy as np
import pytest

from stableport import (
    ArmaModel,
    ArModel,
    FitError,
    FitResult,
    StableParams,
    ar_equivalent,
    diagnostic_projection,
    fit_arma_css,
    fit_burg,
    fit_least_squares,
    impulse_responses,
    residual_acf,
    sample_acf,
    sample_stable,
    simulate_ar,
    simulate_arma,
)
from stableport.models import default_burn_in

from conftest import random_stationary_ar


def _ar1_series(phi, alpha, n, seed):
    model = ArModel([phi])
    burn = default_burn_in(1)
    z = sample_stable(StableParams(alpha), n + burn, np.random.default_rng(seed))
    return simulate_ar(model, z, burn)


class TestModels:
    def test_ar_stationarity_enforced(self):
        with pytest.raises(FitError):
            ArModel([1.1])
        assert ArModel([0.99]).is_stationary

    def test_ar_check_deferred(self):
        m = ArModel([2.0], check=False)
        assert not m.is_stationary
        with pytest.raises(FitError):
            simulate_ar(m, np.zeros(10))

    def test_arma_invertibility_enforced(self):
        with pytest.raises(FitError):
            ArmaModel([0.5], [1.2])
        m = ArmaModel([0.5], [0.3])
        assert (m.p, m.q) == (1, 1)

    def test_random_reflection_models_are_stationary(self, rng):
        for _ in range(50):
            p = int(rng.integers(1, 4))
            assert ArModel(random_stationary_ar(rng, p)).is_stationary


class TestSimulate:
    def test_zero_phi_is_identity(self, rng):
        z = rng.standard_normal(100)
        np.testing.assert_array_equal(simulate_ar(ArModel([0.0]), z, 10), z[10:])

    def test_empty_arma_is_identity(self, rng):
        z = rng.standard_normal(50)
        model = ArmaModel([], [])
        np.testing.assert_allclose(simulate_arma(model, z), z, atol=1e-14)

    def test_ar1_recursion_matches_manual(self, rng):
        z = rng.standard_normal(20)
        x = simulate_ar(ArModel([0.5]), z)
        manual = np.empty(20)
        prev = 0.0
        for t in range(20):
            prev = 0.5 * prev + z[t]
            manual[t] = prev
        np.testing.assert_allclose(x, manual, atol=1e-12)

    def test_burn_in_bounds(self):
        with pytest.raises(ValueError):
            simulate_ar(ArModel([0.5]), np.zeros(10), 10)


class TestFitBurg:
    def test_recovers_ar1(self):
        x = _ar1_series(0.5, 1.8, 5000, 1)
        fit = fit_burg(x, 1)
        assert fit.model.phi[0] == pytest.approx(0.5, abs=0.05)
        assert fit.method == "burg"
        assert fit.residuals.size == 4999
        assert 0.5 <= fit.alpha_hat <= 2.0

    def test_always_stationary(self, rng):
        # even on an explosive input the reflection parameterisation keeps
        # the fit inside the stationary region
        x = np.cumsum(np.cumsum(rng.standard_normal(200)))
        assert fit_burg(x, 3).model.is_stationary

    def test_short_series_rejected(self):
        with pytest.raises(ValueError):
            fit_burg(np.arange(6.0), 3)

    def test_short_residuals_skip_alpha(self):
        x = _ar1_series(0.5, 1.5, 40, 2)
        fit = fit_burg(x, 1)
        assert fit.alpha_hat is None and fit.beta_hat is None


class TestFitLeastSquares:
    def test_exact_hand_example(self):
        # regressing (2, 4) on (1, 2) gives slope 2 exactly
        fit = fit_least_squares(np.array([1.0, 2.0, 4.0]), 1)
        assert fit.model.phi[0] == pytest.approx(2.0, abs=1e-12)
        assert not fit.model.is_stationary

    def test_residual_alignment(self):
        fit = fit_least_squares(np.array([1.0, 2.0, 4.0]), 1)
        np.testing.assert_allclose(fit.residuals, [0.0, 0.0], atol=1e-12)

    def test_agrees_with_burg_on_long_series(self):
        x = _ar1_series(0.5, 1.6, 10_000, 3)
        ls = fit_least_squares(x, 1).model.phi[0]
        bg = fit_burg(x, 1).model.phi[0]
        assert ls == pytest.approx(bg, abs=0.01)


class TestFitArmaCss:
    def test_q_zero_delegates_to_least_squares(self):
        x = _ar1_series(0.4, 1.8, 300, 4)
        a = fit_arma_css(x, 1, 0)
        b = fit_least_squares(x, 1)
        np.testing.assert_allclose(a.model.phi, b.model.phi, atol=1e-12)

    def test_recovers_arma11(self):
        model = ArmaModel([0.6], [-0.4])
        burn = default_burn_in(1, 1)
        z = sample_stable(StableParams(1.8), 4000 + burn, np.random.default_rng(5))
        x = simulate_arma(model, z, burn)
        fit = fit_arma_css(x, 1, 1)
        assert fit.model.phi[0] == pytest.approx(0.6, abs=0.1)
        assert fit.model.theta[0] == pytest.approx(-0.4, abs=0.1)
        assert fit.model.is_stationary

    def test_fitted_model_always_admissible(self, rng):
        x = rng.standard_cauchy(300)
        fit = fit_arma_css(x, 1, 1)
        assert fit.model.is_stationary


class TestImpulseResponses:
    def test_white_noise(self):
        np.testing.assert_array_equal(
            impulse_responses(ArModel([0.0]), 3), [1.0, 0.0, 0.0]
        )

    def test_ar1_geometric(self):
        psi = impulse_responses(ArModel([0.6]), 5)
        np.testing.assert_allclose(psi, 0.6 ** np.arange(5), atol=1e-12)

    def test_ma1_sign_convention(self):
        # theta(B) = 1 - theta_1 B, so psi_1 = -theta_1
        psi = impulse_responses(ArmaModel([], [0.5]), 3)
        np.testing.assert_allclose(psi, [1.0, -0.5, 0.0], atol=1e-14)

    def test_arma_matches_polynomial_division(self, rng):
        model = ArmaModel([0.5, -0.2], [0.3])
        psi = impulse_responses(model, 40)
        # psi from simulating a unit impulse through the filter
        z = np.zeros(40)
        z[0] = 1.0
        np.testing.assert_allclose(simulate_arma(model, z), psi, atol=1e-12)


class TestArEquivalent:
    def test_hand_example(self):
        # (1 - 0.5B)(1 - 0.3B) = 1 - 0.8B + 0.15B^2
        ar = ar_equivalent(ArmaModel([0.5], [0.3]))
        np.testing.assert_allclose(ar.phi, [0.8, -0.15], atol=1e-14)


class TestDiagnosticProjection:
    def test_white_noise_projection(self):
        proj = diagnostic_projection(ArModel([0.0]), 5)
        expected = np.zeros((5, 5))
        expected[0, 0] = 1.0
        np.testing.assert_allclose(proj.q, expected, atol=1e-12)
        assert np.trace(proj.complement) == pytest.approx(4.0, abs=1e-12)

    def test_projection_algebra(self, rng):
        for _ in range(25):
            p = int(rng.integers(1, 4))
            m = int(rng.integers(p + 1, 21))
            model = ArModel(random_stationary_ar(rng, p))
            proj = diagnostic_projection(model, m)
            np.testing.assert_allclose(proj.q, proj.q.T, atol=1e-10)
            np.testing.assert_allclose(
                proj.complement @ proj.complement, proj.complement, atol=1e-10
            )
            assert np.trace(proj.complement) == pytest.approx(m - p, abs=1e-8)

    def test_arma_reduces_order(self):
        proj = diagnostic_projection(ArmaModel([0.5], [0.3]), 10)
        assert proj.x.shape == (10, 2)
        assert np.trace(proj.complement) == pytest.approx(8.0, abs=1e-8)

    def test_m_must_exceed_p(self):
        with pytest.raises(ValueError):
            diagnostic_projection(ArModel([0.5]), 1)


class TestResidualAcf:
    def test_exact_residuals_reduce_to_sample_acf(self, rng):
        z = rng.standard_cauchy(200)
        fit = FitResult(ArModel([0.5]), residuals=z, method="burg")
        acf = residual_acf(fit, 5)
        np.testing.assert_array_equal(acf.values, sample_acf(z, 5).values)
        assert acf.kind == "residual"

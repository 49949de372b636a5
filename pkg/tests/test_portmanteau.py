import numpy as np
import pytest
from scipy.stats import chi2

from stableport import (
    ArModel,
    CorrelationSequence,
    PortmanteauReport,
    ReferenceDistribution,
    asymptotic_p_value,
    chi_square_p_value,
    d_hat_statistic,
    diagnostic_projection,
    q_bp_statistic,
    q_lb_statistic,
    simulate_reference,
)
from stableport.portmanteau import _stats_at_lags, scaling_factor

from conftest import pacf_to_acf, random_pacf


class TestScalingFactor:
    def test_value(self):
        assert scaling_factor(250, 1.5) == pytest.approx(
            (250 / np.log(250)) ** (4 / 3), rel=1e-12
        )

    def test_domain(self):
        with pytest.raises(ValueError):
            scaling_factor(2, 1.5)
        with pytest.raises(ValueError):
            scaling_factor(100, 2.5)


class TestStatistics:
    def test_qbp_hand_example(self):
        acf = CorrelationSequence([0.1, -0.05, 0.02], 250, "raw")
        expected = scaling_factor(250, 1.5) * (0.01 + 0.0025 + 0.0004)
        assert q_bp_statistic(acf, 1.5) == pytest.approx(expected, rel=1e-12)

    def test_zero_acf_gives_zero(self):
        acf = CorrelationSequence(np.zeros(5), 100, "raw")
        assert q_bp_statistic(acf, 1.5) == 0.0
        assert d_hat_statistic(acf, 1.5) == 0.0
        assert q_lb_statistic(acf) == 0.0

    def test_m1_equivalence(self):
        acf = CorrelationSequence([0.2], 250, "raw")
        assert d_hat_statistic(acf, 1.5) == pytest.approx(
            q_bp_statistic(acf, 1.5), abs=1e-12
        )

    def test_qlb_matches_manual_sum(self):
        r = np.array([0.1, -0.2, 0.05])
        acf = CorrelationSequence(r, 50, "raw")
        manual = 50 * 52 * sum(r[k] ** 2 / (50 - k - 1) for k in range(3))
        assert q_lb_statistic(acf) == pytest.approx(manual, rel=1e-12)

    def test_chi_square_p_value(self):
        assert chi_square_p_value(3.0, 5) == pytest.approx(chi2.sf(3.0, 5), rel=1e-12)


class TestStatsAtLags:
    def test_matches_per_lag_statistics(self, rng):
        r = pacf_to_acf(random_pacf(rng, 10, bound=0.5))
        acf = CorrelationSequence(r, 300, "raw")
        lags = (1, 3, 10)
        for stat, fn in [
            ("q_bp", lambda a: q_bp_statistic(a, 1.4)),
            ("d_hat", lambda a: d_hat_statistic(a, 1.4)),
            ("q_lb", q_lb_statistic),
        ]:
            batch = _stats_at_lags(r, 300, 1.4, stat, lags)
            direct = [fn(acf.truncated(m)) for m in lags]
            np.testing.assert_allclose(batch, direct, rtol=1e-12)


class TestPortmanteauReport:
    def _report(self, **overrides):
        base = dict(
            statistic="d_hat",
            m=5,
            value=3.2,
            scaling_alpha=1.5,
            p_value=0.04,
            p_method="monte_carlo",
            replications=1000,
            seed=42,
        )
        base.update(overrides)
        return PortmanteauReport(**base)

    def test_roundtrip(self):
        rep = self._report()
        assert PortmanteauReport.from_dict(rep.to_dict()) == rep

    def test_tuple_seed_roundtrip(self):
        rep = self._report(seed=(1, 2, 3))
        again = PortmanteauReport.from_dict(
            __import__("json").loads(__import__("json").dumps(rep.to_dict()))
        )
        assert again == rep

    def test_chi_square_only_for_qlb(self):
        with pytest.raises(ValueError):
            self._report(p_method="chi_square")
        self._report(statistic="q_lb", p_method="chi_square")

    def test_p_value_range(self):
        with pytest.raises(ValueError):
            self._report(p_value=0.0)
        with pytest.raises(ValueError):
            self._report(p_value=1.01)


class TestReferenceDistribution:
    def test_draws_sorted_and_quantiles_monotone(self, rng):
        ref = ReferenceDistribution(
            draws=rng.exponential(size=500), sim_count=500, alpha=1.5, m=5,
            kind="randomness_dhat",
        )
        assert np.all(np.diff(ref.draws) >= 0)
        qs = ref.quantiles([0.1, 0.5, 0.9])
        assert np.all(np.diff(qs) >= 0)

    def test_simulate_reference_deterministic(self):
        a = simulate_reference("randomness_qbp", 1.5, 3, sim_count=200, seed=5)
        b = simulate_reference("randomness_qbp", 1.5, 3, sim_count=200, seed=5)
        np.testing.assert_array_equal(a.draws, b.draws)

    def test_projection_requirements(self):
        with pytest.raises(ValueError):
            simulate_reference("diagnostic_qbp", 1.5, 5, sim_count=100)
        proj = diagnostic_projection(ArModel([0.5]), 5)
        with pytest.raises(ValueError):
            simulate_reference("randomness_qbp", 1.5, 5, projection=proj,
                              sim_count=100)
        ref = simulate_reference("diagnostic_dhat", 1.5, 5, projection=proj,
                                 sim_count=100, seed=3)
        assert ref.draws.size == 100

    def test_dhat_reference_below_qbp_reference(self):
        # the decreasing weights (m+1-i)/m make every determinant draw no
        # larger than its Box-Pierce counterpart
        qbp = simulate_reference("randomness_qbp", 1.5, 5, sim_count=300, seed=8)
        dh = simulate_reference("randomness_dhat", 1.5, 5, sim_count=300, seed=8)
        assert np.all(dh.draws <= qbp.draws + 1e-12)


class TestAsymptoticPValue:
    def test_value_above_all_draws(self):
        ref = ReferenceDistribution(
            draws=np.arange(1.0, 100.0), sim_count=99, alpha=1.5, m=5,
            kind="randomness_qbp",
        )
        assert asymptotic_p_value(1000.0, ref) == pytest.approx(1 / 100)

    def test_zero_statistic_with_positive_draws(self):
        ref = ReferenceDistribution(
            draws=np.arange(1.0, 100.0), sim_count=99, alpha=1.5, m=5,
            kind="randomness_qbp",
        )
        assert asymptotic_p_value(0.0, ref) == 1.0

    def test_ties_count_as_geq(self):
        ref = ReferenceDistribution(
            draws=np.array([1.0, 2.0, 2.0, 3.0]), sim_count=4, alpha=1.5, m=1,
            kind="randomness_qbp",
        )
        assert asymptotic_p_value(2.0, ref) == pytest.approx(4 / 5)

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.linalg import toeplitz

from stableport import (
    CorrelationSequence,
    DegeneracyError,
    det_root_via_pacf,
    durbin_levinson,
    mean_corrected_acf,
    sample_acf,
)

from conftest import pacf_to_acf, random_pacf


class TestSampleAcf:
    def test_hand_example(self):
        # sum X_t X_{t+1} = 2 + 6 + 12 = 20; sum X_t^2 = 30
        acf = sample_acf([1, 2, 3, 4], 1)
        assert acf.values[0] == pytest.approx(20 / 30, abs=1e-15)
        assert acf.kind == "raw"
        assert acf.n == 4

    def test_single_denominator_bounds_values(self, rng):
        x = rng.standard_cauchy(500)
        acf = sample_acf(x, 50)
        assert np.all(np.abs(acf.values) <= 1.0)

    def test_rejects_bad_m(self):
        with pytest.raises(ValueError):
            sample_acf([1.0, 2.0], 2)
        with pytest.raises(ValueError):
            sample_acf([1.0, 2.0], 0)

    def test_rejects_all_zero(self):
        with pytest.raises(ValueError):
            sample_acf(np.zeros(10), 2)


class TestMeanCorrectedAcf:
    def test_hand_example(self):
        # deviations (-1.5, -0.5, 0.5, 1.5): cross = 0.75+(-0.25)+0.75 = 1.25,
        # ss = 5
        acf = mean_corrected_acf([1, 2, 3, 4], 1)
        assert acf.values[0] == pytest.approx(0.25, abs=1e-15)
        assert acf.kind == "mean_corrected"

    def test_rejects_constant(self):
        with pytest.raises(ValueError):
            mean_corrected_acf(np.full(10, 3.0), 2)

    def test_shift_invariance(self, rng):
        x = rng.standard_normal(200)
        a = mean_corrected_acf(x, 5).values
        b = mean_corrected_acf(x + 100.0, 5).values
        np.testing.assert_allclose(a, b, atol=1e-10)


class TestCorrelationSequence:
    def test_kind_validated(self):
        with pytest.raises(ValueError):
            CorrelationSequence([0.1], 10, "bogus")

    def test_magnitude_validated(self):
        with pytest.raises(ValueError):
            CorrelationSequence([1.5], 10, "raw")

    def test_m_vs_n(self):
        with pytest.raises(ValueError):
            CorrelationSequence([0.1, 0.2], 2, "raw")

    def test_truncated(self):
        seq = CorrelationSequence([0.5, 0.3, 0.1], 100, "residual")
        t = seq.truncated(2)
        assert t.m == 2 and t.kind == "residual"
        np.testing.assert_array_equal(t.values, [0.5, 0.3])
        with pytest.raises(ValueError):
            seq.truncated(4)


class TestDurbinLevinson:
    def test_ar1_acf_gives_single_nonzero_pacf(self):
        phi = 0.6
        acf = CorrelationSequence(phi ** np.arange(1, 6), 100, "raw")
        pacf = durbin_levinson(acf).values
        assert pacf[0] == pytest.approx(phi, abs=1e-12)
        np.testing.assert_allclose(pacf[1:], 0.0, atol=1e-12)

    def test_roundtrip_with_inverse_recursion(self, rng):
        for _ in range(50):
            m = int(rng.integers(1, 9))
            pacf = random_pacf(rng, m)
            acf = CorrelationSequence(pacf_to_acf(pacf), 100, "raw")
            np.testing.assert_allclose(
                durbin_levinson(acf).values, pacf, atol=1e-10
            )

    def test_unit_pacf_raises(self):
        acf = CorrelationSequence([1.0], 100, "raw")
        with pytest.raises(DegeneracyError):
            durbin_levinson(acf)


class TestDetRoot:
    def test_hand_example(self):
        # r = (0.5, 0.3): pacf = (0.5, 1/15)
        acf = CorrelationSequence([0.5, 0.3], 100, "raw")
        expected = (1 - 0.25) ** (2 / 2) * (1 - (1 / 15) ** 2) ** (1 / 2)
        assert det_root_via_pacf(acf) == pytest.approx(expected, rel=1e-12)

    def test_matches_dense_toeplitz_determinant(self, rng):
        for _ in range(200):
            m = int(rng.integers(1, 9))
            r = pacf_to_acf(random_pacf(rng, m))
            acf = CorrelationSequence(r, 100, "raw")
            dense = toeplitz(np.concatenate(([1.0], r)))
            oracle = np.linalg.det(dense) ** (1.0 / m)
            assert det_root_via_pacf(acf) == pytest.approx(oracle, abs=1e-10)

    def test_zero_acf_gives_unit_root(self):
        acf = CorrelationSequence(np.zeros(5), 100, "raw")
        assert det_root_via_pacf(acf) == 1.0

    @settings(max_examples=100, deadline=None)
    @given(
        st.lists(
            st.floats(-0.85, 0.85, allow_nan=False, allow_infinity=False),
            min_size=1,
            max_size=8,
        )
    )
    def test_identity_property(self, pacf):
        r = pacf_to_acf(np.asarray(pacf))
        acf = CorrelationSequence(r, 100, "raw")
        dense = toeplitz(np.concatenate(([1.0], r)))
        oracle = np.linalg.det(dense) ** (1.0 / len(pacf))
        assert det_root_via_pacf(acf) == pytest.approx(oracle, abs=1e-9)

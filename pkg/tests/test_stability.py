"""Tests for the spectral-stability bookkeeping."""

import math

import numpy as np
import pytest

from ringbif import stability as st
from ringbif.polygonal import RingConfig


def _ring(n, mu):
    return RingConfig(n=n, mu=mu, alpha=2.0)


class TestCriticalMassStar:
    def test_frozen_thresholds(self):
        assert st.critical_mass_star(7).m_star == pytest.approx(
            139.85225582190031, rel=1e-10
        )
        assert st.critical_mass_star(10).m_star == pytest.approx(
            420.9930295619144, rel=1e-10
        )
        assert st.critical_mass_star(12).m_star == pytest.approx(
            733.960800745938, rel=1e-10
        )

    @pytest.mark.parametrize("n", [8, 10, 12, 14])
    def test_half_wave_dominates_even(self, n):
        star = st.critical_mass_star(n)
        assert star.dominant_k == n // 2
        # the per-pair table must actually be increasing toward n/2
        thresholds = [t for _, t in star.per_pair]
        assert thresholds == sorted(thresholds)

    def test_odd_n_dominant(self):
        assert st.critical_mass_star(7).dominant_k == 3
        assert st.critical_mass_star(9).dominant_k == 4

    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_small_n_unbounded(self, n):
        star = st.critical_mass_star(n)
        assert math.isinf(star.m_star)
        assert star.dominant_k is None

    def test_to_dict_maps_inf_to_none(self):
        d = st.critical_mass_star(4).to_dict()
        assert d["m_star"] is None and d["never_stable"] is True
        d2 = st.critical_mass_star(8).to_dict()
        assert d2["m_star"] is not None and d2["never_stable"] is False


class TestSpectralStability:
    @pytest.mark.parametrize("n", [7, 9, 10, 12])
    def test_flip_across_threshold(self, n):
        m_star = st.critical_mass_star(n).m_star
        up = st.spectral_stability(_ring(n, m_star * 1.001))
        dn = st.spectral_stability(_ring(n, m_star * 0.999))
        assert up.spectrally_stable
        assert not dn.spectrally_stable
        assert up.planar_real_roots == 4 * (n + 1)
        assert dn.planar_real_roots < 4 * (n + 1)

    @pytest.mark.parametrize("n,mu", [(2, 1.0), (3, 50.0), (4, 100.0),
                                      (5, 200.0), (6, 17.0), (6, 500.0)])
    def test_never_stable_small_n(self, n, mu):
        v = st.spectral_stability(_ring(n, mu))
        assert not v.spectrally_stable
        assert "never_stable" in v.flags

    def test_n2_tag_and_counts(self):
        v = st.spectral_stability(_ring(2, 1.0))
        assert "exponential_instability_two_imaginary_roots" in v.flags
        # six real and two purely imaginary planar roots in the 4x4 block,
        # plus the four real roots of the center block
        assert v.planar_real_roots == 10
        assert v.spatial_real_roots == 6

    @pytest.mark.parametrize("n,mu", [(3, 0.1), (5, 1.0), (8, 10.0), (12, 800.0)])
    def test_spatial_always_complete(self, n, mu):
        v = st.spectral_stability(_ring(n, mu))
        assert v.spatial_real_roots == 2 * (n + 1)

    def test_stable_regime_per_block_bookkeeping(self):
        n = 10
        m_star = st.critical_mass_star(n).m_star
        v = st.spectral_stability(_ring(n, 1.01 * m_star))
        planar = {k: (c, d) for s, k, c, d in v.per_block if s == "planar"}
        for k in range(2, n - 1):
            assert planar[k] == (4, 4), k
        assert planar[1] == (6, 6)
        assert planar[n - 1] == (6, 6)
        assert planar[n] == (4, 4)

    def test_near_threshold_flag(self):
        n = 8
        m_star = st.critical_mass_star(n).m_star
        v = st.spectral_stability(_ring(n, m_star * (1.0 + 1e-8)))
        assert v.near_threshold
        v2 = st.spectral_stability(_ring(n, m_star * 1.5))
        assert not v2.near_threshold

    def test_monotone_verdict(self):
        # empirical: a single False -> True transition along a mass sweep
        n = 8
        m_star = st.critical_mass_star(n).m_star
        mus = np.concatenate(
            [np.geomspace(0.01, 0.98 * m_star, 18), np.linspace(1.02, 3.0, 6) * m_star]
        )
        verdicts = [
            st.spectral_stability(_ring(n, float(mu))).spectrally_stable for mu in mus
        ]
        assert verdicts == sorted(verdicts)
        assert verdicts[-1] and not verdicts[0]

    def test_rejects_massless_center(self):
        with pytest.raises(ValueError, match="massive"):
            st.spectral_stability(_ring(5, 0.0))

    def test_to_dict_round_trips(self):
        import json

        v = st.spectral_stability(_ring(7, 150.0))
        data = json.loads(json.dumps(v.to_dict()))
        assert data["spectrally_stable"] is True
        assert data["m_star"] == pytest.approx(139.85225582190031)


class TestKernelAnnotations:
    def test_residuals(self):
        ka = st.kernel_annotations(_ring(8, 3.0))
        assert ka["planar_center_nu0"]["residual"] == 0.0
        assert ka["planar_edge_nu1"]["residual"] < 1e-10
        assert ka["spatial_center_nu0"]["residual"] < 1e-10

    def test_mass_independent(self):
        for mu in (0.5, 7.0, 300.0):
            ka = st.kernel_annotations(_ring(11, mu))
            assert ka["planar_edge_nu1"]["residual"] < 1e-10
            assert ka["spatial_center_nu0"]["residual"] < 1e-10

    def test_n2_edge_skipped(self):
        ka = st.kernel_annotations(_ring(2, 1.0))
        assert ka["planar_edge_nu1"]["vector"] is None
        assert ka["planar_center_nu0"]["residual"] == 0.0


class TestSaturnLimit:
    def test_frozen_ratio(self):
        assert st.saturn_limit(10)["ratio"] == pytest.approx(
            0.42099302956191437, rel=1e-12
        )

    def test_limit_constant(self):
        d = st.saturn_limit(10)
        assert d["limit"] == pytest.approx(st.SATURN_CONSTANT * 0.0169610785762, rel=1e-9)

    def test_convergence(self):
        gaps = [st.saturn_limit(n)["relative_gap"] for n in (10, 100, 1000)]
        assert gaps[0] > gaps[1] > gaps[2]
        assert gaps[2] < 1e-4

    def test_rejects_odd(self):
        with pytest.raises(ValueError):
            st.saturn_limit(9)


class TestScan:
    def test_rows(self):
        rows = st.stability_scan([5, 8, 10])
        assert [r["n"] for r in rows] == [5, 8, 10]
        assert rows[0]["never_stable"] and rows[0]["m_star"] is None
        for row in rows[1:]:
            assert row["stable_above"] and not row["stable_below"]
            assert row["dominant_k"] == row["n"] // 2

    def test_no_verify(self):
        rows = st.stability_scan([8], verify=False)
        assert "stable_above" not in rows[0]

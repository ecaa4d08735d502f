"""Tests for resonance certificates and subharmonic bookkeeping."""

import json

import numpy as np
import pytest

from ringbif import resonance as res
from ringbif.polygonal import RingConfig
from ringbif.spectrum import critical_masses, planar_block_family
from ringbif.sums import s_sum


def _ring(n, mu):
    return RingConfig(n=n, mu=mu, alpha=2.0)


class TestTrulySpatial:
    @pytest.mark.parametrize("n,mu", [(5, 50.0), (10, 60.0)])
    def test_large_mass_all_spatial(self, n, mu):
        ring = _ring(n, mu)
        for k in range(1, n):
            report = res.is_truly_spatial(ring, k)
            assert report.truly_spatial, (n, k)
            assert report.certification_margin >= 1e-6
            for _, _, verdict in report.checked_modes:
                assert verdict == "invertible"

    def test_matches_dense_determinant(self):
        # the certificate's determinant values must match a direct dense
        # evaluation of the planar block at the doubled spatial frequency
        ring = _ring(5, 1.0)
        k = 2
        report = res.is_truly_spatial(ring, k, max_checked=10)
        s_k = s_sum(5, 2.0, k)
        nu_k = np.sqrt((ring.mu + s_k) / ring.omega)
        assert report.nu_k == pytest.approx(float(nu_k), rel=1e-12)
        family = planar_block_family(ring, k, normalized=True)
        for l, det_mag, _ in report.checked_modes:
            block = family(2.0 * l * float(nu_k))
            assert det_mag == pytest.approx(abs(np.linalg.det(block)), rel=1e-9)

    def test_center_block_report(self):
        ring = _ring(6, 2.0)
        report = res.is_truly_spatial(ring, 6)
        assert report.truly_spatial
        assert report.root_bound == pytest.approx(1.0)
        # 2 l nu_n >= 2 > 1 for every l, so a single checked mode certifies all
        assert report.bound_l_max >= 1

    def test_refusal_near_threshold(self):
        n, k = 10, 3
        mu_k = critical_masses(n, k)["mu_k"]
        ring = _ring(n, mu_k * (1.0 + 1e-9))
        with pytest.raises(ValueError, match="threshold"):
            res.is_truly_spatial(ring, k)

    def test_exclusion_radius_recorded(self):
        report = res.is_truly_spatial(_ring(5, 50.0), 2)
        assert report.exclusion_radius == res.EXCLUSION_RADIUS
        assert not report.near_planar_threshold

    def test_json_round_trip(self):
        report = res.is_truly_spatial(_ring(5, 50.0), 1)
        data = json.loads(json.dumps(report.to_dict()))
        assert data["truly_spatial"] is True
        assert data["n"] == 5 and data["k"] == 1


class TestSubharmonicBound:
    def test_frozen_examples(self):
        assert res.subharmonic_bound(8, 2, 4) == 1
        assert res.subharmonic_bound(20, 1, 10) == 3

    def test_equal_indices(self):
        assert res.subharmonic_bound(30, 4, 4) == 1

    def test_bound_dominates(self):
        # l_max < k2^2 - k1^2 + 1 for every strictly ordered pair; equal
        # indices always give the trivial bound 1
        for n in range(3, 41):
            for k1 in range(1, n // 2 + 1):
                for k2 in range(k1, n // 2 + 1):
                    l_max = res.subharmonic_bound(n, k1, k2)
                    if k1 == k2:
                        assert l_max == 1
                    else:
                        assert l_max < k2 * k2 - k1 * k1 + 1, (n, k1, k2)

    def test_rejects_bad_order(self):
        with pytest.raises(ValueError):
            res.subharmonic_bound(8, 4, 2)
        with pytest.raises(ValueError):
            res.subharmonic_bound(8, 1, 5)  # k2 > n/2


class TestSpatialSpatialCandidates:
    def test_frozen_candidate(self):
        out = res.spatial_spatial_resonances(12, 1, 5, range(2, 4))
        assert len(out) == 1
        cand = out[0]
        assert cand["l"] == 2
        assert cand["mu"] == pytest.approx(3.1810190161179115, rel=1e-12)

    def test_candidate_satisfies_defining_relation(self):
        # mu solves  mu + s_{k2} = l^2 (mu + s_{k1})
        for cand in res.spatial_spatial_resonances(12, 1, 5, range(2, 6)):
            mu = cand["mu"]
            lhs = mu + s_sum(12, 2.0, 5)
            rhs = cand["l"] ** 2 * (mu + s_sum(12, 2.0, 1))
            assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_high_precision_recompute(self):
        # recompute the frozen candidate with extended-precision sums
        from mpmath import mp, mpf, cos, sin, pi

        mp.dps = 40
        def s(n, k):
            total = mpf(0)
            for j in range(1, n):
                total += (sin(pi * j * k / n) ** 2) / (2 * sin(pi * j / n) ** 3)
            return total / 2

        s1, s5 = s(12, 1), s(12, 5)
        mu_exact = (s5 - 4 * s1) / (4 - 1)
        assert abs(float(mu_exact) - 3.1810190161179115) < 1e-12

    def test_center_uses_n(self):
        # k2 = n uses s_n = n in the candidate formula
        out = res.spatial_spatial_resonances(10, 1, 10, range(2, 3))
        if out:
            mu = out[0]["mu"]
            s1 = s_sum(10, 2.0, 1)
            assert mu + 10.0 == pytest.approx(4.0 * (mu + s1), rel=1e-12)

    def test_l1_annotations(self):
        out = res.spatial_spatial_resonances(10, 3, 10, [1])
        assert out == [] or all(c["note"] == "no_1_1_resonance" for c in out)
        out2 = res.spatial_spatial_resonances(10, 3, 7, [1])
        assert all(c["note"] == "reversal_duality" for c in out2)

    def test_negative_mass_dropped(self):
        # l large makes the candidate mass negative: it must be filtered
        out = res.spatial_spatial_resonances(12, 1, 5, range(4, 12))
        assert out == []


class TestPlanarPlanar:
    def test_intersection_count_bound(self):
        pts = res.planar_planar_resonances(10, 2, 3, 2)
        assert len(pts) <= 16
        for nu1, mu in pts:
            assert nu1 > 0 and np.isfinite(mu)

    def test_l1_count_bound(self):
        pts = res.planar_planar_resonances(10, 2, 3, 1)
        assert len(pts) <= 4

    def test_sorted_output(self):
        pts = res.planar_planar_resonances(10, 2, 3, 2)
        assert pts == sorted(pts)

"""Tests for the spectral closed forms and the pencil root finder."""

import numpy as np
import pytest

from ringbif import spectrum as sp
from ringbif.polygonal import RingConfig, block_m0, block_m1


def ring10(mu=1.5):
    return RingConfig(n=10, mu=mu, alpha=2.0)


class TestMorseNumber:
    def test_identity_has_none(self):
        assert sp.morse_number(np.eye(3)) == 0

    def test_scalar_block(self):
        ring = RingConfig(n=6, mu=1.0, alpha=2.0)
        assert sp.morse_number(block_m1(ring, 2, 0.0)) == 1

    def test_planar_center_block_near_zero(self):
        ring = RingConfig(n=6, mu=1.0, alpha=2.0)
        fam = sp.planar_block_family(ring, 6)
        assert sp.morse_number(fam(1e-3)) == 1
        assert sp.morse_number(fam(1.5)) == 0

    def test_signature_reports_kernel(self):
        assert sp.eigen_signature(np.diag([-1.0, 0.0, 2.0])) == (1, 1, 1)

    def test_rejects_non_selfadjoint(self):
        with pytest.raises(ValueError, match="self-adjoint"):
            sp.morse_number(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_reflection_identity(self):
        # Morse number of block n-k at nu equals block k at -nu
        ring = RingConfig(n=9, mu=2.0, alpha=2.0)
        sq = np.sqrt(ring.omega)
        for k in (2, 3, 4):
            for nu in (0.3, 0.9, 1.4):
                left = sp.morse_number(block_m0(ring, k, -sq * nu))
                right = sp.morse_number(block_m0(ring, 9 - k, sq * nu))
                assert left == right


class TestDetDk:
    def test_matches_direct_determinant(self):
        ring = ring10()
        sq = np.sqrt(ring.omega)
        for k in range(2, 9):
            for nu in np.linspace(-2.3, 2.3, 21):
                direct = np.linalg.det(block_m0(ring, k, sq * nu)).real
                closed = sp.det_dk(ring, k, nu)
                assert abs(direct - closed) <= 1e-9 * max(1.0, abs(direct))

    def test_reflection_to_gamma_term(self):
        # d_k(nu) - d_k(-nu) = -8 omega gamma_k nu
        ring = ring10()
        coef = sp._newton_coefficients(10)
        for k in (2, 3, 4):
            for nu in (0.25, 0.8, 1.7):
                diff = sp.det_dk(ring, k, nu) - sp.det_dk(ring, k, -nu)
                expect = -8.0 * ring.omega * coef.gamma_k[k] * nu
                assert abs(diff - expect) <= 1e-10 * max(1.0, abs(expect))

    def test_rejects_other_exponents(self):
        soft = RingConfig(n=8, mu=1.0, alpha=1.5)
        with pytest.raises(ValueError, match="alpha"):
            sp.det_dk(soft, 2, 0.5)

    def test_rejects_edge_k(self):
        with pytest.raises(ValueError):
            sp.det_dk(ring10(), 1, 0.5)
        with pytest.raises(ValueError):
            sp.det_dk(ring10(), 9, 0.5)


class TestOmegaRoots:
    def test_roots_annihilate_quartic(self):
        for k in (2, 3, 5):
            for nu in (-2.0, 0.5, 3.0):
                wp, wm = sp.omega_roots(10, k, nu)
                s1 = sp._unit_ring(10).s1
                for w in (wp, wm):
                    res = sp.det_dk_from_mass(10, k, w - s1, nu)
                    assert abs(res) <= 1e-8 * max(1.0, abs(w) ** 2)

    def test_b_and_c_positive_spot_checks(self):
        for nu in (-2.0, 0.5, 3.0):
            _, b, c = sp.quad_coefficients(10, 3, nu)
            assert b > 0.0
            assert c > 0.0

    def test_pole_rejection(self):
        for nu in (-1.0, 0.0, 1.0):
            with pytest.raises(ValueError, match="pole"):
                sp.omega_roots(10, 3, nu)

    def test_mu_plus_at_zero_is_mu_k(self):
        cm = sp.critical_masses(10, 3)
        assert abs(sp.mu_branch_plus(10, 3, 0.0) - cm["mu_k"]) <= 1e-12

    def test_mu_plus_limit_minus_s1(self):
        s1 = sp._unit_ring(10).s1
        assert abs(sp.mu_branch_plus(10, 3, 50.0) + s1) <= 1e-2 * s1

    def test_mu_minus_blows_up_at_interval_ends(self):
        assert sp.mu_branch_minus(10, 3, 0.999) > 1e4
        assert sp.mu_branch_minus(10, 3, 0.001) > 1e6

    def test_branch_ordering_inside_unit_interval(self):
        for nu in np.linspace(0.05, 0.95, 19):
            assert sp.mu_branch_plus(10, 3, nu) < sp.mu_branch_minus(10, 3, nu)


class TestCriticalMasses:
    # frozen from the scan + bounded refinement at xatol=1e-12
    FROZEN = {
        2: (0.0010635887522347988, 0.5254294516022417, 167.89915466760024, 224.91129278770669),
        3: (1.5810765902938426, 1.784461924089185, 291.35663183640935, 336.13994327607924),
        5: (3.012420701195075, 3.012420701195074, 420.9930295619144, 420.9930295619144),
    }

    @pytest.mark.parametrize("k", [2, 3, 5])
    def test_frozen_values_n10(self, k):
        mu_k, m0, m_plus, m_minus = self.FROZEN[k]
        cm = sp.critical_masses(10, k)
        assert cm["mu_k"] == pytest.approx(mu_k, rel=1e-10)
        assert cm["m0"] == pytest.approx(m0, rel=1e-7)
        assert cm["m_plus"] == pytest.approx(m_plus, rel=1e-7)
        assert cm["m_minus"] == pytest.approx(m_minus, rel=1e-7)

    def test_ordering_below_half(self):
        cm = sp.critical_masses(10, 2)
        assert cm["mu_k"] <= cm["m0"] < cm["m_plus"] < cm["m_minus"]

    def test_middle_representation_symmetric(self):
        cm = sp.critical_masses(10, 5)
        assert cm["m_plus"] == pytest.approx(cm["m_minus"], rel=1e-9)
        assert cm["m0"] == pytest.approx(cm["mu_k"], rel=1e-9)
        assert abs(cm["nu_m0"]) < 1e-6

    @pytest.mark.parametrize("n", [8, 12, 20])
    def test_half_closed_form(self, n):
        closed = sp.m_plus_half_closed_form(n)
        numeric = sp.critical_masses(n, n // 2)["m_plus"]
        assert abs(closed - numeric) <= 1e-6 * closed

    def test_closed_form_frozen(self):
        assert sp.m_plus_half_closed_form(8) == pytest.approx(212.26106376948724, rel=1e-12)
        assert sp.m_plus_half_closed_form(12) == pytest.approx(733.960800745938, rel=1e-12)

    def test_closed_form_needs_even_n(self):
        with pytest.raises(ValueError, match="even"):
            sp.m_plus_half_closed_form(9)


class TestK1Sector:
    def test_factorization_grid(self):
        for n in (3, 7, 12, 25):
            for mu in (0.5, 5.0, 50.0):
                omega = RingConfig(n=n, mu=mu, alpha=2.0).omega
                for nu in np.linspace(-2.0, 2.0, 33):
                    full, d1 = sp.det_d1(n, mu, nu)
                    pred = omega * mu * (nu - 1.0) ** 2 * d1
                    assert abs(full - pred) <= 1e-9 * max(1.0, abs(full))

    def test_boundary_masses_are_roots(self):
        for n in (3, 5, 7, 12):
            bm = sp.k1_boundary_masses(n)
            assert abs(sp.d1_quartic(n, bm["mu_1"], 0.0)) <= 1e-9
            assert abs(sp.d1_quartic(n, bm["mu_plus_1"], 1.0)) <= 1e-9
            assert abs(sp.d1_quartic(n, bm["mu_minus_1"], -1.0)) <= 1e-9

    def test_nu_one_boundary_mass_is_minus_n(self):
        for n in (3, 8, 17):
            assert sp.k1_boundary_masses(n)["mu_plus_1"] == -float(n)

    def test_boundary_masses_positive_only_small_n(self):
        for n in (3, 4, 5, 6):
            bm = sp.k1_boundary_masses(n)
            assert bm["mu_1"] > 0.0
            assert bm["mu_minus_1"] > 0.0
        for n in (7, 12, 30):
            bm = sp.k1_boundary_masses(n)
            assert bm["mu_1"] < 0.0
            assert bm["mu_minus_1"] < 0.0

    def test_b1_sign_flip(self):
        for n in range(3, 7):
            assert sp._k1_constants(n)[3] < 0.0
        for n in range(7, 21):
            assert sp._k1_constants(n)[3] > 0.0

    def test_mu_zero_curve_satisfies_quartic(self):
        for n in (5, 12):
            for nu in (0.3, 0.8, -0.5, -0.9):
                mu0 = sp.mu_zero_k1(n, nu)
                if np.isfinite(mu0):
                    assert abs(sp.d1_quartic(n, mu0, nu)) <= 1e-8 * (1.0 + mu0**2)

    def test_mu_zero_asymptotes_large_n(self):
        # for n >= 7 the positive-mass curve blows up at |nu| -> 0 and 1
        assert sp.mu_zero_k1(12, 1e-3) > 1e4
        assert sp.mu_zero_k1(12, 1.0 - 1e-4) > 1e4
        assert sp.mu_zero_k1(12, -1e-3) > 1e4
        assert sp.mu_zero_k1(12, -1.0 + 1e-4) > 1e4

    def test_thresholds_frozen(self):
        th7 = sp.k1_thresholds(7)
        assert th7["m_plus"] == pytest.approx(15.726036789157654, rel=1e-7)
        assert th7["m_minus"] == pytest.approx(8.615864114407001, rel=1e-7)
        th12 = sp.k1_thresholds(12)
        assert th12["m_plus"] == pytest.approx(40.28357500726739, rel=1e-7)
        assert th12["m_minus"] == pytest.approx(41.822103307117295, rel=1e-7)

    def test_threshold_ordering_regimes(self):
        # m_plus < m_minus from n = 12 on; interchanged for 7 <= n <= 11
        for n in (7, 9, 11):
            th = sp.k1_thresholds(n)
            assert th["m_minus"] < th["m_plus"]
        for n in (12, 15, 20):
            th = sp.k1_thresholds(n)
            assert th["m_plus"] < th["m_minus"]

    def test_small_n_single_curve(self):
        th = sp.k1_thresholds(3)
        assert set(th) == {"m0", "nu_m0"}
        assert th["m0"] == pytest.approx(0.27442309258542746, rel=1e-7)

    def test_four_crossing_pattern_n12(self):
        th = sp.k1_thresholds(12)
        roots = sp.d1_real_roots(12, th["m_minus"] * 1.2)
        assert len(roots) == 4
        assert -1.0 < roots[0] < roots[1] < 0.0 < roots[2] < roots[3] < 1.0

    def test_two_crossings_between_thresholds_n12(self):
        th = sp.k1_thresholds(12)
        mu = 0.5 * (th["m_plus"] + th["m_minus"])
        roots = sp.d1_real_roots(12, mu)
        assert len(roots) == 2
        assert 0.0 < roots[0] < roots[1] < 1.0

    def test_no_crossings_below_thresholds_large_n(self):
        assert sp.d1_real_roots(12, 10.0).size == 0


class TestPencilRoots:
    def test_center_planar_block(self):
        ring = RingConfig(n=6, mu=1.0, alpha=2.0)
        fam = sp.planar_block_family(ring, 6)
        roots = sp.pencil_roots(fam, (-2.0, 2.0))
        assert [m for _, m in roots] == [1, 2, 1]
        assert roots[0][0] == pytest.approx(-1.0, abs=1e-8)
        assert roots[1][0] == pytest.approx(0.0, abs=1e-8)
        assert roots[2][0] == pytest.approx(1.0, abs=1e-8)

    def test_scalar_spatial_block(self):
        ring = RingConfig(n=6, mu=1.0, alpha=2.0)
        fam = sp.spatial_block_family(ring, 2)
        expected = np.sqrt(ring.mu + ring.s_array()[2])
        roots = sp.pencil_roots(fam, (-5.0, 5.0))
        assert len(roots) == 2
        assert roots[0][0] == pytest.approx(-expected, abs=1e-9)
        assert roots[1][0] == pytest.approx(expected, abs=1e-9)

    def test_center_spatial_block(self):
        ring = RingConfig(n=6, mu=1.0, alpha=2.0)
        fam = sp.spatial_block_family(ring, 6)
        roots = sp.pencil_roots(fam, (-5.0, 5.0))
        assert [m for _, m in roots] == [1, 2, 1]
        assert roots[2][0] == pytest.approx(np.sqrt(7.0), abs=1e-9)

    def test_window_filter(self):
        ring = RingConfig(n=6, mu=1.0, alpha=2.0)
        fam = sp.spatial_block_family(ring, 6)
        roots = sp.pencil_roots(fam, (0.5, 5.0))
        assert len(roots) == 1

    def test_synthetic_known_roots(self):
        rng = np.random.default_rng(7)
        q, _ = np.linalg.qr(rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2)))
        targets = (-1.3, 0.4, 0.9, 2.2)

        def fam(nu):
            d = np.diag(
                [
                    (nu - targets[0]) * (nu - targets[1]),
                    (nu - targets[2]) * (nu - targets[3]),
                ]
            ).astype(complex)
            return q @ d @ q.conj().T

        roots = sp.pencil_roots(fam, (-3.0, 3.0))
        found = [r for r, _ in roots]
        assert np.allclose(found, sorted(targets), atol=1e-8)

    def test_rejects_cubic_family(self):
        with pytest.raises(ValueError, match="quadratic"):
            sp.pencil_roots(lambda nu: np.array([[nu**3]]), (-1.0, 1.0))

    def test_massless_center_reduction(self):
        # mu = 0 makes the 3x3 identically singular; the family helper
        # must hand back the 2x2 ring restriction instead
        ring = RingConfig(n=8, mu=0.0, alpha=2.0)
        fam = sp.planar_block_family(ring, 1)
        assert fam(0.3).shape == (2, 2)
        roots = sp.pencil_roots(fam, (-3.0, 3.0))
        # eigenvalues s1 (nu-1)^2 and s1 (nu+1)^2 + 2 alpha_1: only nu = 1
        # touches zero, and the second eigenvalue never vanishes
        assert [m for _, m in roots] == [2]
        assert roots[0][0] == pytest.approx(1.0, abs=1e-7)


class TestMorseProfile:
    def test_center_block_profile(self):
        ring = RingConfig(n=6, mu=1.0, alpha=2.0)
        fam = sp.planar_block_family(ring, 6)
        prof = sp.morse_profile(fam, (-2.0, 2.0), k=6, sector="planar")
        assert prof.counts == (0, 1, 1, 0)
        assert prof.count_before(1.0, 0.1) == 1
        assert prof.count_after(1.0, 0.1) == 0

    def test_interior_single_crossing(self):
        # mu below mu_k: exactly one positive normalized crossing
        ring = RingConfig(n=10, mu=1.0, alpha=2.0)
        fam = sp.planar_block_family(ring, 3)
        prof = sp.morse_profile(fam, (0.0, 2.5), k=3, sector="planar")
        assert prof.counts == (1, 0)
        assert len(prof.breakpoints) == 1


class TestSpectralCurve:
    def test_samples_on_locus(self):
        curve = sp.spectral_curve(10, 3, "mu_plus", np.linspace(-3.0, 3.0, 61))
        for nu, mu in curve.samples:
            assert abs(sp.det_dk_from_mass(10, 3, mu, nu)) <= 1e-8

    def test_k1_branch(self):
        curve = sp.spectral_curve(12, 1, "mu_zero_k1", np.linspace(0.1, 0.9, 17))
        for nu, mu in curve.samples:
            assert abs(sp.d1_quartic(12, mu, nu)) <= 1e-8 * (1.0 + mu**2)

    def test_unknown_branch(self):
        with pytest.raises(ValueError, match="branch"):
            sp.spectral_curve(10, 3, "nope", [0.5])


class TestN2Case:
    def test_block_self_adjoint(self):
        blk = sp.n2_block(1.7, 0.6)
        assert np.abs(blk - blk.conj().T).max() < 1e-14

    def test_determinant_factorization(self):
        for mu in (0.5, 1.0, 3.0):
            for nu in np.linspace(-2.0, 2.0, 17):
                det, d1, _ = sp.n2_planar(mu, nu)
                pred = 2.0**-8 * mu**2 * (4.0 * mu + 1.0) ** 2 * (nu**2 - 1.0) ** 2 * d1
                assert abs(det - pred) <= 1e-9 * max(1.0, abs(det))

    def test_quartic_value_at_origin(self):
        assert sp.n2_d1(1.0, 0.0) == pytest.approx(-203.0, rel=1e-14)

    def test_eigenvalues_at_unit_mass(self):
        for nu in np.linspace(-2.0, 2.0, 9):
            dense = np.sort(np.linalg.eigvalsh(sp.n2_block(1.0, nu)))
            closed = sp.n2_eigenvalues_mu1(nu)
            assert np.abs(dense - closed).max() <= 1e-10

    def test_nu1_against_pencil(self):
        det, d1, nu1 = sp.n2_planar(1.0, 0.0)
        assert nu1 == pytest.approx(1.6298991905688953, rel=1e-12)
        roots = sp.pencil_roots(lambda nu: sp.n2_block(1.0, nu), (1.1, 5.0))
        assert len(roots) == 1
        assert abs(roots[0][0] - nu1) <= 1e-8

    def test_quartic_root(self):
        _, _, nu1 = sp.n2_planar(2.5, 0.0)
        assert abs(sp.n2_d1(2.5, nu1)) <= 1e-9 * (1.0 + abs(sp.n2_d1(2.5, 0.0)))

    def test_rejects_nonpositive_mass(self):
        with pytest.raises(ValueError, match="mu"):
            sp.n2_block(0.0, 0.5)

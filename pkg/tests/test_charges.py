"""Tests for the charge-ring adapter."""

import json
import math

import numpy as np
import pytest

from ringbif import charges as ch
from ringbif.potential import potential_value
from ringbif.sums import s_sum


class TestChargeConfig:
    def test_omega(self):
        cfg = ch.ChargeConfig(n=4, q=5.0)
        assert cfg.s1 == pytest.approx(0.9571067811865476, rel=1e-14)
        assert cfg.omega == pytest.approx(5.0 - cfg.s1, rel=1e-14)

    def test_rejects_weak_nucleus(self):
        s1 = ch.ChargeConfig(n=6, q=100.0).s1
        with pytest.raises(ValueError, match="q > s_1"):
            ch.ChargeConfig(n=6, q=s1)
        with pytest.raises(ValueError, match="q > s_1"):
            ch.ChargeConfig(n=6, q=0.5 * s1)

    def test_rejects_tiny_ring(self):
        with pytest.raises(ValueError, match="n >= 2"):
            ch.ChargeConfig(n=1, q=5.0)

    def test_s_k_periodic(self):
        cfg = ch.ChargeConfig(n=8, q=10.0)
        assert cfg.s_k(8) == 0.0
        assert cfg.s_k(3) == pytest.approx(s_sum(8, 2.0, 3), rel=1e-14)


class TestChargeBlock:
    def test_trivial_mode_diag(self):
        for n, q in ((4, 5.0), (10, 30.0), (2, 2.0)):
            cfg = ch.ChargeConfig(n=n, q=q)
            block = ch.charge_block(cfg, "planar", n, 0.0)
            expected = np.diag([3.0 * cfg.omega, 0.0])
            assert np.allclose(block, expected, atol=1e-12 * max(1.0, cfg.omega))

    def test_planar_self_adjoint(self):
        cfg = ch.ChargeConfig(n=9, q=12.0)
        for k in range(1, 10):
            for nu in (0.0, 0.7, 1.3, -2.1):
                b = ch.charge_block(cfg, "planar", k, nu)
                assert np.allclose(b, b.conj().T, atol=1e-12)

    def test_spatial_scalar(self):
        cfg = ch.ChargeConfig(n=7, q=9.0)
        for k in range(1, 8):
            b = ch.charge_block(cfg, "spatial", k, 1.5)
            assert b.shape == (1, 1)
            assert b[0, 0] == pytest.approx(1.5**2 - (9.0 - cfg.s_k(k)), rel=1e-14)

    def test_nu_kind(self):
        cfg = ch.ChargeConfig(n=5, q=6.0)
        raw = ch.charge_block(cfg, "planar", 2, math.sqrt(cfg.omega) * 0.8)
        norm = ch.charge_block(cfg, "planar", 2, 0.8, nu_kind="normalized")
        assert np.allclose(raw, norm, atol=1e-12)
        with pytest.raises(ValueError, match="nu_kind"):
            ch.charge_block(cfg, "planar", 2, 0.8, nu_kind="scaled")

    def test_rejects_bad_k(self):
        cfg = ch.ChargeConfig(n=5, q=6.0)
        with pytest.raises(ValueError):
            ch.charge_block(cfg, "planar", 0, 1.0)
        with pytest.raises(ValueError):
            ch.charge_block(cfg, "spatial", 6, 1.0)


class TestQuartic:
    @pytest.mark.parametrize("n,q", [(4, 5.0), (8, 11.0), (12, 40.0)])
    def test_matches_determinant(self, n, q):
        cfg = ch.ChargeConfig(n=n, q=q)
        for k in range(1, n + 1):
            for nu in np.linspace(-2.5, 2.5, 15):
                det = np.linalg.det(
                    ch.charge_block(cfg, "planar", k, float(nu), nu_kind="normalized")
                ).real
                closed = ch.charge_quartic(cfg, k, float(nu))
                assert det == pytest.approx(closed, rel=1e-11, abs=1e-11)

    def test_negative_at_zero(self):
        # d_k(q, 0) = a_k - q b_k < 0 throughout the admissible range
        for n in (3, 5, 10, 20):
            s1 = ch.ChargeConfig(n=n, q=10.0 * n).s1
            for q in (1.01 * s1, 2.0 * s1, 10.0 * s1):
                cfg = ch.ChargeConfig(n=n, q=q)
                for k in range(1, n):
                    assert ch.charge_quartic(cfg, k, 0.0) < 0.0, (n, q, k)

    def test_trivial_mode_factorization(self):
        # det m~_0n = w^2 nu^2 (nu^2 - 1) in normalized nu
        cfg = ch.ChargeConfig(n=6, q=8.0)
        w = cfg.omega
        for nu in (-1.7, -0.4, 0.3, 0.9, 2.2):
            assert ch.charge_quartic(cfg, 6, nu) == pytest.approx(
                w**2 * nu**2 * (nu**2 - 1.0), rel=1e-12, abs=1e-12
            )


class TestPotentialIdentity:
    def test_negated_body_potential(self):
        cfg = ch.ChargeConfig(n=4, q=5.0)
        proxy = ch.gravitational_proxy(cfg)
        ring0 = np.array(
            [
                [math.cos(2 * math.pi * j / 4), math.sin(2 * math.pi * j / 4)]
                for j in range(1, 5)
            ]
        )
        rng = np.random.default_rng(2026)
        for _ in range(6):
            u = ring0 + 0.15 * rng.standard_normal((4, 2))
            v_tilde = ch.charge_potential(cfg, u)
            v_body = potential_value(proxy, np.vstack([[0.0, 0.0], u]))
            assert abs(v_tilde + v_body) <= 1e-12 * max(1.0, abs(v_tilde))

    def test_equilibrium_is_critical(self):
        # the regular ring is a critical point: the potential is stationary
        # under small symmetric-breaking perturbations to first order
        cfg = ch.ChargeConfig(n=5, q=7.0)
        ring0 = np.array(
            [
                [math.cos(2 * math.pi * j / 5), math.sin(2 * math.pi * j / 5)]
                for j in range(1, 6)
            ]
        )
        v0 = ch.charge_potential(cfg, ring0)
        rng = np.random.default_rng(7)
        direction = rng.standard_normal((5, 2))
        direction /= np.linalg.norm(direction)
        h = 1e-6
        deriv = (ch.charge_potential(cfg, ring0 + h * direction) - v0) / h
        assert abs(deriv) < 1e-4

    def test_collision_guard(self):
        cfg = ch.ChargeConfig(n=3, q=4.0)
        bad = np.array([[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]])
        with pytest.raises(ValueError, match="nucleus"):
            ch.charge_potential(cfg, bad)


class TestBifurcations:
    def test_frozen_n4_q5(self):
        out = ch.charge_bifurcations(ch.ChargeConfig(n=4, q=5.0))
        planar = {
            p.k: p.nu_normalized for p in out.points if p.sector == "planar"
        }
        assert planar[1] == pytest.approx(1.1925196376621727, rel=1e-10)
        assert planar[2] == pytest.approx(1.396044073386054, rel=1e-10)
        assert planar[3] == pytest.approx(1.3450629674155141, rel=1e-10)
        assert planar[4] == pytest.approx(1.0, abs=1e-10)
        assert out.sigma == 1

    @pytest.mark.parametrize("n", [2, 4, 8, 12])
    def test_all_eta_positive(self, n):
        s1 = ch.ChargeConfig(n=n, q=10.0 * n).s1
        for factor in (1.1, 2.0, 10.0):
            out = ch.charge_bifurcations(ch.ChargeConfig(n=n, q=factor * s1))
            assert out.points, (n, factor)
            for p in out.points:
                assert p.eta == 1, (n, factor, p.sector, p.k)

    def test_planar_one_per_k(self):
        for n, q in ((5, 6.0), (9, 14.0), (12, 50.0)):
            out = ch.charge_bifurcations(ch.ChargeConfig(n=n, q=q))
            planar_ks = [p.k for p in out.points if p.sector == "planar"]
            assert sorted(planar_ks) == list(range(1, n + 1))
            assert all(c == 1 for _, c, _ in out.uniqueness)

    def test_uniqueness_flags(self):
        out_small = ch.charge_bifurcations(ch.ChargeConfig(n=4, q=5.0))
        flags = {k: asserted for k, _, asserted in out_small.uniqueness}
        assert flags[1] is False and flags[3] is False  # edge, n < 7
        assert flags[2] is True and flags[4] is True
        out_big = ch.charge_bifurcations(ch.ChargeConfig(n=8, q=12.0))
        assert all(asserted for _, _, asserted in out_big.uniqueness)

    def test_spatial_crossings(self):
        cfg = ch.ChargeConfig(n=10, q=14.0)
        out = ch.charge_bifurcations(cfg)
        spatial = {p.k: p.nu for p in out.points if p.sector == "spatial"}
        for k in range(1, 11):
            s_val = cfg.s_k(k)
            if cfg.q > s_val:
                assert spatial[k] == pytest.approx(
                    math.sqrt(cfg.q - s_val), rel=1e-10
                ), k
            else:
                assert k not in spatial

    def test_spatial_mode_filter(self):
        # q between s_1 and the larger sums: only low-|k| modes qualify
        n = 12
        cfg_probe = ch.ChargeConfig(n=n, q=1000.0)
        s_vals = {k: cfg_probe.s_k(k) for k in range(1, n + 1)}
        q = 0.5 * (s_vals[1] + s_vals[2])
        cfg = ch.ChargeConfig(n=n, q=q)
        out = ch.charge_bifurcations(cfg)
        spatial_ks = sorted(p.k for p in out.points if p.sector == "spatial")
        expected = sorted(k for k in range(1, n + 1) if q > s_vals[k])
        assert spatial_ks == expected
        assert n in spatial_ks  # s_n = 0: the trivial mode always crosses

    def test_trivial_spatial_at_sqrt_q(self):
        cfg = ch.ChargeConfig(n=6, q=9.0)
        out = ch.charge_bifurcations(cfg)
        trivial = [p for p in out.points if p.sector == "spatial" and p.k == 6]
        assert len(trivial) == 1
        assert trivial[0].nu == pytest.approx(3.0, rel=1e-10)

    def test_silent_channel(self):
        out = ch.charge_bifurcations(ch.ChargeConfig(n=4, q=5.0))
        assert [(p.sector, p.k) for p in out.silent] == [("planar", 4)]
        assert out.silent[0].nu == pytest.approx(0.0, abs=1e-12)

    def test_json_round_trip(self):
        out = ch.charge_bifurcations(ch.ChargeConfig(n=5, q=6.0))
        data = json.loads(json.dumps(out.to_dict()))
        assert data["n"] == 5 and data["q"] == 6.0
        assert len(data["points"]) == len(out.points)


class TestCrossingCurve:
    def test_decreasing_to_one(self):
        for n, k in ((6, 1), (6, 2), (10, 4)):
            values = [
                ch.planar_crossing(ch.ChargeConfig(n=n, q=q), k)
                for q in (6.0, 20.0, 1e2, 1e3, 1e5)
            ]
            assert all(a > b for a, b in zip(values, values[1:])), (n, k)
            assert values[-1] == pytest.approx(1.0, abs=1e-2)
            assert all(v > 1.0 for v in values)

    def test_matches_enumeration(self):
        cfg = ch.ChargeConfig(n=7, q=9.0)
        out = ch.charge_bifurcations(cfg)
        for p in out.points:
            if p.sector == "planar" and p.k < 7:
                assert ch.planar_crossing(cfg, p.k) == pytest.approx(
                    p.nu_normalized, rel=1e-9
                )


class TestNonIonized:
    def test_boundary(self):
        assert ch.non_ionized_admissible(472)
        assert not ch.non_ionized_admissible(473)

    def test_config_agrees(self):
        ch.ChargeConfig(n=472, q=472.0)
        with pytest.raises(ValueError):
            ch.ChargeConfig(n=473, q=473.0)

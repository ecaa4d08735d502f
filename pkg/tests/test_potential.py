"""Tests for the general relative-equilibrium layer (potential module)."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ringbif import oracle
from ringbif.potential import (
    CollisionError,
    GeneralConfig,
    equilibrium_residual,
    gradient,
    hessian_blocks,
    pencil,
    potential_value,
    split,
    split_permutation,
)
from ringbif.polygonal import RingConfig


def lagrange_triangle(masses=(1.0, 2.0, 3.0), alpha=2.0):
    """Unequal-mass equilateral triangle, side 1, center of mass at origin.

    For alpha = 2 and unit side length this is a relative equilibrium with
    omega equal to the total mass.
    """
    pts = np.array([[0.0, 0.0], [1.0, 0.0], [0.5, np.sqrt(3.0) / 2.0]])
    m = np.asarray(masses, dtype=float)
    pts = pts - (m[:, None] * pts).sum(axis=0) / m.sum()
    return GeneralConfig(masses=m, positions=pts, omega=m.sum(), alpha=alpha)


def body_major(planar, n):
    """Pack planar (n,2) displacements into the 3n body-major layout."""
    out = np.zeros(3 * n)
    out[0::3] = planar[:, 0]
    out[1::3] = planar[:, 1]
    return out


class TestPotentialValue:
    def test_single_pair_unit_distance(self):
        cfg = GeneralConfig(
            masses=np.ones(2),
            positions=np.array([[-0.5, 0.0], [0.5, 0.0]]),
            omega=0.0,
            alpha=2.0,
        )
        assert potential_value(cfg, cfg.positions) == pytest.approx(1.0, abs=1e-15)

    def test_ring_n3_massless_center(self):
        ring = RingConfig(n=3, mu=0.0)
        cfg = ring.to_general()
        # three ring pairs at distance sqrt(3), phi = 1/d, plus the
        # centrifugal term (omega/2) * 3 on the unit circle
        expected = 0.5 * ring.omega * 3.0 + 3.0 / np.sqrt(3.0)
        val = potential_value(cfg, cfg.positions)
        assert val == pytest.approx(expected, rel=1e-14)
        assert val == pytest.approx(1.5 * np.sqrt(3.0), rel=1e-14)

    def test_vertical_shift_invariance(self):
        cfg = lagrange_triangle()
        base = np.column_stack([cfg.positions, np.zeros(3)])
        shifted = base.copy()
        shifted[:, 2] += 0.37
        assert potential_value(cfg, base) == pytest.approx(
            potential_value(cfg, shifted), rel=1e-15
        )

    def test_collision_rejected(self):
        cfg = lagrange_triangle()
        bad = cfg.positions.copy()
        bad[1] = bad[0]
        with pytest.raises(CollisionError):
            potential_value(cfg, bad)

    def test_log_potential_alpha_one(self):
        # alpha = 1: phi(x) = -log x, so a unit-distance pair contributes 0
        cfg = GeneralConfig(
            masses=np.ones(2),
            positions=np.array([[-0.5, 0.0], [0.5, 0.0]]),
            omega=0.0,
            alpha=1.0,
        )
        assert potential_value(cfg, cfg.positions) == pytest.approx(0.0, abs=1e-15)


class TestGradient:
    def test_ring_equilibrium(self):
        cfg = RingConfig(n=5, mu=2.0).to_general()
        assert equilibrium_residual(cfg) <= 1e-10

    def test_lagrange_triangle_equilibrium(self):
        assert equilibrium_residual(lagrange_triangle()) <= 1e-10

    def test_vertical_translation_orthogonality(self):
        # sum of z-components of the gradient vanishes for any input,
        # not just at equilibria
        cfg = lagrange_triangle()
        rng = np.random.default_rng(7)
        pts = np.column_stack([cfg.positions, np.zeros(3)])
        pts += 0.1 * rng.standard_normal(pts.shape)
        g = gradient(cfg, pts)
        assert abs(g[:, 2].sum()) <= 1e-13 * max(1.0, np.abs(g).max())

    def test_fd_gradient_agreement(self):
        for cfg in (RingConfig(n=5, mu=1.0).to_general(), lagrange_triangle()):
            pts = np.column_stack([cfg.positions, np.zeros(cfg.n_bodies)])
            # probe off-equilibrium so the gradient is nontrivial
            pts = pts * 1.05
            g = gradient(cfg, pts)
            g_fd = oracle.fd_gradient(cfg, pts)
            assert np.abs(g - g_fd).max() <= 1e-6


class TestHessian:
    def test_spatial_offdiag_unit_pair(self):
        cfg = GeneralConfig(
            masses=np.ones(2),
            positions=np.array([[-0.5, 0.0], [0.5, 0.0]]),
            omega=0.0,
            alpha=2.0,
        )
        blocks = hessian_blocks(cfg)
        assert blocks.spatial[0, 1] == pytest.approx(1.0, abs=1e-15)

    @pytest.mark.parametrize(
        "cfg",
        [
            RingConfig(n=4, mu=1.0).to_general(),
            RingConfig(n=9, mu=0.0).to_general(),
            lagrange_triangle(),
        ],
        ids=["ring4", "ring9-massless", "triangle"],
    )
    def test_row_sum_laws(self, cfg):
        blocks = hessian_blocks(cfg)
        assert blocks.row_sum_residual(cfg) <= 1e-12

    def test_block_symmetry(self):
        blocks = hessian_blocks(lagrange_triangle())
        for i in range(3):
            for j in range(3):
                assert np.allclose(
                    blocks.planar[i, j], blocks.planar[j, i].T, atol=1e-14
                )
        assert np.allclose(blocks.spatial, blocks.spatial.T, atol=1e-14)

    @pytest.mark.parametrize(
        "cfg",
        [RingConfig(n=5, mu=1.0).to_general(), lagrange_triangle()],
        ids=["ring5", "triangle"],
    )
    def test_fd_hessian_agreement(self, cfg):
        assert oracle.fd_hessian_check(cfg) <= 1e-6


class TestPencil:
    def test_nu_zero_is_hessian(self):
        cfg = lagrange_triangle()
        m0 = pencil(cfg, 0.0)
        assert np.abs(m0.imag).max() == 0.0
        dense = hessian_blocks(cfg).planar_dense()
        # planar entries of the pencil at nu=0 are exactly the Hessian
        idx = split_permutation(cfg.n_bodies)[: 2 * cfg.n_bodies]
        planar = m0.real[np.ix_(idx, idx)]
        assert np.abs(planar - dense).max() == 0.0

    @pytest.mark.parametrize("nu", [0.0, 0.7, -1.3, 2.5])
    def test_self_adjoint(self, nu):
        cfg = RingConfig(n=6, mu=2.0).to_general()
        m = pencil(cfg, nu)
        assert np.abs(m - m.conj().T).max() <= 1e-13 * max(1.0, np.abs(m).max())

    def test_negated_frequency_is_conjugate(self):
        cfg = lagrange_triangle()
        assert np.abs(pencil(cfg, 0.8) - np.conj(pencil(cfg, -0.8))).max() == 0.0

    @pytest.mark.parametrize(
        "cfg",
        [RingConfig(n=7, mu=3.0).to_general(), lagrange_triangle()],
        ids=["ring7", "triangle"],
    )
    def test_rotation_generator_in_kernel(self, cfg):
        m0 = pencil(cfg, 0.0).real
        rot = body_major(cfg.positions @ (-np.array([[0.0, -1.0], [1.0, 0.0]]).T), cfg.n_bodies)
        resid = np.abs(m0 @ rot).max() / max(1.0, np.abs(m0).max())
        assert resid <= 1e-10

    @pytest.mark.parametrize(
        "cfg",
        [RingConfig(n=6, mu=1.5).to_general(), lagrange_triangle()],
        ids=["ring6", "triangle"],
    )
    def test_scaling_law_alpha_two(self, cfg):
        # second derivative applied to the configuration itself returns
        # 3*omega*(mass-weighted configuration) when alpha = 2
        m0 = pencil(cfg, 0.0).real
        x0 = body_major(cfg.positions, cfg.n_bodies)
        weights = np.repeat(cfg.masses, 3)
        resid = np.abs(m0 @ x0 - 3.0 * cfg.omega * weights * x0).max()
        assert resid <= 1e-9 * max(1.0, np.abs(m0).max())


class TestSplit:
    def test_permutation_rearrangement_identity(self):
        cfg = RingConfig(n=4, mu=1.0).to_general()
        nu = 1.3
        m = pencil(cfg, nu)
        m0, m1 = split(cfg, nu)
        n = cfg.n_bodies
        idx = split_permutation(n)
        rearranged = m[np.ix_(idx, idx)]
        direct = np.zeros_like(m)
        direct[: 2 * n, : 2 * n] = m0
        direct[2 * n :, 2 * n :] = m1
        assert np.abs(rearranged - direct).max() <= 1e-12

    def test_spatial_translation_kernel(self):
        for cfg in (RingConfig(n=8, mu=0.5).to_general(), lagrange_triangle()):
            _, m1 = split(cfg, 0.0)
            ones = np.ones(cfg.n_bodies)
            assert np.abs(m1 @ ones).max() <= 1e-13 * max(1.0, np.abs(m1).max())

    def test_spatial_morse_count_small_nu(self):
        # all but the translation direction are negative directions of the
        # spatial block for small nu
        cfg = RingConfig(n=6, mu=1.0).to_general()
        _, m1 = split(cfg, 1e-3)
        eigs = np.linalg.eigvalsh(m1)
        n_neg = int((eigs < -1e-9 * np.abs(eigs).max()).sum())
        assert n_neg >= cfg.n_bodies - 1

    def test_split_blocks_self_adjoint(self):
        cfg = lagrange_triangle()
        m0, m1 = split(cfg, 0.45)
        assert np.abs(m0 - m0.conj().T).max() <= 1e-13 * max(1.0, np.abs(m0).max())
        assert np.abs(m1 - m1.conj().T).max() <= 1e-13 * max(1.0, np.abs(m1).max())


class TestConfigValidation:
    def test_collision_rejected_at_construction(self):
        with pytest.raises(CollisionError):
            GeneralConfig(
                masses=np.ones(2),
                positions=np.zeros((2, 2)),
                omega=1.0,
                alpha=2.0,
            )

    def test_nonphysical_mass_flag(self):
        cfg = RingConfig(n=5, mu=0.0).to_general()
        assert cfg.nonphysical_mass
        assert not lagrange_triangle().nonphysical_mass

    def test_alpha_domain(self):
        with pytest.raises(ValueError):
            GeneralConfig(
                masses=np.ones(2),
                positions=np.array([[-0.5, 0.0], [0.5, 0.0]]),
                omega=1.0,
                alpha=0.5,
            )

    @given(
        mu=st.floats(min_value=0.0, max_value=50.0),
        n=st.integers(min_value=3, max_value=12),
    )
    @settings(max_examples=25, deadline=None)
    def test_ring_equilibrium_property(self, mu, n):
        cfg = RingConfig(n=n, mu=mu).to_general()
        assert equilibrium_residual(cfg) <= 1e-9 * (1.0 + mu)

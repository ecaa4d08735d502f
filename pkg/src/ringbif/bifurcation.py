"""Orientation sign, bifurcation index, and the enumeration engine.

A crossing frequency becomes a certified bifurcation point when the Morse
number of its block jumps: the index eta is the orientation sign times the
jump. Crossings whose kernel comes and goes without changing the count
(eta = 0) are kept in a separate silent channel — they matter for stability
bookkeeping but carry no branch certificate.

Planar breakpoints are computed in the sqrt(omega)-normalized frequency and
converted once, here; the raw value is canonical in every output record.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict, field
from functools import lru_cache

import numpy as np
from scipy.linalg import null_space

from .potential import GeneralConfig, split
from .polygonal import RingConfig
from .resonance import ResonanceReport, is_truly_spatial
from .spectrum import (
    MorseProfile,
    _newton_coefficients,
    critical_masses,
    eigen_signature,
    k1_boundary_masses,
    k1_thresholds,
    morse_profile,
    pencil_roots,
    planar_block_family,
    spatial_block_family,
)
from .symmetry import SymmetryDescriptor, describe

__all__ = [
    "BifurcationPoint",
    "BifurcationSet",
    "DegenerateOrbitError",
    "NEAR_THRESHOLD_RADIUS",
    "enumerate_bifurcations",
    "eta_index",
    "sigma_orientation",
]

# masses closer than this to a spectral threshold get flagged; closer than
# DEGENERATE_RADIUS the orientation sign itself is undefined and we raise
NEAR_THRESHOLD_RADIUS = 1e-6
DEGENERATE_RADIUS = 1e-9


class DegenerateOrbitError(ValueError):
    """The relative equilibrium orbit is not hyperbolic (extra kernel)."""


# ---------------------------------------------------------------------------
# Orientation


def _ring_degeneracy_gap(ring: RingConfig) -> float:
    """Distance from mu to the nearest mass where M0(0) gains kernel."""
    n = ring.n
    if n == 2:
        # the two-body quartic at nu = 0 is -(84 mu + 119): no positive root
        return math.inf
    gaps = []
    if n >= 4:
        coef = _newton_coefficients(n)
        for k in range(2, n - 1):
            gaps.append(abs(ring.mu + coef.a_k[k] / coef.b_k[k]))
    if ring.mu > 0.0:
        gaps.append(abs(ring.mu - k1_boundary_masses(n)["mu_1"]))
    return min(gaps) if gaps else math.inf


def sigma_orientation(config) -> int:
    """Sign of det M0(0) restricted orthogonal to the rotation generator.

    For the ring this is the sign of (alpha + 1)(mu + s1), i.e. +1 whenever
    the equilibrium exists; masses where the planar Hessian gains extra
    kernel raise DegenerateOrbitError.  For a general equilibrium the
    determinant is computed on the orthogonal complement of the rotation
    direction; a value below tolerance returns 0.
    """
    if isinstance(config, RingConfig):
        if config.omega <= 0.0:
            raise ValueError("needs a positive rotation rate omega")
        if _ring_degeneracy_gap(config) <= DEGENERATE_RADIUS:
            raise DegenerateOrbitError(
                f"planar Hessian degenerate at mu = {config.mu}"
            )
        return 1 if (config.alpha + 1.0) * config.omega > 0.0 else -1

    cfg: GeneralConfig = config
    m0 = np.asarray(split(cfg, 0.0)[0]).real
    n_bodies = cfg.n_bodies
    rot = np.empty(2 * n_bodies)
    rot[0::2] = -cfg.positions[:, 1]
    rot[1::2] = cfg.positions[:, 0]
    rot /= np.linalg.norm(rot)
    eigs = np.linalg.eigvalsh(m0)
    scale = np.abs(eigs).max()
    kernel_dim = int((np.abs(eigs) <= 1e-9 * scale).sum())
    if kernel_dim > 1:
        raise DegenerateOrbitError(
            f"planar kernel dimension {kernel_dim} > 1: orbit not hyperbolic"
        )
    comp = null_space(rot[None, :])
    restricted = comp.T @ m0 @ comp
    sign, logdet = np.linalg.slogdet(restricted)
    if sign == 0.0 or logdet < (2 * n_bodies - 1) * math.log(1e-10 * max(scale, 1e-300)):
        return 0
    return int(sign)


# ---------------------------------------------------------------------------
# Index


def eta_index(profile: MorseProfile, nu0: float, sigma: int) -> int:
    """Bifurcation index sigma * (Morse count before - after) at nu0."""
    bps = np.asarray(profile.breakpoints)
    if bps.size == 0:
        raise ValueError("profile has no breakpoints")
    gaps = np.abs(bps - nu0)
    idx = int(gaps.argmin())
    if gaps[idx] > 1e-8 * (1.0 + abs(nu0)):
        raise ValueError(f"nu0 = {nu0} is not a breakpoint of the profile")
    nu0 = float(bps[idx])
    neighbor_gaps = [abs(b - nu0) for b in bps if b != nu0]
    half_gap = min(neighbor_gaps) / 2.0 if neighbor_gaps else math.inf
    rho = min(half_gap, 1e-3 * (1.0 + abs(nu0)))
    if rho <= 0.0:
        raise ValueError("coincident breakpoints: cannot isolate the crossing")
    return sigma * (profile.count_before(nu0, rho) - profile.count_after(nu0, rho))


# ---------------------------------------------------------------------------
# Enumeration


@dataclass(frozen=True)
class BifurcationPoint:
    """One certified (or, in the silent channel, kernel-touch) crossing.

    nu is the raw frequency (canonical); nu_normalized the
    sqrt(omega)-scaled value the planar closed forms live in.  flags keys:
    near_mu_k, resonance_suspect, kernel_degenerate.
    """

    nu: float
    nu_normalized: float
    sector: str
    k: int
    eta: int
    multiplicity: int
    isotropy: SymmetryDescriptor
    flags: dict
    resonance: ResonanceReport | None = None

    def to_dict(self) -> dict:
        out = {
            "nu": self.nu,
            "nu_normalized": self.nu_normalized,
            "sector": self.sector,
            "k": self.k,
            "eta": self.eta,
            "multiplicity": self.multiplicity,
            "isotropy": self.isotropy.to_dict(),
            "flags": dict(self.flags),
            "resonance": self.resonance.to_dict() if self.resonance else None,
        }
        return out


@dataclass(frozen=True)
class BifurcationSet:
    """Enumeration output: certified points plus the silent channel."""

    n: int
    mu: float
    sigma: int
    points: tuple[BifurcationPoint, ...]
    silent: tuple[BifurcationPoint, ...]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "mu": self.mu,
            "sigma": self.sigma,
            "points": [p.to_dict() for p in self.points],
            "silent": [p.to_dict() for p in self.silent],
        }


@lru_cache(maxsize=256)
def _sector_threshold_masses(n: int, k: int) -> tuple[float, ...]:
    """All critical masses of the planar sector k (for the near flags)."""
    if k == n or n == 2:
        return ()
    if k in (1, n - 1):
        vals = [k1_boundary_masses(n)["mu_1"]]
        vals += [v for key, v in k1_thresholds(n).items() if not key.startswith("nu_")]
        return tuple(vals)
    cm = critical_masses(n, k)
    return (cm["mu_k"], cm["m0"], cm["m_plus"], cm["m_minus"])


def _near_threshold(ring: RingConfig, k: int) -> bool:
    return any(
        abs(ring.mu - t) <= NEAR_THRESHOLD_RADIUS
        for t in _sector_threshold_masses(ring.n, k)
    )


def _classify_sector(ring, k, sector, sigma, check_thresholds):
    """Crossing points of one (sector, k) block family, positive nu only."""
    if sector == "planar":
        family = planar_block_family(ring, k, normalized=True)
        to_raw = math.sqrt(ring.omega)
    else:
        family = spatial_block_family(ring, k, normalized=False)
        to_raw = 1.0
    roots = pencil_roots(family, None)
    if not roots:
        return [], []
    hi = max(abs(r) for r, _ in roots) + 1.0
    profile = morse_profile(family, (0.0, hi), k=k, sector=sector)
    near = check_thresholds and sector == "planar" and _near_threshold(ring, k)

    points, silent = [], []
    for root, mult in roots:
        if root < -1e-9:
            continue  # negative crossings belong to representation n-k
        touching_zero = abs(root) <= 1e-9
        eta = 0 if touching_zero else eta_index(profile, root, sigma)
        kernel_dim = eigen_signature(family(root))[1]
        resonance = None
        suspect = False
        if sector == "spatial" and eta != 0:
            try:
                resonance = is_truly_spatial(ring, k)
                suspect = not resonance.truly_spatial
            except ValueError:
                suspect = True
        point = BifurcationPoint(
            nu=float(root * to_raw),
            nu_normalized=float(root if sector == "planar" else root / math.sqrt(ring.omega)),
            sector=sector,
            k=k,
            eta=eta,
            multiplicity=mult,
            isotropy=describe(ring.n, k, sector),
            flags={
                "near_mu_k": near,
                "resonance_suspect": suspect,
                "kernel_degenerate": kernel_dim > 1,
            },
            resonance=resonance,
        )
        (silent if eta == 0 else points).append(point)
    return points, silent


def enumerate_bifurcations(
    ring: RingConfig,
    sectors: tuple[str, ...] = ("planar", "spatial"),
    check_thresholds: bool = True,
) -> BifurcationSet:
    """Classify every positive-frequency crossing of the ring's blocks.

    Points carry eta != 0 and an isotropy descriptor; spatial points also
    carry their non-resonance report.  eta = 0 kernel touches (the double
    roots at nu = 1 of the k in {1, n-1} sector, the nu = 0 touch of the
    center blocks) land in the silent channel.  Masses within 1e-9 of a
    planar degeneracy raise; within 1e-6 the affected points are flagged
    near_mu_k instead.
    """
    if ring.omega <= 0.0:
        raise ValueError("needs a positive rotation rate omega")
    sigma = sigma_orientation(ring)  # raises DegenerateOrbitError if singular
    points, silent = [], []
    for sector in sectors:
        for k in range(1, ring.n + 1):
            if sector == "spatial" and k < ring.n and ring.mu + ring.s_array()[k] <= 0:
                continue
            p, s = _classify_sector(ring, k, sector, sigma, check_thresholds)
            points += p
            silent += s
    key = lambda pt: (pt.sector, pt.k, pt.nu)
    return BifurcationSet(
        n=ring.n,
        mu=ring.mu,
        sigma=sigma,
        points=tuple(sorted(points, key=key)),
        silent=tuple(sorted(silent, key=key)),
    )

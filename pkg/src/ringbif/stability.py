"""Spectral stability of the ring-plus-center equilibrium.

The linearization at the relative equilibrium decouples (after the discrete
Fourier split) into one planar and one spatial polynomial pencil per wave
number k.  The equilibrium is spectrally stable exactly when every pencil
has all its roots real, i.e. when the planar sector carries 4(n+1) real
roots counted with multiplicity and the spatial sector carries 2(n+1).

The spatial count is unconditional for a positive central mass.  The planar
count fails below a finite threshold mass ``m_star`` (for n >= 7) or for
every mass (n <= 6): some 2x2 block then has a complex quartet and the
equilibrium is exponentially unstable.  ``m_star`` is computed here as a
maximum over per-pair thresholds rather than assumed to sit at k = n/2;
the dominant wave number is reported so the expectation can be checked.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .polygonal import RingConfig
from .spectrum import (
    critical_masses,
    k1_thresholds,
    m_plus_half_closed_form,
    planar_block_family,
    spatial_block_family,
)
from .sums import asymptotic_sigma

__all__ = [
    "SATURN_CONSTANT",
    "StabilityVerdict",
    "StarReport",
    "critical_mass_star",
    "kernel_annotations",
    "real_root_count",
    "saturn_limit",
    "sector_root_counts",
    "spectral_stability",
    "stability_scan",
]

# coefficient of sigma * n^3 in the large-n stability threshold
SATURN_CONSTANT = 13.0 + 4.0 * math.sqrt(10.0)

# relative width of the warning band around m_star
_NEAR_THRESHOLD_RTOL = 1e-6

# terms used when a converged value of the lattice constant sigma is needed;
# the truncation error is below 1/(16 pi^3 N^2) ~ 5e-15
_SIGMA_TERMS = 200_000


def _det_polynomial(family, degree: int) -> np.ndarray:
    """Coefficients (increasing order) of det(family(nu)) via interpolation.

    The determinant of a d x d quadratic matrix pencil is a polynomial of
    degree 2d; sampling it at 2d + 1 integer nodes pins it down exactly.
    The pencil is self-adjoint at real nu, so the determinant values are
    real up to roundoff.
    """
    half = degree // 2
    nodes = np.arange(-half, degree - half + 1, dtype=np.float64)
    vals = np.array(
        [np.linalg.det(np.atleast_2d(np.asarray(family(float(t))))).real for t in nodes]
    )
    vander = np.vander(nodes, N=degree + 1, increasing=True)
    return np.linalg.solve(vander, vals)


def real_root_count(family, imag_rtol: float = 1e-5) -> int:
    """Number of real pencil roots, counted with multiplicity.

    Counted on the determinant polynomial rather than on a companion
    eigenproblem: the structural double roots (the nu = 1 translation
    pair in the edge blocks, the nu = 0 pair in the center block) are
    defective, and a generalized eigensolver splits them sideways by
    ~sqrt(eps) times the coefficient scale — at central masses in the
    hundreds that exceeds any fixed absolute tolerance.  Root-finding on
    the normalized determinant keeps the split at ~1e-8 relative, while
    a genuine complex quartet near the stability threshold sits at least
    a thousand times further from the real axis.
    """
    mat0 = np.atleast_2d(np.asarray(family(0.0)))
    degree = 2 * mat0.shape[0]
    coeffs = _det_polynomial(family, degree)
    coeffs = coeffs / np.max(np.abs(coeffs))
    roots = np.roots(coeffs[::-1])
    real_mask = np.abs(roots.imag) <= imag_rtol * (1.0 + np.abs(roots))
    return int(np.sum(real_mask))


def sector_root_counts(ring: RingConfig) -> dict:
    """Per-block real-root counts for both sectors.

    Returns a dict with ``planar`` and ``spatial`` lists of
    ``(k, real_count, degree)`` triples plus the sector totals.
    """
    if ring.mu <= 0.0:
        raise ValueError(
            f"stability bookkeeping needs a massive center, got mu = {ring.mu}"
        )
    out = {"planar": [], "spatial": [], "planar_total": 0, "spatial_total": 0}
    for k in range(1, ring.n + 1):
        fam = planar_block_family(ring, k)
        degree = 2 * fam(0.0).shape[0]
        count = real_root_count(fam)
        out["planar"].append((k, count, degree))
        out["planar_total"] += count
    for k in range(1, ring.n + 1):
        fam = spatial_block_family(ring, k)
        degree = 2 * fam(0.0).shape[0]
        count = real_root_count(fam)
        out["spatial"].append((k, count, degree))
        out["spatial_total"] += count
    return out


@lru_cache(maxsize=256)
def _pair_threshold(n: int, k_low: int) -> float:
    """Mass above which the (k, n-k) planar pair keeps all its roots real.

    ``math.inf`` when no such mass exists (the edge pair for n <= 6, whose
    four-real-root window is bounded).
    """
    if k_low == 1:
        th = k1_thresholds(n)
        if "m_plus" not in th:
            return math.inf
        return max(th["m_plus"], th["m_minus"])
    cm = critical_masses(n, k_low)
    return max(cm["m_plus"], cm["m_minus"])


@dataclass(frozen=True)
class StarReport:
    """The planar stability threshold and the per-pair table behind it."""

    n: int
    m_star: float  # math.inf when the ring is never stable
    dominant_k: int | None
    per_pair: tuple[tuple[int, float], ...]  # (k_low, pair threshold)

    def to_dict(self) -> dict:
        finite = math.isfinite(self.m_star)
        return {
            "n": self.n,
            "m_star": self.m_star if finite else None,
            "never_stable": not finite,
            "dominant_k": self.dominant_k,
            "per_pair": [
                {"k": k, "threshold": (t if math.isfinite(t) else None)}
                for k, t in self.per_pair
            ],
        }


@lru_cache(maxsize=128)
def critical_mass_star(n: int) -> StarReport:
    """Threshold central mass for spectral stability of the n-ring.

    The maximum over representation pairs of the mass above which the
    pair's planar quartic keeps four real roots.  Computed, not assumed:
    the per-pair table is retained so the k = n/2 dominance expected for
    even n can be audited.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    if n == 2:
        # the two-body planar quartic carries a complex (here: imaginary)
        # pair at every mass, so there is no threshold at all
        return StarReport(n=2, m_star=math.inf, dominant_k=None, per_pair=())
    rows = []
    for k_low in range(1, n // 2 + 1):
        rows.append((k_low, _pair_threshold(n, k_low)))
    m_star = max(t for _, t in rows)
    if math.isfinite(m_star):
        dominant_k = max(rows, key=lambda item: item[1])[0]
    else:
        dominant_k = None
    return StarReport(n=n, m_star=m_star, dominant_k=dominant_k, per_pair=tuple(rows))


@dataclass(frozen=True)
class StabilityVerdict:
    """Root-count verdict at one (n, mu)."""

    n: int
    mu: float
    planar_real_roots: int
    spatial_real_roots: int
    planar_required: int
    spatial_required: int
    spectrally_stable: bool
    m_star: float
    dominant_k: int | None
    near_threshold: bool
    flags: tuple[str, ...]
    per_block: tuple[tuple[str, int, int, int], ...]  # (sector, k, count, degree)

    def to_dict(self) -> dict:
        finite = math.isfinite(self.m_star)
        return {
            "n": self.n,
            "mu": self.mu,
            "planar_real_roots": self.planar_real_roots,
            "spatial_real_roots": self.spatial_real_roots,
            "planar_required": self.planar_required,
            "spatial_required": self.spatial_required,
            "spectrally_stable": self.spectrally_stable,
            "m_star": self.m_star if finite else None,
            "never_stable": not finite,
            "dominant_k": self.dominant_k,
            "near_threshold": self.near_threshold,
            "flags": list(self.flags),
            "per_block": [
                {"sector": s, "k": k, "real_roots": c, "degree": d}
                for s, k, c, d in self.per_block
            ],
        }


def spectral_stability(ring: RingConfig) -> StabilityVerdict:
    """Count real pencil roots in both sectors and compare to the targets.

    Also reports the threshold mass, flags verdicts taken within a
    relative 1e-6 of it (where the root counting itself is reliable but
    physically the configuration sits on the stability boundary), and
    tags the n = 2 case, whose planar spectrum always carries six real
    and two purely imaginary roots.
    """
    counts = sector_root_counts(ring)
    n = ring.n
    star = critical_mass_star(n)
    planar_required = 4 * (n + 1)
    spatial_required = 2 * (n + 1)
    stable = (
        counts["planar_total"] == planar_required
        and counts["spatial_total"] == spatial_required
    )
    near = (
        math.isfinite(star.m_star)
        and abs(ring.mu - star.m_star) <= _NEAR_THRESHOLD_RTOL * max(1.0, star.m_star)
    )
    flags = []
    if near:
        flags.append("near_threshold")
    if not math.isfinite(star.m_star):
        flags.append("never_stable")
    if n == 2:
        flags.append("exponential_instability_two_imaginary_roots")
    per_block = tuple(
        [("planar", k, c, d) for k, c, d in counts["planar"]]
        + [("spatial", k, c, d) for k, c, d in counts["spatial"]]
    )
    return StabilityVerdict(
        n=n,
        mu=ring.mu,
        planar_real_roots=counts["planar_total"],
        spatial_real_roots=counts["spatial_total"],
        planar_required=planar_required,
        spatial_required=spatial_required,
        spectrally_stable=stable,
        m_star=star.m_star,
        dominant_k=star.dominant_k,
        near_threshold=near,
        flags=tuple(flags),
        per_block=per_block,
    )


def kernel_annotations(ring: RingConfig) -> dict:
    """Structural kernels forced by the symmetries, with numeric residuals.

    Three exact degeneracies survive at every mass:

    * planar center block at nu = 0: kernel (0, 1).  Generated by the
      rotation J x0 of the equilibrium; the generalized solution
      2 x0 - 3 sqrt(omega) t J x0 drifts linearly along the orbit.
    * planar edge block (k = 1) at nu = 1: kernel
      (sqrt(2/n), 1, i) / norm.  Generated by uniform translations
      v = (1/sqrt(n)) ((1, i), ..., (1, i)); the solutions are
      (a + b t) e^(i sqrt(omega) t) v.
    * spatial center block at nu = 0: kernel (1, sqrt(n)).  Generated by
      the vertical translation e = (1, ..., 1) of all bodies.

    For n = 2 the edge and center planar blocks merge into one 4x4 block;
    the edge annotation is skipped there.
    """
    n = ring.n
    out = {}

    center = planar_block_family(ring, n)(0.0)
    vec = np.array([0.0, 1.0])
    out["planar_center_nu0"] = {
        "vector": [0.0, 1.0],
        "residual": float(np.linalg.norm(center @ vec)),
        "annotation": "rotation J x0; drift solution 2 x0 - 3 sqrt(omega) t J x0",
    }

    if n >= 3:
        edge = planar_block_family(ring, 1)(1.0)
        vec_c = np.array([math.sqrt(2.0 / n), 1.0, 1.0j])
        vec_c = vec_c / np.linalg.norm(vec_c)
        out["planar_edge_nu1"] = {
            "vector": [math.sqrt(2.0 / n), 1.0, "i"],
            "residual": float(np.linalg.norm(edge @ vec_c)),
            "annotation": (
                "uniform translation v = (1/sqrt(n)) (1, i) per body; "
                "solutions (a + b t) exp(i sqrt(omega) t) v"
            ),
        }
    else:
        out["planar_edge_nu1"] = {
            "vector": None,
            "residual": None,
            "annotation": "merged into the 4x4 two-body block; see its (nu - 1)^2 factor",
        }

    spatial = spatial_block_family(ring, n)(0.0)
    vec_s = np.array([1.0, math.sqrt(n)])
    vec_s = vec_s / np.linalg.norm(vec_s)
    out["spatial_center_nu0"] = {
        "vector": [1.0, math.sqrt(float(n))],
        "residual": float(np.linalg.norm(spatial @ vec_s)),
        "annotation": "vertical translation e = (1, ..., 1)",
    }
    return out


def saturn_limit(n: int) -> dict:
    """Compare the exact threshold ratio m_star / n^3 to its large-n limit.

    The even-n closed form for the k = n/2 pair threshold divided by n^3
    tends to (13 + 4 sqrt(10)) sigma, with sigma the odd-cube lattice
    constant; the gap closes like 1/n.
    """
    if n < 4 or n % 2 != 0:
        raise ValueError(f"the half-wave closed form needs even n >= 4, got {n}")
    ratio = m_plus_half_closed_form(n) / float(n) ** 3
    limit = SATURN_CONSTANT * asymptotic_sigma(_SIGMA_TERMS)
    return {
        "n": n,
        "ratio": ratio,
        "limit": limit,
        "relative_gap": abs(ratio - limit) / limit,
    }


def stability_scan(n_values, verify: bool = True) -> list[dict]:
    """Threshold table for a range of ring sizes.

    One row per n with the threshold mass and the dominant pair; when
    ``verify`` is set, the verdict is recomputed at masses 0.1% above and
    below the threshold and the observed flip is recorded rather than
    assumed.
    """
    rows = []
    for n in n_values:
        star = critical_mass_star(int(n))
        row = {
            "n": int(n),
            "m_star": star.m_star if math.isfinite(star.m_star) else None,
            "never_stable": not math.isfinite(star.m_star),
            "dominant_k": star.dominant_k,
        }
        if verify and math.isfinite(star.m_star):
            above = spectral_stability(
                RingConfig(n=int(n), mu=star.m_star * 1.001, alpha=2.0)
            )
            below = spectral_stability(
                RingConfig(n=int(n), mu=star.m_star * 0.999, alpha=2.0)
            )
            row["stable_above"] = above.spectrally_stable
            row["stable_below"] = below.spectrally_stable
        elif verify:
            # no finite threshold: spot-check instability at a large mass
            probe = spectral_stability(
                RingConfig(n=int(n), mu=1e4 * float(n) ** 3, alpha=2.0)
            )
            row["stable_above"] = probe.spectrally_stable
            row["stable_below"] = False
        rows.append(row)
    return rows

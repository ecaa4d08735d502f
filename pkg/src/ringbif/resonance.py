"""Non-resonance certificates for spatial branches.

A spatial branch at frequency nu_k is "truly spatial" when the planar
linearization is invertible at every doubled harmonic 2 l nu_k: otherwise
planar oscillations at those harmonics could ride along the branch.  The
check is finite because the planar block family has finitely many real
singular frequencies; once 2 l nu_k clears the largest of them, every
higher harmonic is invertible for free.

Also here: the subharmonic bound on spatial-spatial resonances and the
enumeration of candidate resonant central masses.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, asdict

import numpy as np

from .polygonal import RingConfig
from .spectrum import (
    _newton_coefficients,
    _unit_ring,
    det_dk_from_mass,
    k1_boundary_masses,
    mu_branch_minus,
    mu_branch_plus,
    pencil_roots,
    planar_block_family,
)

__all__ = [
    "EXCLUSION_RADIUS",
    "REFUSAL_RADIUS",
    "ResonanceReport",
    "is_truly_spatial",
    "planar_planar_resonances",
    "spatial_spatial_resonances",
    "subharmonic_bound",
]

# neighbourhood of the planar threshold mass documented in every report:
# arbitrarily small planar determinant values there generate resonances
# at unboundedly many harmonics
EXCLUSION_RADIUS = 1e-3
# closer than this the orbit is treated as non-hyperbolic and we refuse
REFUSAL_RADIUS = 1e-6

_DET_RTOL = 1e-8


@dataclass(frozen=True)
class ResonanceReport:
    """Outcome of the truly-spatial certificate for one spatial branch.

    checked_modes holds (l, |det|, verdict) for each harmonic up to the
    certified bound; root_bound is the largest real singular frequency of
    the planar family and certification_margin is the clearance
    2 (bound_l_max + 1) nu_k - root_bound guaranteeing all higher harmonics.
    """

    n: int
    k: int
    mu: float
    nu_k: float
    checked_modes: tuple[tuple[int, float, str], ...]
    bound_l_max: int
    truly_spatial: bool
    root_bound: float
    certification_margin: float
    exclusion_radius: float
    near_planar_threshold: bool
    spatial_spatial_candidates: tuple[tuple[int, int, int, float], ...]

    def to_dict(self) -> dict:
        out = asdict(self)
        out["checked_modes"] = [list(m) for m in self.checked_modes]
        out["spatial_spatial_candidates"] = [
            list(c) for c in self.spatial_spatial_candidates
        ]
        return out


def _planar_threshold_mass(n: int, k: int) -> float | None:
    """Central mass where the planar block k degenerates at nu = 0."""
    if k == n or n == 2:
        return None
    if k in (1, n - 1):
        return k1_boundary_masses(n)["mu_1"]
    coef = _newton_coefficients(n)
    return -float(coef.a_k[k] / coef.b_k[k])


def _verdict(abs_det: float, block) -> str:
    dim = block.shape[0]
    norm = float(np.linalg.norm(block, 2))
    thresh = _DET_RTOL * norm**dim
    if abs_det > 10.0 * thresh:
        return "invertible"
    if abs_det < 0.1 * thresh:
        return "singular"
    return "marginal"


def is_truly_spatial(ring: RingConfig, k: int, max_checked: int = 64) -> ResonanceReport:
    """Certify that the spatial branch in representation k is non-planar.

    Evaluates the normalized planar block of the same representation at the
    doubled harmonics 2 l nu_k for l = 1..L, with L certified from the real
    root bound of the planar pencil; refuses within REFUSAL_RADIUS of the
    planar threshold mass, where the orbit is not hyperbolic.
    """
    n = ring.n
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in 1..{n}, got {k}")
    s_val = float(n) if k == n else float(ring.s_array()[k])
    if ring.mu + s_val <= 0.0:
        raise ValueError(f"no spatial breakpoint: mu + s_k = {ring.mu + s_val}")

    threshold = _planar_threshold_mass(n, k)
    near = False
    if threshold is not None:
        gap = abs(ring.mu - threshold)
        if gap <= REFUSAL_RADIUS:
            raise ValueError(
                f"mu = {ring.mu} within {REFUSAL_RADIUS} of the planar "
                f"threshold {threshold}: orbit not hyperbolic, refusing"
            )
        near = gap <= EXCLUSION_RADIUS

    nu_k = math.sqrt((ring.mu + s_val) / ring.omega)
    family = planar_block_family(ring, k)
    roots = pencil_roots(family, None)
    root_bound = max((abs(r) for r, _ in roots), default=0.0)

    l_max = max(1, int(math.floor(root_bound / (2.0 * nu_k))))
    while 2.0 * (l_max + 1) * nu_k - root_bound < 1e-6:
        l_max += 1
    if l_max > max_checked:
        raise RuntimeError(
            f"certified harmonic bound {l_max} exceeds max_checked={max_checked}"
        )
    margin = 2.0 * (l_max + 1) * nu_k - root_bound

    checked = []
    for l in range(1, l_max + 1):
        block = np.asarray(family(2.0 * l * nu_k))
        abs_det = abs(np.linalg.det(block))
        checked.append((l, float(abs_det), _verdict(abs_det, block)))
    truly = all(v == "invertible" for _, _, v in checked)

    candidates = []
    if k < n:
        k_low = min(k, n - k)
        partners = [k2 for k2 in range(k_low + 1, n // 2 + 1)] + [n]
        for k2 in partners:
            for entry in spatial_spatial_resonances(n, k_low, k2, range(2, 12)):
                if entry.get("mu") is not None:
                    candidates.append((k_low, k2, entry["l"], entry["mu"]))

    return ResonanceReport(
        n=n,
        k=k,
        mu=ring.mu,
        nu_k=nu_k,
        checked_modes=tuple(checked),
        bound_l_max=l_max,
        truly_spatial=truly,
        root_bound=root_bound,
        certification_margin=margin,
        exclusion_radius=EXCLUSION_RADIUS,
        near_planar_threshold=near,
        spatial_spatial_candidates=tuple(candidates),
    )


def subharmonic_bound(n: int, k1: int, k2: int) -> int:
    """Largest harmonic l admitting a nonnegative-mass k1:k2 resonance.

    l^2 <= s_{k2}/s_{k1} is necessary for mu >= 0; the returned bound is
    floor(sqrt of the ratio).  The strict inequality
    s_{k2}/s_{k1} < k2^2 - k1^2 + 1 is verified and a violation raises.
    """
    if not 1 <= k1 <= k2 <= n / 2:
        raise ValueError(f"need 1 <= k1 <= k2 <= n/2, got ({k1}, {k2})")
    if k1 == k2:
        return 1
    s = _unit_ring(n).s_array()
    ratio = float(s[k2] / s[k1])
    bound = k2**2 - k1**2 + 1
    if not ratio < bound:
        raise RuntimeError(
            f"sum-ratio bound violated: s_{k2}/s_{k1} = {ratio} >= {bound}"
        )
    return int(math.floor(math.sqrt(ratio)))


def spatial_spatial_resonances(n: int, k1: int, k2: int, l_range) -> list[dict]:
    """Candidate central masses with nu_{k2} = l nu_{k1} (spatial pair).

    Solving (mu + s_{k2}) = l^2 (mu + s_{k1}) gives
    mu = (s_{k2} - l^2 s_{k1}) / (l^2 - 1) for l >= 2; candidates are
    emitted only when positive.  l = 1 never yields a resonance: the
    k2 = n case is excluded by the strict orderings of the sums against n,
    and k2 = n - k1 is the same branch run backwards in time.
    """
    if not 1 <= k1 < n:
        raise ValueError(f"k1 must lie in 1..{n - 1}, got {k1}")
    if not 1 <= k2 <= n:
        raise ValueError(f"k2 must lie in 1..{n}, got {k2}")
    s = _unit_ring(n).s_array()
    s1_val = float(s[k1])
    s2_val = float(n) if k2 == n else float(s[k2])
    out: list[dict] = []
    for l in l_range:
        if l < 1:
            raise ValueError("harmonic index must be >= 1")
        if l == 1:
            if k2 == n:
                # equality s_{k1} = n never holds: the sums are strictly
                # ordered against n at every ring size
                assert abs(s1_val - n) > 0.0
                out.append({"k1": k1, "k2": k2, "l": 1, "mu": None,
                            "note": "no_1_1_resonance"})
            elif k2 == n - k1:
                out.append({"k1": k1, "k2": k2, "l": 1, "mu": None,
                            "note": "reversal_duality"})
            continue
        mu = (s2_val - l**2 * s1_val) / (l**2 - 1.0)
        if mu > 0.0:
            out.append({"k1": k1, "k2": k2, "l": l, "mu": mu, "note": None})
    return out


def _branch_intersections(n, k2, l, branch, grid):
    vals = np.array([branch(x) for x in grid])
    g = np.array(
        [
            det_dk_from_mass(n, k2, m, l * x) if np.isfinite(m) else np.nan
            for x, m in zip(grid, vals)
        ]
    )
    hits = []
    for i in range(len(grid) - 1):
        a, b = g[i], g[i + 1]
        if not (np.isfinite(a) and np.isfinite(b)):
            continue
        if a == 0.0:
            hits.append((grid[i], vals[i]))
            continue
        if a * b < 0.0:
            lo, hi = grid[i], grid[i + 1]
            for _ in range(80):
                mid = 0.5 * (lo + hi)
                gm = det_dk_from_mass(n, k2, branch(mid), l * mid)
                if not np.isfinite(gm):
                    break
                if gm == 0.0:
                    lo = hi = mid
                    break
                if (gm < 0.0) == (a < 0.0):
                    lo = mid
                else:
                    hi = mid
            mid = 0.5 * (lo + hi)
            hits.append((mid, branch(mid)))
    return hits


def planar_planar_resonances(
    n: int,
    k1: int,
    k2: int,
    l: int,
    nu_window: tuple[float, float] = (1e-3, 3.0),
    grid_points: int = 2000,
) -> list[tuple[float, float]]:
    """Numeric intersections of the planar loci d_{k1}(nu) = d_{k2}(l nu) = 0.

    Parametrizes the k1 locus by its mass branches mu_+/-(nu) and locates
    sign changes of d_{k2}(mu(nu), l nu) along each.  Eliminating mu
    symbolically gives a polynomial of degree 16 in nu when l > 1 (degree 4
    when l = 1), so the located count is asserted against that bound.
    Returns (nu_1, mu) pairs sorted by nu_1.
    """
    if l < 1:
        raise ValueError("harmonic index must be >= 1")
    lo, hi = nu_window
    hits = []
    grid = np.linspace(lo, hi, grid_points)
    hits += _branch_intersections(n, k2, l, lambda x: mu_branch_plus(n, k1, x), grid)
    inner = grid[(grid > 0.0) & (grid < 1.0)]
    if inner.size:
        hits += _branch_intersections(
            n, k2, l, lambda x: mu_branch_minus(n, k1, x), inner
        )
    degree = 16 if l > 1 else 4
    if len(hits) > degree:
        raise RuntimeError(
            f"located {len(hits)} intersections, above the degree-{degree} bound"
        )
    return sorted((float(x), float(m)) for x, m in hits)

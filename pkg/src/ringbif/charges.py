"""Ring of unit negative charges around a fixed positive nucleus.

With the nucleus pinned at the origin, the n charges admit the same
polygonal relative equilibrium as the gravitational ring, because the
rotating-frame charge potential is exactly the negative of the amended
gravitational potential evaluated with a central mass of -q and the
center held at the origin.  The linearized blocks inherit that sign flip:

    planar   m~_0k(nu) = nu^2 I - 2 nu sqrt(omega) (iJ) - B_k(-q)
    spatial  m~_1k(nu) = nu^2 - (q - s_k)

with omega = q - s_1 > 0.  Two structural simplifications follow from the
fixed nucleus: every planar block is the generic 2x2 (no representation
couples to central-body motion, so the 3x3 edge blocks of the body
problem never appear), and the spatial blocks are scalar for every k,
with s_n = 0 giving the trivial-mode crossing at sqrt(q).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from .bifurcation import BifurcationPoint, eta_index
from .polygonal import RingConfig, block_coefficients
from .potential import GeneralConfig, J2, potential_value
from .spectrum import eigen_signature, morse_profile, pencil_roots
from .symmetry import describe
from .sums import sum_table

__all__ = [
    "ChargeConfig",
    "ChargeBifurcationSet",
    "charge_bifurcations",
    "charge_block",
    "charge_potential",
    "charge_quartic",
    "gravitational_proxy",
    "non_ionized_admissible",
    "planar_crossing",
]

_IJ = 1j * J2  # self-adjoint [[0, -i], [i, 0]]
_R = np.diag([1.0, -1.0])


@dataclass(frozen=True)
class ChargeConfig:
    """n unit charges on a ring, nucleus charge q fixed at the center.

    The equilibrium rotates with squared angular speed omega = q - s_1,
    which must be positive: the nucleus has to dominate the mutual
    repulsion of the ring.
    """

    n: int
    q: float

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"need n >= 2, got n={self.n}")
        if self.q <= self.s1:
            raise ValueError(
                f"need nucleus charge q > s_1 = {self.s1}, got q = {self.q}"
            )

    @cached_property
    def table(self):
        return sum_table(self.n, 2.0)

    @property
    def s1(self) -> float:
        return float(sum_table(self.n, 2.0).s[1])

    @property
    def omega(self) -> float:
        return self.q - self.s1

    def s_k(self, k: int) -> float:
        """s_k with the n-periodic convention (so s_n = 0: the ring's own
        trivial mode, not the center crossing of the body problem)."""
        if not 1 <= k <= self.n:
            raise ValueError(f"representation index k must be in 1..{self.n}, got {k}")
        return float(self.table.s[k % self.n])


@lru_cache(maxsize=64)
def _ring_coefficients(n: int):
    # alpha_k, beta_k, gamma_k depend only on (n, alpha); any valid mass works
    return block_coefficients(RingConfig(n=n, mu=1.0, alpha=2.0))


def _charge_B(cfg: ChargeConfig, k: int) -> np.ndarray:
    """B_k(-q): the generic 2x2 body-problem block at central mass -q."""
    coef = _ring_coefficients(cfg.n)
    ak = coef.alpha_k[k]
    bk = coef.beta_k[k]
    gk = coef.gamma_k[k]
    mu = -cfg.q
    real = 1.5 * mu * (np.eye(2) + _R) + (cfg.s1 + ak) * np.eye(2) - bk * _R
    return real.astype(np.complex128) - gk * _IJ


def _to_raw(cfg: ChargeConfig, nu: float, nu_kind: str) -> float:
    if nu_kind == "raw":
        return float(nu)
    if nu_kind == "normalized":
        return float(nu) * math.sqrt(cfg.omega)
    raise ValueError(f"nu_kind must be 'raw' or 'normalized', got {nu_kind!r}")


def charge_block(
    cfg: ChargeConfig, sector: str, k: int, nu: float, nu_kind: str = "raw"
):
    """The linearization block of the charge ring at frequency nu.

    planar: 2x2 complex self-adjoint, all k in 1..n; spatial: 1x1.
    """
    if not 1 <= k <= cfg.n:
        raise ValueError(f"representation index k must be in 1..{cfg.n}, got {k}")
    raw = _to_raw(cfg, nu, nu_kind)
    if sector == "planar":
        return (
            raw**2 * np.eye(2, dtype=np.complex128)
            - 2.0 * raw * math.sqrt(cfg.omega) * _IJ
            - _charge_B(cfg, k)
        )
    if sector == "spatial":
        return np.array([[raw**2 - (cfg.q - cfg.s_k(k))]])
    raise ValueError(f"sector must be 'planar' or 'spatial', got {sector!r}")


def charge_quartic(cfg: ChargeConfig, k: int, nu: float) -> float:
    """det m~_0k at normalized nu, in closed form:

        d_k(q, nu) = w^2 nu^4 - (2 alpha_k + w - s_1) w nu^2
                     + 4 w gamma_k nu + a_k - q b_k,   w = q - s_1.

    At nu = 0 this is a_k - q b_k < 0 for every k in 1..n-1 and q > s_1,
    which forces exactly one sign change on nu > 0 (the determinant grows
    like w^2 nu^4) and pins the crossing index at +1.
    """
    if not 1 <= k <= cfg.n:
        raise ValueError(f"representation index k must be in 1..{cfg.n}, got {k}")
    coef = _ring_coefficients(cfg.n)
    w = cfg.omega
    return float(
        w**2 * nu**4
        - (2.0 * coef.alpha_k[k] + w - cfg.s1) * w * nu**2
        + 4.0 * w * coef.gamma_k[k] * nu
        + coef.a_k[k]
        - cfg.q * coef.b_k[k]
    )


# ---------------------------------------------------------------------------
# The potential identity


def charge_potential(cfg: ChargeConfig, ring_positions: np.ndarray) -> float:
    """Rotating-frame potential of the charges at ring positions u.

    V~(u) = (omega/2) sum |u_j|^2 - sum_{i<j} 1/|u_j - u_i|
            + sum_j q/|u_j|.
    """
    u = np.asarray(ring_positions, dtype=np.float64)
    if u.shape != (cfg.n, 2):
        raise ValueError(f"ring positions must be ({cfg.n}, 2), got {u.shape}")
    centrifugal = 0.5 * cfg.omega * float(np.sum(u**2))
    radii = np.linalg.norm(u, axis=1)
    if np.any(radii == 0.0):
        raise ValueError("a charge sits on the nucleus")
    nucleus = cfg.q * float(np.sum(1.0 / radii))
    diff = u[:, None, :] - u[None, :, :]
    dist = np.linalg.norm(diff, axis=2)
    iu = np.triu_indices(cfg.n, k=1)
    mutual = float(np.sum(1.0 / dist[iu]))
    return centrifugal - mutual + nucleus


def gravitational_proxy(cfg: ChargeConfig) -> GeneralConfig:
    """The body-problem configuration whose potential negates V~.

    Central mass -q, unit ring masses, and the body-problem frequency
    omega = mu + s_1 = s_1 - q (negative here, which is fine: only the
    potential is evaluated, never the rotating pencil).
    """
    ring = RingConfig(n=cfg.n, mu=1.0, alpha=2.0)
    positions = ring.positions()
    masses = np.concatenate([[-cfg.q], np.ones(cfg.n)])
    return GeneralConfig(
        masses=masses, positions=positions, omega=-cfg.omega, alpha=2.0
    )


# ---------------------------------------------------------------------------
# Bifurcation enumeration


@dataclass(frozen=True)
class ChargeBifurcationSet:
    """Certified crossings of the charge ring plus bookkeeping.

    ``uniqueness`` holds one (k, positive-crossing count, asserted) triple
    per planar representation: uniqueness is a theorem for
    k in {2..n-2, n} and for the edge representations at n >= 7; for the
    remaining cases the count is reported as observed.
    """

    n: int
    q: float
    sigma: int
    points: tuple[BifurcationPoint, ...]
    silent: tuple[BifurcationPoint, ...]
    uniqueness: tuple[tuple[int, int, bool], ...]

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "q": self.q,
            "sigma": self.sigma,
            "points": [p.to_dict() for p in self.points],
            "silent": [p.to_dict() for p in self.silent],
            "uniqueness": [
                {"k": k, "positive_crossings": c, "asserted": a}
                for k, c, a in self.uniqueness
            ],
        }


def _orientation(cfg: ChargeConfig) -> int:
    # m~_0n(0) = diag(3 (q - s_1), 0): first entry positive, so sigma = 1
    block = charge_block(cfg, "planar", cfg.n, 0.0)
    expected = np.diag([3.0 * cfg.omega, 0.0])
    if not np.allclose(block, expected, atol=1e-10 * max(1.0, cfg.omega)):
        raise RuntimeError(
            "trivial-mode block at nu = 0 is not diag(3 omega, 0); "
            "orientation undefined"
        )
    return 1


def charge_bifurcations(cfg: ChargeConfig) -> ChargeBifurcationSet:
    """All positive-frequency crossings of the charge ring, with indices.

    Planar: one crossing per k with eta = +1 (counted, not assumed).
    Spatial: a crossing at sqrt(q - s_k) for each k with q > s_k, always
    with eta = +1; k = n (s_n = 0) crosses at sqrt(q) for every valid q.
    """
    sigma = _orientation(cfg)
    points, silent, uniqueness = [], [], []
    sqrt_w = math.sqrt(cfg.omega)

    for sector in ("planar", "spatial"):
        for k in range(1, cfg.n + 1):
            if sector == "planar":
                family = lambda nu, _k=k: charge_block(
                    cfg, "planar", _k, nu, nu_kind="normalized"
                )
                to_raw = sqrt_w
            else:
                family = lambda nu, _k=k: charge_block(cfg, "spatial", _k, nu)
                to_raw = 1.0
            roots = pencil_roots(family, None)
            if not roots:
                if sector == "planar":
                    uniqueness.append((k, 0, False))
                continue
            hi = max(abs(r) for r, _ in roots) + 1.0
            profile = morse_profile(family, (0.0, hi), k=k, sector=sector)
            positive = 0
            for root, mult in roots:
                if root < -1e-9:
                    continue  # negative crossings belong to representation n-k
                touching_zero = abs(root) <= 1e-9
                eta = 0 if touching_zero else eta_index(profile, root, sigma)
                kernel_dim = eigen_signature(family(root))[1]
                point = BifurcationPoint(
                    nu=float(root * to_raw),
                    nu_normalized=float(root if sector == "planar" else root / sqrt_w),
                    sector=sector,
                    k=k,
                    eta=eta,
                    multiplicity=mult,
                    isotropy=describe(cfg.n, k, sector),
                    flags={"kernel_degenerate": kernel_dim > 1},
                    resonance=None,
                )
                if eta == 0:
                    silent.append(point)
                else:
                    points.append(point)
                    positive += 1
            if sector == "planar":
                asserted = k in (1, cfg.n - 1) and cfg.n < 7
                uniqueness.append((k, positive, not asserted))

    points.sort(key=lambda p: (p.sector, p.k, p.nu))
    silent.sort(key=lambda p: (p.sector, p.k, p.nu))
    return ChargeBifurcationSet(
        n=cfg.n,
        q=cfg.q,
        sigma=sigma,
        points=tuple(points),
        silent=tuple(silent),
        uniqueness=tuple(uniqueness),
    )


def planar_crossing(cfg: ChargeConfig, k: int) -> float:
    """The positive normalized crossing of the planar block (unique for
    k in {2..n-2, n} and, for n >= 7, at the edges; the largest positive
    root is returned regardless so the q -> infinity decay to 1 can be
    traced)."""
    if not 1 <= k <= cfg.n:
        raise ValueError(f"representation index k must be in 1..{cfg.n}, got {k}")
    w = cfg.omega
    coef = _ring_coefficients(cfg.n)
    poly = [
        w**2,
        0.0,
        -(2.0 * coef.alpha_k[k] + w - cfg.s1) * w,
        4.0 * w * coef.gamma_k[k],
        coef.a_k[k] - cfg.q * coef.b_k[k],
    ]
    roots = np.roots(poly)
    real = roots[np.abs(roots.imag) <= 1e-9 * (1.0 + np.abs(roots))].real
    positive = real[real > 0.0]
    if positive.size == 0:
        raise RuntimeError(f"no positive planar crossing found for k={k}")
    return float(np.max(positive))


def non_ionized_admissible(n: int) -> bool:
    """Whether the non-ionized ring (q = n) is a valid configuration.

    Requires s_1 < n, which holds exactly for n < 473 — above that the
    ring's self-interaction outruns the nucleus.
    """
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    return float(sum_table(n, 2.0).s[1]) < float(n)

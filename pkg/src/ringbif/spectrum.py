"""Spectral analysis of the ring blocks.

Morse numbers, the closed-form determinant quartic of the normalized planar
blocks d_k(mu, nu), the root curves omega_+/-(nu) and mu_+/-(nu), critical
central masses (mu_k, m0, m_plus, m_minus), the k in {1, n-1} sector with its
cubic block and quartic factor d_1, a general quadratic-pencil root finder,
and the n = 2 special case.

The closed forms in this module are specific to the gravitational force
exponent alpha = 2; the operations that rely on them reject other exponents.
Frequencies here are in sqrt(omega)-normalized units unless a function says
otherwise: the normalized block is m_k(nu) = m_0k(sqrt(omega) nu).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import eig as generalized_eig
from scipy.optimize import minimize_scalar

from .polygonal import (
    BlockCoefficients,
    RingConfig,
    block_coefficients,
    block_m0,
    block_m1,
)

__all__ = [
    "MorseProfile",
    "SpectralCurve",
    "critical_masses",
    "d1_quartic",
    "d1_real_roots",
    "det_d1",
    "det_dk",
    "det_dk_from_mass",
    "eigen_signature",
    "k1_boundary_masses",
    "k1_thresholds",
    "m_plus_half_closed_form",
    "morse_number",
    "morse_profile",
    "mu_branch_minus",
    "mu_branch_plus",
    "mu_zero_k1",
    "n2_block",
    "n2_eigenvalues_mu1",
    "n2_planar",
    "omega_roots",
    "pencil_roots",
    "planar_block_family",
    "spatial_block_family",
    "spectral_curve",
]


# ---------------------------------------------------------------------------
# Morse numbers


def _as_matrix(block) -> np.ndarray:
    arr = np.asarray(block, dtype=complex)
    if arr.ndim == 0:
        arr = arr.reshape(1, 1)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"block must be square, got shape {arr.shape}")
    return arr


def eigen_signature(block, zero_tol: float | None = None) -> tuple[int, int, int]:
    """Three-state eigenvalue count (negative, near-zero, positive).

    The near-zero band has half-width ``zero_tol``, defaulting to
    1e-9 * ||block||; kernel directions are reported, never silently
    absorbed into either sign.
    """
    arr = _as_matrix(block)
    scale = np.abs(arr).max()
    herm_defect = np.abs(arr - arr.conj().T).max()
    if herm_defect > 1e-10 * max(1.0, scale):
        raise ValueError(
            f"block is not self-adjoint: defect {herm_defect:.3e} at scale {scale:.3e}"
        )
    eigs = np.linalg.eigvalsh(arr)
    if zero_tol is None:
        zero_tol = 1e-9 * max(scale, 1e-300)
    n_neg = int((eigs < -zero_tol).sum())
    n_pos = int((eigs > zero_tol).sum())
    return n_neg, len(eigs) - n_neg - n_pos, n_pos


def morse_number(block, zero_tol: float | None = None) -> int:
    """Number of negative eigenvalues of a self-adjoint block."""
    return eigen_signature(block, zero_tol)[0]


# ---------------------------------------------------------------------------
# Closed-form determinant quartic, k in {2..n-2}


@lru_cache(maxsize=128)
def _unit_ring(n: int) -> RingConfig:
    """Mass-1 ring reused for mass-independent coefficient lookups."""
    return RingConfig(n=n, mu=1.0, alpha=2.0)


@lru_cache(maxsize=128)
def _newton_coefficients(n: int) -> BlockCoefficients:
    # the per-k coefficients do not depend on the central mass
    return block_coefficients(_unit_ring(n))


def _check_interior_k(n: int, k: int) -> None:
    if n < 4:
        raise ValueError("interior representations need n >= 4")
    if not 2 <= k <= n - 2:
        raise ValueError(f"k must lie in 2..{n - 2}, got {k}")


def quad_coefficients(n: int, k: int, nu: float) -> tuple[float, float, float]:
    """(a, b, c) of the determinant read as a quadratic in omega.

    d_k = a omega^2 + b omega - c with a = nu^2(nu^2 - 1),
    b = nu^2(2 alpha_k - s_1) - 4 nu gamma_k + b_k and c = s_1 b_k - a_k.
    """
    _check_interior_k(n, k)
    coef = _newton_coefficients(n)
    s1 = _unit_ring(n).s1
    a = nu**2 * (nu**2 - 1.0)
    b = nu**2 * (2.0 * coef.alpha_k[k] - s1) - 4.0 * nu * coef.gamma_k[k] + coef.b_k[k]
    c = float(coef.c_k[k])
    return a, float(b), c


def det_dk_from_mass(n: int, k: int, mu: float, nu: float) -> float:
    """Quartic d_k(mu, nu) evaluated as a polynomial; any real mu allowed."""
    a, b, c = quad_coefficients(n, k, nu)
    omega = mu + _unit_ring(n).s1
    return a * omega**2 + b * omega - c


def det_dk(ring: RingConfig, k: int, nu: float) -> float:
    """Closed-form determinant of the normalized block m_k(nu).

    Valid for the gravitational exponent only; agrees with the direct
    determinant of block_m0(ring, k, sqrt(omega) nu) to 1e-9 relative.
    """
    if ring.alpha != 2.0:
        raise ValueError("closed-form d_k holds for alpha = 2 only")
    return det_dk_from_mass(ring.n, k, ring.mu, nu)


# ---------------------------------------------------------------------------
# Root curves in the (mu, nu) plane


def omega_roots(n: int, k: int, nu: float) -> tuple[float, float]:
    """The two real roots (omega_plus, omega_minus) of d_k in omega.

    omega_plus uses the cancellation-free form 2c / (b + sqrt(b^2 + 4ac)),
    finite through the poles of a at nu in {-1, 0, 1}; omega_minus has
    genuine poles there and is rejected at them.
    """
    if nu in (-1.0, 0.0, 1.0):
        raise ValueError(f"omega_minus has a pole at nu = {nu}")
    a, b, c = quad_coefficients(n, k, nu)
    disc = b**2 + 4.0 * a * c
    if disc < 0.0:
        raise ValueError(
            f"negative discriminant {disc:.3e} at nu={nu} (n={n}, k={k})"
        )
    root = np.sqrt(disc)
    omega_plus = 2.0 * c / (b + root)
    omega_minus = (-b - root) / (2.0 * a)
    return omega_plus, omega_minus


def mu_branch_plus(n: int, k: int, nu: float) -> float:
    """mu_+(nu) = omega_+(nu) - s_1; defined for all real nu."""
    a, b, c = quad_coefficients(n, k, nu)
    disc = b**2 + 4.0 * a * c
    if disc < 0.0:
        return float("nan")
    s1 = _unit_ring(n).s1
    return 2.0 * c / (b + np.sqrt(disc)) - s1


def mu_branch_minus(n: int, k: int, nu: float) -> float:
    """mu_-(nu) = omega_-(nu) - s_1; blows up as |nu| -> {0, 1}."""
    a, b, c = quad_coefficients(n, k, nu)
    disc = b**2 + 4.0 * a * c
    if disc < 0.0 or a == 0.0:
        return float("nan")
    s1 = _unit_ring(n).s1
    return (-b - np.sqrt(disc)) / (2.0 * a) - s1


def _refine_interior_extremum(f, grid, values, minimize, what):
    idx = int(np.nanargmin(values) if minimize else np.nanargmax(values))
    if idx in (0, len(grid) - 1):
        raise RuntimeError(
            f"{what}: extremum fell on the scan boundary "
            f"(nu={grid[idx]:.6g}, value={values[idx]:.6g}); "
            f"bracket [{grid[0]:.6g}, {grid[-1]:.6g}] too small"
        )
    lo, hi = grid[idx - 1], grid[idx + 1]
    obj = f if minimize else (lambda x: -f(x))
    res = minimize_scalar(obj, bounds=(lo, hi), method="bounded", options={"xatol": 1e-12})
    if not res.success:
        raise RuntimeError(f"{what}: bounded refinement failed on [{lo:.6g}, {hi:.6g}]")
    val = f(res.x)
    return float(res.x), float(val)


def critical_masses(n: int, k: int) -> dict[str, float]:
    """Critical central masses of the interior representation k.

    Returns mu_k (zero of d_k(mu, 0) = a_k + mu b_k), m0 (max of mu_+ over
    the real line), m_plus / m_minus (minima of mu_- on (0,1) and (-1,0)),
    and the frequencies where each extremum is attained.
    """
    _check_interior_k(n, k)
    coef = _newton_coefficients(n)
    mu_k = -float(coef.a_k[k] / coef.b_k[k])

    grid = np.linspace(-6.0, 6.0, 4001)
    vals = np.array([mu_branch_plus(n, k, x) for x in grid])
    nu_m0, m0 = _refine_interior_extremum(
        lambda x: mu_branch_plus(n, k, x), grid, vals, minimize=False, what="m0"
    )

    def minus(x):
        return mu_branch_minus(n, k, x)

    grid_p = np.linspace(1e-4, 1.0 - 1e-4, 2001)
    vals_p = np.array([minus(x) for x in grid_p])
    nu_mp, m_plus = _refine_interior_extremum(minus, grid_p, vals_p, True, "m_plus")

    grid_m = -grid_p[::-1]
    vals_m = np.array([minus(x) for x in grid_m])
    nu_mm, m_minus = _refine_interior_extremum(minus, grid_m, vals_m, True, "m_minus")

    return {
        "mu_k": mu_k,
        "m0": m0,
        "m_plus": m_plus,
        "m_minus": m_minus,
        "nu_m0": nu_m0,
        "nu_m_plus": nu_mp,
        "nu_m_minus": nu_mm,
    }


def m_plus_half_closed_form(n: int) -> float:
    """Closed form of m_plus for the middle representation k = n/2.

    Requires n even.  Uses b = 2(b_{n/2} + alpha_{n/2} - s_1) and
    c = 4(a_{n/2} - (alpha_{n/2} - s_1)^2); the result is b + sqrt(b^2 + c).
    """
    if n % 2:
        raise ValueError("closed form needs an even ring size")
    coef = _newton_coefficients(n)
    k = n // 2
    s1 = _unit_ring(n).s1
    b = 2.0 * (coef.b_k[k] + coef.alpha_k[k] - s1)
    c = 4.0 * (coef.a_k[k] - (coef.alpha_k[k] - s1) ** 2)
    return float(b + np.sqrt(b**2 + c))


# ---------------------------------------------------------------------------
# The k in {1, n-1} sector


@lru_cache(maxsize=128)
def _k1_constants(n: int) -> tuple[float, float, float, float]:
    """(s1, s2, a1, b1) with a1 = (2s1+n)(2s1+s2)/4, b1 = 3(4s1+s2-2n)/4."""
    ring = _unit_ring(n)
    s1 = ring.s1
    s2 = float(ring.table.s[2])
    a1 = (2.0 * s1 + n) * (2.0 * s1 + s2) / 4.0
    b1 = 3.0 * (4.0 * s1 + s2 - 2.0 * n) / 4.0
    return s1, s2, a1, b1


def d1_quartic(n: int, mu: float, nu: float) -> float:
    """The quartic factor d_1(mu, nu) of the k = 1 block determinant."""
    if n < 3:
        raise ValueError("the 3x3 sector needs n >= 3")
    s1, s2, a1, b1 = _k1_constants(n)
    omega = mu + s1
    return (
        nu**2 * (nu**2 - 1.0) * omega**2
        + ((s2 - 2.0 * s1 + n) * nu**2 / 2.0 - (s2 - n) * nu) * omega
        + (a1 + mu * b1)
    )


def d1_real_roots(n: int, mu: float) -> np.ndarray:
    """Sorted real roots of the quartic d_1(mu, .)."""
    s1, s2, a1, b1 = _k1_constants(n)
    omega = mu + s1
    coeffs = [
        omega**2,
        0.0,
        (s2 - 2.0 * s1 + n) * omega / 2.0 - omega**2,
        -(s2 - n) * omega,
        a1 + mu * b1,
    ]
    roots = np.roots(coeffs)
    real = roots[np.abs(roots.imag) <= 1e-8 * (1.0 + np.abs(roots.real))].real
    return np.sort(real)


def det_d1(n: int, mu: float, nu: float) -> tuple[float, float]:
    """(full determinant of the k=1 block, quartic factor d_1).

    The full determinant is computed directly from the 3x3 normalized block
    and satisfies det = omega mu (nu - 1)^2 d_1(nu).
    """
    ring = RingConfig(n=n, mu=mu, alpha=2.0)
    block = block_m0(ring, 1, np.sqrt(ring.omega) * nu)
    full = np.linalg.det(block)
    return float(full.real), d1_quartic(n, mu, nu)


def k1_boundary_masses(n: int) -> dict[str, float]:
    """Masses where d_1 vanishes on the boundary lines nu in {0, 1, -1}.

    mu_1 at nu = 0 (positive for n <= 6 only), mu_plus_1 = -n at nu = 1,
    and mu_minus_1 at nu = -1 (positive for n <= 6 only).
    """
    s1, s2, a1, b1 = _k1_constants(n)
    return {
        "mu_1": -a1 / b1,
        "mu_plus_1": -float(n),
        "mu_minus_1": -s2 * (8.0 * s1 + n) / (8.0 * s1 - 8.0 * n + 9.0 * s2),
    }


def mu_zero_k1(n: int, nu: float) -> float:
    """The positive-mass zero mu_0(nu) of d_1(mu, nu), or NaN if none.

    d_1 is quadratic in mu with leading coefficient nu^2 (nu^2 - 1); the
    constant term c_1(nu) = [2 s1 (nu-1)^2 + n][2 s1 (nu+1)^2 + s2]/4 is
    positive, so at most one root is positive.
    """
    s1, s2, a1, b1 = _k1_constants(n)
    c1 = (2.0 * s1 * (nu - 1.0) ** 2 + n) * (2.0 * s1 * (nu + 1.0) ** 2 + s2) / 4.0
    qa = nu**2 * (nu**2 - 1.0)
    qb = (s1 * b1 - a1 + c1 + s1**2 * (nu**4 - nu**2)) / s1
    if qa == 0.0:
        if qb == 0.0:
            return float("nan")
        root = -c1 / qb
        return root if root > 0.0 else float("nan")
    disc = qb**2 - 4.0 * qa * c1
    if disc < 0.0:
        return float("nan")
    roots = np.array([(-qb - np.sqrt(disc)) / (2.0 * qa), (-qb + np.sqrt(disc)) / (2.0 * qa)])
    positive = roots[roots > 0.0]
    return float(positive.min()) if positive.size else float("nan")


def k1_thresholds(n: int) -> dict[str, float]:
    """Extrema of the positive-mass curve mu_0(nu) for the k=1 sector.

    For n >= 7 the curve splits into branches over (0,1) and (-1,0) with
    minima m_plus and m_minus.  For n in {3..6} there is a single curve over
    nu < 1; its minimum is reported as m0 (and m_plus/m_minus are absent).
    """
    if n >= 7:
        out = {}
        for name, lo, hi in (("m_plus", 1e-4, 1.0 - 1e-4), ("m_minus", -1.0 + 1e-4, -1e-4)):
            grid = np.linspace(lo, hi, 2001)
            vals = np.array([mu_zero_k1(n, x) for x in grid])
            nu_star, val = _refine_interior_extremum(
                lambda x: mu_zero_k1(n, x), grid, vals, True, f"k1 {name}"
            )
            out[name] = val
            out["nu_" + name] = nu_star
        return out
    grid = np.linspace(-3.0, 1.0 - 1e-4, 4001)
    vals = np.array([mu_zero_k1(n, x) for x in grid])
    nu_star, val = _refine_interior_extremum(
        lambda x: mu_zero_k1(n, x), grid, vals, True, "k1 m0"
    )
    return {"m0": val, "nu_m0": nu_star}


# ---------------------------------------------------------------------------
# Quadratic pencil root finder


def planar_block_family(ring: RingConfig, k: int, normalized: bool = True):
    """Callable nu -> planar block; handles the massless-center reduction.

    With mu = 0 the center coordinate of the k in {1, n-1} sector decouples
    and the full 3x3 block is identically singular; the physical block is
    its 2x2 ring restriction.
    """
    scale = np.sqrt(ring.omega) if normalized else 1.0
    if ring.n == 2 and k == 1:
        # the two-body ring couples center and ring modes in one real
        # representation; its planar block is the dedicated 4x4
        if not normalized:
            return lambda nu: n2_block(ring.mu, nu / np.sqrt(ring.omega))
        return lambda nu: n2_block(ring.mu, nu)
    if k in (1, ring.n - 1) and ring.mu == 0.0:
        return lambda nu: block_m0(ring, k, scale * nu)[1:, 1:]
    return lambda nu: block_m0(ring, k, scale * nu)


def spatial_block_family(ring: RingConfig, k: int, normalized: bool = False):
    """Callable nu -> spatial block (raw frequency units by default)."""
    scale = np.sqrt(ring.omega) if normalized else 1.0
    if k == ring.n and ring.mu == 0.0:
        return lambda nu: np.array([[(scale * nu) ** 2]])
    if ring.n == 2 and k == 1:
        # the scalar vertical block takes the same form at every ring size
        level = ring.mu + ring.s1
        return lambda nu: np.array([[(scale * nu) ** 2 - level]])
    return lambda nu: np.atleast_2d(np.asarray(block_m1(ring, k, scale * nu), dtype=float))


def pencil_roots(
    family,
    window: tuple[float, float] | None = None,
    cluster_tol: float = 1e-6,
    imag_tol: float = 1e-8,
) -> list[tuple[float, int]]:
    """Real frequencies where a quadratic self-adjoint pencil is singular.

    The family must be matrix-valued with entries polynomial of degree <= 2
    in nu; coefficients are recovered by evaluation at nu in {0, 1, -1} and
    the degree assumption is verified at nu = 2.  Roots come from the
    companion linearization solved as a generalized eigenproblem; real roots
    (|imag| <= imag_tol (1 + |real|)) are clustered at tolerance cluster_tol
    into (value, multiplicity) pairs sorted by value.
    """
    a0 = _as_matrix(family(0.0))
    p1 = _as_matrix(family(1.0))
    m1 = _as_matrix(family(-1.0))
    a2 = (p1 + m1) / 2.0 - a0
    a1 = (p1 - m1) / 2.0
    probe = _as_matrix(family(2.0))
    scale = max(np.abs(probe).max(), 1.0)
    if np.abs(4.0 * a2 + 2.0 * a1 + a0 - probe).max() > 1e-8 * scale:
        raise ValueError("family entries are not quadratic polynomials in nu")

    dim = a0.shape[0]
    eye = np.eye(dim, dtype=complex)
    zero = np.zeros((dim, dim), dtype=complex)
    lhs = np.block([[zero, eye], [-a0, -a1]])
    rhs = np.block([[eye, zero], [zero, a2]])
    eigvals = generalized_eig(lhs, rhs, right=False)
    if np.isnan(eigvals).any():
        raise RuntimeError(
            "ill-conditioned companion linearization (singular pencil?)"
        )
    finite = eigvals[np.isfinite(eigvals)]
    real = finite[np.abs(finite.imag) <= imag_tol * (1.0 + np.abs(finite.real))].real
    if window is not None:
        lo, hi = window
        real = real[(real >= lo) & (real <= hi)]
    if real.size == 0:
        return []
    real.sort()
    clusters: list[list[float]] = [[real[0]]]
    for val in real[1:]:
        if val - clusters[-1][-1] <= cluster_tol * (1.0 + abs(val)):
            clusters[-1].append(val)
        else:
            clusters.append([val])
    return [(float(np.mean(c)), len(c)) for c in clusters]


@dataclass(frozen=True)
class MorseProfile:
    """Piecewise-constant Morse number of a block family over a nu window.

    counts[i] is the Morse number on the open interval between breakpoints
    i-1 and i (window edges at the extremes); len(counts) is
    len(breakpoints) + 1.
    """

    k: int
    sector: str
    window: tuple[float, float]
    breakpoints: tuple[float, ...]
    counts: tuple[int, ...]

    def count_before(self, nu0: float, rho: float) -> int:
        return self._count_at(nu0 - rho)

    def count_after(self, nu0: float, rho: float) -> int:
        return self._count_at(nu0 + rho)

    def _count_at(self, nu: float) -> int:
        idx = int(np.searchsorted(np.asarray(self.breakpoints), nu))
        return self.counts[idx]


def morse_profile(family, window: tuple[float, float], k: int = 0, sector: str = "planar") -> MorseProfile:
    """Breakpoints and interval Morse numbers of a quadratic block family."""
    roots = pencil_roots(family, window)
    breakpoints = [r for r, _ in roots]
    edges = [window[0]] + breakpoints + [window[1]]
    counts = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        counts.append(morse_number(family((lo + hi) / 2.0)))
    return MorseProfile(
        k=k,
        sector=sector,
        window=window,
        breakpoints=tuple(breakpoints),
        counts=tuple(counts),
    )


# ---------------------------------------------------------------------------
# Sampled zero-locus curves


@dataclass(frozen=True)
class SpectralCurve:
    """Sampled branch of the zero locus d_k(mu, nu) = 0."""

    k: int
    branch: str
    samples: tuple[tuple[float, float], ...]
    window: tuple[float, float]


def _newton_polish_mu(n: int, k: int, nu: float, mu: float) -> float:
    # one Newton step in mu keeps |d_k| near roundoff even at large n
    s1 = _unit_ring(n).s1
    a, b, _ = quad_coefficients(n, k, nu)
    omega = mu + s1
    deriv = 2.0 * a * omega + b
    if deriv == 0.0:
        return mu
    return mu - det_dk_from_mass(n, k, mu, nu) / deriv


def spectral_curve(n: int, k: int, branch: str, nu_values) -> SpectralCurve:
    """Sample one branch of the planar zero locus.

    branch is one of "mu_plus", "mu_minus" (interior k) or "mu_zero_k1"
    (the k in {1, n-1} positive-mass curve).  Samples at frequencies where
    the branch is undefined are dropped.
    """
    if branch == "mu_plus":
        func = lambda x: mu_branch_plus(n, k, x)
    elif branch == "mu_minus":
        func = lambda x: mu_branch_minus(n, k, x)
    elif branch == "mu_zero_k1":
        func = lambda x: mu_zero_k1(n, x)
    else:
        raise ValueError(f"unknown branch {branch!r}")
    samples = []
    for nu in nu_values:
        mu = func(float(nu))
        if not np.isfinite(mu):
            continue
        if branch != "mu_zero_k1":
            mu = _newton_polish_mu(n, k, float(nu), mu)
        samples.append((float(nu), float(mu)))
    if not samples:
        raise ValueError("no admissible samples on this branch")
    nus = [s[0] for s in samples]
    return SpectralCurve(
        k=k, branch=branch, samples=tuple(samples), window=(min(nus), max(nus))
    )


# ---------------------------------------------------------------------------
# The n = 2 special case


def n2_block(mu: float, nu: float) -> np.ndarray:
    """The 4x4 normalized k=1 block of the two-body ring (alpha = 2).

    Here s_1 = 1/4 and omega = mu + 1/4.  The source display has a sign
    slip in the (3,1) entry; the value used here is the self-adjoint one,
    verified against the published determinant factorization.
    """
    if mu <= 0.0:
        raise ValueError("the two-body analysis assumes mu > 0")
    omega = mu + 0.25
    r2 = np.sqrt(2.0)
    lin = 2j * nu * omega
    return np.array(
        [
            [mu * (omega * nu**2 + mu + 17.0 / 4.0), -lin * mu, -2.0 * r2 * mu, 0.0],
            [np.conj(-lin * mu), mu * (omega * nu**2 + mu - 7.0 / 4.0), 0.0, r2 * mu],
            [-2.0 * r2 * mu, 0.0, omega * nu**2 + 3.0 * mu + 0.25, -lin],
            [0.0, r2 * mu, np.conj(-lin), omega * nu**2 + 0.25],
        ],
        dtype=complex,
    )


def n2_d1(mu: float, nu: float) -> float:
    return (
        (16.0 * mu**2 + 8.0 * mu + 1.0) * nu**4
        + (-16.0 * mu**2 + 20.0 * mu + 6.0) * nu**2
        - (84.0 * mu + 119.0)
    )


def n2_planar(mu: float, nu: float) -> tuple[float, float, float]:
    """(det of the 4x4 block, quartic factor d_1, bifurcation frequency nu_1).

    det = 2^-8 mu^2 (4 mu + 1)^2 (nu^2 - 1)^2 d_1(nu) and nu_1 > 1 is the
    positive root of d_1.
    """
    det = float(np.linalg.det(n2_block(mu, nu)).real)
    nu1_sq = (2.0 * mu - 3.0 + 2.0 * np.sqrt(mu**2 + 18.0 * mu + 32.0)) / (4.0 * mu + 1.0)
    return det, n2_d1(mu, nu), float(np.sqrt(nu1_sq))


def n2_eigenvalues_mu1(nu: float) -> np.ndarray:
    """Eigenvalues of the 4x4 block at mu = 1, in ascending order.

    The published display drops a factor 1/4 on the first pair; the forms
    used here reproduce the dense eigenvalues to machine precision:
    (5/4)(nu -+ 1)^2 and (5 nu^2 -+ 2 sqrt(25 nu^2 + 81) + 11)/4.
    """
    root = np.sqrt(25.0 * nu**2 + 81.0)
    vals = np.array(
        [
            1.25 * (nu - 1.0) ** 2,
            1.25 * (nu + 1.0) ** 2,
            (5.0 * nu**2 - 2.0 * root + 11.0) / 4.0,
            (5.0 * nu**2 + 2.0 * root + 11.0) / 4.0,
        ]
    )
    return np.sort(vals)

"""Independent brute-force verifiers.

Everything here recomputes results from raw definitions — raw trigonometric
sums with a reversed accumulation order, central-difference Hessians of the
potential value, dense eigenvalue scans of the assembled pencil — and never
reaches into the closed-form implementations it is checking.  Closed forms
are trusted only after surviving this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "VerificationCase",
    "VerificationSuiteResult",
    "Crossing",
    "raw_s",
    "raw_s_bar",
    "recurrence_bruteforce",
    "fd_gradient",
    "fd_hessian_dense",
    "fd_hessian_check",
    "dense_crossings",
]

_PI_L = np.arccos(np.longdouble(-1.0))


@dataclass(frozen=True)
class VerificationCase:
    fingerprint: str
    max_residual: float
    passed: bool


@dataclass(frozen=True)
class VerificationSuiteResult:
    suite: str
    tolerance: float
    cases: list[VerificationCase] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    @property
    def max_residual(self) -> float:
        return max((c.max_residual for c in self.cases), default=0.0)


def raw_s(n: int, alpha: float, k: int) -> float:
    """s_k from the raw definition: descending j, naive accumulation in
    extended precision.  Deliberately the opposite order from the library
    path so shared accumulation bugs cannot cancel."""
    if n < 2 or alpha < 1:
        raise ValueError(f"domain: n={n}, alpha={alpha}")
    ld = np.longdouble
    total = ld(0.0)
    pref = ld(2.0) ** ld(-alpha)
    for j in range(n - 1, 0, -1):
        skj = np.sin(_PI_L * ((k * j) % n) / n)
        sj = np.sin(_PI_L * j / n)
        total = total + pref * skj * skj / sj ** ld(alpha + 1.0)
    return float(total)


def raw_s_bar(n: int, alpha: float, k: int) -> float:
    if n < 2 or alpha < 1:
        raise ValueError(f"domain: n={n}, alpha={alpha}")
    ld = np.longdouble
    total = ld(0.0)
    pref = ld(2.0) ** ld(2.0 - alpha)
    for j in range(n - 1, 0, -1):
        skj = np.sin(_PI_L * ((k * j) % n) / n)
        sj = np.sin(_PI_L * j / n)
        total = total + pref * skj * skj / sj ** ld(alpha - 1.0)
    return float(total)


def _raw_tables_extended(
    n: int, alpha: float
) -> tuple[np.ndarray, np.ndarray]:
    ld = np.longdouble
    s = np.zeros(n + 1, dtype=ld)
    sb = np.zeros(n, dtype=ld)
    k = np.arange(n + 1)
    pref_s = ld(2.0) ** ld(-alpha)
    pref_sb = ld(2.0) ** ld(2.0 - alpha)
    for j in range(n - 1, 0, -1):
        sj = np.sin(_PI_L * j / n)
        num = np.sin(_PI_L * ((j * k) % n) / n) ** 2
        s = s + pref_s * num / sj ** ld(alpha + 1.0)
        sb = sb + pref_sb * num[:n] / sj ** ld(alpha - 1.0)
    return s, sb


def recurrence_bruteforce(n: int, alpha: float) -> float:
    """Max absolute residual of the three difference identities, all inputs
    recomputed here from the raw sums (descending order)."""
    if n < 3 or alpha < 1:
        raise ValueError(f"domain: n={n}, alpha={alpha}")
    s, sb = _raw_tables_extended(n, alpha)
    s1 = s[1]
    worst = np.longdouble(0.0)
    for k in range(1, n):
        r = s[k + 1] - 2 * s[k] + s[k - 1] - (2 * s1 - sb[k])
        worst = max(worst, abs(r))
    for k in range(1, n + 1):
        acc = np.longdouble(0.0)
        for l in range(1, k):
            acc += l * sb[k - l]
        worst = max(worst, abs(s[k] - (k * k * s1 - acc)))
    run = np.longdouble(0.0)
    for k in range(0, n):
        run += sb[k]
        worst = max(worst, abs(s[k + 1] - s[k] - ((2 * k + 1) * s1 - run)))
    return float(worst)


# --- finite-difference Hessian verification -------------------------------


def _fd_step(positions: np.ndarray) -> float:
    diff = positions[:, None, :] - positions[None, :, :]
    d = np.sqrt(np.sum(diff**2, axis=-1))
    np.fill_diagonal(d, np.inf)
    return 1e-5 * float(np.min(d))


def fd_gradient(cfg, positions: np.ndarray) -> np.ndarray:
    """Central-difference gradient of the potential value, shape (n, 3)."""
    from .potential import potential_value

    x = np.asarray(positions, dtype=float)
    if x.shape[1] == 2:
        x = np.column_stack([x, np.zeros(len(x))])
    h = _fd_step(x)
    g = np.zeros_like(x)
    for a in range(x.size):
        e = np.zeros(x.size)
        e[a] = h
        e = e.reshape(x.shape)
        g.flat[a] = (potential_value(cfg, x + e) - potential_value(cfg, x - e)) / (
            2 * h
        )
    return g


def fd_hessian_dense(cfg, positions: np.ndarray) -> np.ndarray:
    """Central-difference of the analytic gradient: dense 3n x 3n D^2 V.

    Differencing the gradient (not the value twice) keeps the roundoff
    floor near eps/h instead of eps/h^2, which the 1e-6 target needs.
    """
    from .potential import gradient

    x = np.asarray(positions, dtype=float)
    if x.shape[1] == 2:
        x = np.column_stack([x, np.zeros(len(x))])
    h = _fd_step(x)
    dim = x.size
    hess = np.zeros((dim, dim))
    for a in range(dim):
        e = np.zeros(dim)
        e[a] = h
        e = e.reshape(x.shape)
        col = (gradient(cfg, x + e) - gradient(cfg, x - e)) / (2 * h)
        hess[:, a] = col.ravel()
    return 0.5 * (hess + hess.T)


def fd_hessian_check(cfg) -> float:
    """∞-norm residual of (analytic gradient vs FD of V) and (assembled
    Hessian blocks vs FD of the gradient) at the declared equilibrium."""
    from .potential import gradient, pencil

    x0 = np.column_stack([cfg.positions, np.zeros(cfg.n_bodies)])
    res_g = float(np.max(np.abs(gradient(cfg, x0) - fd_gradient(cfg, x0))))
    dense = pencil(cfg, 0.0)
    if np.max(np.abs(dense.imag)) > 0:
        raise AssertionError("D^2 V must be real")
    res_h = float(np.max(np.abs(fd_hessian_dense(cfg, x0) - dense.real)))
    return max(res_g, res_h)


# --- dense Morse-count crossing scans --------------------------------------


@dataclass(frozen=True)
class Crossing:
    """An eigenvalue of the dense pencil crossing zero at nu (raw units).

    morse_jump = (negative-eigenvalue count just below nu) minus (count just
    above); even-multiplicity touchings have jump 0 and do not appear.
    """

    nu: float
    sector: str
    morse_jump: int


def _morse_counter(cfg, sector: str, zero_tol: float):
    from .potential import split

    def count(nu: float) -> int:
        m0, m1 = split(cfg, nu)
        m = m0 if sector == "planar" else m1
        vals = np.linalg.eigvalsh(m)
        return int(np.sum(vals < -zero_tol))

    return count


def dense_crossings(
    cfg,
    nu_window: tuple[float, float],
    grid_per_unit: int = 4096,
    sector: str = "both",
    refine_tol: float = 1e-10,
) -> list[Crossing]:
    """Scan det M0 / det M1 sign structure by negative-eigenvalue counts.

    Counting (rather than tracking det signs) keeps crossings visible when
    k and n-k modes cross simultaneously — the determinant does not change
    sign through an even number of coincident crossings.  Adjacent
    crossings closer than one grid cell with zero net Morse jump are
    invisible; choose the grid accordingly.
    """
    from .potential import split

    if sector == "both":
        out = dense_crossings(cfg, nu_window, grid_per_unit, "planar", refine_tol)
        out += dense_crossings(cfg, nu_window, grid_per_unit, "spatial", refine_tol)
        return sorted(out, key=lambda c: (c.nu, c.sector))
    if sector not in ("planar", "spatial"):
        raise ValueError(f"sector must be planar|spatial|both, got {sector}")
    lo, hi = nu_window
    if not hi > lo:
        raise ValueError(f"empty window {nu_window}")
    # Fix the zero tolerance from the endpoint norms so identically-zero
    # eigenvalues (massless center rows) cannot flicker across the count.
    norm = 1.0
    for nu in (lo, hi):
        m0, m1 = split(cfg, nu)
        m = m0 if sector == "planar" else m1
        norm = max(norm, float(np.max(np.abs(m))))
    count = _morse_counter(cfg, sector, zero_tol=64 * np.finfo(float).eps * norm)

    npts = max(2, int(math.ceil((hi - lo) * grid_per_unit)) + 1)
    grid = np.linspace(lo, hi, npts)
    counts = [count(nu) for nu in grid]
    found = []
    for a, b, ca, cb in zip(grid, grid[1:], counts, counts[1:]):
        if ca == cb:
            continue
        left, right = a, b
        cl = ca
        while right - left > refine_tol:
            mid = 0.5 * (left + right)
            cm = count(mid)
            if cm == cl:
                left = mid
            else:
                right = mid
                # keep bisecting toward the first change in the cell
        found.append(Crossing(nu=0.5 * (left + right), sector=sector, morse_jump=ca - cb))
    return found

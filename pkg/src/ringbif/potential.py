"""General planar relative equilibria: potential, Hessian blocks, pencil.

A configuration of ``n`` bodies with masses ``m_j`` at planar points ``u_j``
rotating with angular speed ``sqrt(omega)`` is governed by the amended
potential

    V(x) = (omega/2) * sum_j m_j |I_bar x_j|^2 + sum_{i<j} m_i m_j phi(d_ij)

where ``x_j = (u_j, z_j)`` are spatial coordinates, ``I_bar`` projects out
the vertical component, and the force law is ``phi'(d) = -1/d**alpha``
(gravitation: ``alpha = 2``, ``phi(d) = 1/d``).  Critical points of V with
z = 0 are relative equilibria.

The linearization around an equilibrium ``x0`` is carried by the quadratic
pencil

    M(nu) = nu^2 MM - 2 nu sqrt(omega) (i JJ_bar) MM + D^2 V(x0)

(MM = mass matrix, JJ_bar = planar rotation generator), which splits into a
planar part M0 (x, y coordinates) and a spatial part M1 (z coordinates)
because the equilibrium lies in the plane.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "J2",
    "CollisionError",
    "GeneralConfig",
    "HessianBlocks",
    "potential_value",
    "gradient",
    "equilibrium_residual",
    "hessian_blocks",
    "pencil",
    "split",
    "split_permutation",
]

# Counterclockwise rotation generator; the paper's convention throughout.
J2 = np.array([[0.0, -1.0], [1.0, 0.0]])


class CollisionError(ValueError):
    """Two bodies at (numerically) the same point."""


@dataclass(frozen=True)
class GeneralConfig:
    """A planar relative-equilibrium candidate.

    Positions are the equilibrium planar points; ``omega`` is the squared
    angular frequency.  The constructor validates collision-freeness and
    flags nonphysical (zero or negative) masses — those are permitted
    because several ring results need a massless or repulsive central body
    — but never silently rescales inconsistent (positions, omega) pairs;
    use :func:`equilibrium_residual` to quantify the inconsistency.
    """

    masses: np.ndarray
    positions: np.ndarray  # shape (n, 2)
    omega: float
    alpha: float
    nonphysical_mass: bool = field(init=False)

    def __post_init__(self) -> None:
        masses = np.atleast_1d(np.asarray(self.masses))
        positions = np.asarray(self.positions)
        # Keep extended-precision inputs as given; everything else -> float64.
        if masses.dtype.kind != "f":
            masses = masses.astype(np.float64)
        if positions.dtype.kind != "f":
            positions = positions.astype(np.float64)
        if positions.ndim != 2 or positions.shape[1] != 2:
            raise ValueError(f"positions must be (n, 2), got {positions.shape}")
        if masses.shape[0] != positions.shape[0]:
            raise ValueError(
                f"{masses.shape[0]} masses vs {positions.shape[0]} positions"
            )
        if masses.shape[0] < 2:
            raise ValueError("need at least 2 bodies")
        if self.alpha < 1:
            raise ValueError(f"need alpha >= 1, got {self.alpha}")
        _min_pairwise_distance(np.column_stack([positions, np.zeros(len(masses))]))
        masses.setflags(write=False)
        positions.setflags(write=False)
        object.__setattr__(self, "masses", masses)
        object.__setattr__(self, "positions", positions)
        object.__setattr__(self, "nonphysical_mass", bool(np.any(masses <= 0)))

    @property
    def n_bodies(self) -> int:
        return len(self.masses)


def _min_pairwise_distance(points: np.ndarray) -> float:
    diff = points[:, None, :] - points[None, :, :]
    d = np.sqrt(np.sum(diff**2, axis=-1))
    np.fill_diagonal(d, np.inf)
    dmin = float(np.min(d))
    scale = float(np.max(np.abs(points))) or 1.0
    if dmin <= 1e-12 * scale:
        raise CollisionError(f"pairwise distance {dmin} below collision tolerance")
    return dmin


def _phi(d: np.ndarray, alpha: float) -> np.ndarray:
    # phi'(d) = -d**-alpha
    if alpha == 1.0:
        return -np.log(d)
    return d ** (1.0 - alpha) / (alpha - 1.0)


def _as_spatial(positions: np.ndarray) -> np.ndarray:
    positions = np.asarray(positions, dtype=float)
    if positions.ndim != 2 or positions.shape[1] not in (2, 3):
        raise ValueError(f"positions must be (n, 2) or (n, 3), got {positions.shape}")
    if positions.shape[1] == 2:
        positions = np.column_stack([positions, np.zeros(len(positions))])
    return positions


def potential_value(cfg: GeneralConfig, displaced_positions: np.ndarray) -> float:
    """V at arbitrary (possibly spatial) positions of cfg's bodies."""
    x = _as_spatial(displaced_positions)
    if len(x) != cfg.n_bodies:
        raise ValueError(f"expected {cfg.n_bodies} positions, got {len(x)}")
    _min_pairwise_distance(x)
    m = cfg.masses
    rot = 0.5 * cfg.omega * float(np.sum(m * (x[:, 0] ** 2 + x[:, 1] ** 2)))
    diff = x[:, None, :] - x[None, :, :]
    d = np.sqrt(np.sum(diff**2, axis=-1))
    iu = np.triu_indices(len(m), k=1)
    pair = float(np.sum(m[iu[0]] * m[iu[1]] * _phi(d[iu], cfg.alpha)))
    return rot + pair


def gradient(cfg: GeneralConfig, displaced_positions: np.ndarray) -> np.ndarray:
    """Spatial gradient of V, shape (n, 3)."""
    x = _as_spatial(displaced_positions)
    if len(x) != cfg.n_bodies:
        raise ValueError(f"expected {cfg.n_bodies} positions, got {len(x)}")
    _min_pairwise_distance(x)
    m = cfg.masses
    g = np.zeros_like(x)
    g[:, 0] = cfg.omega * m * x[:, 0]
    g[:, 1] = cfg.omega * m * x[:, 1]
    diff = x[:, None, :] - x[None, :, :]  # diff[j, i] = x_j - x_i
    d = np.sqrt(np.sum(diff**2, axis=-1))
    np.fill_diagonal(d, np.inf)
    w = (m[:, None] * m[None, :]) / d ** (cfg.alpha + 1.0)
    g -= np.sum(w[:, :, None] * diff, axis=1)
    return g


def equilibrium_residual(cfg: GeneralConfig) -> float:
    """sup-norm of the gradient at the declared equilibrium (z = 0)."""
    return float(np.max(np.abs(gradient(cfg, cfg.positions))))


@dataclass(frozen=True)
class HessianBlocks:
    """D^2 V at a planar equilibrium, in block form.

    planar[i, j] is the 2x2 block coupling bodies i and j in the (x, y)
    coordinates; spatial[i, j] the scalar coupling in z.  Diagonal blocks
    obey the row-sum laws

        A_ii = omega m_i I - sum_{j != i} A_ij,    a_ii = -sum_{j != i} a_ij

    and are constructed from them.
    """

    planar: np.ndarray  # (n, n, 2, 2)
    spatial: np.ndarray  # (n, n)

    @property
    def n_bodies(self) -> int:
        return self.spatial.shape[0]

    def planar_dense(self) -> np.ndarray:
        n = self.n_bodies
        return self.planar.transpose(0, 2, 1, 3).reshape(2 * n, 2 * n)

    def row_sum_residual(self, cfg: GeneralConfig) -> float:
        a_res = np.max(np.abs(np.sum(self.spatial, axis=1)))
        acc = np.sum(self.planar, axis=1)  # (n, 2, 2)
        target = cfg.omega * cfg.masses[:, None, None] * np.eye(2)
        return float(max(a_res, np.max(np.abs(acc - target))))


def _scalar_dtypes(dtype) -> tuple[np.dtype, np.dtype]:
    """(real, complex) dtype pair for the requested working precision."""
    if np.dtype(dtype) in (np.dtype(np.longdouble), np.dtype(np.clongdouble)):
        return np.dtype(np.longdouble), np.dtype(np.clongdouble)
    return np.dtype(np.float64), np.dtype(np.complex128)


def hessian_blocks(cfg: GeneralConfig, dtype=np.float64) -> HessianBlocks:
    rdt, _ = _scalar_dtypes(dtype)
    x = cfg.positions.astype(rdt)
    m = cfg.masses.astype(rdt)
    n = cfg.n_bodies
    alpha = rdt.type(cfg.alpha)
    diff = x[:, None, :] - x[None, :, :]
    d2 = np.sum(diff**2, axis=-1)
    np.fill_diagonal(d2, 1.0)  # placeholder; diagonal rebuilt from row sums
    d = np.sqrt(d2)
    mm = m[:, None] * m[None, :]

    outer = diff[..., :, None] * diff[..., None, :]  # (n, n, 2, 2) r r^T
    eye = np.eye(2, dtype=rdt)
    w = mm / d ** (alpha + 3)
    planar = -(w[..., None, None] * ((alpha + 1) * outer - d2[..., None, None] * eye))
    spatial = mm / d ** (alpha + 1)
    idx = np.arange(n)
    planar[idx, idx] = 0.0
    spatial[idx, idx] = 0.0
    planar[idx, idx] = rdt.type(cfg.omega) * m[:, None, None] * eye - np.sum(
        planar, axis=1
    )
    spatial[idx, idx] = -np.sum(spatial, axis=1)
    return HessianBlocks(planar=planar, spatial=spatial)


def pencil(cfg: GeneralConfig, nu: float, dtype=np.complex128) -> np.ndarray:
    """M(nu) = nu^2 MM - 2 nu sqrt(omega) (i JJ_bar) MM + D^2 V(x0).

    3n x 3n complex self-adjoint, body-major (x, y, z) coordinate order.
    M(-nu) is the entrywise conjugate of M(nu).
    """
    if cfg.omega < 0:
        raise ValueError(f"pencil needs omega >= 0, got {cfg.omega}")
    rdt, cdt = _scalar_dtypes(dtype)
    blocks = hessian_blocks(cfg, dtype=rdt)
    n = cfg.n_bodies
    m = np.zeros((3 * n, 3 * n), dtype=cdt)
    for i in range(n):
        for j in range(n):
            m[3 * i : 3 * i + 2, 3 * j : 3 * j + 2] = blocks.planar[i, j]
        m[3 * i + 2, 3 * i + 2 :: 3] = blocks.spatial[i, i:]
        m[3 * i + 2 :: 3, 3 * i + 2] = blocks.spatial[i:, i]
    nu = rdt.type(nu)
    sq = np.sqrt(rdt.type(cfg.omega))
    ij2 = 1j * J2.astype(cdt)
    eye = np.eye(2, dtype=rdt)
    for i in range(n):
        sl = slice(3 * i, 3 * i + 2)
        mi = rdt.type(cfg.masses[i])
        m[sl, sl] += nu**2 * mi * eye - 2 * nu * sq * mi * ij2
        m[3 * i + 2, 3 * i + 2] += nu**2 * mi
    return m


def split_permutation(n: int) -> np.ndarray:
    """Index vector mapping body-major (x,y,z) order to planar-then-spatial."""
    idx = []
    for i in range(n):
        idx.extend((3 * i, 3 * i + 1))
    idx.extend(3 * i + 2 for i in range(n))
    return np.array(idx)


def split(
    cfg: GeneralConfig, nu: float, dtype=np.complex128
) -> tuple[np.ndarray, np.ndarray]:
    """(M0, M1): planar 2n x 2n complex block and spatial n x n real block.

    Conjugating M(nu) by the coordinate permutation of
    :func:`split_permutation` gives exactly diag(M0, M1).
    """
    if cfg.omega < 0:
        raise ValueError(f"pencil needs omega >= 0, got {cfg.omega}")
    rdt, cdt = _scalar_dtypes(dtype)
    blocks = hessian_blocks(cfg, dtype=rdt)
    n = cfg.n_bodies
    m0 = blocks.planar_dense().astype(cdt)
    nu = rdt.type(nu)
    sq = np.sqrt(rdt.type(cfg.omega))
    ij2 = 1j * J2.astype(cdt)
    eye = np.eye(2, dtype=rdt)
    for i in range(n):
        sl = slice(2 * i, 2 * i + 2)
        mi = rdt.type(cfg.masses[i])
        m0[sl, sl] += nu**2 * mi * eye - 2 * nu * sq * mi * ij2
    m1 = blocks.spatial + nu**2 * np.diag(cfg.masses.astype(rdt))
    return m0, m1

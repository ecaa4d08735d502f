"""Closed-form symmetry blocks for the ring equilibrium.

n unit masses sit at the n-th roots of unity with a central mass mu; the
configuration rotates rigidly iff omega = mu + s_1.  The coupled
rotation/permutation symmetry block-diagonalizes the planar pencil M0 and
the spatial pencil M1 into small blocks m_0k(nu), m_1k(nu), one per
representation index k = 1..n (k = n is the trivial character).

The change of basis is assembled explicitly (columns T_k) so the closed
forms can be checked against the dense Hessian by congruence, entry for
entry — that check is the module's own acceptance gate, not an afterthought.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .potential import J2, GeneralConfig, _scalar_dtypes, split
from .sums import SumTable, sum_table

__all__ = [
    "RingConfig",
    "BlockCoefficients",
    "DiagonalizationReport",
    "block_B",
    "block_m0",
    "block_m1",
    "block_coefficients",
    "planar_basis",
    "spatial_basis",
    "planar_block_sizes",
    "verify_full_diagonalization",
    "verify_conjugation_identities",
]

_IJ = 1j * J2  # self-adjoint [[0, -i], [i, 0]]


@dataclass(frozen=True)
class RingConfig:
    """Ring of n unit masses plus central mass mu, force exponent alpha.

    omega = mu + s_1 is derived, and must be positive (mu > -s_1); masses
    mu <= 0 are allowed but flagged nonphysical.
    """

    n: int
    mu: float
    alpha: float = 2.0

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"need n >= 2, got n={self.n}")
        if self.alpha < 1:
            raise ValueError(f"need alpha >= 1, got alpha={self.alpha}")
        if self.omega <= 0:
            raise ValueError(
                f"omega = mu + s_1 = {self.omega} <= 0: need mu > -s_1 = "
                f"{-self.table.s[1]}"
            )

    @cached_property
    def table(self) -> SumTable:
        return sum_table(self.n, self.alpha)

    @cached_property
    def _s_extended(self) -> np.ndarray:
        from .sums import _table_extended

        s, _ = _table_extended(self.n, self.alpha)
        s.setflags(write=False)
        return s

    def s_array(self, rdt=np.float64) -> np.ndarray:
        """s_0..s_n at the requested precision."""
        if np.dtype(rdt) == np.dtype(np.longdouble):
            return self._s_extended
        return self.table.s

    @property
    def s1(self) -> float:
        return float(self.table.s[1])

    @property
    def omega(self) -> float:
        return self.mu + self.s1

    @property
    def nonphysical_mass(self) -> bool:
        return self.mu <= 0

    @property
    def zeta(self) -> float:
        return 2.0 * math.pi / self.n

    def positions(self, dtype=np.float64) -> np.ndarray:
        """Center first, then ring bodies j = 1..n at angle j*zeta."""
        rdt = np.dtype(dtype)
        two_pi = 2 * np.arccos(rdt.type(-1.0))
        ang = two_pi * np.arange(1, self.n + 1).astype(rdt) / rdt.type(self.n)
        ring = np.column_stack([np.cos(ang), np.sin(ang)])
        return np.vstack([np.zeros((1, 2), dtype=rdt), ring])

    def to_general(self, dtype=np.float64) -> GeneralConfig:
        rdt = np.dtype(dtype)
        masses = np.concatenate([[rdt.type(self.mu)], np.ones(self.n, dtype=rdt)])
        return GeneralConfig(
            masses=masses,
            positions=self.positions(dtype=rdt),
            omega=self.omega,
            alpha=self.alpha,
        )


def _s_at(table: SumTable, idx: int) -> float:
    # s is n-periodic with s[0] = s[n] = 0; fold any integer index in.
    return float(table.s[idx % table.n])


@dataclass(frozen=True)
class BlockCoefficients:
    """Per-k coefficients of the 2x2 ring blocks, index k = 1..n.

    alpha_k, beta_k, gamma_k build B_k for any force exponent; a_k, b_k, c_k
    are the gravitational (alpha = 2) determinant-quartic coefficients

        a_k = (s_1 + alpha_k)^2 - beta_k^2 - gamma_k^2
        b_k = 3 (s_1 + alpha_k + beta_k)
        c_k = s_1 b_k - a_k.

    Arrays have length n + 1; slot 0 is unused padding (NaN).
    """

    n: int
    alpha: float
    alpha_k: np.ndarray
    beta_k: np.ndarray
    gamma_k: np.ndarray
    a_k: np.ndarray
    b_k: np.ndarray
    c_k: np.ndarray


def block_coefficients(ring: RingConfig) -> BlockCoefficients:
    n = ring.n
    t = ring.table
    s1 = ring.s1
    ap = (ring.alpha + 1.0) / 2.0
    am = (ring.alpha - 1.0) / 2.0
    nan = float("nan")
    alpha_k = np.full(n + 1, nan)
    beta_k = np.full(n + 1, nan)
    gamma_k = np.full(n + 1, nan)
    for k in range(1, n + 1):
        sp = _s_at(t, k + 1)
        sm = _s_at(t, k - 1)
        alpha_k[k] = am * (sp + sm) / 2.0
        beta_k[k] = ap * (float(t.s[k]) - s1)
        gamma_k[k] = am * (sp - sm) / 2.0
    a_k = (s1 + alpha_k) ** 2 - beta_k**2 - gamma_k**2
    b_k = 3.0 * (s1 + alpha_k + beta_k)
    c_k = s1 * b_k - a_k
    return BlockCoefficients(
        n=n,
        alpha=ring.alpha,
        alpha_k=alpha_k,
        beta_k=beta_k,
        gamma_k=gamma_k,
        a_k=a_k,
        b_k=b_k,
        c_k=c_k,
    )


def _check_k(ring: RingConfig, k: int) -> None:
    # the k = n (center) blocks take the same form at every ring size;
    # all other closed-form blocks assume n >= 3
    if ring.n < 3 and k != ring.n:
        raise ValueError("closed-form ring blocks need n >= 3 except for k = n")
    if not 1 <= k <= ring.n:
        raise ValueError(f"representation index k must be in 1..{ring.n}, got {k}")


def block_B(ring: RingConfig, k: int, dtype=np.complex128) -> np.ndarray:
    """B_k: the nu-independent part of the planar block.

    2x2 complex self-adjoint for k in {2..n-2, n}; 3x3 for k in {1, n-1}
    (those sectors couple to the central body).  B_{n-k} = conj(B_k).
    """
    _check_k(ring, k)
    rdt, cdt = _scalar_dtypes(dtype)
    n = ring.n
    mu = rdt.type(ring.mu)
    alpha = rdt.type(ring.alpha)
    s = ring.s_array(rdt)
    s1 = s[1]
    if k in (1, n - 1):
        am = (alpha - 1) / 2
        a1 = am * s[2] / 2
        c = np.sqrt(rdt.type(n) / 2) * mu
        b1 = np.array(
            [
                [mu * (s1 + mu + n * am), -c * alpha, -c * 1j],
                [-c * alpha, s1 + a1 + (alpha + 1) * mu, a1 * 1j],
                [c * 1j, -a1 * 1j, s1 + a1],
            ],
            dtype=cdt,
        )
        return b1 if k == 1 else np.conj(b1)
    am = (alpha - 1) / 2
    ap = (alpha + 1) / 2
    sp, sm = s[(k + 1) % n], s[(k - 1) % n]
    ak = am * (sp + sm) / 2
    bk = ap * (s[k] - s1)
    gk = am * (sp - sm) / 2
    eye = np.eye(2, dtype=rdt)
    rr = np.diag([rdt.type(1.0), rdt.type(-1.0)])
    return (ap * mu * (eye + rr) + (s1 + ak) * eye - bk * rr).astype(
        cdt
    ) - gk * (1j * J2.astype(cdt))


def block_m0(ring: RingConfig, k: int, nu: float, dtype=np.complex128) -> np.ndarray:
    """Planar block m_0k(nu); satisfies m_0k(nu) = conj(m_0(n-k)(-nu))."""
    _check_k(ring, k)
    rdt, cdt = _scalar_dtypes(dtype)
    n = ring.n
    mu = rdt.type(ring.mu)
    nu = rdt.type(nu)
    sq = np.sqrt(rdt.type(ring.omega))
    bk = block_B(ring, k, dtype=cdt)
    ij2 = 1j * J2.astype(cdt)
    if k in (1, n - 1):
        mass = np.diag([mu, rdt.type(1.0), rdt.type(1.0)]).astype(cdt)
        rot = np.zeros((3, 3), dtype=cdt)
        rot[0, 0] = mu if k == 1 else -mu
        rot[1:, 1:] = ij2
        return nu**2 * mass - 2 * nu * sq * rot + bk
    return nu**2 * np.eye(2, dtype=cdt) - 2 * nu * sq * ij2 + bk


def block_m1(ring: RingConfig, k: int, nu: float, dtype=np.float64):
    """Spatial block: the scalar nu^2 - (mu + s_k) for k < n, or the 2x2
    center-coupled block for k = n (eigenvalues 0 and -(n+1)mu at nu = 0)."""
    _check_k(ring, k)
    rdt, _ = _scalar_dtypes(dtype)
    n = ring.n
    mu = rdt.type(ring.mu)
    nu = rdt.type(nu)
    if k < n:
        return rdt.type(nu**2 - (mu + ring.s_array(rdt)[k]))
    rn = np.sqrt(rdt.type(n))
    return np.array(
        [[mu * (nu**2 - n), rn * mu], [rn * mu, nu**2 - mu]], dtype=rdt
    )


def planar_block_sizes(n: int) -> list[int]:
    """Column counts of the planar T_k blocks in k-order 1..n."""
    sizes = []
    for k in range(1, n + 1):
        sizes.append(3 if k in (1, n - 1) else 2)
    return sizes


def _roots_of_unity(n: int, rdt: np.dtype) -> np.ndarray:
    """exp(2 pi i m / n) for m = 0..n-1 at the requested real precision."""
    two_pi = 2 * np.arccos(rdt.type(-1.0))
    ang = two_pi * np.arange(n).astype(rdt) / rdt.type(n)
    return np.cos(ang) + 1j * np.sin(ang)


def planar_basis(ring: RingConfig, dtype=np.complex128) -> np.ndarray:
    """Unitary P with P^H M0(nu) P = diag(m_01(nu), ..., m_0n(nu)).

    Dense planar coordinates are body-major (x, y), center first.  Ring
    body j's slice of column T_k(w) is n^{-1/2} e^{i j k zeta} R(j zeta) w;
    the k in {1, n-1} sectors carry an extra central-body column
    v_1 = (1, i)/sqrt(2), v_{n-1} = conj(v_1).
    """
    n = ring.n
    if n < 3:
        raise ValueError("planar basis needs n >= 3")
    rdt, cdt = _scalar_dtypes(dtype)
    unity = _roots_of_unity(n, rdt)
    rn = np.sqrt(rdt.type(n))
    dim = 2 * (n + 1)
    cols: list[np.ndarray] = []
    v1 = np.array([1.0, 1j], dtype=cdt) / np.sqrt(rdt.type(2.0))
    for k in range(1, n + 1):
        if k in (1, n - 1):
            col = np.zeros(dim, dtype=cdt)
            col[0:2] = v1 if k == 1 else np.conj(v1)
            cols.append(col)
        for w_idx in range(2):
            col = np.zeros(dim, dtype=cdt)
            w = np.zeros(2, dtype=rdt)
            w[w_idx] = 1.0
            for j in range(1, n + 1):
                ph = unity[(j * k) % n] / rn
                c, s = unity[j % n].real, unity[j % n].imag
                rot = np.array([[c, -s], [s, c]], dtype=rdt)
                col[2 * j : 2 * j + 2] = ph * (rot @ w)
            cols.append(col)
    return np.column_stack(cols).astype(cdt)


def spatial_basis(ring: RingConfig, dtype=np.complex128) -> np.ndarray:
    """Unitary P with P^H M1(nu) P = diag(m_11, ..., m_1(n-1), m_1n).

    Spatial coordinates are (z_0, z_1, ..., z_n); mode k < n is the pure
    ring Fourier vector, mode n spans the center plus the uniform ring
    vector.
    """
    n = ring.n
    if n < 3:
        raise ValueError("spatial basis needs n >= 3")
    rdt, cdt = _scalar_dtypes(dtype)
    unity = _roots_of_unity(n, rdt)
    rn = np.sqrt(rdt.type(n))
    dim = n + 1
    cols = []
    for k in range(1, n):
        col = np.zeros(dim, dtype=cdt)
        for j in range(1, n + 1):
            col[j] = unity[(j * k) % n] / rn
        cols.append(col)
    e0 = np.zeros(dim, dtype=cdt)
    e0[0] = 1.0
    cols.append(e0)
    ering = np.zeros(dim, dtype=cdt)
    ering[1:] = 1.0 / rn
    cols.append(ering)
    return np.column_stack(cols)


@dataclass(frozen=True)
class DiagonalizationReport:
    n: int
    mu: float
    alpha: float
    nu: float
    planar_off_block: float
    planar_block_mismatch: float
    spatial_off_block: float
    spatial_block_mismatch: float
    unitarity: float

    @property
    def max_residual(self) -> float:
        return max(
            self.planar_off_block,
            self.planar_block_mismatch,
            self.spatial_off_block,
            self.spatial_block_mismatch,
        )


def verify_full_diagonalization(ring: RingConfig, nu: float) -> DiagonalizationReport:
    """Congruence-check every closed-form block against the dense pencil.

    Builds M0, M1 from the assembled Hessian of the ring configuration,
    conjugates with the explicit bases, and measures (a) leakage outside
    the block diagonal and (b) entrywise deviation of each diagonal block
    from block_m0 / block_m1.
    """
    if ring.n < 3:
        raise ValueError("need n >= 3")
    # The identity is exact, so the whole check runs in extended precision:
    # block magnitudes grow like n^(alpha+1), the Hessian's sensitivity to
    # position rounding like n^(alpha+2), and an absolute 1e-10 target would
    # otherwise drown in float64 roundoff by n ~ 50.
    cdt = np.clongdouble
    m0, m1 = split(ring.to_general(dtype=np.longdouble), nu, dtype=cdt)
    p0 = planar_basis(ring, dtype=cdt)
    p1 = spatial_basis(ring, dtype=cdt)
    unit = max(
        float(np.max(np.abs(p0.conj().T @ p0 - np.eye(p0.shape[1])))),
        float(np.max(np.abs(p1.conj().T @ p1 - np.eye(p1.shape[1])))),
    )

    t0 = p0.conj().T @ m0 @ p0
    sizes = planar_block_sizes(ring.n)
    off0, mis0 = _block_residuals(
        t0, sizes, [block_m0(ring, k, nu, dtype=cdt) for k in range(1, ring.n + 1)]
    )

    t1 = p1.conj().T @ m1.astype(cdt) @ p1
    blocks1 = [
        np.atleast_2d(np.asarray(block_m1(ring, k, nu, dtype=np.longdouble)))
        for k in range(1, ring.n + 1)
    ]
    off1, mis1 = _block_residuals(t1, [1] * (ring.n - 1) + [2], blocks1)

    return DiagonalizationReport(
        n=ring.n,
        mu=ring.mu,
        alpha=ring.alpha,
        nu=nu,
        planar_off_block=off0,
        planar_block_mismatch=mis0,
        spatial_off_block=off1,
        spatial_block_mismatch=mis1,
        unitarity=unit,
    )


def _block_residuals(
    transformed: np.ndarray, sizes: list[int], blocks: list[np.ndarray]
) -> tuple[float, float]:
    mask = np.ones_like(transformed, dtype=bool)
    mismatch = 0.0
    offset = 0
    for size, blk in zip(sizes, blocks):
        sl = slice(offset, offset + size)
        mask[sl, sl] = False
        mismatch = max(mismatch, float(np.max(np.abs(transformed[sl, sl] - blk))))
        offset += size
    off = float(np.max(np.abs(transformed[mask]))) if mask.any() else 0.0
    return off, mismatch


def verify_conjugation_identities(
    ring: RingConfig, k: int, nu: float
) -> dict[str, float]:
    """Residuals of the three exact conjugation identities tying k to n-k.

    reversal:       m_0k(nu) = conj(m_0(n-k)(-nu))
    pseudo_reality: R conj(m_0k(nu)) R = m_0k(nu)
    composition:    m_0k(nu) = R m_0(n-k)(-nu) R

    with R = diag(1, -1) (2x2 sectors) or diag(1, 1, -1) (3x3 sectors).
    The composition is the time-reversal reading of the literal
    "m_0k = R conj(m_0(n-k)) R"; at equal nu that display is off by
    2*gamma_k*iJ whenever gamma_k != 0.
    """
    _check_k(ring, k)
    a = block_m0(ring, k, nu)
    b = block_m0(ring, ring.n - k, -nu) if k < ring.n else block_m0(ring, ring.n, -nu)
    r = np.diag([1.0, 1.0, -1.0]) if a.shape[0] == 3 else np.diag([1.0, -1.0])
    return {
        "reversal": float(np.max(np.abs(a - np.conj(b)))),
        "pseudo_reality": float(np.max(np.abs(r @ np.conj(a) @ r - a))),
        "composition": float(np.max(np.abs(r @ b @ r - a))),
    }

"""Isotropy bookkeeping for the bifurcating branches.

Each branch inherits a symmetry type indexed by the representation number k:
the coupled rotation-permutation subgroup acting on the ring. This module
reduces (n, k) to the structural invariants h = gcd(n, k), n_bar, k_bar, the
modular inverse k_prime (when it exists), and the special-solution tags.
Everything here is integer arithmetic and pure data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, asdict

__all__ = [
    "SymmetryDescriptor",
    "choreography_condition",
    "describe",
    "intersection_period",
    "modular_inverse",
]


def modular_inverse(k: int, n: int) -> int | None:
    """Inverse of k mod n, canonicalized into {1..n}; None when gcd > 1."""
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in 1..{n}, got {k}")
    if math.gcd(k, n) != 1:
        return None
    inv = pow(k, -1, n)
    return inv if inv >= 1 else inv + n


@dataclass(frozen=True)
class SymmetryDescriptor:
    """Pure-data symmetry type of a branch in representation k.

    ring_relation holds the orbit law of the ring bodies as a structured
    dict (phase factor exponent and time shift per step around the ring),
    plus a rendered text form. The pairing field names the time-reversed
    partner representation n - k.
    """

    n: int
    k: int
    sector: str
    h: int
    n_bar: int
    k_bar: int
    k_prime: int | None
    central_body: str
    ring_relation: dict
    special: tuple[str, ...]
    reversal_partner: int

    def to_dict(self) -> dict:
        out = asdict(self)
        out["special"] = list(self.special)
        return out


def _special_tags(n: int, k: int, sector: str) -> tuple[str, ...]:
    tags = []
    if sector == "spatial":
        if n % 2 == 0 and k == n // 2:
            tags.append("hip_hop")
        if k == n:
            tags.append("oscillating_ring")
        tags.append("spatial_eight")
    else:
        if k == n:
            tags.append("pulsing_polygons")
    h = math.gcd(n, k)
    if h == 1 and sector == "planar":
        tags.append("choreography_candidate")
    return tuple(tags)


def describe(n: int, k: int, sector: str) -> SymmetryDescriptor:
    """Full symmetry descriptor of representation k in the given sector.

    The ring relation is u_{j+1}(t) = e^{i j zeta} u_1(t + j k zeta) in the
    plane and z_{j+1}(t) = z_1(t + j k zeta) vertically, with
    zeta = 2 pi / n; the time shift reduces to j k_bar (2 pi / n_bar).
    A central body is pinned at the center iff h = gcd(n, k) > 1;
    otherwise it circulates with phase law u_0(t + zeta) = e^{-i k' zeta}
    u_0(t).
    """
    if sector not in ("planar", "spatial"):
        raise ValueError(f"sector must be planar or spatial, got {sector!r}")
    if not 1 <= k <= n:
        raise ValueError(f"k must lie in 1..{n}, got {k}")
    h = math.gcd(n, k)
    n_bar = n // h
    k_bar = k // h
    k_prime = modular_inverse(k, n) if h == 1 else None
    central = "fixed_at_center" if h > 1 else f"rotating_phase({k_prime})"
    if sector == "planar":
        text = "u_{j+1}(t) = exp(i j zeta) u_1(t + j k_bar (2 pi / n_bar))"
    else:
        text = (
            "z_{j+1}(t) = z_1(t + j k_bar (2 pi / n_bar)), "
            "z_j(t) = -z_j(t + pi)"
        )
    relation = {
        "zeta": f"2*pi/{n}",
        "phase_step_exponent": 1 if sector == "planar" else 0,
        "time_shift_steps": {"k_bar": k_bar, "n_bar": n_bar},
        "text": text,
    }
    if sector == "spatial" and k == n:
        relation["center_countermotion"] = "z_0 = -sum_j z_j"
    return SymmetryDescriptor(
        n=n,
        k=k,
        sector=sector,
        h=h,
        n_bar=n_bar,
        k_bar=k_bar,
        k_prime=k_prime,
        central_body=central,
        ring_relation=relation,
        special=_special_tags(n, k, sector),
        reversal_partner=(n - k) % n or n,
    )


def choreography_condition(n: int, k: int, omega: float, nu: float) -> tuple[float, bool]:
    """(Omega, condition) for the single-curve choreography criterion.

    Omega = 1 - k sqrt(omega) / nu; the branch is a choreography candidate
    when Omega is within 1e-9 of a multiple of n (massless center only;
    the mass constraint is the caller's business).
    """
    if nu == 0.0:
        raise ValueError("choreography condition needs nu != 0")
    big_omega = 1.0 - k * math.sqrt(omega) / nu
    nearest = round(big_omega / n) * n
    return big_omega, abs(big_omega - nearest) <= 1e-9


def intersection_period(n: int, k1: int, k2: int) -> float:
    """Common period of solutions lying in two isotropy subspaces.

    Solutions invariant under both representation k1 and k2 have period
    2 pi / n_tilde with n_tilde = n / gcd(n, k2 - k1); equal indices give
    the full period 2 pi.
    """
    for k in (k1, k2):
        if not 1 <= k <= n:
            raise ValueError(f"k must lie in 1..{n}, got {k}")
    if k1 == k2:
        return 2.0 * math.pi
    n_tilde = n // math.gcd(n, abs(k2 - k1))
    return 2.0 * math.pi / n_tilde

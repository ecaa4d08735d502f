"""The electrostatic analogue: n unit charges around a fixed nucleus.

Same ring geometry, repulsive interactions, and a charge q > s_1 on a nucleus
pinned at the origin.  Three things are worth seeing side by side with the
gravitational ring:

  1. every certified crossing (planar and spatial) carries eta = +1, so the
     charge ring bifurcates a global branch at every singular frequency;
  2. the spatial crossings sit exactly at sqrt(q - s_k) -- the nucleus term
     enters with the opposite sign relative to the gravitational mu + s_k;
  3. the rotating-frame potential is literally the negative of a body-problem
     potential with central mass -q, which is how the oracle checks it.

There is also a boundary story: the q = n configuration ("non-ionized" ring,
total charge zero) is admissible only while s_1 < n, which fails for the
first time at n = 473.

Run:  python3 demos/charged_ring_tour.py --n 8 --q 40
"""

import argparse
import math

import numpy as np

from ringbif.charges import (
    ChargeConfig,
    charge_bifurcations,
    charge_potential,
    gravitational_proxy,
    non_ionized_admissible,
)
from ringbif.polygonal import RingConfig
from ringbif.potential import potential_value
from ringbif.sums import sum_table


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=8)
    ap.add_argument("--q", type=float, default=40.0)
    args = ap.parse_args()

    cfg = ChargeConfig(args.n, args.q)
    s = sum_table(args.n, 2.0).s
    out = charge_bifurcations(cfg)

    print(f"Charge ring: n = {args.n}, q = {args.q}, omega~ = q - s_1 = {cfg.omega:.6f}")
    print()
    print(f"  {'sector':>7}  {'k':>3}  {'nu':>12}  {'eta':>4}  {'sqrt(q - s_k)':>14}")
    print(f"  {'-'*7}  {'-'*3}  {'-'*12}  {'-'*4}  {'-'*14}")
    for p in sorted(out.points, key=lambda q_: (q_.sector, q_.k)):
        if p.sector == "spatial":
            s_k = 0.0 if p.k == args.n else float(s[p.k])
            ref = f"{math.sqrt(args.q - s_k):>14.8f}"
        else:
            ref = f"{'':>14}"
        print(f"  {p.sector:>7}  {p.k:>3}  {p.nu:>12.8f}  {p.eta:>+4d}  {ref}")

    all_plus = all(p.eta == 1 for p in out.points)
    print()
    print(f"All certified indices eta = +1: {all_plus}")

    # the potential identity, at a perturbed configuration
    rng = np.random.default_rng(3)
    u = RingConfig(n=args.n, mu=1.0).positions()[1:]
    u = u + 0.02 * rng.standard_normal(u.shape)
    v_tilde = charge_potential(cfg, u)
    v_body = potential_value(gravitational_proxy(cfg), np.vstack([[0.0, 0.0], u]))
    print(f"Potential identity |V~(u) + V_body(0, u)| = {abs(v_tilde + v_body):.3e}")

    print()
    print("Non-ionized (q = n) admissibility boundary:")
    for n in (472, 473):
        ok = non_ionized_admissible(n)
        s1 = sum_table(n, 2.0).s[1]
        print(f"  n = {n}: s_1 = {s1:.6f} {'<' if ok else '>='} n  ->  "
              f"{'admissible' if ok else 'not admissible'}")


if __name__ == "__main__":
    main()

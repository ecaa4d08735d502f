"""How heavy must the central body be before a ring of n equals is stable?

Walks the spectral-stability threshold m_* for moderate ring sizes, checks
the verdict actually flips across it, and compares the large-n growth against
the cubic law m_* ~ (13 + 4*sqrt(10)) * sigma * n^3 that the middle (k = n/2)
representation forces.  Small rings (n <= 6) never stabilize: the edge
representation k = 1 keeps a pair of complex singular frequencies alive no
matter how heavy the center is.

Run:  python3 demos/ring_stability_story.py [--n-max 20]
"""

import argparse
import math

from ringbif.polygonal import RingConfig
from ringbif.stability import SATURN_CONSTANT, critical_mass_star, spectral_stability
from ringbif.sums import asymptotic_sigma


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=20, help="largest ring size to walk")
    args = ap.parse_args()

    sigma = asymptotic_sigma(200_000)
    print("Spectral stability thresholds for the (n+1)-body ring")
    print()
    print(f"  asymptotic constant (13+4*sqrt(10))*sigma = {SATURN_CONSTANT * sigma:.9f}")
    print()
    print(f"  {'n':>3}  {'m_*':>16}  {'m_*/n^3':>12}  {'dominant k':>10}  flip check")
    print(f"  {'-'*3}  {'-'*16}  {'-'*12}  {'-'*10}  ----------")

    for n in range(7, args.n_max + 1):
        star = critical_mass_star(n)
        above = spectral_stability(RingConfig(n=n, mu=1.001 * star.m_star))
        below = spectral_stability(RingConfig(n=n, mu=0.999 * star.m_star))
        flip = above.spectrally_stable and not below.spectrally_stable
        print(
            f"  {n:>3}  {star.m_star:>16.6f}  {star.m_star / n**3:>12.6f}"
            f"  {star.dominant_k:>10}  {'ok' if flip else 'BROKEN'}"
        )

    print()
    print("  m_*/n^3 drifts toward the asymptotic constant from below; at n = 20")
    print("  the gap is still a few percent because s_k only reaches its cubic")
    print("  regime slowly (s_1 grows like n log n / 2 pi).")
    print()

    print("Small rings never make it:")
    for n in range(2, 7):
        verdicts = []
        for mu in (5.0, 50.0, 500.0, 5000.0):
            rep = spectral_stability(RingConfig(n=n, mu=mu))
            verdicts.append(rep.spectrally_stable)
        note = spectral_stability(RingConfig(n=n, mu=500.0)).flags
        print(f"  n={n}: stable at mu in (5, 50, 500, 5000)? {verdicts}  flags={list(note)}")

    print()
    print("The obstruction is structural: for n <= 6 the k = 1 planar block keeps")
    print("two singular frequencies off the real axis at every central mass, so")
    print("the full count 6(n+1) of real frequencies is never reached.")


if __name__ == "__main__":
    main()

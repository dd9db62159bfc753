"""Ratio of target to shifted-source Besov norms over a random band-limited family.

With the smoothness shift the ratio stays bounded across scales; without it
the ratio grows like omega^(n(1/q - 1/p)).
"""

import argparse

from lzkit.bandlimited import FamilySpec
from lzkit.besov import BesovParams, verify_embedding


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    fam = FamilySpec("random", grid_points=256)
    omegas = [2.0**k for k in range(1, 9)]
    for shift in (True, False):
        rep = verify_embedding("C21", fam, args.count, args.seed, (1, 1), (2, 2), BesovParams(0, 0, 2), omegas, shift_sigma=shift)
        print(f"shift={shift!s:5s} source sigma={float(rep.source.sigma):.2f}  max/min {rep.spread:8.2f}  slope {rep.slope:+.3f}")


if __name__ == "__main__":
    main()

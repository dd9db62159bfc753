"""Greedy extremal search for the L1 -> L_inf ratio on an interval spectrum.

Prints the best ratio found for growing budgets and the torus bound
(#lattice points)/(P mu(S)) that no trigonometric polynomial can beat.
"""

import argparse

from lzkit.bandlimited import Spectrum, spectrum_measure
from lzkit.nikolskii import probe_sharpness
from lzkit.spaces import INF


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--period", type=float, default=16.0)
    ap.add_argument("--budgets", type=int, nargs="+", default=[0, 25, 100, 400])
    args = ap.parse_args()
    S = Spectrum.interval(-1, 1)
    lattice = 2 * int(args.period) + 1
    print(f"torus bound {lattice / (args.period * spectrum_measure(S)):.4f}")
    for b in args.budgets:
        r = probe_sharpness((1, 1), (INF, INF), S, b, args.seed, period=args.period, grid_points=512)
        print(f"budget {b:5d}  best ratio {r.best_ratio:.4f}")


if __name__ == "__main__":
    main()

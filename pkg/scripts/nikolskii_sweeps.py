"""Scale sweeps of the Nikol'skii ratio ||f||_target / ||f||_source.

Writes one CSV per (family, source, target) case and prints the fitted
slope of log(lhs/source norm) against log mu(Omega) next to the power
exponent of the bound factor.
"""

import argparse
import csv
import math
from pathlib import Path

import numpy as np

from lzkit.bandlimited import FamilySpec
from lzkit.nikolskii import sweep
from lzkit.spaces import INF

CASES = [
    ("sinc2", FamilySpec("sinc-power", m=2), (1, 1), (INF, INF)),
    ("sinc2", FamilySpec("sinc-power", m=2), (1, 1), (2, 2)),
    ("sinc2", FamilySpec("sinc-power", m=2), (2, 2), (2, 1, (1, -1))),
    ("random", FamilySpec("random", grid_points=512), (1, 1), (INF, INF)),
    ("random", FamilySpec("random", grid_points=512), (2, 2), (INF, 1, (-2, 1))),
    ("random", FamilySpec("random", grid_points=512), (2, 2), (2, 1, (1, -1))),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="results/sweeps")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--kmax", type=int, default=8, help="omega runs over 2^1 .. 2^kmax")
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    omegas = [2.0**k for k in range(1, args.kmax + 1)]
    for i, (name, fam, src, tgt) in enumerate(CASES):
        res = sweep(fam, omegas, src, tgt, args.seed)
        path = out / f"case{i}_{name}.csv"
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh, lineterminator="\n")
            w.writerow(["omega", "mu_omega", "lhs_over_src", "ratio", "theorem_id", "bound"])
            for r in res.rows:
                w.writerow([r.omega, r.mu_omega, r.lhs / r.source_norm, r.ratio, r.bound.theorem_id, r.bound.value])
        x = [math.log(1 + abs(math.log(r.mu_omega))) for r in res.rows]
        y = [math.log(r.ratio) for r in res.rows]
        g = float(np.polyfit(x, y, 1)[0])
        pe = float(res.rows[0].bound.power_exponent)
        print(f"{name:7s} {str(src):14s} -> {str(tgt):22s} {res.rows[0].bound.theorem_id:5s} power exp {pe:.3f}  slope {res.slope:+.4f}  log(ratio/G) vs log l {g:+.3f}")


if __name__ == "__main__":
    main()

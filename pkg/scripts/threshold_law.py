"""Reservoir photon number N* at which the initial discord rise disappears, versus N1 = N2.

    python3 scripts/threshold_law.py --r 1 --n1 5:100:20
"""

import argparse
import time

import numpy as np

from stsdiscord.analysis import threshold_law


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--r", type=float, default=1.0)
    ap.add_argument("--n1", default="5:100:20", help="start:stop:count")
    args = ap.parse_args()
    start, stop, count = args.n1.split(":")
    n_values = np.linspace(float(start), float(stop), int(count))

    t0 = time.perf_counter()
    stars, fit = threshold_law(args.r, n_values)
    elapsed = time.perf_counter() - t0

    print(f"{'N1':>8s}  {'N*':>12s}  {'residual':>10s}")
    for n, s in zip(n_values, stars):
        print(f"{n:8.2f}  {s:12.6f}  {s - (fit.slope * n + fit.intercept):10.2e}")
    print(f"\nN* = {fit.slope:.6f} N1 + {fit.intercept:.6f}   R^2 = {fit.r_squared:.8f}   ({elapsed:.2f} s)")


if __name__ == "__main__":
    main()

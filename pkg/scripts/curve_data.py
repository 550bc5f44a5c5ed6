"""Emit every curve needed to redraw the discord plots as CSV files.

Each file goes through the CLI, so it comes with a manifest. The discord
landscape over the (b', c') plane is written directly.

    python3 scripts/curve_data.py --out-dir curves
"""

import argparse
import math
from pathlib import Path

import numpy as np

from stsdiscord.cli import csv_text, main as cli
from stsdiscord.exceptions import UnphysicalCovarianceError
from stsdiscord.gaussian import TwoModeCovariance, gaussian_discord, physicality_check
from stsdiscord.states import StsParams, sts_covariance


def run(*argv):
    code = cli([str(a) for a in argv])
    if code:
        raise SystemExit(f"command failed with exit code {code}: {' '.join(map(str, argv))}")


def discord_landscape(state: StsParams, b_max: float, c_max: float, points: int):
    """D on a (b', c') grid with mode 1 held fixed; unphysical points are skipped."""
    a = sts_covariance(state).a
    rows = []
    for b in np.linspace(0.5, b_max, points):
        for c in np.linspace(0.0, c_max, points):
            cov = TwoModeCovariance(a, b, -c, c)
            if not physicality_check(cov):
                continue
            try:
                rows.append((b, c, gaussian_discord(cov)))
            except UnphysicalCovarianceError:
                continue
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out-dir", default="curves")
    ap.add_argument("--points", type=int, default=201)
    ap.add_argument("--landscape-points", type=int, default=121)
    args = ap.parse_args()
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    pts = args.points

    # zero-temperature loss, amplification and classical noise for r = 1
    for n in (1, 10, 50, 100, 1000):
        run("sweep", "--r", 1, "--n1", n, "--n2", n, "--channel", "thermal-noise",
            "--points", pts, "--out", out / f"lossy_n{n}.csv")
    for n in (1, 10, 100):
        for family in ("amplifier", "classical-noise"):
            run("sweep", "--r", 1, "--n1", n, "--n2", n, "--channel", family,
                "--points", pts, "--out", out / f"{family}_n{n}.csv")

    # warm reservoirs
    for N in (0, 1, 10, 50):
        run("sweep", "--r", 1, "--n1", 10, "--n2", 10, "--channel", "thermal-noise", "--N", N,
            "--points", pts, "--out", out / f"lossy_n10_reservoir{N}.csv")

    # initial-slope surface over reservoir and thermal photons
    run("slope", "--r", 1, "--N-grid", "0:50:51", "--n1-grid", "0.5:100:51",
        "--out", out / "slope_surface.csv")

    # trajectories in the (b', c') plane, plus the landscape they run across
    state = StsParams(1, 10, 10)
    for family in ("thermal-noise", "amplifier", "classical-noise"):
        run("trajectory", "--r", 1, "--n1", 10, "--n2", 10, "--channel", family,
            "--samples", 101, "--out", out / f"trajectory_{family}.csv")
    cov = sts_covariance(state)
    rows = discord_landscape(state, cov.b + 10, 3 * cov.c, args.landscape_points)
    (out / "discord_landscape.csv").write_text(csv_text(("b_prime", "c_prime", "discord"), rows))
    print(f"wrote {len(list(out.glob('*.csv')))} CSV files to {out}")


if __name__ == "__main__":
    main()

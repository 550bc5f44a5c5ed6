"""Truncated Fock-space states against the symplectic formulas on a small grid.

    python3 scripts/oracle_grid.py            # LAPACK eigensolver
    python3 scripts/oracle_grid.py --eig jacobi --r 0.5
"""

import argparse
import itertools
import time

from stsdiscord.fock import compare_with_gaussian
from stsdiscord.states import StsParams


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--r", type=float, nargs="+", default=[0.5, 1.0])
    ap.add_argument("--n", type=float, nargs="+", default=[0.0, 1.0], help="values for both n1 and n2")
    ap.add_argument("--eta", type=float, nargs="+", default=[0.0, 0.5, 1.0])
    ap.add_argument("--N-env", type=float, default=0.0)
    ap.add_argument("--eig", choices=("lapack", "jacobi"), default="lapack")
    ap.add_argument("--tol", type=float, default=1e-5)
    args = ap.parse_args()

    worst = 0.0
    header = f"{'r':>5s} {'n1':>5s} {'n2':>5s} {'eta':>5s} {'cutoff':>6s} {'deficit':>9s} {'max dev':>9s}  worst key"
    print(header)
    t0 = time.perf_counter()
    for r, n1, n2, eta in itertools.product(args.r, args.n, args.n, args.eta):
        cmp = compare_with_gaussian(StsParams(r, n1, n2), eta=eta, N_env=args.N_env, method=args.eig)
        key = max(cmp.deviations, key=cmp.deviations.get)
        worst = max(worst, cmp.max_deviation)
        print(f"{r:5.2f} {n1:5.2f} {n2:5.2f} {eta:5.2f} {cmp.cutoff:6d} {cmp.trace_deficit:9.2e} "
              f"{cmp.max_deviation:9.2e}  {key}")
    verdict = "PASS" if worst < args.tol else "FAIL"
    print(f"\n{verdict}: worst deviation {worst:.2e} (tol {args.tol:g}), {time.perf_counter() - t0:.1f} s")


if __name__ == "__main__":
    main()

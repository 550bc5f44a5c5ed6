"""Command-line front end.

Exit codes: 0 success, 1 oracle check failed, 2 invalid parameters,
3 unphysical covariance, 4 I/O error, 5 no threshold root, 6 Fock
truncation budget exceeded. Messages go to stderr, data to stdout or --out.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import hashlib
import io
import json
import math
import sys
from datetime import datetime, timezone
from pathlib import Path

import numpy as np

from . import __version__
from .analysis import (
    SweepConfig,
    default_grid,
    find_discord_max,
    initial_slope,
    slope_surface,
    sweep_discord,
    threshold_N,
)
from .channels import FAMILIES, apply_channel, make_channel, trajectory
from .exceptions import (
    DegenerateTrajectoryError,
    NoRootError,
    ParameterError,
    TruncationBudgetError,
    UnphysicalCovarianceError,
)
from .gaussian import TwoModeCovariance, entropy_report, physicality_check, symplectic_data
from .states import StsParams, is_separable, sts_covariance

EXIT_OK = 0
EXIT_ORACLE_FAIL = 1
EXIT_PARAM = 2
EXIT_UNPHYSICAL = 3
EXIT_IO = 4
EXIT_NO_ROOT = 5
EXIT_BUDGET = 6

SWEEP_COLUMNS = ("param", "b_prime", "c_prime", "discord", "mutual_information", "d_minus", "d_plus")
TRAJECTORY_COLUMNS = ("channel_param", "b_prime", "c_prime", "discord")
SURFACE_COLUMNS = ("N", "n1", "p")


@dataclasses.dataclass(frozen=True)
class RunManifest:
    command: str
    parameters: dict
    version: str
    timestamp: str
    output: str
    sha256: str

    def to_json(self) -> str:
        return json.dumps(dataclasses.asdict(self), indent=2, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "RunManifest":
        return cls(**json.loads(text))


def fmt(x) -> str:
    """Shortest round-trip decimal form of a binary64 value."""
    return repr(float(x))


def csv_text(columns, rows) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([fmt(v) for v in row])
    return buf.getvalue()


def _parameters(args) -> dict:
    skip = {"func", "json", "out"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def write_output(args, body: str, suffix_manifest: str = ".manifest.json") -> None:
    """Write ``body`` to --out with a manifest next to it, or to stdout."""
    if args.out is None:
        sys.stdout.write(body)
        return
    path = Path(args.out)
    data = body.encode("utf-8")
    path.write_bytes(data)
    manifest = RunManifest(
        command=args.command,
        parameters=_parameters(args),
        version=__version__,
        timestamp=datetime.now(timezone.utc).isoformat(),
        output=path.name,
        sha256=hashlib.sha256(data).hexdigest(),
    )
    Path(str(path) + suffix_manifest).write_text(manifest.to_json() + "\n", encoding="utf-8")
    print(f"wrote {path}", file=sys.stderr)


def _nats(args, value: float) -> float:
    return value / math.log(2.0) if getattr(args, "bits", False) else value


def _state(args) -> StsParams:
    return StsParams(args.r, args.n1, args.n2)


def _channel_from_args(args):
    given = [(f, v) for f, v in (("thermal-noise", args.eta), ("amplifier", args.k), ("classical-noise", args.n)) if v is not None]
    if len(given) > 1:
        raise ParameterError("give at most one of --eta, --k, --n")
    if not given:
        return None
    family, value = given[0]
    return make_channel(family, value, args.N)


def cmd_discord(args) -> int:
    if args.cov is not None:
        cov = TwoModeCovariance(*args.cov)
        report = physicality_check(cov)
        if not report:
            raise UnphysicalCovarianceError(report.message)
        info = {"covariance": dataclasses.asdict(cov)}
    else:
        state = _state(args)
        cov = sts_covariance(state)
        ch = _channel_from_args(args)
        if ch is not None:
            cov = apply_channel(cov, ch)
        sep = is_separable(state)
        info = {
            "state": dataclasses.asdict(state),
            "channel": None if ch is None else {"type": type(ch).__name__, **dataclasses.asdict(ch)},
            "separable_by_criterion": sep.separable,
        }
    rep = entropy_report(cov)
    sd = symplectic_data(cov)
    unit = "bits" if args.bits else "nats"
    out = {
        **info,
        "units": unit,
        "discord": _nats(args, rep.discord_left if args.direction == "mode2" else rep.discord_right),
        "direction": args.direction,
        "discord_mode2": _nats(args, rep.discord_left),
        "discord_mode1": _nats(args, rep.discord_right),
        "mutual_information": _nats(args, rep.mutual_information),
        "s1": _nats(args, rep.s1),
        "s2": _nats(args, rep.s2),
        "s12": _nats(args, rep.s12),
        "a": cov.a,
        "b": cov.b,
        "c1": cov.c1,
        "c2": cov.c2,
        "I1": sd.I1,
        "I2": sd.I2,
        "I3": sd.I3,
        "I4": sd.I4,
        "d_minus": sd.d_minus,
        "d_plus": sd.d_plus,
    }
    if args.json:
        print(json.dumps(out, indent=2))
    else:
        for key in ("discord", "mutual_information", "d_minus", "d_plus", "I1", "I2", "I3", "I4"):
            print(f"{key:>20s} = {fmt(out[key])}")
        print(f"{'units':>20s} = {unit}")
    return EXIT_OK


def _grid(args):
    if args.start is None and args.stop is None:
        return default_grid(args.channel, args.points)
    start = default_grid(args.channel, 2)[0] if args.start is None else args.start
    stop = default_grid(args.channel, 2)[-1] if args.stop is None else args.stop
    return tuple(np.linspace(start, stop, args.points))


def cmd_sweep(args) -> int:
    cfg = SweepConfig(_state(args), args.channel, _grid(args), args.N, args.direction)
    result = sweep_discord(cfg)
    rows = [
        (r.param, r.b_prime, r.c_prime, _nats(args, r.discord), _nats(args, r.mutual_information), r.d_minus, r.d_plus)
        for r in result.records
    ]
    if args.json:
        body = json.dumps({"columns": SWEEP_COLUMNS, "rows": rows}) + "\n"
    else:
        body = csv_text(SWEEP_COLUMNS, rows)
    write_output(args, body)
    return EXIT_OK


def _linspace_spec(text: str) -> np.ndarray:
    try:
        start, stop, count = text.split(":")
        return np.linspace(float(start), float(stop), int(count))
    except ValueError as err:
        raise ParameterError(f"grid must be start:stop:count, got {text!r}") from err


def cmd_slope(args) -> int:
    if args.N_grid or args.n1_grid:
        if not (args.N_grid and args.n1_grid):
            raise ParameterError("surface mode needs both --N-grid and --n1-grid")
        surf = slope_surface(args.r, _linspace_spec(args.N_grid), _linspace_spec(args.n1_grid), args.direction)
        rows = [
            (N, n1, _nats(args, surf.p[i, j]))
            for i, n1 in enumerate(surf.n1_grid)
            for j, N in enumerate(surf.N_grid)
        ]
        write_output(args, csv_text(SURFACE_COLUMNS, rows))
        return EXIT_OK
    p = initial_slope(_state(args), args.N, args.direction, eta=args.at_eta)
    out = {"p": _nats(args, p), "regime": "rise" if p < 0 else "decay", "N": args.N, "eta": args.at_eta}
    print(json.dumps(out) if args.json else f"p = {fmt(out['p'])} ({out['regime']})")
    return EXIT_OK


def cmd_threshold(args) -> int:
    res = threshold_N(_state(args), args.direction, tol=args.tol)
    out = {
        "N_star": res.N_star,
        "bracket": [res.lo, res.hi],
        "p_at_bracket": [_nats(args, res.p_lo), _nats(args, res.p_hi)],
        "sign_change": (res.p_lo < 0) != (res.p_hi < 0),
    }
    if args.json:
        print(json.dumps(out))
    else:
        print(f"N* = {fmt(res.N_star)}  bracket [{fmt(res.lo)}, {fmt(res.hi)}]")
    return EXIT_OK


def cmd_trajectory(args) -> int:
    cov = sts_covariance(_state(args))
    pts = trajectory(cov, args.channel, args.N, args.samples, args.c_max, args.b_max, args.direction)
    rows = [(p.channel_param, p.b_prime, p.c_prime, _nats(args, p.discord)) for p in pts]
    write_output(args, csv_text(TRAJECTORY_COLUMNS, rows))
    return EXIT_OK


def cmd_maximum(args) -> int:
    cfg = SweepConfig(_state(args), args.channel, _grid(args), args.N, args.direction)
    res = find_discord_max(cfg)
    out = {
        "param": res.param,
        "discord": _nats(args, res.discord),
        "initial_discord": _nats(args, res.initial_discord),
        "ratio": res.ratio,
        "boundary": res.boundary,
    }
    if args.json:
        print(json.dumps(out))
    else:
        for key, val in out.items():
            print(f"{key:>16s} = {val}")
    return EXIT_OK


def cmd_oracle(args) -> int:
    from .fock import compare_with_gaussian

    cmp = compare_with_gaussian(
        _state(args), args.eta, args.N_env, cutoff=args.cutoff, budget=args.budget, method=args.eig
    )
    ok = cmp.passed(args.tol)
    out = {
        "passed": ok,
        "tolerance": args.tol,
        "cutoff": cmp.cutoff,
        "trace_deficit": cmp.trace_deficit,
        "max_deviation": cmp.max_deviation,
        "deviations": cmp.deviations,
        "fock": cmp.fock,
        "gaussian": cmp.gaussian,
    }
    if args.json:
        print(json.dumps(out, indent=2))
    else:
        print(f"cutoff {cmp.cutoff}, trace deficit {cmp.trace_deficit:.3g}")
        for key, dev in cmp.deviations.items():
            print(f"{key:>20s}  fock={fmt(cmp.fock[key]):<24s} gaussian={fmt(cmp.gaussian[key]):<24s} dev={dev:.3g}")
        print("PASS" if ok else "FAIL", f"(max deviation {cmp.max_deviation:.3g}, tol {args.tol:g})")
    return EXIT_OK if ok else EXIT_ORACLE_FAIL


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_PARAM)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False, allow_abbrev=False)
    common.add_argument("--direction", choices=("mode2", "mode1"), default="mode2",
                        help="measured mode (default mode2, the channel mode)")
    common.add_argument("--bits", action="store_true", help="report entropies in bits")
    common.add_argument("--json", action="store_true")

    state = _Parser(add_help=False, allow_abbrev=False)
    state.add_argument("--r", type=float, default=1.0, help="squeezing parameter")
    state.add_argument("--n1", type=float, default=0.0, help="thermal photons, mode 1")
    state.add_argument("--n2", type=float, default=0.0, help="thermal photons, mode 2")

    family = _Parser(add_help=False, allow_abbrev=False)
    family.add_argument("--channel", choices=FAMILIES, default="thermal-noise")
    family.add_argument("--N", type=float, default=0.0, help="reservoir photons (thermal-noise, amplifier)")

    parser = _Parser(prog="stsdiscord", description=__doc__.splitlines()[0], allow_abbrev=False)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("discord", parents=[common, state], help="discord of one state", allow_abbrev=False)
    p.add_argument("--eta", type=float, help="apply a thermal-noise channel")
    p.add_argument("--k", type=float, help="apply an amplifier channel")
    p.add_argument("--n", type=float, help="apply a classical-noise channel")
    p.add_argument("--N", type=float, default=0.0, help="reservoir photons")
    p.add_argument("--cov", type=float, nargs=4, metavar=("A", "B", "C1", "C2"),
                   help="evaluate a raw standard-form covariance instead of an STS")
    p.set_defaults(func=cmd_discord)

    for name, func, help_ in (
        ("sweep", cmd_sweep, "discord along a channel parameter grid"),
        ("maximum", cmd_maximum, "locate the discord maximum along a sweep"),
    ):
        p = sub.add_parser(name, parents=[common, state, family], help=help_, allow_abbrev=False)
        p.add_argument("--start", type=float)
        p.add_argument("--stop", type=float)
        p.add_argument("--points", type=int, default=201)
        p.add_argument("--out")
        p.set_defaults(func=func)

    p = sub.add_parser("slope", parents=[common, state], help="initial slope p = dD/d(eta)", allow_abbrev=False)
    p.add_argument("--N", type=float, default=0.0)
    p.add_argument("--at-eta", type=float, default=1.0, help="evaluation point (default 1)")
    p.add_argument("--N-grid", help="surface mode: start:stop:count over N")
    p.add_argument("--n1-grid", help="surface mode: start:stop:count over n1 = n2")
    p.add_argument("--out")
    p.set_defaults(func=cmd_slope)

    p = sub.add_parser("threshold", parents=[common, state], help="reservoir threshold N*", allow_abbrev=False)
    p.add_argument("--tol", type=float, default=1e-6)
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("trajectory", parents=[common, state, family], help="b'-c' trajectory", allow_abbrev=False)
    p.add_argument("--samples", type=int, default=101)
    p.add_argument("--c-max", type=float)
    p.add_argument("--b-max", type=float)
    p.add_argument("--out")
    p.set_defaults(func=cmd_trajectory)

    p = sub.add_parser("oracle", parents=[common, state], help="Fock-space cross-check", allow_abbrev=False)
    p.add_argument("--eta", type=float, help="lossy transmissivity (omit for the bare state)")
    p.add_argument("--N-env", type=float, default=0.0)
    p.add_argument("--cutoff", type=int)
    p.add_argument("--budget", type=float, default=1e-10)
    p.add_argument("--tol", type=float, default=1e-5)
    p.add_argument("--eig", choices=("lapack", "jacobi"), default="lapack")
    p.set_defaults(func=cmd_oracle)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParameterError, DegenerateTrajectoryError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PARAM
    except UnphysicalCovarianceError as err:
        print(f"unphysical covariance: {err}", file=sys.stderr)
        return EXIT_UNPHYSICAL
    except NoRootError as err:
        print(f"no threshold: {err}", file=sys.stderr)
        return EXIT_NO_ROOT
    except TruncationBudgetError as err:
        hint = f" (suggested cutoff {err.suggested_cutoff})" if err.suggested_cutoff else ""
        print(f"truncation budget exceeded: {err}{hint}", file=sys.stderr)
        return EXIT_BUDGET
    except OSError as err:
        print(f"I/O error: {err}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

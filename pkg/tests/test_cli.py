import contextlib
import csv
import hashlib
import io
import json
import math
import subprocess
import sys

import pytest

from stsdiscord.cli import SWEEP_COLUMNS, RunManifest, main
from stsdiscord.gaussian import entropy_h, gaussian_discord
from stsdiscord.states import StsParams, sts_covariance


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def discord_json(capsys, *argv):
    code, out, _ = run(capsys, "discord", "--json", *argv)
    assert code == 0
    return json.loads(out)


def test_discord_pure_state(capsys):
    res = discord_json(capsys, "--r", "1", "--n1", "0", "--n2", "0")
    assert res["discord"] == pytest.approx(entropy_h(math.sinh(1) ** 2 + 0.5), abs=1e-10)


def test_discord_product_state(capsys):
    res = discord_json(capsys, "--r", "0", "--n1", "5", "--n2", "7")
    assert res["discord"] == 0.0
    assert res["mutual_information"] == 0.0


def test_discord_large_occupation_matches_library(capsys):
    res = discord_json(capsys, "--r", "1", "--n1", "1000", "--n2", "1000")
    assert res["discord"] == gaussian_discord(sts_covariance(StsParams(1, 1000, 1000)))
    assert res["separable_by_criterion"] is True


def test_discord_bits_and_text(capsys):
    nats = discord_json(capsys, "--r", "0.5", "--n1", "1", "--n2", "2", "--eta", "0.3")
    bits = discord_json(capsys, "--r", "0.5", "--n1", "1", "--n2", "2", "--eta", "0.3", "--bits")
    assert bits["discord"] == pytest.approx(nats["discord"] / math.log(2), rel=1e-15)
    assert bits["d_minus"] == nats["d_minus"]
    code, out, _ = run(capsys, "discord", "--r", "0.5")
    assert code == 0 and "discord" in out and "nats" in out


def test_discord_cov_input(capsys):
    res = discord_json(capsys, "--cov", "2", "2", "1.5", "-1.5")
    assert res["discord"] > 0


@pytest.mark.parametrize(
    "argv,code",
    [
        (["discord", "--r", "-1"], 2),
        (["discord", "--eta", "1.5"], 2),
        (["discord", "--eta", "0.5", "--k", "2"], 2),
        (["discord", "--bogus"], 2),
        (["sweep", "--channel", "amplifier", "--start", "0.5"], 2),
        (["discord", "--cov", "0.4", "1", "0", "0"], 3),
        (["discord", "--cov", "1", "1", "1", "-1"], 3),
        (["threshold", "--r", "1", "--n1", "1", "--n2", "1"], 5),
        (["oracle", "--r", "1", "--n1", "1", "--n2", "1", "--cutoff", "30"], 6),
    ],
)
def test_exit_codes(capsys, argv, code):
    # argparse rejects unknown flags by exiting from inside parse_args
    parse_error = argv[-1] == "--bogus"
    with pytest.raises(SystemExit) if parse_error else contextlib.nullcontext() as exc:
        got = main(argv)
    assert (exc.value.code if parse_error else got) == code
    assert capsys.readouterr().err


def test_io_error_exit_code(capsys, tmp_path):
    target = tmp_path / "missing" / "out.csv"
    code, _, err = run(capsys, "sweep", "--out", str(target))
    assert code == 4 and "I/O" in err


def test_sweep_csv_and_manifest(capsys, tmp_path):
    out = tmp_path / "sweep.csv"
    code, _, _ = run(capsys, "sweep", "--r", "1", "--n1", "10", "--n2", "10", "--out", str(out))
    assert code == 0
    rows = list(csv.reader(io.StringIO(out.read_text())))
    assert tuple(rows[0]) == SWEEP_COLUMNS
    assert len(rows) == 202
    assert all(len(r) == 7 for r in rows)
    manifest_text = (tmp_path / "sweep.csv.manifest.json").read_text()
    manifest = RunManifest.from_json(manifest_text)
    assert RunManifest.from_json(manifest.to_json()) == manifest
    assert manifest.sha256 == hashlib.sha256(out.read_bytes()).hexdigest()
    assert manifest.command == "sweep"
    assert manifest.parameters["n1"] == 10.0


def test_sweep_is_byte_identical(capsys, tmp_path):
    bodies = []
    for name in ("a.csv", "b.csv"):
        run(capsys, "sweep", "--channel", "amplifier", "--n1", "3", "--n2", "1", "--N", "0.5",
            "--out", str(tmp_path / name))
        bodies.append((tmp_path / name).read_bytes())
    assert bodies[0] == bodies[1]


def test_classical_sweep_first_row(capsys):
    code, out, _ = run(capsys, "sweep", "--channel", "classical-noise", "--n1", "10", "--n2", "10")
    first = next(csv.DictReader(io.StringIO(out)))
    assert float(first["param"]) == 0.0
    assert float(first["discord"]) == gaussian_discord(sts_covariance(StsParams(1, 10, 10)))


def test_trajectory_classical_constant_c(capsys):
    code, out, _ = run(capsys, "trajectory", "--channel", "classical-noise", "--n1", "10", "--n2", "10")
    assert code == 0
    c_vals = {row["c_prime"] for row in csv.DictReader(io.StringIO(out))}
    assert len(c_vals) == 1


def test_threshold_command(capsys):
    code, out, _ = run(capsys, "threshold", "--r", "1", "--n1", "10", "--n2", "10", "--json")
    res = json.loads(out)
    assert code == 0 and res["N_star"] > 0 and res["sign_change"]
    lo, hi = res["bracket"]
    assert lo <= res["N_star"] <= hi


def test_slope_and_surface(capsys, tmp_path):
    code, out, _ = run(capsys, "slope", "--n1", "10", "--n2", "10", "--json")
    assert json.loads(out)["regime"] == "rise"
    out_path = tmp_path / "surface.csv"
    code, _, _ = run(capsys, "slope", "--N-grid", "0:50:3", "--n1-grid", "5:100:4", "--out", str(out_path))
    rows = list(csv.DictReader(io.StringIO(out_path.read_text())))
    assert code == 0 and len(rows) == 12


def test_maximum_command(capsys):
    code, out, _ = run(capsys, "maximum", "--n1", "10", "--n2", "10", "--json")
    res = json.loads(out)
    assert code == 0 and not res["boundary"] and res["ratio"] > 1


def test_oracle_command_passes(capsys):
    code, out, _ = run(capsys, "oracle", "--r", "1", "--n1", "1", "--n2", "1", "--eta", "0.5", "--json")
    res = json.loads(out)
    assert code == 0 and res["passed"]
    assert max(res["deviations"].values()) < 1e-5


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "stsdiscord", "discord", "--r", "0", "--json"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["discord"] == 0.0

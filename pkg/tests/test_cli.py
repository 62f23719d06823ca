import math
import subprocess
import sys

import numpy as np
import pytest

from noonsim.cli import HEADERS, main
from noonsim.errors import ParseError, ValidationFailed
from noonsim.state_core import from_pure, make_noon, random_state
from noonsim.stateio import fmt, parse_state_text, serialize_state

NOON3_FILE = """\
# NOON state, N = 3
N 3
rho 0 0 0.5 0.0
rho 3 3 0.5 0.0
rho 0 3 0.5 0.0
"""


def test_parse_noon_file():
    s = parse_state_text(NOON3_FILE)
    np.testing.assert_array_equal(s.rho, make_noon(3).rho)


def test_parse_rejects_bad_trace():
    with pytest.raises(ValidationFailed) as exc:
        parse_state_text("N 1\nrho 0 0 0.5 0\nrho 1 1 0.4 0\n")
    assert not exc.value.report["trace"].passed


@pytest.mark.parametrize(
    "text, line",
    [
        ("N 3\nrho 0 4 0.1 0\n", 2),
        ("rho 0 0 1 0\n", 1),
        ("N 2\nrho 1 0 0.1 0\n", 2),
        ("N 2\nrho 0 0 1 0\nrho 0 0 1 0\n", 3),
        ("N x\n", 1),
        ("N 2\nfoo 1\n", 2),
        ("N 2\nrho 0 0 abc 0\n", 2),
        ("# nothing\n", 0),
    ],
)
def test_parse_errors(text, line):
    with pytest.raises(ParseError) as exc:
        parse_state_text(text)
    assert exc.value.line_no == line


def test_round_trip_is_canonical(rng):
    for s in (make_noon(3, 0.4), random_state(4, rng), from_pure([0.6, 0.0, 0.8j])):
        text = serialize_state(s)
        again = parse_state_text(text)
        np.testing.assert_array_equal(again.rho, s.rho)
        assert serialize_state(again) == text
    canonical = serialize_state(parse_state_text(NOON3_FILE))
    assert canonical == "N 3\nrho 0 0 0.5 0.0\nrho 0 3 0.5 0.0\nrho 3 3 0.5 0.0\n"


def test_fmt():
    assert fmt(1.0) == "1.0"
    assert fmt(-2) == "-2.0"
    assert fmt(math.exp(-1)) == "0.36787944117144233"
    assert float(fmt(0.1)) == 0.1


def run_cli(args, tmp_path, name="out.csv"):
    out = tmp_path / name
    code = main(args + ["--out", str(out)])
    return code, (out.read_text() if out.exists() else None)


def test_negativity_scan_row(tmp_path):
    code, text = run_cli(["negativity-scan", "--n", "3", "--gamma1", "0.5", "--gamma2", "0.5",
                          "--t-end", "2", "--t-steps", "21"], tmp_path)
    assert code == 0
    lines = text.splitlines()
    assert lines[0] == HEADERS["negativity-scan"]
    assert len(lines) == 22
    row = lines[11].split(",")
    assert float(row[0]) == 1.0
    assert float(row[2]) == pytest.approx(-0.00555449826912115324807156714346, rel=1e-14)
    assert row[4] == "true"


def test_tcrit_row(tmp_path):
    code, text = run_cli(["tcrit", "--n", "1", "--gamma1", "1", "--gamma2", "1",
                          "--v-crit", repr(math.exp(-1))], tmp_path)
    assert code == 0
    assert text.splitlines()[1] == "1,1.0,0.36787944117144233,1.0"


def test_tcrit_table(tmp_path):
    code, text = run_cli(["tcrit", "--n", "1,2,3", "--gamma1", "0.5", "--gamma2", "0.5",
                          "--v-crit", "0.1"], tmp_path)
    rows = [r.split(",") for r in text.splitlines()[1:]]
    assert [int(r[0]) for r in rows] == [1, 2, 3]
    assert float(rows[2][3]) == pytest.approx(0.51168557622089904089288698993, rel=1e-15)


def test_visibility_scan_starts_at_one(tmp_path):
    code, text = run_cli(["visibility-scan", "--n", "4", "--state", "noon:0.7", "--gamma1", "1",
                          "--gamma2", "1", "--t-end", "0.2", "--t-steps", "5"], tmp_path)
    assert code == 0
    lines = text.splitlines()
    assert len(lines) == 6
    assert float(lines[1].split(",")[1]) == pytest.approx(1.0, abs=1e-12)


def test_evolve_and_pt_and_fringe_row_counts(tmp_path):
    _, text = run_cli(["evolve", "--n", "2", "--gamma1", "1", "--t-end", "1", "--t-steps", "3"], tmp_path)
    assert len(text.splitlines()) == 1 + 3 * 6
    _, text = run_cli(["pt-spectrum", "--n", "3", "--gamma1", "1", "--t-end", "0.5"], tmp_path)
    lines = text.splitlines()
    assert len(lines) == 1 + 16
    assert lines[1].endswith("block:0:3:-")
    _, text = run_cli(["fringe", "--n", "3", "--phi-samples", "30"], tmp_path)
    assert len(text.splitlines()) == 31


def test_state_file_input(tmp_path):
    path = tmp_path / "noon.state"
    path.write_text(NOON3_FILE)
    code, text = run_cli(["pt-spectrum", "--state", f"file:{path}"], tmp_path)
    assert code == 0
    assert len(text.splitlines()) == 17


@pytest.mark.parametrize(
    "content, args, expected",
    [
        ("N 3\nrho 0 4 0.5 0\n", [], 2),
        ("N 1\nrho 0 0 0.5 0\nrho 1 1 0.4 0\n", [], 3),
        (NOON3_FILE, ["--n", "2"], 5),
    ],
)
def test_file_exit_codes(tmp_path, content, args, expected):
    path = tmp_path / "s.state"
    path.write_text(content)
    code, _ = run_cli(["evolve", "--state", f"file:{path}"] + args, tmp_path)
    assert code == expected


@pytest.mark.parametrize(
    "args",
    [
        ["bogus"],
        ["evolve", "--n", "0"],
        ["evolve", "--n", "2", "--gamma1", "-1"],
        ["tcrit", "--n", "2", "--gamma1", "1"],
        ["tcrit", "--n", "2", "--gamma1", "1", "--v-crit", "1.5"],
        ["visibility-scan", "--n", "3", "--phi-samples", "5"],
        ["evolve", "--n", "2", "--t-start", "1", "--t-end", "0"],
        ["evolve", "--n", "2,3"],
        ["evolve", "--n", "2", "--state", "gauss:1"],
    ],
)
def test_bad_arguments_exit_5(tmp_path, args, capsys):
    code, _ = run_cli(args, tmp_path)
    assert code == 5
    assert capsys.readouterr().err.startswith("noonsim: ")


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "noonsim", "tcrit", "--n", "2", "--gamma1", "1",
                           "--gamma2", "1", "--v-crit", "0.5"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[0] == HEADERS["tcrit"]

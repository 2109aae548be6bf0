import io
import json
import subprocess
import sys

import pytest

from twolocal.cli import dispatch


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = dispatch(argv, out, err)
    return code, out.getvalue(), err.getvalue()


def run_json(argv):
    code, out, err = run(argv)
    assert code == 0, err
    data = json.loads(out)
    assert data["v"] == 1
    return data


def test_conductor_example():
    data = run_json(["conductor", "--p", "2", "--m", "1", "[t^-0*pi^-2]"])
    assert data["conductor"] == 1 and data["reduced"] == "pi^-1"


def test_reduce_reports_shift():
    data = run_json(["reduce", "[pi^-2]"])
    assert data == {"conductor": 1, "reduced": "pi^-1", "shift": "pi^-1", "v": 1}


def test_gram_minimal():
    data = run_json(["gram", "--which", "dual", "--n", "0", "--t-width", "1", "--pi-width", "1"])
    assert data["rank"] == 1 and data["matrix"] == [[1]]


def test_gram_csv():
    code, out, _ = run(["gram", "--n", "1", "--t-width", "2", "--pi-width", "1", "--output", "csv"])
    assert code == 0
    rows = [line.split(",") for line in out.strip().splitlines()]
    assert len(rows) == 2 and all(len(r) == 2 for r in rows)


def test_weil_example():
    data = run_json(["weil", "--p", "2", "--f", "T", "--g", "1+T"])
    assert data["ok"] is True
    assert [row["place"] for row in data["certificate"]] == ["(T)", "(T+1)", "inf"]


def test_witt_sum_frozen():
    assert run_json(["witt", "add", "--p", "3", "[1; 1]", "[1; 1]"])["result"] == "[2; 0]"
    assert run_json(["witt", "V", "[1]"])["result"] == "[0; 1]"


def test_symbol_verbs():
    assert run_json(["tame", "{t, pi}"])["tame"] == "t"
    assert run_json(["dlog", "{t, pi}"])["form"] == "1"
    split = run_json(["split", "--p", "3", "{t*pi^0 + pi, pi}"])
    assert split["tame"] == "t"


def test_residue_maps():
    assert run_json(["residue", "--map", "ResK", "t^-1*pi^-1*dt^dpi"])["value"] == 1
    assert run_json(["residue", "--map", "ResK", "--e", "2", "t^-1*pi^-1*dt^dpi"])["value"] == 0
    assert run_json(["residue", "--map", "resK", "t^3*pi^-1*dt^dpi"])["value"] == "t^3*dt"
    assert run_json(["residue", "--map", "resf", "--e", "2", "g*t^-1+t"])["value"] == "g"
    assert run_json(["residue", "--map", "chif", "t^-2"])["value"] == 0


def test_cartier_and_pairs():
    assert run_json(["cartier", "t^2*pi^4*dlog t^dlog pi"])["result"] == "t*pi^2"
    assert run_json(["pair", "--which", "dual", "--n", "1", "--p", "3",
                     "t^-1*pi^-2", "t*pi^2*dlog t^dlog pi"])["value"] == 1
    assert run_json(["pair", "--which", "rec", "1", "{t, pi}"])["value"] == 1
    assert run_json(["varpi-rank", "--n", "1", "--width", "4"])["rank"] == 0


def test_domain_error_exit_code():
    code, out, err = run(["cartier", "t*pi^2"])
    assert code == 2
    assert "NotAPthPower" in err
    assert json.loads(out)["error"] == "NotAPthPower"
    code, _, err = run(["pair", "--n", "1", "t^-1*pi^-2", "t*pi*dlog t^dlog pi"])
    assert code == 2 and "TwistViolation" in err
    code, _, err = run(["conductor", "--m", "2", "[pi^-1]"])
    assert code == 2 and "LengthMismatch" in err


@pytest.mark.parametrize("argv", [
    [], ["bogus"], ["conductor"], ["conductor", "[pi^-1"], ["tame", "--p", "7", "{t, pi}"],
    ["gram", "--t-window", "3"], ["weil", "--f", "T"], ["witt", "add", "[1]"],
    ["conductor", "--t-window", "4:2", "[pi^-1]"],
])
def test_usage_errors(argv):
    code, _, err = run(argv)
    assert code == 1
    assert err.startswith("usage error")


def test_environment_override(monkeypatch):
    monkeypatch.setenv("TWOLOCAL_P", "3")
    assert run_json(["witt", "add", "[1; 1]", "[1; 1]"])["result"] == "[2; 0]"
    # explicit flags win
    assert run_json(["witt", "add", "--p", "2", "[1; 0]", "[1; 0]"])["result"] == "[0; 1]"
    monkeypatch.setenv("TWOLOCAL_OUTPUT", "text")
    code, out, _ = run(["tame", "{t, pi}"])
    assert code == 0 and out == "tame: t\n"


def test_text_output():
    code, out, _ = run(["weil", "--f", "T", "--g", "1+T", "--output", "text"])
    assert code == 0 and "ok: True" in out


def test_identical_arguments_identical_output():
    argv = ["gram", "--which", "rec", "--n", "1", "--t-width", "2", "--pi-width", "2", "--e", "2"]
    assert run(argv) == run(argv)


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "twolocal", "conductor", "[pi^-3]"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["conductor"] == 3


def test_selftest_quick():
    code, out, _ = run(["selftest", "--quick", "--output", "text"])
    assert code == 0
    assert out.strip().endswith("13/13 checks passed")

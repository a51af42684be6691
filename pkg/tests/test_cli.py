import json
import subprocess
import sys

import pytest

from kinv.cli import SCHEMA_VERSION, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_jones_unknot(capsys):
    code, out, _ = run(capsys, "jones", "--knot", "unknot", "--n", "5")
    assert code == 0 and out.strip() == "1"


def test_jones_braid_literal_matches_knot(capsys):
    a = run(capsys, "jones", "--knot", "3_1", "--format", "json")[1]
    b = run(capsys, "jones", "--braid", "[1,1,1]", "--format", "json")[1]
    assert json.loads(a)["jones"] == json.loads(b)["jones"]
    assert json.loads(a)["schema"] == SCHEMA_VERSION


def test_mmr_trefoil(capsys):
    code, out, _ = run(capsys, "mmr", "--knot", "3_1", "--order", "6")
    assert code == 0
    assert "rho10 = P1: pass" in out


def test_mmr_json_is_byte_stable(capsys):
    a = run(capsys, "mmr", "--knot", "4_1", "--format", "json")[1]
    b = run(capsys, "mmr", "--knot", "4_1", "--format", "json")[1]
    assert a == b
    d = json.loads(a)
    assert d["schema"] == SCHEMA_VERSION and d["ok"]


def test_verma_dump(capsys):
    code, out, _ = run(capsys, "verma", "--knot", "3_1", "--order", "3", "--sigma", "1")
    assert code == 0
    assert out.splitlines()[0] == "h^0: 1"


def test_verify_xc(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "xc", "--order", "3")
    assert code == 0
    assert out.count("pass") == 17  # 16 axiom checks and the verdict


def test_verify_suite_order_is_fixed(capsys):
    out = run(capsys, "verify", "--suite", "eigen", "--suite", "bridge", "--order", "4", "--format", "json")[1]
    assert list(json.loads(out)["results"]) == ["bridge", "eigen"]


def test_table_listing(capsys):
    code, out, _ = run(capsys, "table")
    assert code == 0 and out.startswith("unknot:")


def test_out_file(capsys, tmp_path):
    f = tmp_path / "r.json"
    assert run(capsys, "jones", "--knot", "4_1", "--format", "json", "--out", str(f))[0] == 0
    assert json.loads(f.read_text())["n"] == 2


@pytest.mark.parametrize(
    "argv",
    [
        ("jones", "--knot", "9_99"),
        ("jones", "--braid", "[1,"),
        ("jones", "--braid", "[1,1]"),
        ("jones",),
        ("jones", "--knot", "3_1", "--braid", "[1]"),
        ("jones", "--knot", "3_1", "--n", "0"),
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_corrupted_table_exit_2(capsys, tmp_path, monkeypatch):
    f = tmp_path / "bad.txt"
    f.write_text("3_1: braid[1,,1]\n")
    monkeypatch.setenv("KINV_TABLE", str(f))
    code, _, err = run(capsys, "jones", "--knot", "3_1")
    assert code == 2 and "knot table" in err


def test_table_override(capsys, tmp_path, monkeypatch):
    f = tmp_path / "t.txt"
    f.write_text("tref: braid[1,1,1]\n")
    monkeypatch.setenv("KINV_TABLE", str(f))
    assert run(capsys, "jones", "--knot", "tref")[1].strip() == "-s^-16 + s^-12 + s^-4"


def test_internal_failure_exit_1(capsys, monkeypatch):
    import kinv.cli as cli

    def boom(*a, **k):
        raise ArithmeticError("forced")

    monkeypatch.setattr(cli, "verify_mmr_equality", boom)
    code, _, err = run(capsys, "mmr", "--knot", "3_1")
    assert code == 1 and "verify_mmr_equality" in err


def test_console_entry_point():
    r = subprocess.run([sys.executable, "-m", "kinv.cli", "jones", "--knot", "unknot"], capture_output=True, text=True)
    assert r.returncode == 0 and r.stdout.strip() == "1"

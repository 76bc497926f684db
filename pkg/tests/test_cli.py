import json
import subprocess
import sys

import pytest

from mmdescend.cli import main
from mmdescend.fixtures import data_path, strassen
from mmdescend.formats import dump_scheme, load_scheme


def path(name):
    return str(data_path(name))


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def corrupted(tmp_path):
    doc = json.loads(dump_scheme(strassen()))
    doc["triples"][0]["O"][0][0] = "2"
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(doc))
    return str(p)


def test_verify_ok(capsys):
    code, out, _ = run(["verify", path("strassen.json")], capsys)
    assert code == 0 and "hold" in out


def test_verify_violation(corrupted, capsys):
    code, out, _ = run(["verify", corrupted], capsys)
    assert code == 2
    assert "(1,1,1,1,1,1)" in out and "sum 2, expected 1" in out


def test_malformed_file(tmp_path, capsys):
    p = tmp_path / "m.json"
    p.write_text('{"dims": [2,2,2],\n "triples": [}')
    code, _, err = run(["verify", str(p)], capsys)
    assert code == 1 and "line 2, column 14" in err
    code, _, err = run(["verify", str(tmp_path / "missing.json")], capsys)
    assert code == 1


def test_usage_errors(capsys):
    assert run(["frobnicate", path("strassen.json")], capsys)[0] == 1
    assert run(["obstruct", path("strassen.json"), "--depth", "0"], capsys)[0] == 1
    assert run(["--version", "verify", "x"], capsys)[0] == 0


def test_info(capsys):
    code, out, _ = run(["info", path("strassen.json")], capsys)
    assert code == 0
    assert out.splitlines()[0] == "⟨2,2,2,7⟩, ring ℤ, traces [2,1,1,1,1,1,1]"
    code, out, _ = run(["info", path("half_trace.json")], capsys)
    assert "ring ℤ[1/2]" in out


def test_other_commands_refuse_invalid_schemes(corrupted, capsys):
    for cmd in ("info", "rationalize", "obstruct", "convert", "transform"):
        assert run([cmd, corrupted], capsys)[0] == 2
    assert run(["info", corrupted, "--skip-verify"], capsys)[0] == 0


def test_rationalize_success(tmp_path, capsys):
    out_file = tmp_path / "rational.json"
    code, out, _ = run(["rationalize", path("strassen_complexified.json"), "--out", str(out_file)], capsys)
    assert code == 0
    doc = json.loads(out)
    assert doc["status"] == "Success" and doc["ring"] == "ℤ"
    s = load_scheme(out_file)
    assert s.is_rational


def test_rationalize_already_rational(capsys):
    code, out, _ = run(["rationalize", path("strassen.json")], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["identity_transform"] is True


def test_rationalize_no_solution_writes_nothing(tmp_path, capsys):
    out_file = tmp_path / "never.json"
    code, out, _ = run(["rationalize", path("nonreal.json"), "--out", str(out_file)], capsys)
    assert code == 3
    doc = json.loads(out)
    assert doc["certificate"]["variant"] == "OPQ"
    assert not out_file.exists()


def test_rationalize_inconclusive(tmp_path, capsys):
    # a conjugated <3,1,1> standard scheme: every intertwiner basis element is
    # singular, so with --comb 0 no combination is tried and the search stays open
    doc = {
        "dims": [3, 1, 1],
        "field": {"d": -1},
        "triples": [
            {"O": [["-1-i"], ["i"], ["-1-i"]], "P": [["1"]], "Q": [["-1/2+1/2*i", "0", "0"]]},
            {"O": [["0"], ["0"], ["i"]], "P": [["1"]], "Q": [["i", "0", "-i"]]},
            {"O": [["0"], ["1"], ["0"]], "P": [["1"]], "Q": [["1/2+1/2*i", "1", "0"]]},
        ],
    }
    p = tmp_path / "s.json"
    p.write_text(json.dumps(doc))
    out_file = tmp_path / "never.json"
    code, out, _ = run(["rationalize", str(p), "--comb", "0", "--out", str(out_file)], capsys)
    assert code == 4
    assert json.loads(out)["certificate"]["reason"] == "multi_dimensional"
    assert not out_file.exists()
    assert run(["rationalize", str(p)], capsys)[0] == 0


def test_obstruct(capsys):
    code, out, _ = run(["obstruct", path("strassen.json"), "--depth", "3"], capsys)
    assert code == 5 and "no obstruction found up to depth 3" in out
    code, out, _ = run(["obstruct", path("half_trace.json")], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["witness"] == [1, 2] and doc["depth"] == 2
    code, _, err = run(["obstruct", path("strassen_complexified.json")], capsys)
    assert code == 1 and "rational" in err


def test_obstruct_memo_cap_env(monkeypatch, capsys):
    monkeypatch.setenv("MMDESCEND_MEMO_CAP", "1")
    code, out, _ = run(["obstruct", path("strassen.json")], capsys)
    assert code == 5 and json.loads(out)["products_examined"] == 399


def test_transform_identity_is_byte_identical(tmp_path, capsys):
    out_file = tmp_path / "t.json"
    src = path("strassen_complexified.json")
    assert run(["transform", src, "--out", str(out_file)], capsys)[0] == 0
    assert out_file.read_bytes() == data_path("strassen_complexified.json").read_bytes()
    assert run(["transform", src, "--x", "[[1,0],[0,1]]", "--out", str(out_file)], capsys)[0] == 0
    assert out_file.read_bytes() == data_path("strassen_complexified.json").read_bytes()


def test_transform_descends_with_found_matrices(tmp_path, capsys):
    code, out, _ = run(["rationalize", path("strassen_complexified.json")], capsys)
    t = json.loads(out)["transform"]
    out_file = tmp_path / "t.json"
    code, _, _ = run(
        ["transform", path("strassen_complexified.json"), "--x", t["X"], "--y", t["Y"], "--z", t["Z"],
         "--out", str(out_file)],
        capsys,
    )
    assert code == 0 and load_scheme(out_file).is_rational


def test_transform_errors(tmp_path, capsys):
    code, _, err = run(["transform", path("strassen.json"), "--y", "[[1,1],[1,1]]"], capsys)
    assert code == 1 and "Y is singular" in err
    code, _, err = run(["transform", path("strassen.json"), "--x", "[[1,0,0],[0,1,0],[0,0,1]]"], capsys)
    assert code == 1 and "2x2" in err
    mat = tmp_path / "x.json"
    mat.write_text('[["1", "i"], ["0", "1"]]')
    assert run(["transform", path("strassen.json"), "--x", str(mat)], capsys)[0] == 0


def test_convert_roundtrip(tmp_path, capsys):
    enc = tmp_path / "enc.json"
    back = tmp_path / "back.json"
    assert run(["convert", path("strassen.json"), "--out", str(enc)], capsys)[0] == 0
    assert '"U"' in enc.read_text()
    assert run(["convert", str(enc), "--out", str(back)], capsys)[0] == 0
    assert back.read_bytes() == data_path("strassen.json").read_bytes()
    assert run(["convert", path("strassen.json"), "--to", "triples", "--out", str(back)], capsys)[0] == 0
    assert back.read_bytes() == data_path("strassen.json").read_bytes()


def test_repeated_runs_identical(capsys):
    argv = ["rationalize", path("strassen_complexified.json"), "--seed", "7"]
    first = run(argv, capsys)
    second = run(argv, capsys)
    assert first == second


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "mmdescend", "obstruct", path("strassen.json")],
        capture_output=True, text=True,
    )
    assert proc.returncode == 5

import json
import subprocess
import sys

import pytest

from hilbadhm import serialize as ser
from hilbadhm.cli import main


@pytest.fixture
def files(tmp_path, jordan, diag_points, zero_unstable):
    paths = {}
    for name, text in {
        "jordan_ideal.txt": "x0^2\nx1\n",
        "point_ideal.txt": "x0 - 2\nx1 - 3\n",
        "line.txt": "x0\n",
        "circle.txt": "x0^2 + x1^2 - 1\n",
        "garbage.txt": "x0 + + \n",
        "jordan.json": ser.dump_datum(jordan),
        "diag.json": ser.dump_datum(diag_points),
        "unstable.json": ser.dump_datum(zero_unstable),
        "scalar.json": '{"n": 2, "c": 1, "B": [[["2"]], [["-1/2"]]], "I": ["1"]}',
        "noncomm.json": '{"n": 2, "c": 2, "B": [[["0","1"],["0","0"]], [["0","0"],["1","0"]]], "I": ["1","0"]}',
    }.items():
        p = tmp_path / name
        p.write_text(text)
        paths[name.split(".")[0]] = str(p)
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_ideal2adhm(capsys, files, jordan):
    code, out, _ = run(capsys, "ideal2adhm", files["jordan_ideal"], "--format", "json")
    assert code == 0 and ser.load_datum(out) == jordan
    assert json.loads(out)["basis"] == ["1", "x0"]
    code, out, _ = run(capsys, "ideal2adhm", files["point_ideal"], "--format", "json")
    doc = json.loads(out)
    assert doc["B"] == [[["2"]], [["3"]]] and doc["I"] == ["1"]


def test_not_zero_dimensional(capsys, files):
    code, out, err = run(capsys, "ideal2adhm", files["line"])
    assert code == 2 and out == "" and "not zero-dimensional" in err


def test_parse_error(capsys, files):
    code, _, err = run(capsys, "ideal2adhm", files["garbage"])
    assert code == 1 and "position" in err


def test_adhm2ideal(capsys, files):
    code, out, _ = run(capsys, "adhm2ideal", files["jordan"])
    assert code == 0 and out.splitlines()[:2] == ["x1", "x0^2"] and "colength: 2" in out
    code, _, err = run(capsys, "adhm2ideal", files["unstable"])
    assert code == 4 and "rank 1 of 2" in err
    code, out, _ = run(capsys, "adhm2ideal", files["scalar"], "--format", "json")
    assert sorted(json.loads(out)["reduced_gb"]) == ["x0 - 2", "x1 + 1/2"]


def test_non_commuting_exit(capsys, files):
    code, _, err = run(capsys, "stability", files["noncomm"])
    assert code == 3 and "do not commute" in err


def test_stability(capsys, files):
    assert run(capsys, "stability", files["diag"])[1] == "stable: true, krylov rank 2/2\n"
    assert run(capsys, "stability", files["unstable"])[1] == "stable: false, krylov rank 1/2\n"


def test_hilbchow(capsys, files):
    code, out, _ = run(capsys, "hilbchow", "--exact", files["jordan"])
    assert code == 0 and "(0, 0) x2" in out.splitlines()
    code, out, _ = run(capsys, "hilbchow", "--approx", "--seed", "4", files["diag"], "--format", "json")
    doc = json.loads(out)
    assert doc["seed"] == 4 and doc["partition"] == [1, 1]


def test_monadcheck(capsys, files, tmp_path):
    points = tmp_path / "p3.json"
    code, out, _ = run(capsys, "sample", "--points", "0,0,0; 1,2,0; -1,1,3")
    points.write_text(out)
    code, out, _ = run(capsys, "monadcheck", str(points))
    assert code == 0
    assert out.splitlines()[0] == "complex: ok, fibers sampled: 20, negative-degree cohomology: 0"
    code, out, _ = run(capsys, "monadcheck", str(points), "--fibers", "5", "--format", "json")
    doc = json.loads(out)
    assert doc["degree0_cohomology"] == [1] and doc["alpha0_surjective_on_samples"] is True


def test_roundtrip_and_equiv(capsys, files):
    assert run(capsys, "roundtrip", files["jordan_ideal"])[1] == "roundtrip (ideal): ok\n"
    assert run(capsys, "roundtrip", files["diag"])[1] == "roundtrip (datum): ok\n"
    code, out, _ = run(capsys, "equiv", files["jordan"], files["diag"])
    assert out == "equivalent: false\n"
    code, out, _ = run(capsys, "equiv", files["jordan"], files["jordan"], "--emit-witness", "--format", "json")
    assert json.loads(out) == {"equivalent": True, "witness": [["1", "0"], ["0", "1"]]}


def test_variety(capsys, files, tmp_path):
    on = tmp_path / "on.json"
    on.write_text(run(capsys, "sample", "--points", "1,0; 0,1; -1,0")[1])
    assert run(capsys, "variety", str(on), files["circle"])[1] == "on variety: true\n"
    assert run(capsys, "variety", files["diag"], files["circle"])[1] == "on variety: false\n"
    assert run(capsys, "variety", files["point_ideal"], files["circle"])[1] == "on variety: false\n"


def test_sample_and_stabilize(capsys, files, tmp_path):
    code, out, _ = run(capsys, "sample", "--n", "2", "--c", "3", "--seed", "11")
    doc = json.loads(out)
    assert doc["seed"] == 11 and doc["c"] == 3
    assert run(capsys, "sample", "--n", "2")[0] == 2
    code, out, _ = run(capsys, "stabilize", files["unstable"], "--trials", "10", "--format", "json")
    assert json.loads(out)["found"] is False


def test_env_overrides(capsys, files, monkeypatch):
    monkeypatch.setenv("HILBADHM_FORMAT", "json")
    monkeypatch.setenv("HILBADHM_ORDER", "lex")
    code, out, _ = run(capsys, "adhm2ideal", files["jordan"])
    assert json.loads(out)["order"] == "lex"


def test_corpus_small(capsys):
    code, out, _ = run(capsys, "corpus", "--max-colength", "3", "--points", "3", "--data", "3")
    assert code == 0 and out.endswith("(seed 0)\n") and "FAIL" not in out


def test_console_script(files):
    proc = subprocess.run(
        [sys.executable, "-m", "hilbadhm.cli", "stability", files["unstable"]],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0 and proc.stdout.startswith("stable: false")

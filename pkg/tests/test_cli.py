import json
import subprocess
import sys
from pathlib import Path

import pytest

from facfold.cli import main, parse_directions, UsageError
from facfold.presentation import PresentationError, dumps, load, loads

DATA = Path(__file__).resolve().parent.parent / "demos" / "data"
NUMERICAL = str(DATA / "numerical.yaml")
INTEGERS = str(DATA / "integers.yaml")
PLANE = str(DATA / "plane.yaml")


def run(capsys, *argv):
    code = main(["--format", "structured", *argv])
    out, err = capsys.readouterr()
    return code, (json.loads(out)["results"] if out.strip() else None), err


def test_atoms(capsys):
    code, res, _ = run(capsys, "atoms", NUMERICAL, "N", "--level", "10")
    assert code == 0 and [a["lift"] for a in res["atoms"]] == [[2], [3]]
    _, res, _ = run(capsys, "atoms", INTEGERS, "ambient", "--level", "10")
    assert res["atoms"] == []
    _, res, _ = run(capsys, "atoms", NUMERICAL, "H10", "--level", "19")
    assert res["count"] == 10


def test_factorize(capsys):
    _, res, _ = run(capsys, "factorize", NUMERICAL, "N", "twelve", "--window", "10")
    assert res["count"] == 3 and res["lengths"] == [4, 5, 6] and res["complete"]
    _, res, _ = run(capsys, "factorize", NUMERICAL, "H10", "30", "--length", "2")
    assert res["count"] == 5
    _, res, _ = run(capsys, "factorize", NUMERICAL, "N", "0")
    assert res["count"] == 1 and res["factorizations"][0]["atoms"] == []


def test_lengths_and_classify(capsys):
    _, res, _ = run(capsys, "lengths", NUMERICAL, "N", "twelve")
    assert res["lengths"] == [4, 5, 6]
    _, res, _ = run(capsys, "classify", NUMERICAL, "N", "twelve", "--window", "5")
    assert res["fibers"] == {"4": 1, "5": 1} and not res["complete"]


def test_undermonoid(capsys):
    assert run(capsys, "undermonoid", NUMERICAL, "N")[1]["undermonoid"] is True
    assert run(capsys, "undermonoid", NUMERICAL, "N46")[1]["undermonoid"] is False
    assert run(capsys, "undermonoid", NUMERICAL, "ambient", "ambient")[1]["undermonoid"] is True


def test_reflect_and_admissible(capsys):
    _, res, _ = run(capsys, "reflect", PLANE, "N", "T", "--level", "2")
    assert res["verdict"]["state"] == "fails"
    assert res["verdict"]["witness"] == {"unit": [0, 1]}
    assert [[1, 0], [1, 1]] in res["collisions"]
    _, res, _ = run(capsys, "admissible", NUMERICAL, "sixes", "W")
    assert res["verdict"]["state"] == "holds" and res["image_size"] == 2


def test_transport(capsys):
    _, res, _ = run(capsys, "transport", NUMERICAL, "pairs")
    assert res["family_size"] == res["image_size"] == 5
    assert res["undermonoid"]["state"] == "holds"
    _, res, _ = run(capsys, "transport", INTEGERS, "single", "--directions", "3")
    assert res["final"]["generators"] == [[2], [7]]
    assert res["undermonoid"]["state"] == "holds"
    code, res, _ = run(capsys, "transport", INTEGERS, "single", "--directions", "")
    assert code == 0
    assert "no forcing applied" in res["notes"]
    assert res["undermonoid"]["state"] == "unknown" and "bound" in res["undermonoid"]


def test_bound_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("FACFOLD_DEFAULT_BOUND", "17")
    main(["--format", "structured", "transport", INTEGERS, "single", "--directions", "3"])
    report = json.loads(capsys.readouterr().out)
    assert report["bounds"]["bound"] == 17
    monkeypatch.setenv("FACFOLD_DEFAULT_BOUND", "many")
    assert main(["selftest"]) != 0


def test_text_output_is_deterministic(capsys):
    main(["factorize", NUMERICAL, "N", "twelve", "--window", "10"])
    first = capsys.readouterr().out
    main(["factorize", NUMERICAL, "N", "twelve", "--window", "10"])
    assert capsys.readouterr().out == first
    assert "count: 3" in first


def test_parse_errors_report_a_location(tmp_path, capsys):
    bad = tmp_path / "bad.yaml"
    bad.write_text("ambient:\n  dim: 1\n  generators: [[1]]\nmonoids:\n  N: {generators: [[2], [x]]}\n")
    assert main(["atoms", str(bad), "N", "--level", "3"]) == 2
    assert "monoids.N.generators[1][0]" in capsys.readouterr().err
    broken = tmp_path / "broken.yaml"
    broken.write_text("ambient: [1,\n")
    assert main(["atoms", str(broken), "N", "--level", "3"]) == 2
    assert "broken.yaml:" in capsys.readouterr().err


def test_unknown_names_are_errors(capsys):
    assert main(["atoms", NUMERICAL, "nope", "--level", "3"]) == 1
    assert "nope" in capsys.readouterr().err
    assert main(["atoms", str(DATA / "missing.yaml"), "N", "--level", "3"]) == 2


def test_cycles_and_bad_recipes():
    with pytest.raises(PresentationError) as exc:
        loads("ambient: {dim: 1, generators: [[1]]}\nmonoids:\n"
              "  A: {recipe: enlarge, base: B, element: [2]}\n"
              "  B: {recipe: enlarge, base: A, element: [2]}\n")
    assert "monoids.A" in str(exc.value) or "monoids.B" in str(exc.value)
    with pytest.raises(PresentationError):
        loads("ambient: {dim: 1, units: full}\nmonoids:\n  S: {generators: [[2]]}\n"
              "  W: {recipe: enlarge, base: S, element: [2]}\n")
    with pytest.raises(PresentationError):
        loads("ambient: {dim: 1, generators: [[1]]}\nextra: 1\n")


@pytest.mark.parametrize("path", [NUMERICAL, INTEGERS, PLANE])
def test_round_trip(path):
    doc = load(path)
    again = loads(dumps(doc))
    assert again.canonical == doc.canonical
    assert loads(dumps(again)).canonical == doc.canonical
    assert set(again.families) == set(doc.families)
    for name, fam in doc.families.items():
        assert again.families[name].members == fam.members


def test_huge_integers_survive():
    big = 10 ** 30
    doc = loads(f"ambient: {{dim: 1, generators: [[1]]}}\nelements:\n  b: [{big}]\n")
    assert doc.elements["b"] == (big,)
    assert loads(dumps(doc)).elements["b"] == (big,)


def test_parse_directions():
    assert parse_directions("3;-1", 1) == [(3,), (-1,)]
    assert parse_directions("1,0; 0,1", 2) == [(1, 0), (0, 1)]
    assert parse_directions("", 1) == []
    with pytest.raises(UsageError):
        parse_directions("1,2", 1)


def test_selftest(capsys):
    assert main(["selftest"]) == 0
    assert "passed: True" in capsys.readouterr().out


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "facfold", "--format", "structured",
                          "undermonoid", NUMERICAL, "N46"], capture_output=True, text=True)
    assert out.returncode == 0
    assert json.loads(out.stdout)["results"]["undermonoid"] is False

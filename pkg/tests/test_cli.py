import json
import subprocess
import sys

import pytest

from kssdomain import svg
from kssdomain.cli import main


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def fx(fixture_dir):
    return lambda name: str(fixture_dir / name)


def test_domain_model_a(capsys, fx):
    code, out, _ = run(capsys, "domain", fx("MODEL-A.json"))
    doc = json.loads(out)
    assert code == 0
    assert doc["vertices"] == [["0", "0"], ["1/2", "1/2"]]
    assert doc["in_E"] is True and doc["mu"] == "0"


def test_delta_model_d(capsys, fx):
    code, out, _ = run(capsys, "delta", fx("MODEL-D.json"), "--at", "0")
    doc = json.loads(out)
    assert code == 0
    assert (doc["status"], doc["delta"], doc["minimizer"]) == ("UNSTABLE", "6/7", "ray(0,1)")


def test_validate_bad_rays(capsys, fx):
    code, out, err = run(capsys, "validate", fx("bad-rays.json"))
    assert code == 3 and out == ""
    assert json.loads(err)["reason"] == "NON_PRIMITIVE_RAY"


def test_validate_ok(capsys, fx):
    code, out, _ = run(capsys, "validate", fx("MODEL-D.json"))
    doc = json.loads(out)
    assert code == 0 and doc["degree"] == "8" and doc["divisors"][0]["index"] == 1


def test_invariants(capsys, fx):
    code, out, _ = run(capsys, "invariants", fx("MODEL-D.json"))
    rows = {r["label"]: r for r in json.loads(out)["valuations"]}
    assert code == 0
    assert rows["ray(0,1)"]["S"] == "7/6" and rows["ray(0,-1)"]["S"] == "5/6"
    assert rows["ray(1,0)"]["S"] == rows["ray(-1,1)"]["S"] == "13/12"


def test_lc_mu(capsys, fx):
    code, out, _ = run(capsys, "lc", fx("MODEL-C.json"))
    assert code == 0 and json.loads(out)["vertices"] == [["0"], ["1"]]
    code, out, _ = run(capsys, "mu", fx("MODEL-T.json"))
    assert json.loads(out) == {"model": "MODEL-T", "mu": "1/2", "gap": "1/2", "in_E": True}


def test_sm(capsys, fx):
    code, out, _ = run(capsys, "sm", fx("MODEL-A.json"), "--ray", 0, "--m", 1)
    doc = json.loads(out)
    assert code == 0 and doc["S_m"] == doc["S"] == "1" and doc["lattice_points"] == 3


def test_chambers_and_crossing(capsys, fx):
    code, out, _ = run(capsys, "chambers", fx("family-T.json"))
    doc = json.loads(out)
    assert code == 0 and len(doc["chambers"]) == 2
    code, out, _ = run(capsys, "crossing", fx("family-T.json"), "--model", "MODEL-T", "--from", "1/4", "--to", "3/4")
    doc = json.loads(out)
    assert [c["t"] for c in doc["crossings"]] == ["1/2"]
    assert [s["status"] for s in doc["segments"]] == ["UNSTABLE", "KSS"]


def test_oracle(capsys, fx):
    code, out, _ = run(capsys, "oracle", fx("MODEL-B.json"), "--grid", 60)
    doc = json.loads(out)
    assert code == 0 and doc["points"] == 61 and doc["mismatches"] == []


@pytest.mark.parametrize(
    "argv, code",
    [
        (["delta", "MODEL-A.json", "--at", "0.25,0.25"], 2),
        (["delta", "MODEL-A.json", "--at", "1/4"], 2),
        (["delta", "MODEL-A.json", "--at", "3/4,1/2"], 4),
        (["oracle", "MODEL-B.json", "--grid", "1"], 4),
        (["chambers", "family-BCE.json"], 2),
        (["crossing", "family-T.json", "--model", "MODEL-T", "--from", "1/2", "--to", "3/4"], 4),
        (["sm", "MODEL-T.json", "--ray", "0", "--m", "1"], 2),
        (["domain", "missing.json"], 2),
        (["nonsense"], 2),
    ],
)
def test_exit_codes(capsys, fx, argv, code):
    argv = [fx(a) if a.endswith(".json") else a for a in argv]
    got, out, err = run(capsys, *argv)
    assert got == code and out == ""
    if argv[0] != "nonsense":
        assert "error" in json.loads(err)


def test_out_flag(capsys, fx, tmp_path):
    target = tmp_path / "d.json"
    code, out, _ = run(capsys, "domain", fx("MODEL-T.json"), "--out", target)
    assert code == 0 and out == ""
    assert json.loads(target.read_text())["vertices"] == [["1/2"], ["1"]]


@pytest.mark.parametrize("name", ["MODEL-T.json", "MODEL-A.json", "MODEL-E.json"])
def test_domain_svg_regenerates_from_json(capsys, fx, tmp_path, name):
    target = tmp_path / "d.svg"
    code, out, _ = run(capsys, "domain", fx(name), "--svg", target)
    assert code == 0
    assert target.read_text() == svg.render_domain(json.loads(out))
    assert target.read_text().startswith("<svg")


@pytest.mark.parametrize("family", ["family-T.json", "family-A.json", "family-BC.json"])
def test_chambers_svg_regenerates_from_json(capsys, fx, tmp_path, family):
    target = tmp_path / "c.svg"
    code, out, _ = run(capsys, "chambers", fx(family), "--svg", target)
    assert code == 0
    assert target.read_text() == svg.render_chambers(json.loads(out))


def test_slice_for_three_boundaries(capsys, tmp_path):
    model = {
        "kind": "table",
        "name": "three",
        "k": 3,
        "rows": [{"label": "E", "A": "1", "S": "2", "ord": ["0", "0", "0"]}],
        "lc_halfspaces": [],
        "certified": True,
    }
    path = tmp_path / "three.json"
    path.write_text(json.dumps(model))
    code, _, _ = run(capsys, "domain", path, "--svg", tmp_path / "x.svg")
    assert code == 2
    code, out, _ = run(capsys, "domain", path, "--svg", tmp_path / "x.svg", "--slice", "1/8")
    assert code == 0 and (tmp_path / "x.svg").read_text().startswith("<svg")
    assert json.loads(out)["ambient"] == 3


COMMANDS = [
    ["validate", "MODEL-E.json"],
    ["invariants", "MODEL-E.json"],
    ["invariants", "MODEL-T.json"],
    ["delta", "MODEL-A.json", "--at", "1/4,1/4"],
    ["domain", "MODEL-E.json"],
    ["lc", "MODEL-A.json"],
    ["mu", "MODEL-D.json"],
    ["sm", "MODEL-D.json", "--ray", "1", "--m", "4"],
    ["chambers", "family-BC.json"],
    ["crossing", "family-A.json", "--model", "MODEL-A", "--from", "1/8,1/4", "--to", "1/4,1/8"],
    ["oracle", "MODEL-T.json", "--grid", "20"],
]


@pytest.mark.parametrize("argv", COMMANDS, ids=lambda a: a[0])
def test_repeated_runs_identical(capsys, fx, argv):
    argv = [fx(a) if a.endswith(".json") else a for a in argv]
    first = run(capsys, *argv)
    second = run(capsys, *argv)
    assert first[0] == 0 and first == second


def test_module_entry_point(fixture_dir):
    proc = subprocess.run(
        [sys.executable, "-m", "kssdomain", "mu", str(fixture_dir / "MODEL-D.json")],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["in_E"] is False

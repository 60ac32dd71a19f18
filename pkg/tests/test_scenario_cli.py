import json
from pathlib import Path

import pytest

from swbranch.cli import main
from swbranch.errors import MalformedScenario
from swbranch.scenario import loads

SCENARIOS = Path(__file__).resolve().parent.parent / "scenarios"

BASE = {
    "schema": 1,
    "name": "t",
    "manifold": {
        "b_plus": "3",
        "sigma": "-13",
        "h1_coprime": ["2"],
        "basic_classes": [{"label": "s", "sw": "1", "d": "0", "pairings": ["8"]}],
    },
    "surfaces": {"kind": "spheres", "entries": [{"n": "8", "class": ["0"]}]},
    "cover": {"p": "2"},
}


def doc(**patch):
    d = json.loads(json.dumps(BASE))
    for dotted, value in patch.items():
        node = d
        keys = dotted.split("__")
        for k in keys[:-1]:
            node = node[k]
        node[keys[-1]] = value
    return json.dumps(d)


def test_loads_base():
    sc = loads(doc())
    assert sc.manifold.b_plus == 3 and sc.reference.pairings == (8,) and sc.prime == 2


@pytest.mark.parametrize("text", [
    doc().replace('"b_plus": "3"', '"b_plus": 3.0'),
    doc().replace('"b_plus": "3"', '"b_plus": 3'),
    doc().replace('"sigma": "-13"', '"sigma": NaN'),
    doc(manifold__extra="x"),
    doc(manifold__b_plus="3.5"),
    doc(schema=2),
    doc(surfaces={"kind": "tori", "entries": []}),
    "{not json",
])
def test_rejections(text):
    with pytest.raises(MalformedScenario):
        loads(text)


def test_error_path_points_at_field():
    with pytest.raises(MalformedScenario) as info:
        loads(doc(manifold__sigma="x"))
    assert info.value.path == ("manifold", "sigma")


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_invariant_outputs(capsys):
    assert run(capsys, "invariant", "lens-delta", "2", "1")[1].splitlines() == ["0: 1/8", "1: -1/8"]
    assert run(capsys, "invariant", "dedekind", "1", "3")[1].strip() == "1/18"
    assert run(capsys, "invariant", "alpha", "0", "5")[1].strip() == "2"
    code, out, err = run(capsys, "invariant", "dedekind", "1")
    assert code == 2 and "takes 2" in err
    code, _, err = run(capsys, "invariant", "lens-delta", "4", "2")
    assert code == 2 and err.startswith("error:")


def test_mu_and_plumbing(capsys):
    assert run(capsys, "mu", "--prime", "2", "2", "1", "3")[1].strip() == "mu_0(2; 1, 3) = 1 mod 2"
    code, out, _ = run(capsys, "plumbing", "7")
    assert code == 0 and "det = 15" in out


def test_check_exit_codes(capsys, tmp_path):
    code, out, _ = run(capsys, "check", "--scenario", str(SCENARIOS / "sphere_borderline_p2.json"))
    assert code == 1 and "Obstructed by" in out and "is FALSE" in out
    code, out, _ = run(capsys, "check", "--scenario", str(SCENARIOS / "empty.json"))
    assert code == 0
    bad = tmp_path / "bad.json"
    bad.write_text('{"schema": 1, "manifold": {"b_plus": 3, "sigma": "0"}}')
    code, _, err = run(capsys, "check", "--scenario", str(bad))
    assert code == 2 and "manifold/b_plus" in err
    code, _, err = run(capsys, "check", "--scenario", str(tmp_path / "missing.json"))
    assert code == 2


def test_check_json_out(capsys):
    code, out, _ = run(capsys, "check", "--scenario", str(SCENARIOS / "rp2_euler_six.json"), "--json-out")
    data = json.loads(out)
    assert code == 0 and data["obstructed"] is False
    statuses = {v["theorem"]: v["status"] for v in data["verdicts"]}
    assert statuses["rp2-cover-sw"] == "NonSimpleTypeConstruction"
    for v in data["verdicts"]:
        if v["status"] == "Obstructed":
            assert v["witness_holds"] is False


def test_cover_report(capsys):
    code, out, _ = run(capsys, "cover", "--scenario", str(SCENARIOS / "sphere_borderline_p3.json"))
    assert code == 0
    assert "c~ =" in out and "d(cover) = 2" in out and "CONTRADICTION:" in out
    code, out, _ = run(capsys, "cover", "--scenario", str(SCENARIOS / "rp2_euler_six.json"))
    assert "b+(cover_0) =" in out and "eps = [-1]" in out


def test_prime_override(capsys, tmp_path):
    code, _, _ = run(capsys, "cover", "--scenario", str(SCENARIOS / "sphere_borderline_p2.json"), "--prime", "4")
    assert code == 2
    no_prime = json.loads(doc())
    del no_prime["cover"]
    path = tmp_path / "no_prime.json"
    path.write_text(json.dumps(no_prime))
    code, _, err = run(capsys, "cover", "--scenario", str(path))
    assert code == 2 and "needs a prime" in err
    code, out, _ = run(capsys, "cover", "--scenario", str(path), "--prime", "2")
    assert code == 0 and "c~ = 4" in out

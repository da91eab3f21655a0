import json
import subprocess
import sys

import pytest

from finsite.cli import main
from finsite.fincat import fixture


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, name, data):
    p = tmp_path / name
    p.write_text(json.dumps(data), encoding="utf-8")
    return str(p)


def walk_dict():
    return fixture("WALK").to_dict()


def test_fixture_listing(capsys):
    code, out, _ = run(capsys, "--fixtures")
    assert code == 0
    assert "WALK: 2 objects, 3 arrows, 5 sieves; presheaves: walk_pair" in out
    assert len(out.strip().splitlines()) == 8
    assert run(capsys, "fixtures")[1] == out


def test_validate_category(capsys, tmp_path):
    code, out, _ = run(capsys, "validate", write(tmp_path, "walk.json", walk_dict()))
    assert (code, out.strip()) == (0, "valid: 2 objects, 3 arrows")


def test_validate_missing_composite(capsys, tmp_path):
    data = walk_dict()
    data["compose"] = [e for e in data["compose"] if (e["first"], e["then"]) != ("u", "id_b")]
    code, out, err = run(capsys, "validate", write(tmp_path, "bad.json", data))
    assert code == 1
    assert "u" in err and "id_b" in err
    assert json.loads(out)["witness"] == ["id_b", "u"]


def test_validate_topology_strict_and_saturated(capsys, tmp_path):
    path = write(tmp_path, "t.json", {"category": "WALK",
                                      "covers": {"a": [[], ["id_a"]], "b": [["u"], ["id_b", "u"]]}})
    code, out, err = run(capsys, "validate", path)
    assert code == 1 and "transitivity" in err
    assert json.loads(out) == {"axiom": "transitivity", "object": "b", "sieve": {"cod": "b", "arrows": []}}
    code, out, _ = run(capsys, "--saturate", "validate", path)
    assert code == 0 and "valid topology on WALK: 5 covering sieves" in out
    assert run(capsys, "validate", path, "--saturate")[0] == 0


def test_validate_parse_errors(capsys, tmp_path):
    p = tmp_path / "junk.json"
    p.write_text("{not json", encoding="utf-8")
    assert run(capsys, "validate", str(p))[0] == 2
    assert run(capsys, "validate", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "validate", write(tmp_path, "x.json", {"hello": 1}))[0] == 2
    assert run(capsys, "analyze", "NOPE")[0] == 2
    assert run(capsys)[0] == 2


def test_validate_presheaf_and_sub(capsys, tmp_path):
    from finsite.presheaf import presheaf_fixture

    E = presheaf_fixture("walk_pair", fixture("WALK"))
    code, out, _ = run(capsys, "validate", write(tmp_path, "p.json", E.to_dict()))
    assert code == 0 and out.startswith("valid presheaf on WALK: 5 elements")


def analyze(capsys, name, *extra):
    code, out, _ = run(capsys, "analyze", name, *extra)
    assert code == 0
    return json.loads(out)


def test_analyze_walk(capsys):
    rep = analyze(capsys, "WALK")
    assert rep["boolean"] is False and rep["de_morgan"] is True
    assert rep["groupoid"] is False and rep["right_ore"] is True
    w = rep["witness"]["boolean"]
    assert (w["cod"], w["arrows"], w["excluded_middle"]) == ("b", ["u"], ["u"])
    assert rep["booleanization"]["covers"] == {"a": [["id_a"]], "b": [["u"], ["id_b", "u"]]}
    assert set(rep) == {"category", "topology", "kept_objects", "groupoid", "right_ore", "boolean",
                        "de_morgan", "subcanonical", "booleanization", "demorganization", "witness"}


def test_analyze_cospan(capsys):
    rep = analyze(capsys, "COSPAN")
    assert rep["de_morgan"] is False and rep["right_ore"] is False
    w = rep["witness"]["de_morgan"]
    assert (w["cod"], w["arrows"], w["de_morgan_sieve"]) == ("c", ["f"], ["f", "g"])


def test_analyze_z2(capsys):
    rep = analyze(capsys, "Z2")
    assert rep["boolean"] and rep["de_morgan"] and rep["subcanonical"]
    assert rep["witness"] == {}


def test_analyze_with_topology_file(capsys, tmp_path):
    path = write(tmp_path, "jcov.json", {"category": "WALK", "covers": {"a": [[]]}})
    assert run(capsys, "analyze", "WALK", "-t", path)[0] == 1
    rep = analyze(capsys, "WALK", "-t", path, "--saturate")
    assert rep["kept_objects"] == ["b"] and rep["boolean"] is True


def test_topology_category_mismatch(capsys, tmp_path):
    path = write(tmp_path, "t.json", {"category": "TERM", "covers": {"*": [["id_*"]]}})
    assert run(capsys, "analyze", "WALK", "-t", path)[0] == 1


def test_booleanize_demorganize_reduce(capsys):
    code, out, _ = run(capsys, "booleanize", "WALK")
    assert code == 0 and json.loads(out)["covers"]["b"] == [["u"], ["id_b", "u"]]
    code, out, _ = run(capsys, "demorganize", "COSPAN")
    assert json.loads(out)["covers"]["c"] == [["f", "g"], ["f", "g", "id_c"]]
    code, out, _ = run(capsys, "reduce", "WALK")
    assert json.loads(out)["kept_objects"] == ["a", "b"]


def test_subcanonical_command(capsys, tmp_path):
    code, out, _ = run(capsys, "subcanonical", "WALK")
    assert code == 0 and json.loads(out) == {"category": "WALK", "subcanonical": True, "witness": None}
    path = write(tmp_path, "d.json", {"category": "WALK", "covers": {"b": [["u"]]}})
    code, out, _ = run(capsys, "subcanonical", "WALK", "-t", path, "--saturate")
    assert json.loads(out)["witness"] == {"cod": "b", "arrows": ["u"]}


def test_closure_sieve(capsys, tmp_path):
    path = write(tmp_path, "jcov.json", {"category": "WALK", "covers": {"a": [[], ["id_a"]], "b": [["id_b", "u"]]}})
    code, out, _ = run(capsys, "closure", "WALK", "-t", path, "--sieve", '{"cod": "b", "arrows": []}')
    assert code == 0
    assert json.loads(out) == {"sieve": {"cod": "b", "arrows": []}, "closure": {"cod": "b", "arrows": ["u"]},
                               "closed": False, "covering": False}
    assert run(capsys, "closure", "WALK", "--sieve", '{"cod": "a", "arrows": ["u"]}')[0] == 1
    assert run(capsys, "closure", "WALK")[0] == 2


def test_closure_subpresheaf(capsys, tmp_path):
    sub = write(tmp_path, "s.json", {"presheaf": "walk_pair", "chosen": {"a": ["x"], "b": ["p"]}})
    code, out, _ = run(capsys, "closure", "WALK", "--subpresheaf", sub)
    assert code == 0
    rep = json.loads(out)
    assert rep["closed"] is True and rep["dense"] is False
    path = write(tmp_path, "d.json", {"category": "WALK", "covers": {"b": [["u"]]}})
    code, out, _ = run(capsys, "closure", "WALK", "-t", path, "--saturate", "--subpresheaf", sub)
    rep = json.loads(out)
    # p restricts along u into {x}, so its element sieve {u} is dense-covering
    assert rep["closure"]["chosen"] == {"a": ["x"], "b": ["p", "q"]}


@pytest.mark.parametrize("name", ["WALK", "COSPAN", "TERM"])
def test_oracle_passes(capsys, name):
    code, out, _ = run(capsys, "oracle", name)
    assert code == 0
    assert "FAIL" not in out
    assert out.strip().splitlines()[-1].startswith(f"{name}: ")


def test_oracle_too_large(capsys):
    code, _, err = run(capsys, "oracle", "COSPAN", "--bound", "4")
    assert code == 2 and "error" in err


def test_output_is_byte_deterministic():
    cmd = [sys.executable, "-m", "finsite", "analyze", "COSPAN"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first

import json

import pytest

from ecirr.cli import main
from ecirr.poly import Poly
from ecirr.ratmap import RationalMap, r_transform

from conftest import DATA

FIX = str(DATA / "fixtures" / "d2_l3_p11.json")


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_transform_text(capsys):
    code, out, _ = run_cli(capsys, "transform", "--map", "data/f83_l17.json", "--poly", "[81,3,0,1]")
    assert code == 0 and out.startswith("degree 51")


def test_transform_json_roundtrip(capsys, example):
    code, out, _ = run_cli(capsys, "transform", "--map", "data/f83_l17.json", "--poly", "[81,3,0,1]",
                           "--emit", "json", "--full")
    obj = json.loads(out)
    assert Poly.from_json(example.map.ctx, obj["poly"]) == r_transform(example.f0, example.map)


def test_packaged_data_from_any_directory(capsys, monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    code, out, _ = run_cli(capsys, "count-points", "--curve", "data/f83_curve.json", "--emit", "json")
    assert code == 0 and json.loads(out)["counts"][0]["count"] == 68


def test_valuation_format(capsys):
    code, out, _ = run_cli(capsys, "valuation", "--D", "-19", "--alpha", "[3,1]", "--beta", "[17,0]")
    assert code == 0 and out.strip() == "nu_alpha = 1, cofactor = (4, -1)"
    code, out, _ = run_cli(capsys, "valuation", "--D", "-19", "--alpha", "[3,1]", "--trace", "16",
                           "--q", "83", "--d", "3", "--emit", "json")
    assert [r["k0"] for r in json.loads(out)["conjugates"]] == [1, 0]


def test_factor_json(capsys):
    code, out, _ = run_cli(capsys, "factor", "--field", "7", "--poly", "[6,0,0,1]", "--emit", "json")
    obj = json.loads(out)
    assert code == 0 and obj["degrees"] == [1, 1, 1] and not obj["irreducible"]


def test_graph_json(capsys):
    code, out, _ = run_cli(capsys, "graph", "--map", FIX, "--subfield-deg", "1", "--emit", "json", "--start", "5")
    obj = json.loads(out)
    assert code == 0 and obj["k0"] == 2 and obj["nodes"] == 122 and "trajectory" in obj
    code, out, _ = run_cli(capsys, "graph", "--map", FIX, "--emit", "dot")
    assert out.startswith("digraph")


def test_verify_endo_exit_codes(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "verify-endo", "--curve", FIX, "--map", FIX)
    assert code == 0 and out.startswith("PASS")
    obj = json.load(open(FIX))
    obj["map"]["b"][0] += 1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(obj))
    code, out, _ = run_cli(capsys, "verify-endo", "--curve", FIX, "--map", str(bad))
    assert code == 1 and out.startswith("FAIL")


def test_iterate_writes_files(capsys, tmp_path):
    code, out, _ = run_cli(capsys, "iterate", "--map", "data/f83_l17.json", "--f0", "[81,3,0,1]",
                           "--target", "2", "--selection", "smallest-degree", "--out", str(tmp_path),
                           "--emit", "json", "--seed", "7")
    obj = json.loads(out)
    assert code == 0 and obj["degrees"] == [3, 6, 102] and obj["retries"] == 1
    assert sorted(p.name for p in tmp_path.iterdir()) == ["f0.json", "f1.json", "f2.json"]


def test_domain_error_exit_1(capsys):
    code, _, err = run_cli(capsys, "factor", "--field", "9", "--poly", "[1,1]")
    assert code == 1 and err.startswith("NotPrime")


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as e:
        main(["transform", "--bogus"])
    assert e.value.code == 2
    code, _, err = run_cli(capsys, "transform", "--map", "nope.json", "--poly", "[1,1]")
    assert code == 2 and "not found" in err
    code, _, _ = run_cli(capsys, "transform", "--map", "data/f83_l17.json", "--poly", "[1,")
    assert code == 2


def test_reproduce_paper_prefix(capsys):
    code, out, _ = run_cli(capsys, "reproduce-paper", "--target", "1", "--emit", "json")
    obj = json.loads(out)
    assert code == 0 and obj["passed"] and obj["degrees"] == [3, 6]


def test_reproduce_paper_corrupted_map(capsys, tmp_path):
    obj = json.load(open(str(DATA / "f83_l17.json")))
    obj["a"][5] += 1
    bad = tmp_path / "m.json"
    bad.write_text(json.dumps(obj))
    code, out, _ = run_cli(capsys, "reproduce-paper", "--map", str(bad), "--target", "1")
    assert code == 1 and "[FAIL] map is an endomorphism" in out

import json
from pathlib import Path

import pytest

from coxflat.cli import EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, main

CONF = Path(__file__).resolve().parent.parent / "configs"


def run(*argv):
    return main([str(a) for a in argv])


def test_coxeter(capsys):
    assert run("coxeter", CONF / "A3.txt") == EXIT_OK
    out = capsys.readouterr().out
    assert "|W|=24" in out and "growth 1 3 5 6 5 3 1" in out
    assert run("coxeter", CONF / "affine_A2.txt", "--max-length", 3) == EXIT_OK
    assert "growth 1 3 6 9" in capsys.readouterr().out


def test_parse_error_exit(capsys):
    assert run("coxeter", CONF / "bad_order.txt") == EXIT_USAGE
    assert "line 3" in capsys.readouterr().err
    assert run("coxeter", CONF / "missing.txt") == EXIT_USAGE


def test_flatness_member(tmp_path, capsys):
    out = tmp_path / "r.json"
    assert run("flatness", CONF / "A3.txt", CONF / "points" / "A3_ones.json", "--dim", "--json", out) == EXIT_OK
    rep = json.loads(out.read_text())
    assert rep["verdicts"]["member"] is True
    assert rep["dimensions"]["A_plus"] == 12
    assert rep["timings"] == {}
    assert "member: True" in capsys.readouterr().out


def test_flatness_expect_mismatch():
    assert run("flatness", CONF / "A3.txt", CONF / "points" / "A3_ones.json", "--expect", "nonmember") \
        == EXIT_MISMATCH


def test_flatness_nonmember(tmp_path):
    p = tmp_path / "u.json"
    p.write_text(json.dumps([{"edge": [1, 2], "m": 3, "t": ["1", "2", "1/2"]},
                             {"edge": [1, 3], "m": 2, "t": ["1", "1"]},
                             {"edge": [2, 3], "m": 3, "t": ["1", "1", "1"]}]))
    out = tmp_path / "r.json"
    assert run("flatness", CONF / "A3.txt", p, "--dim", "--expect", "nonmember", "--json", out) == EXIT_OK
    rep = json.loads(out.read_text())
    assert rep["verdicts"]["member"] is False and rep["dimensions"]["A_plus"] < 12


def test_flatness_bad_point(tmp_path):
    p = tmp_path / "u.json"
    p.write_text("[not json")
    assert run("flatness", CONF / "A3.txt", p) == EXIT_USAGE
    # a point for the wrong matrix
    assert run("flatness", CONF / "B3.txt", CONF / "points" / "A3_ones.json") == EXIT_USAGE


def test_flatness_infinite_dim(capsys):
    assert run("flatness", CONF / "affine_A2.txt", CONF / "points" / "A3_ones.json", "--dim") == EXIT_USAGE


def test_theta_and_twisted(tmp_path):
    assert run("theta", CONF / "H3.txt", "--expect", "member") == EXIT_OK
    assert run("theta", CONF / "B3.txt", "--sample", 2, "--expect", "member") == EXIT_OK
    out = tmp_path / "t.json"
    assert run("twisted", CONF / "A3.txt", "--sample", 1, "--json", out) == EXIT_OK
    rep = json.loads(out.read_text())
    assert rep["verdicts"]["cocycle"] and rep["verdicts"]["eta_in_z_orbit"]
    assert rep["dimensions"]["W_plus"] == 12
    assert run("twisted", CONF / "affine_A2.txt") == EXIT_USAGE


def test_hecke(tmp_path):
    assert run("hecke", CONF / "B3.txt", "--draws", 2, "--zero-f") == EXIT_OK
    out = tmp_path / "h.json"
    assert run("hecke", CONF / "A3.txt", "--draws", 2, "--seed", 3, "--json", out) == EXIT_OK
    rep = json.loads(out.read_text())
    assert [d["dimension"] for d in rep["verdicts"]["draws"]] == [24, 24]
    bad = tmp_path / "p.json"
    bad.write_text(json.dumps({"u": {"1": "1", "2": "2", "3": "1"}, "v": {"1": "1", "2": "1", "3": "1"}}))
    assert run("hecke", CONF / "A3.txt", "--params", bad) == EXIT_USAGE


def test_additive(tmp_path):
    out = tmp_path / "a.json"
    assert run("additive", "hilbert", "--matrix", CONF / "A3.txt", "--json", out) == EXIT_OK
    assert json.loads(out.read_text())["dimensions"]["computed"] == [1, 2, 3, 3, 2, 1]
    assert run("additive", "hilbert", "--matrix", CONF / "affine_A2.txt", "--N", 4) == EXIT_OK
    assert run("additive", "hilbert", "--matrix", CONF / "affine_A2.txt") == EXIT_USAGE
    assert run("additive", "hilbert", "--matrix", CONF / "A3.txt", "--base", "9") == EXIT_USAGE


def test_sweep(tmp_path):
    out = tmp_path / "s.json"
    assert run("sweep", CONF / "triangle_234.txt", "--component", "group", "--draws", 3, "--json", out) == EXIT_OK
    rep = json.loads(out.read_text())
    assert rep["verdicts"]["flat"] == 3 and rep["verdicts"]["witnesses"] == []
    assert run("sweep", CONF / "triangle_234.txt", "--component", "off", "--draws", 3, "--json", out) == EXIT_OK
    rep = json.loads(out.read_text())
    assert rep["verdicts"]["flat"] == 0 and rep["verdicts"]["total"] == 3
    assert run("sweep", CONF / "triangle_234.txt", "--component", "spin", "--draws", 0, "--json", out) == EXIT_OK
    rep = json.loads(out.read_text())
    assert rep["verdicts"]["total"] == 0 and rep["verdicts"]["draws"] == []
    assert run("sweep", CONF / "triangle_225.txt", "--component", "spin", "--draws", 1) == EXIT_USAGE
    assert run("sweep", CONF / "A4.txt", "--component", "group") == EXIT_USAGE


def test_reports_are_reproducible(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for out in (a, b):
        assert run("sweep", CONF / "triangle_233.txt", "--component", "spin", "--draws", 2, "--seed", 7,
                   "--json", out) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()


def test_timings_opt_in(tmp_path):
    out = tmp_path / "r.json"
    run("flatness", CONF / "A3.txt", CONF / "points" / "A3_ones.json", "--dim", "--timings", "--json", out)
    assert set(json.loads(out.read_text())["timings"]) == {"membership", "dimension"}


def test_usage_errors():
    with pytest.raises(SystemExit) as e:
        main(["nope"])
    assert e.value.code == 2


def test_flatness_h3_sample(tmp_path):
    out = tmp_path / "r.json"
    assert run("flatness", CONF / "H3.txt", CONF / "points" / "H3_group_sample.json", "--dim", "--expect", "member",
               "--json", out) == EXIT_OK
    assert json.loads(out.read_text())["dimensions"]["A_plus"] == 60

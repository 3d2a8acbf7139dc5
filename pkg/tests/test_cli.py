import json

import pytest

from bolcheck.cli import main
from bolcheck.report import CheckRecord, check, render_json, render_markdown, summary


def test_empty_report():
    doc = json.loads(render_json("cofactor", {}, []))
    assert doc == {"suite": "cofactor", "params": {}, "checks": [], "summary": {"pass": 0, "fail": 0, "derived": 0}}
    assert "pass 0 / fail 0 / derived 0" in render_markdown("cofactor", {}, [])


def test_one_failing_record():
    recs = [check("x", {"n": 1}, False, "1", "2", "PAPER")]
    assert json.loads(render_json("s", {}, recs))["summary"]["fail"] == 1


def test_pass_requires_equal_strings_for_tagged_expectations():
    with pytest.raises(ValueError):
        CheckRecord("x", {}, "pass", "1", "PAPER", "2")
    CheckRecord("x", {}, "pass", "1", "DERIVED", "uniform")


def test_records_sorted_and_elapsed_excluded():
    a = check("b", {"n": 2}, True, "1", "1", "PAPER")
    b = check("a", {"n": 1}, True, "1", "1", "PAPER")
    a.elapsed = 3.0
    doc = json.loads(render_json("s", {}, [a, b]))
    assert [c["name"] for c in doc["checks"]] == ["a", "b"]
    assert "elapsed" not in doc["checks"][0]
    assert summary([a, b]) == {"pass": 2, "fail": 0, "derived": 0}


def test_siegel_default_run(tmp_path):
    out = tmp_path / "sr"
    assert main(["--suite", "siegel-recovery", "--out", str(out)]) == 0
    md = (tmp_path / "sr.md").read_text()
    assert md.count("## siegel.holomorphic-set") == 6
    doc = json.loads((tmp_path / "sr.json").read_text())
    assert doc["summary"]["fail"] == 0
    assert (tmp_path / "sr.timing.json").exists()


def test_singular_index_exit_2(capsys):
    assert main(["--suite", "jacobi-maps", "--index", "1,1;1,1"]) == 2
    assert "det M = 0" in capsys.readouterr().err


def test_bad_config_exit_2(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"suite": "cofactor", "bogus": 1}))
    assert main(["--config", str(cfg)]) == 2
    assert main(["--suite", "cofactor", "--jobs", "0"]) == 2


def test_config_file_with_flag_override(tmp_path):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"suite": "delta-eigen", "n": [1, 2, 3]}))
    out = tmp_path / "d"
    assert main(["--config", str(cfg), "--n", "1", "--out", str(out)]) == 0
    doc = json.loads((tmp_path / "d.json").read_text())
    assert doc["params"]["n"] == [1]


def test_algebra_sanity_records(tmp_path):
    out = tmp_path / "a"
    assert main(["--suite", "algebra-sanity", "--out", str(out)]) == 0
    names = {c["name"] for c in json.loads((tmp_path / "a.json").read_text())["checks"]}
    assert {"sanity.jacobi-identity", "sanity.delta-central", "sanity.gelfand-C4-central"} <= names


def test_fail_propagates_and_derive_mode(tmp_path):
    base = ["--suite", "jacobi-maps", "--n", "1", "--j", "1", "--index", "2"]
    assert main(base + ["--out", str(tmp_path / "p")]) == 1
    assert main(base + ["--derive", "--out", str(tmp_path / "q")]) == 0
    doc = json.loads((tmp_path / "q.json").read_text())
    derived = {c["name"]: c["actual"] for c in doc["checks"] if c["status"] == "derived"}
    assert derived["jmaps.det-transfer-kappa"] == "2"
    assert derived["jmaps.c-star-vs-2detM"] == "8*2pi_i"


def test_reports_are_byte_stable(tmp_path):
    a, b = tmp_path / "a", tmp_path / "b"
    args = ["--suite", "cofactor", "--n", "2"]
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b), "--jobs", "2"]) == 0
    assert (tmp_path / "a.json").read_bytes() == (tmp_path / "b.json").read_bytes()
    assert (tmp_path / "a.md").read_bytes() == (tmp_path / "b.md").read_bytes()

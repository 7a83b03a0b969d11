import json

import pytest

from excoll.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, _ = run_cli(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def test_classify_single(capsys):
    code, out, _ = run_cli(capsys, "classify", "--n", "5", "--divisor", "0,-1,-1")
    assert code == 0
    assert "forbidden" in out and "not forbidden" not in out


def test_classify_single_json(capsys):
    code, payload = run_json(capsys, "classify", "--n", "5", "--divisor", "0,-1,-1")
    assert code == 0
    assert payload["forbidden"] is True
    assert payload["divisor"] == [0, -1, -1]


def test_classify_window(capsys):
    code, payload = run_json(
        capsys, "classify", "--n", "4", "--window=0..0,-1..1,-1..1"
    )
    assert code == 0
    assert payload["total"] == 9
    assert [0, -1, -1] in payload["forbidden"]
    assert [0, 0, 0] not in payload["forbidden"]


def test_classify_requires_one_input(capsys):
    code, _, err = run_cli(capsys, "classify", "--n", "4")
    assert code == 2
    assert "exactly one" in err


def test_oracle(capsys):
    code, payload = run_json(capsys, "oracle", "--n", "3", "--divisor", "0,-1,-1")
    assert code == 0
    assert payload["has_higher_cohomology"] is True
    assert payload["witnesses"]
    first = payload["witnesses"][0]
    assert set(first) == {"m", "negative_set", "nonzero_degree"}


def test_crosscheck_passes(capsys):
    code, payload = run_json(
        capsys, "crosscheck", "--n", "3", "--window=-2..2,-2..2,-2..2"
    )
    assert code == 0
    assert payload["disagreements"] == []
    assert payload["total"] == 125


def test_crosscheck_with_jobs(capsys):
    code, payload = run_json(
        capsys, "crosscheck", "--n", "3", "--window=-1..1,-1..1,-1..1",
        "--jobs", "2",
    )
    assert code == 0
    assert payload["disagreements"] == []


def test_fan_text(capsys):
    code, out, _ = run_cli(capsys, "fan", "--n", "3")
    assert code == 0
    assert "rays=6 max_cones=8 picard_rank=3" in out
    assert "smooth=True complete=True structure=ok" in out


def test_fan_json(capsys):
    code, payload = run_json(capsys, "fan", "--n", "4")
    assert code == 0
    assert payload["rays"] == 7
    assert payload["max_cones"] == 11
    assert payload["picard_rank"] == 3
    assert payload["structure"]["passed"] is True
    assert len(payload["fan"]["labels"]["y"]) == 3


def test_graph_json(capsys):
    code, payload = run_json(
        capsys, "graph", "--n", "5", "--window=0..0,-1..1,-1..1"
    )
    assert code == 0
    assert len(payload["vertices"]) == 9
    assert payload["window"] == {"a": [0, 0], "b": [-1, 1], "c": [-1, 1]}
    assert all(len(e) == 2 for e in payload["edges"])


def test_graph_dot(capsys):
    code, out, _ = run_cli(
        capsys, "graph", "--n", "5", "--window=0..0,-1..1,-1..1",
        "--format", "dot",
    )
    assert code == 0
    assert out.startswith("graph compat {")


def test_graph_requires_window(capsys):
    code, _, err = run_cli(capsys, "graph", "--n", "5")
    assert code == 2
    assert "--window" in err


def test_clique(capsys):
    code, payload = run_json(
        capsys, "clique", "--n", "5", "--window=0..0,-3..3,-3..3",
        "--require-zero",
    )
    assert code == 0
    assert payload["clique_number"] == 3
    assert [0, 0, 0] in payload["witness"]


def test_verify_single(capsys):
    code, payload = run_json(capsys, "verify", "l1", "--n", "6")
    assert code == 0
    assert payload["passed"] is True
    assert payload["reports"][0]["lemma_id"] == "l1"
    assert payload["reports"][0]["counterexamples"] == []


def test_verify_all_small_n(capsys):
    code, payload = run_json(capsys, "verify", "all", "--n", "4")
    assert code == 0
    ran = {r["lemma_id"] for r in payload["reports"]}
    skipped = {s["lemma_id"] for s in payload["skipped"]}
    assert "tw" in skipped
    assert ran >= {"l1", "trzy", "gl", "8", "jeden", "jedwE", "bound", "pom", "uwa"}
    assert all(r["passed"] for r in payload["reports"])


def test_verify_tw_large_n(capsys):
    code, payload = run_json(capsys, "verify", "tw", "--n", "25")
    assert code == 0
    assert payload["reports"][0]["passed"] is True


def test_bound_table(capsys):
    code, payload = run_json(capsys, "bound", "--n", "14")
    assert code == 0
    assert payload["low_cap_forces_high"] is True
    code, payload = run_json(capsys, "bound", "--n", "13")
    assert payload["low_cap_forces_high"] is False


def test_seedless_rejected(capsys):
    with pytest.raises(SystemExit) as err:
        main(["classify", "--n", "4", "--divisor", "0,0,0", "--seedless"])
    assert err.value.code == 2


def test_invalid_n_rejected(capsys):
    with pytest.raises(SystemExit):
        main(["fan", "--n", "1"])


def test_invalid_divisor_rejected(capsys):
    with pytest.raises(SystemExit):
        main(["classify", "--n", "4", "--divisor", "1,2"])


def test_invalid_window_rejected(capsys):
    with pytest.raises(SystemExit):
        main(["graph", "--n", "4", "--window=0..1,0..1"])

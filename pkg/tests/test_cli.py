import json

import pytest

from raagkit.cli import main

PATH3 = {"vertices": ["a", "b", "c"], "edges": [["a", "b"], ["b", "c"]]}


def run(capsys, *argv):
    status = main([str(a) for a in argv])
    return status, json.loads(capsys.readouterr().out)


@pytest.fixture
def path3_file(tmp_path):
    p = tmp_path / "path3.json"
    p.write_text(json.dumps(PATH3))
    return p


def test_decompose(capsys, path3_file):
    status, rep = run(capsys, "decompose", path3_file)
    assert status == 0 and rep["verdict"] == "pass"
    assert rep["result"]["description"] == "Z x F2"
    assert rep["timing_ms"] is None and set(rep) >= {"command", "seed", "verdict", "witness"}


def test_bounds(capsys):
    status, rep = run(capsys, "bounds", "--n", 5, "--i", 2, "--coeff", "constant", "--variant", "aut")
    assert status == 0 and rep["result"]["surjective"] is True


def test_unimodular_homology(capsys):
    status, rep = run(capsys, "unimodular", "--n", 2, "--q", 3, "homology")
    assert status == 0
    assert rep["result"]["homology"]["reduced"][0]["group"] == "0"


def test_malformed_input_reports_location(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"vertices": ["a",\n  ]')
    status, rep = run(capsys, "decompose", bad)
    assert status == 2 and rep["verdict"] == "usage_error"
    assert "bad.json:2:" in rep["witness"]
    status, rep = run(capsys, "decompose", tmp_path / "missing.json")
    assert status == 2


def test_sampling_needs_seed(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["wn-check", "--n", "2"])
    assert exc.value.code == 2


def test_reports_are_deterministic(capsys):
    argv = ["intersect", "--a", "F2", "--n", "3", "--count", "2", "--seed", "11"]
    _, first = run(capsys, *argv)
    _, second = run(capsys, *argv)
    assert first == second and first["verdict"] == "pass"


def test_verification_failure_exit_code(capsys, tmp_path):
    c = tmp_path / "two_edges.json"
    c.write_text(json.dumps({"maximal_faces": [[0, 1], [2, 3]]}))
    status, rep = run(capsys, "complex", "cm-check", c, "--n", 1)
    assert status == 1 and rep["witness"]


def test_failure_witness_replays_through_library(capsys, tmp_path):
    from raagkit.simplicial import SimplicialComplex, verify_complete_join

    y = {"maximal_faces": [[[1, 0], [2, 0]], [[1, 1]]]}
    x = {"maximal_faces": [[1, 2]]}
    proj = [[[1, 0], 1], [[1, 1], 1], [[2, 0], 2]]
    paths = []
    for name, data in (("y", y), ("x", x), ("p", proj)):
        p = tmp_path / f"{name}.json"
        p.write_text(json.dumps(data))
        paths.append(p)
    status, rep = run(capsys, "complex", "join-check", paths[0], "--base", paths[1], "--proj", paths[2])
    assert status == 1 and rep["witness"]["failed"] == "complete"
    lib = verify_complete_join(
        SimplicialComplex.from_json(y), SimplicialComplex.from_json(x), {(1, 0): 1, (1, 1): 1, (2, 0): 2}
    )
    assert lib.to_json() == rep["witness"]


def test_in_sample_and_wn(capsys):
    status, rep = run(capsys, "in-sample", "--n", 2, "--seed", 0, "--homology")
    assert status == 0 and rep["result"]["homology"]["reduced"][1]["group"] == "Z"
    status, rep = run(capsys, "wn-check", "--x", "Z", "--a", "F2", "--n", 3, "--seed", 4)
    assert status == 0 and rep["result"]["identity_violations"] == 0


def test_group_graph_commands(capsys, path3_file):
    assert run(capsys, "iso", path3_file, path3_file)[0] == 0
    status, rep = run(capsys, "cancel", path3_file, "Z")
    assert status == 0 and rep["result"]["description"] == "F2"
    status, rep = run(capsys, "cancel", "F2", "Z")
    assert status == 1
    status, rep = run(capsys, "autstruct", path3_file)
    assert rep["result"]["central_transvection_rank"] == 2
    status, rep = run(capsys, "autgens", path3_file)
    assert rep["result"]["count"] == 11


def test_maazen_and_bounds_table(capsys):
    status, rep = run(capsys, "maazen", "--n", 3, "--q", 1, "--seed", 2, "--instances", 5)
    assert status == 0 and rep["result"]["retractions_verified"] == 5
    status, rep = run(capsys, "bounds", "table", "--n-max", 10, "--i-max", 4)
    assert status == 0 and rep["result"]["cross_check"]["ok"]


def test_inconsistent_bounds_flags(capsys):
    status, rep = run(capsys, "bounds", "--n", 5, "--i", 1, "--coeff", "abelian_coeff_H1")
    assert status == 2


def test_timing_flag(capsys):
    _, rep = run(capsys, "--timing", "bounds", "--n", 3, "--i", 1)
    assert isinstance(rep["timing_ms"], float)

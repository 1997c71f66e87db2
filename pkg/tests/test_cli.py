"""Tests for the command-line front end: output shapes, exit codes, formats."""

import json

import pytest

from eigenschemes.cli import main

FERMAT_TENSOR = {
    "n": 2, "d": 3, "kind": "symmetric", "forms": ["x0^3 + x1^3 + x2^3"],
}
FERMAT_POINTS = {
    "points": [
        ["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"],
        ["1", "1", "0"], ["1", "0", "1"], ["0", "1", "1"], ["1", "1", "1"],
    ]
}


def run(capsys, argv, stdin_payload=None, tmp_path=None):
    """Invoke the dispatcher, optionally routing a payload in via a file."""
    if stdin_payload is not None:
        path = tmp_path / "payload.json"
        path.write_text(json.dumps(stdin_payload))
        argv = argv + ["--input", str(path)]
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_count_json_shape(capsys):
    code, out = run(capsys, ["count", "2", "3"])
    assert code == 0
    assert out == '{\n  "w": 7\n}\n'


def test_count_with_bound(capsys):
    code, out = run(capsys, ["count", "2", "3", "--bound"])
    assert code == 0
    assert json.loads(out) == {"w": 7, "dimension_bound": 14}


def test_count_text_format(capsys):
    code, out = run(capsys, ["count", "3", "3", "--format", "text"])
    assert code == 0
    assert "15" in out


def test_output_is_deterministic(capsys):
    _, first = run(capsys, ["fermat", "2", "4"])
    _, second = run(capsys, ["fermat", "2", "4"])
    assert first == second


def test_generators(capsys, tmp_path):
    code, out = run(
        capsys,
        ["generators"],
        stdin_payload={"n": 1, "d": 3, "kind": "partially_symmetric",
                       "forms": ["x1^2", "x0^2"]},
        tmp_path=tmp_path,
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["forms"] == ["x0^3 - x1^3"]
    assert doc["pairs"] == [[0, 1]]


def test_generators_pipe_into_check_equations(capsys, tmp_path):
    # symmetric input: the generated tuple always passes both checks
    code, out = run(
        capsys, ["generators"], stdin_payload=FERMAT_TENSOR, tmp_path=tmp_path
    )
    assert code == 0
    code2, out2 = run(
        capsys, ["check-equations"], stdin_payload=json.loads(out), tmp_path=tmp_path
    )
    assert code2 == 0
    verdict = json.loads(out2)
    assert verdict["koszul"] and verdict["derham"]
    assert verdict["recovered"]["forms"] == ["x0^3 + x1^3 + x2^3"]


def test_check_equations_negative_exit(capsys, tmp_path):
    code, out = run(
        capsys,
        ["check-equations", "--no-search"],
        stdin_payload={"n": 2, "d": 2, "forms": ["x0^2", "x1^2", "x2^2"]},
        tmp_path=tmp_path,
    )
    assert code == 1
    assert json.loads(out) == {"koszul": False, "derham": False}


def test_fit_points_found(capsys, tmp_path):
    code, out = run(
        capsys,
        ["fit-points", "--degree", "3", "--symmetric"],
        stdin_payload=FERMAT_POINTS,
        tmp_path=tmp_path,
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["found"] and doc["kernel_dim"] == 1
    assert doc["witness"]["forms"] == ["x0^3 + x1^3 + x2^3"]


def test_fit_points_not_found_exit(capsys, tmp_path):
    payload = {
        "points": [
            ["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"],
            ["1", "1", "1"], ["1", "2", "3"],
        ]
    }
    code, out = run(
        capsys,
        ["fit-points", "--degree", "3", "--symmetric"],
        stdin_payload=payload,
        tmp_path=tmp_path,
    )
    assert code == 1
    assert not json.loads(out)["found"]


def test_hilbert_random_requires_seed(capsys):
    code, out = run(capsys, ["hilbert", "--random", "--n", "2", "--d", "3"])
    assert code == 2
    assert "seed" in json.loads(out)["error"]


def test_hilbert_random_with_seed(capsys):
    code, out = run(
        capsys, ["hilbert", "--random", "--n", "2", "--d", "3", "--seed", "7"]
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["all_agree"] is True
    assert doc["degree"] == 7
    assert [row["e"] for row in doc["rows"]] == [0, 1, 2, 3, 4]


def test_hilbert_window_flag(capsys, tmp_path):
    code, out = run(
        capsys,
        ["hilbert", "--window", "2"],
        stdin_payload=FERMAT_TENSOR,
        tmp_path=tmp_path,
    )
    assert code == 0
    assert [row["e"] for row in json.loads(out)["rows"]] == [0, 1, 2]


def test_betti_text(capsys):
    code, out = run(capsys, ["betti", "2", "3", "--format", "text"])
    assert code == 0
    assert out.splitlines() == ["F_1 = R(-3)^3", "F_2 = R(-4) + R(-5)"]


def test_solve_json(capsys, tmp_path):
    code, out = run(
        capsys, ["solve"], stdin_payload=FERMAT_TENSOR, tmp_path=tmp_path
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["count"] == 7 and doc["expected"] == 7


def test_solve_degenerate_exit(capsys, tmp_path):
    # multiplier tensor: every point of the plane is an eigenpoint
    payload = {
        "n": 2, "d": 3, "kind": "partially_symmetric",
        "forms": ["x0^2 + x0*x1", "x0*x1 + x1^2", "x0*x2 + x1*x2"],
    }
    code, out = run(capsys, ["solve"], stdin_payload=payload, tmp_path=tmp_path)
    assert code == 1
    assert "error" in json.loads(out)


def test_fermat_counts(capsys):
    code, out = run(capsys, ["fermat", "3", "3"])
    assert code == 0
    doc = json.loads(out)
    assert doc["count"] == 15
    assert doc["expected"] == 15


def test_geometry_clean_and_violating(capsys, tmp_path):
    code, _ = run(
        capsys,
        ["geometry", "--degree", "3"],
        stdin_payload=FERMAT_POINTS,
        tmp_path=tmp_path,
    )
    assert code == 0
    bad = {
        "points": [
            ["1", "0", "0"], ["0", "1", "0"], ["1", "1", "0"],
            ["1", "2", "0"], ["0", "0", "1"],
        ]
    }
    code2, out2 = run(
        capsys, ["geometry", "--degree", "3"], stdin_payload=bad, tmp_path=tmp_path
    )
    assert code2 == 1
    assert len(json.loads(out2)["collinear_violations"]) == 1


def test_laguerre_ok_and_indeterminate(capsys, tmp_path):
    code, out = run(
        capsys,
        ["laguerre"],
        stdin_payload={"tensor": FERMAT_TENSOR, "point": ["1", "2", "0"]},
        tmp_path=tmp_path,
    )
    assert code == 0
    assert json.loads(out)["coords"] == ["6", "0", "0"]
    code2, out2 = run(
        capsys,
        ["laguerre"],
        stdin_payload={"tensor": FERMAT_TENSOR, "point": ["1", "1", "1"]},
        tmp_path=tmp_path,
    )
    assert code2 == 1
    assert "error" in json.loads(out2)


def test_malformed_json_exit(capsys, tmp_path):
    path = tmp_path / "garbage.json"
    path.write_text("not json at all")
    code, out = run(capsys, ["generators", "--input", str(path)])
    assert code == 2
    assert "error" in json.loads(out)


def test_schema_violation_exit(capsys, tmp_path):
    code, out = run(
        capsys,
        ["generators"],
        stdin_payload={"n": 1, "d": 3, "kind": "nonsense", "forms": []},
        tmp_path=tmp_path,
    )
    assert code == 2
    assert "error" in json.loads(out)


def test_solve_text_format(capsys, tmp_path):
    code, out = run(
        capsys,
        ["solve", "--format", "text"],
        stdin_payload=FERMAT_TENSOR,
        tmp_path=tmp_path,
    )
    assert code == 0
    assert out.startswith("7 points (expected 7)")


def test_json_keys_sorted(capsys):
    _, out = run(capsys, ["count", "2", "3", "--bound"])
    doc = json.loads(out)
    assert list(doc) == sorted(doc)

# Copyright 2026 The tropfw Developers
#
#    Licensed under the Apache License, Version 2.0 (the "License");
#    you may not use this file except in compliance with the License.
#    You may obtain a copy of the License at
#
#        https://www.apache.org/licenses/LICENSE-2.0
#
#    Unless required by applicable law or agreed to in writing, software
#    distributed under the License is distributed on an "AS IS" BASIS,
#    WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
#    See the License for the specific language governing permissions and
#    limitations under the License.

"""Module contains unit tests for the command line interface."""

from __future__ import annotations  # required for Python < 3.10

import json
from pathlib import Path

import pytest
from tropfw import cli
from tropfw.cli import main


def _run(capsys: pytest.CaptureFixture, *args: str) -> tuple[int, str]:
    code = main(list(args))
    return code, capsys.readouterr().out


def _report(capsys: pytest.CaptureFixture, *args: str) -> dict:
    code, out = _run(capsys, *args)
    assert code == 0
    return json.loads(out)


def _document(tmp_path: Path, raw: object, name: str = "sample.json") -> str:
    path = tmp_path / name
    path.write_text(raw if isinstance(raw, str) else json.dumps(raw), encoding="utf-8")
    return str(path)


# --- dist -----------------------------------------------------------------------------
@pytest.mark.parametrize("i, j, expectations", [(0, 1, "3"), (1, 2, "5"), (2, 2, "0")])
def test_dist(capsys: pytest.CaptureFixture, i: int, j: int, expectations: str) -> None:
    """It prints the exact distance."""
    assert _run(capsys, "dist", "triangle", str(i), str(j)) == (0, f"{expectations}\n")


def test_dist_index_out_of_range(capsys: pytest.CaptureFixture) -> None:
    """It returns the usage exit code."""
    assert main(["dist", "triangle", "0", "3"]) == 1


# --- fw -------------------------------------------------------------------------------
def test_fw_triangle(capsys: pytest.CaptureFixture) -> None:
    """It reports d, the vertices and the flags."""
    report = _report(capsys, "fw", "triangle")

    assert report["command"] == "fw"
    assert report["d"] == "7"
    assert report["vertices"] == [["0", "1", "1"], ["0", "2", "1"], ["0", "2", "2"]]
    assert report["affine_dim"] == 2
    assert report["facets"] == 3
    assert report["flags"] == {"unique": False, "essential": True}
    assert len(report["input_sha256"]) == 64
    assert "timing_seconds" not in report


def test_fw_checks(capsys: pytest.CaptureFixture) -> None:
    """It runs the oracle, the hull check and the witness search."""
    report = _report(
        capsys, "fw", "segment", "--oracle", "--hull-check", "--witness", "--direct"
    )

    assert report["d"] == report["oracle_d"] == "9"
    assert report["vertices"] == [["0", "2", "3", "5"], ["0", "3", "3", "5"]]
    assert report["flags"]["oracle_agrees"]
    assert report["flags"]["hull_check"]
    assert report["flags"]["witness"] == "found"
    assert report["witness"] == {"S": [[0, 0], [1, 1]], "T": [[0, 1], [1, 0]]}


def test_fw_oracle_over_budget(
    capsys: pytest.CaptureFixture, monkeypatch: pytest.MonkeyPatch
) -> None:
    """It keeps the LP value and logs a warning when the oracle is too large."""
    warnings: list[str] = []
    monkeypatch.setattr(cli.logger, "warning", lambda msg, *a: warnings.append(msg % a))
    monkeypatch.setenv("TROPFW_ASSIGNMENT_BUDGET", "1")
    report = _report(capsys, "fw", "segment", "--oracle")

    assert report["d"] == "9"
    assert "oracle_d" not in report
    assert report["flags"]["oracle_agrees"] == "skipped"
    assert warnings[0].startswith("oracle skipped")


def test_fw_is_reproducible(capsys: pytest.CaptureFixture) -> None:
    """It prints byte-identical reports for the same input."""
    first = _run(capsys, "fw", "five_points")
    second = _run(capsys, "fw", "five_points")

    assert first == second
    assert json.loads(first[1])["vertices"] == [["0", "0", "0"]]


def test_fw_timing(capsys: pytest.CaptureFixture) -> None:
    """It adds the elapsed time on request."""
    assert "timing_seconds" in _report(capsys, "fw", "unique_n3", "--timing")


def test_fw_from_file(capsys: pytest.CaptureFixture, tmp_path: Path) -> None:
    """It reads rational strings from a JSON file."""
    source = _document(tmp_path, {"n": 2, "points": [["0", "1/2"], ["0", "-1/3"]]})
    report = _report(capsys, "fw", source)

    assert report["d"] == "5/6"
    assert report["affine_dim"] == 1


@pytest.mark.parametrize(
    "raw",
    [
        {"n": 3, "points": [["0", "1/0", "0"]]},
        {"n": 3, "points": [["0", "0.333", "0"]]},
        {"n": 3, "points": [[0, 0.5, 0]]},
        {"n": 3, "points": [["0", "1"]]},
        {"n": 1, "points": [["0"]]},
        {"n": 3, "points": []},
        {"points": [["0", "0", "0"]]},
        {"n": 2, "points": [["0", "1"]], "labels": ["a", "b"]},
        "{not json",
    ],
)
def test_fw_invalid_document(
    capsys: pytest.CaptureFixture, tmp_path: Path, raw: object
) -> None:
    """It returns the usage exit code."""
    assert main(["fw", _document(tmp_path, raw)]) == 1


def test_fw_unknown_source(capsys: pytest.CaptureFixture) -> None:
    """It returns the usage exit code."""
    assert main(["fw", "no_such_instance"]) == 1


# --- ellipse --------------------------------------------------------------------------
def test_ellipse_below_d(capsys: pytest.CaptureFixture) -> None:
    """It returns the precondition exit code."""
    assert main(["ellipse", "triangle", "--a", "6"]) == 2


def test_ellipse_invalid_level(capsys: pytest.CaptureFixture) -> None:
    """It returns the usage exit code."""
    assert main(["ellipse", "triangle", "--a", "7.5"]) == 1


def test_ellipse_degenerate(capsys: pytest.CaptureFixture) -> None:
    """It returns the Fermat-Weber polytope at a = d."""
    report = _report(capsys, "ellipse", "triangle", "--a", "7")

    assert report["flags"] == {"degenerate": True}
    assert report["vertices"] == [["0", "1", "1"], ["0", "2", "1"], ["0", "2", "2"]]


def test_ellipse_svg(capsys: pytest.CaptureFixture, tmp_path: Path) -> None:
    """It writes the hexagon as SVG."""
    path = tmp_path / "ellipse.svg"
    report = _report(capsys, "ellipse", "triangle", "--a", "8", "--svg", str(path))

    assert report["a"] == "8"
    assert len(report["vertices"]) == 6
    assert path.read_text(encoding="utf-8").lstrip().startswith("<?xml")


def test_ellipse_svg_needs_three_coordinates(
    capsys: pytest.CaptureFixture, tmp_path: Path
) -> None:
    """It skips the drawing for n != 3."""
    path = tmp_path / "ellipse.svg"

    assert main(["ellipse", "segment", "--a", "10", "--svg", str(path)]) == 0
    assert not path.exists()


# --- treespace ------------------------------------------------------------------------
def test_treespace_check(capsys: pytest.CaptureFixture, tmp_path: Path) -> None:
    """It reports the first violating triple."""
    source = _document(tmp_path, {"n": 3, "points": [["1", "2", "3"], ["1", "2", "2"]]})
    report = _report(capsys, "treespace", "check", source)

    assert report["results"] == [
        {"index": 0, "ultrametric": False, "violation": [2, 0, 1]},
        {"index": 1, "ultrametric": True, "violation": None},
    ]


def test_treespace_check_bad_length(
    capsys: pytest.CaptureFixture, tmp_path: Path
) -> None:
    """It returns the precondition exit code."""
    source = _document(tmp_path, {"n": 4, "points": [["1", "1", "1", "1"]]})

    assert main(["treespace", "check", source]) == 2


def test_treespace_intersect(capsys: pytest.CaptureFixture) -> None:
    """It returns the all-one tree as unique Fermat-Weber tree."""
    report = _report(capsys, "treespace", "intersect", "four_trees")

    assert report["affine_dim"] == 2
    assert report["flags"] == {"unique": True, "all_ones": True}
    assert report["max_dim"] == 0
    assert report["treespace_vertices"] == [["0"] * 6]
    assert report["ultrametric_representatives"] == [["1"] * 6]


def test_treespace_intersect_leaf_cap(capsys: pytest.CaptureFixture) -> None:
    """It returns the precondition exit code above the leaf cap."""
    assert main(["treespace", "intersect", "four_trees", "--max-leaves", "3"]) == 2


def test_treespace_pool_round_trip(
    capsys: pytest.CaptureFixture, tmp_path: Path
) -> None:
    """It prints a document of ultrametrics."""
    code, out = _run(capsys, "treespace", "pool", "--pool", "3", "--seed", "1")
    document = json.loads(out)

    assert code == 0
    assert document["n"] == 6
    assert document["labels"] == ["tree0", "tree1", "tree2"]

    report = _report(capsys, "treespace", "check", _document(tmp_path, out))
    assert all(r["ultrametric"] for r in report["results"])


def test_treespace_experiment(capsys: pytest.CaptureFixture) -> None:
    """It prints the dimension counts."""
    args = ["treespace", "experiment", "--pool", "6", "--sizes", "3", "--trials", "2"]
    first = _run(capsys, *args, "--seed", "1")
    report = json.loads(first[1])

    assert list(report["table"]) == ["3"]
    assert sum(report["table"]["3"].values()) == 2
    assert _run(capsys, *args, "--seed", "1") == first


# --- degeneracy -----------------------------------------------------------------------
def test_degeneracy_witness(capsys: pytest.CaptureFixture) -> None:
    """It prints the witness and both sums."""
    report = _report(capsys, "degeneracy", "witness", "segment")

    assert report["verdict"] == "found"
    assert report["S"] == [[0, 0], [1, 1]]
    assert report["T"] == [[0, 1], [1, 0]]
    assert report["sums"] == ["0", "0"]


def test_degeneracy_witness_budget(capsys: pytest.CaptureFixture) -> None:
    """It reports 'unknown' when the node budget stops the search."""
    report = _report(capsys, "degeneracy", "witness", "segment", "--node-budget", "1")

    assert report["verdict"] == "unknown"
    assert "S" not in report


def test_degeneracy_tropdet(capsys: pytest.CaptureFixture, tmp_path: Path) -> None:
    """It finds no singular minor in a generic matrix."""
    source = _document(
        tmp_path, {"n": 3, "points": [["0", "1", "10"], ["0", "100", "1000"]]}
    )
    report = _report(capsys, "degeneracy", "tropdet", source)

    assert report["minors"] == 9
    assert report["verdict"] == "no singular minor"
    assert report["flags"] == {"singular_minor": False, "equal_terms": False}


def test_degeneracy_tropdet_five_points(capsys: pytest.CaptureFixture) -> None:
    """It lists the singular minors of the five points."""
    report = _report(capsys, "degeneracy", "tropdet", "five_points")

    assert report["minors"] == 15 + 30 + 10
    assert report["verdict"] == "singular minor found"
    assert {"rows": [0, 2], "columns": [0, 2]} in report["singular_minors"]


def test_degeneracy_montecarlo(capsys: pytest.CaptureFixture) -> None:
    """It prints reproducible category counts."""
    args = ["degeneracy", "montecarlo", "--m", "2", "--n", "3", "--trials", "3"]
    first = _run(capsys, *args, "--seed", "5")
    report = json.loads(first[1])

    assert report["counts"]["not essential"] == 3
    assert sum(report["counts"].values()) == 3
    assert report["hits"] == []
    assert _run(capsys, *args, "--seed", "5") == first


def test_degeneracy_montecarlo_no_trials(capsys: pytest.CaptureFixture) -> None:
    """It returns the precondition exit code."""
    assert main(["degeneracy", "montecarlo", "--trials", "0"]) == 2


# --- usage ----------------------------------------------------------------------------
@pytest.mark.parametrize(
    "args",
    [
        [],
        ["fw"],
        ["frobnicate"],
        ["dist", "triangle", "0"],
        ["--log-level", "LOUD", "fw", "triangle"],
        ["treespace"],
    ],
)
def test_usage_error(capsys: pytest.CaptureFixture, args: list) -> None:
    """It exits with the usage exit code."""
    with pytest.raises(SystemExit) as err:
        main(args)

    assert err.value.code == 1

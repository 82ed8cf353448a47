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

"""Module contains unit tests for the degeneracy checks."""

from __future__ import annotations  # required for Python < 3.10

from fractions import Fraction

import numpy as np
import pandas as pd
import pytest
import tropfw as tfw
from tropfw import degeneracy

from tests import conftest

# generic 2 x 3 matrix: no similar pair exists
no_pair = [[0, 1, 10], [0, 100, 1000]]


# --- IndexSubsetPair ------------------------------------------------------------------
def test_index_subset_pair_properties() -> None:
    """It recognizes similar and disjoint cell sets."""
    pair = tfw.IndexSubsetPair({(0, 0), (1, 1)}, {(0, 1), (1, 0)})

    assert pair.similar
    assert pair.disjoint
    assert pair.sums([[1, 2], [3, 4]]) == (Fraction(5), Fraction(5))
    assert pair.is_witness([[1, 2], [3, 4]])
    assert not pair.is_witness([[1, 2], [3, 5]])


def test_index_subset_pair_not_similar() -> None:
    """It rejects sets with different column counts."""
    pair = tfw.IndexSubsetPair({(0, 0), (1, 0)}, {(0, 1), (1, 1)})

    assert not pair.similar
    assert not pair.is_witness([[0, 0], [0, 0]])


def test_index_subset_pair_overlapping() -> None:
    """It rejects sets sharing a cell."""
    pair = tfw.IndexSubsetPair({(0, 0)}, {(0, 0)})

    assert not pair.disjoint
    assert not pair.is_witness([[0]])


def test_index_subset_pair_swapped() -> None:
    """It keeps the witness property when S and T are exchanged."""
    search = tfw.find_similar_pair(conftest.segment)
    matrix = tfw.SampleMatrix.from_rows(conftest.segment).matrix

    assert search.pair.swapped().is_witness(matrix)
    assert search.pair.swapped().swapped() == search.pair


# --- find_similar_pair ----------------------------------------------------------------
def test_find_similar_pair_segment() -> None:
    """It returns the 2 x 2 witness of the segment sample."""
    search = tfw.find_similar_pair(conftest.segment)

    assert search.verdict == "found"
    assert search.pair.S == frozenset({(0, 0), (1, 1)})
    assert search.pair.T == frozenset({(0, 1), (1, 0)})
    assert search.pair.is_witness(tfw.SampleMatrix.from_rows(conftest.segment).matrix)


def test_find_similar_pair_zero_matrix() -> None:
    """It finds a witness in the all-zero matrix."""
    search = tfw.find_similar_pair([[0, 0], [0, 0]])

    assert search.verdict == "found"
    assert search.pair.is_witness([[0, 0], [0, 0]])


def test_find_similar_pair_unique_n3() -> None:
    """It finds a pair of size 3 for the 3 x 3 unique sample."""
    search = tfw.find_similar_pair(conftest.unique_n3)

    assert search.verdict == "found"
    assert len(search.pair.S) == 3
    assert search.pair.is_witness(tfw.SampleMatrix.from_rows(conftest.unique_n3).matrix)


def test_find_similar_pair_none() -> None:
    """It returns 'none' after an exhaustive search."""
    search = tfw.find_similar_pair(no_pair)

    assert search.verdict == "none"
    assert search.pair is None
    assert search.examined > 0


def test_find_similar_pair_size_cap() -> None:
    """It returns 'unknown' when the size cap stops the search."""
    assert tfw.find_similar_pair(no_pair, max_size=2).verdict == "unknown"


def test_find_similar_pair_node_budget() -> None:
    """It returns 'unknown' when the node budget stops the search."""
    search = tfw.find_similar_pair(conftest.segment, node_budget=1)

    assert search.verdict == "unknown"
    assert search.examined == 1


def test_find_similar_pair_budget_from_environment(
    monkeypatch: pytest.MonkeyPatch,
) -> None:
    """It reads the size cap from the environment."""
    monkeypatch.setenv("TROPFW_WITNESS_MAX_SIZE", "2")

    assert tfw.find_similar_pair(no_pair).verdict == "unknown"


def test_find_similar_pair_random_witnesses_verify() -> None:
    """It only returns pairs that pass the witness check."""
    rng = np.random.default_rng(7)
    for _ in range(20):
        sample = tfw.SampleMatrix.from_rows(conftest.random_sample(rng, 3, 3, -2, 2))
        search = tfw.find_similar_pair(sample)
        if search.verdict == "found":
            assert search.pair.is_witness(sample.matrix)
        else:
            assert search.verdict == "none"


# --- check_theorem_lowdim -------------------------------------------------------------
@pytest.mark.parametrize("n", [4, 5, 6, 7, 8])
def test_check_theorem_lowdim_circulant(n: int) -> None:
    """It finds a witness for every circulant sample."""
    check = tfw.check_theorem_lowdim(tfw.circulant_instance(n))

    assert check.essential
    assert check.unique
    assert check.verdict == "found"
    assert check.consistent


@pytest.mark.parametrize("sample", [conftest.unique_n3, conftest.five_points])
def test_check_theorem_lowdim_unique(sample: list) -> None:
    """It finds a witness for essential samples with a unique Fermat-Weber point."""
    check = tfw.check_theorem_lowdim(sample)

    assert (check.essential, check.unique, check.verdict) == (True, True, "found")
    assert check.consistent


def test_check_theorem_lowdim_triangle() -> None:
    """It reports the non-unique triangle sample as consistent."""
    check = tfw.check_theorem_lowdim(conftest.triangle)

    assert check.essential
    assert not check.unique
    assert check.consistent


def test_check_theorem_lowdim_inconsistent(
    monkeypatch: pytest.MonkeyPatch, caplog: pytest.LogCaptureFixture
) -> None:
    """It logs an error and flags the check when no pair exists."""
    monkeypatch.setattr(
        degeneracy, "find_similar_pair", lambda *args: tfw.WitnessSearch("none")
    )
    check = tfw.check_theorem_lowdim(conftest.unique_n3)

    assert not check.consistent
    assert "has no similar pair" in caplog.text


def test_check_theorem_lowdim_strict(monkeypatch: pytest.MonkeyPatch) -> None:
    """It raises a ConsistencyError in strict mode."""
    monkeypatch.setattr(
        degeneracy, "find_similar_pair", lambda *args: tfw.WitnessSearch("none")
    )
    with pytest.raises(tfw.ConsistencyError):
        tfw.check_theorem_lowdim(conftest.unique_n3, strict=True)


# --- tropical determinant -------------------------------------------------------------
@pytest.mark.parametrize(
    "square, expectations",
    [
        ([[7]], (Fraction(7), 1, False)),
        ([[0, 1], [1, 0]], (Fraction(0), 1, False)),
        ([[1, 2], [3, 4]], (Fraction(5), 2, True)),
        ([["1/2", 0], [0, "1/2"]], (Fraction(0), 1, False)),
        ([[0, 1, 2], [2, 0, 1], [1, 2, 0]], (Fraction(0), 1, True)),
    ],
)
def test_tropical_determinant(square: list, expectations: tuple) -> None:
    """It returns the minimum, its multiplicity and whether terms repeat."""
    report = tfw.tropical_determinant(square)

    assert (report.value, report.attaining_permutations, report.equal_terms) == (
        expectations
    )
    assert report.singular == (expectations[1] >= 2)


@pytest.mark.parametrize("square", [[], [[1, 2]], [[1, 2], [3]]])
def test_tropical_determinant_not_square(square: list) -> None:
    """It raises a ValueError."""
    with pytest.raises(ValueError) as err:
        tfw.tropical_determinant(square)

    assert str(err.value) == "The tropical determinant needs a square matrix."


def test_tropical_determinant_budget() -> None:
    """It raises a BudgetExceededError."""
    with pytest.raises(tfw.BudgetExceededError):
        tfw.tropical_determinant([[0, 0, 0]] * 3, max_side=2)


def test_tropical_determinant_permutation_invariance() -> None:
    """It keeps the value and the tie count when rows and columns are permuted."""
    rng = np.random.default_rng(9)
    for _ in range(20):
        square = conftest.random_sample(rng, 3, 3, -3, 3)
        rows = [int(k) for k in rng.permutation(3)]
        columns = [int(k) for k in rng.permutation(3)]
        permuted = [[square[i][j] for j in columns] for i in rows]

        before = tfw.tropical_determinant(square)
        after = tfw.tropical_determinant(permuted)

        assert (after.value, after.attaining_permutations) == (
            before.value,
            before.attaining_permutations,
        )


def test_square_minors() -> None:
    """It yields every square minor, smallest first."""
    minors = list(tfw.square_minors([[1, 2, 3], [4, 5, 6]]))

    assert len(minors) == 6 + 3
    assert minors[0] == ((0,), (0,), [(Fraction(1),)])
    assert minors[-1][:2] == ((0, 1), (1, 2))


def test_minor_report_zero_matrix() -> None:
    """It flags every minor of side 2 or more as singular."""
    report = tfw.minor_report([[0, 0, 0]] * 3)

    assert len(report) == 9 + 9 + 1
    assert list(report.columns) == [
        "rows",
        "columns",
        "value",
        "attaining_permutations",
        "singular",
        "equal_terms",
    ]
    sides = report["rows"].map(len)
    assert report.loc[sides >= 2, "singular"].all()
    assert not report.loc[sides == 1, "singular"].any()


def test_minor_report_random_generic() -> None:
    """It finds no tie among the minors of a random rational matrix."""
    sample = tfw.random_sample(3, 4, np.random.default_rng(3))
    report = tfw.minor_report(sample.matrix)

    assert not report["equal_terms"].any()


# --- random experiments ---------------------------------------------------------------
def test_random_sample() -> None:
    """It returns a reproducible sample with entries k / 997."""
    first = tfw.random_sample(4, 3, np.random.default_rng(1))
    second = tfw.random_sample(4, 3, np.random.default_rng(1))

    assert first == second
    assert (first.m, first.n) == (4, 3)
    assert all(997 % x.denominator == 0 for row in first.matrix for x in row)


def test_classify_sample() -> None:
    """It returns the category of shipped samples."""
    single = tfw.SampleMatrix.from_rows([[0, 1, 2]])

    assert tfw.classify_sample(single) == "single point"
    assert (
        tfw.classify_sample(tfw.SampleMatrix.from_rows(conftest.triangle))
        == "essential & non-unique"
    )
    assert (
        tfw.classify_sample(tfw.SampleMatrix.from_rows(conftest.unique_n3))
        == "essential & unique"
    )
    assert (
        tfw.classify_sample(
            tfw.SampleMatrix.from_rows([[0, 0, 0], [0, 1, 1], [0, 2, 2]])
        )
        == "not essential"
    )


def test_random_sample_experiment_single_point() -> None:
    """It classifies every one-point sample as 'single point'."""
    summary = tfw.random_sample_experiment(1, 3, trials=4, rng_seed=0)

    assert list(summary.counts.index) == list(tfw.CATEGORIES)
    assert summary.counts["single point"] == 4
    assert summary.counts.sum() == 4
    assert summary.hits == ()


def test_random_sample_experiment_two_points() -> None:
    """It classifies every two-point sample as 'not essential'."""
    summary = tfw.random_sample_experiment(2, 3, trials=5, rng_seed=1)

    assert summary.counts["not essential"] == 5


def test_random_sample_experiment_deterministic() -> None:
    """It returns the same counts for the same seed."""
    first = tfw.random_sample_experiment(3, 3, trials=6, rng_seed=42)
    second = tfw.random_sample_experiment(3, 3, trials=6, rng_seed=42)

    pd.testing.assert_series_equal(first.counts, second.counts)


def test_random_sample_experiment_no_trials() -> None:
    """It raises a ValueError."""
    with pytest.raises(ValueError) as err:
        tfw.random_sample_experiment(3, 3, trials=0, rng_seed=0)

    assert str(err.value) == "'trials' must be at least 1, got 0."


@pytest.mark.slow
@pytest.mark.parametrize("m, n", [(3, 3), (4, 3), (3, 4)])
def test_random_sample_experiment_generic(m: int, n: int) -> None:
    """It never draws an essential sample with a unique Fermat-Weber point."""
    summary = tfw.random_sample_experiment(m, n, trials=200, rng_seed=2026)

    assert summary.counts.sum() == 200
    assert summary.counts["essential & unique"] == 0
    assert all(check.consistent for check in summary.hits)

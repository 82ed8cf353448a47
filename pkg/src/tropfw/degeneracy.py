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

"""Module contains the degeneracy checks for unique Fermat-Weber points.

A sample whose points are essential and have a unique Fermat-Weber point always has
two disjoint *similar* subsets ``S`` and ``T`` of matrix cells (same number of cells
in every row and in every column) with equal entry sums. Generic samples have no
such pair, which is checked here empirically.

All row and column indices are 0-based.
"""

from __future__ import annotations  # required for Python < 3.10

import itertools
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Optional

import daiquiri
import numpy as np
import pandas as pd

from tropfw.fermatweber import SampleMatrix, as_sample, fw_polytope, is_essential
from tropfw.ratgeom import RationalLike, Vector, to_vector
from tropfw.tropcore import PointLike
from tropfw.utils import (
    VALUE_ERROR_NOT_SQUARE,
    BudgetExceededError,
    ConsistencyError,
    get_budget,
)

logger = daiquiri.getLogger(__name__)

Cell = tuple[int, int]
Verdict = Literal["found", "none", "unknown"]

CATEGORIES = (
    "single point",
    "not essential",
    "essential & non-unique",
    "essential & unique",
)


@dataclass(frozen=True)
class IndexSubsetPair:
    """Two sets ``S`` and ``T`` of ``(row, column)`` cells."""

    S: frozenset[Cell]
    T: frozenset[Cell]

    def __post_init__(self) -> None:  # noqa: D105
        object.__setattr__(self, "S", frozenset(tuple(c) for c in self.S))
        object.__setattr__(self, "T", frozenset(tuple(c) for c in self.T))

    @property
    def similar(self) -> bool:
        """True if every row and every column holds equally many cells of S and T."""
        for axis in (0, 1):
            if sorted(c[axis] for c in self.S) != sorted(c[axis] for c in self.T):
                return False
        return True

    @property
    def disjoint(self) -> bool:
        """True if S and T share no cell."""
        return not self.S & self.T

    def sums(
        self, matrix: Sequence[Sequence[RationalLike]]
    ) -> tuple[Fraction, Fraction]:
        """Return ``(x_S, x_T)``, the entry sums over both sets."""
        rows = [to_vector(r) for r in matrix]
        x_s = sum((rows[i][j] for i, j in self.S), Fraction(0))
        x_t = sum((rows[i][j] for i, j in self.T), Fraction(0))
        return x_s, x_t

    def is_witness(self, matrix: Sequence[Sequence[RationalLike]]) -> bool:
        """Verify similarity, disjointness, distinctness and ``x_S == x_T``."""
        if not self.S or not self.disjoint or not self.similar:
            return False
        x_s, x_t = self.sums(matrix)
        return x_s == x_t

    def swapped(self) -> IndexSubsetPair:
        """Return the pair with S and T exchanged."""
        return IndexSubsetPair(self.T, self.S)


@dataclass(frozen=True)
class WitnessSearch:
    """Tri-state result of ``find_similar_pair``.

    ``"unknown"`` means the size cap or the node budget stopped the search before it
    was exhaustive; it never means that no witness exists.
    """

    verdict: Verdict
    pair: Optional[IndexSubsetPair] = None
    examined: int = 0


@dataclass(frozen=True)
class TheoremCheck:
    """Essentiality, uniqueness and witness verdict of one sample.

    ``consistent`` is False exactly when the sample is essential with a unique
    Fermat-Weber point and an exhaustive search found no similar pair.
    """

    essential: bool
    unique: bool
    verdict: Verdict
    pair: Optional[IndexSubsetPair]
    consistent: bool


@dataclass(frozen=True)
class TropDetReport:
    """Tropical determinant ``min_pi sum_i x[i][pi(i)]`` of a square matrix."""

    value: Fraction
    attaining_permutations: int
    equal_terms: bool

    @property
    def singular(self) -> bool:
        """True if the minimum is attained at least twice."""
        return self.attaining_permutations >= 2


@dataclass(frozen=True)
class MonteCarloSummary:
    """Category counts of a random sample experiment.

    ``hits`` holds the theorem check of every essential sample with a unique
    Fermat-Weber point.
    """

    counts: pd.Series
    hits: tuple[TheoremCheck, ...]


def find_similar_pair(
    sample: SampleMatrix | Iterable[PointLike],
    max_size: int | None = None,
    node_budget: int | None = None,
) -> WitnessSearch:
    """Search two disjoint similar cell sets with equal entry sums.

    Candidate sets are visited by increasing size and, within one size, in the
    lexicographic order of their cells ``(row, column)``. Sets are grouped by their
    row counts, column counts and entry sum; the first set that is disjoint from an
    earlier set of its group yields the witness ``S`` (earlier) and ``T`` (later).

    Parameters
    ----------
    sample
        Sample matrix. The search works on the canonical rows; row shifts change
        ``x_S`` and ``x_T`` by the same amount.
    max_size
        Largest ``|S|``; defaults to ``TROPFW_WITNESS_MAX_SIZE``.
    node_budget
        Largest number of candidate sets; defaults to ``TROPFW_WITNESS_NODE_BUDGET``.

    Returns
    -------
    WitnessSearch
        ``"found"`` with the pair, ``"none"`` if the search was exhaustive, or
        ``"unknown"`` if a budget stopped it.

    Examples
    --------
    >>> search = find_similar_pair([[0, 0, 0, 5], [0, 0, 3, 1], [0, 4, 5, 7]])
    >>> search.verdict, sorted(search.pair.S), sorted(search.pair.T)
    ('found', [(0, 0), (1, 1)], [(0, 1), (1, 0)])

    """
    sample = as_sample(sample)
    matrix = sample.matrix
    m, n = sample.m, sample.n
    max_size = get_budget("TROPFW_WITNESS_MAX_SIZE", max_size)
    node_budget = get_budget("TROPFW_WITNESS_NODE_BUDGET", node_budget)

    cells = [(i, j) for i in range(m) for j in range(n)]
    values = [matrix[i][j] for i, j in cells]
    exhaustive_size = len(cells) // 2
    largest = min(exhaustive_size, max_size)

    examined = 0
    for size in range(2, largest + 1):
        groups: dict[tuple, list[int]] = {}
        for subset in itertools.combinations(range(len(cells)), size):
            examined += 1
            if examined > node_budget:
                logger.debug("find_similar_pair stopped at node budget %d", node_budget)
                return WitnessSearch("unknown", None, examined - 1)

            row_counts = [0] * m
            column_counts = [0] * n
            total = Fraction(0)
            mask = 0
            for index in subset:
                i, j = cells[index]
                row_counts[i] += 1
                column_counts[j] += 1
                total += values[index]
                mask |= 1 << index
            key = (tuple(row_counts), tuple(column_counts), total)

            members = groups.setdefault(key, [])
            for earlier in members:
                if not earlier & mask:
                    pair = IndexSubsetPair(
                        frozenset(
                            cells[k] for k in range(len(cells)) if earlier >> k & 1
                        ),
                        frozenset(cells[k] for k in subset),
                    )
                    logger.debug(
                        "find_similar_pair found |S|=%d after %d", size, examined
                    )
                    return WitnessSearch("found", pair, examined)
            members.append(mask)

    if largest < exhaustive_size:
        return WitnessSearch("unknown", None, examined)
    return WitnessSearch("none", None, examined)


def check_theorem_lowdim(
    sample: SampleMatrix | Iterable[PointLike],
    strict: bool = False,
    max_size: int | None = None,
    node_budget: int | None = None,
) -> TheoremCheck:
    """Check that essential samples with a unique Fermat-Weber point are degenerate.

    Parameters
    ----------
    sample
        Sample matrix.
    strict
        Raise instead of returning an inconsistent check.
    max_size, node_budget
        Passed to ``find_similar_pair``.

    Returns
    -------
    TheoremCheck
        Essentiality, uniqueness, witness verdict and whether they agree.

    Raises
    ------
    ConsistencyError
        If ``strict`` and the sample is essential and unique while an exhaustive
        search found no similar pair.

    """
    sample = as_sample(sample)
    essential = is_essential(sample).essential if sample.m >= 2 else False
    unique = fw_polytope(sample).unique
    search = find_similar_pair(sample, max_size, node_budget)
    consistent = not (essential and unique and search.verdict == "none")

    if not consistent:
        logger.error(
            "essential sample with a unique Fermat-Weber point has no similar pair: %s",
            [[str(x) for x in row] for row in sample.matrix],
        )
        if strict:
            raise ConsistencyError(
                "Essential sample with a unique Fermat-Weber point has no similar pair."
            )
    return TheoremCheck(essential, unique, search.verdict, search.pair, consistent)


def tropical_determinant(
    square: Sequence[Sequence[RationalLike]], max_side: int | None = None
) -> TropDetReport:
    """Compute the tropical determinant by enumerating all permutations.

    Parameters
    ----------
    square
        Square rational matrix.
    max_side
        Largest side; defaults to ``TROPFW_TROPDET_MAX_SIDE``.

    Returns
    -------
    TropDetReport
        Minimum, number of minimizing permutations and whether any two terms agree.

    Raises
    ------
    ValueError
        If the matrix is empty or not square.
    BudgetExceededError
        If the side exceeds the budget.

    Examples
    --------
    >>> report = tropical_determinant([[0, 0], [0, 0]])
    >>> report.value, report.attaining_permutations, report.singular
    (Fraction(0, 1), 2, True)

    """
    rows = [to_vector(r) for r in square]
    side = len(rows)
    if side == 0 or any(len(r) != side for r in rows):
        raise ValueError(VALUE_ERROR_NOT_SQUARE)
    max_side = get_budget("TROPFW_TROPDET_MAX_SIDE", max_side)
    if side > max_side:
        raise BudgetExceededError(
            f"Side {side} exceeds the tropical determinant budget {max_side}."
        )

    terms = [
        sum((rows[i][p] for i, p in enumerate(permutation)), Fraction(0))
        for permutation in itertools.permutations(range(side))
    ]
    value = min(terms)
    return TropDetReport(value, terms.count(value), len(set(terms)) < len(terms))


def square_minors(
    matrix: Sequence[Sequence[RationalLike]],
) -> Iterator[tuple[tuple[int, ...], tuple[int, ...], list[Vector]]]:
    """Yield ``(rows, columns, submatrix)`` for every square minor, smallest first."""
    rows = [to_vector(r) for r in matrix]
    if not rows:
        return
    m, n = len(rows), len(rows[0])
    for side in range(1, min(m, n) + 1):
        for row_set in itertools.combinations(range(m), side):
            for column_set in itertools.combinations(range(n), side):
                yield (
                    row_set,
                    column_set,
                    [tuple(rows[i][j] for j in column_set) for i in row_set],
                )


def minor_report(matrix: Sequence[Sequence[RationalLike]]) -> pd.DataFrame:
    """Tabulate the tropical determinant of every square minor.

    Returns
    -------
    pd.DataFrame
        One row per minor with columns ``rows``, ``columns``, ``value``,
        ``attaining_permutations``, ``singular`` and ``equal_terms``.

    Examples
    --------
    >>> report = minor_report([[0, 1], [1, 0]])
    >>> len(report), bool(report["singular"].any())
    (5, False)

    """
    records = []
    for row_set, column_set, minor in square_minors(matrix):
        determinant = tropical_determinant(minor)
        records.append(
            {
                "rows": row_set,
                "columns": column_set,
                "value": determinant.value,
                "attaining_permutations": determinant.attaining_permutations,
                "singular": determinant.singular,
                "equal_terms": determinant.equal_terms,
            }
        )
    return pd.DataFrame.from_records(
        records,
        columns=[
            "rows",
            "columns",
            "value",
            "attaining_permutations",
            "singular",
            "equal_terms",
        ],
    )


def random_sample(
    m: int,
    n: int,
    rng: np.random.Generator,
    numerator_bound: int = 10**6,
    denominator: int = 997,
) -> SampleMatrix:
    """Draw an m x n sample with entries ``k / denominator``.

    The numerators ``k`` are uniform with ``|k| <= numerator_bound``.
    """
    numerators = rng.integers(
        -numerator_bound, numerator_bound, size=(m, n), endpoint=True
    )
    return SampleMatrix.from_rows(
        [[Fraction(int(k), denominator) for k in row] for row in numerators]
    )


def classify_sample(sample: SampleMatrix) -> str:
    """Return the category of a sample, one of ``CATEGORIES``."""
    if sample.m == 1:
        return "single point"
    if not is_essential(sample).essential:
        return "not essential"
    if fw_polytope(sample).unique:
        return "essential & unique"
    return "essential & non-unique"


def random_sample_experiment(
    m: int,
    n: int,
    trials: int,
    rng_seed: int,
    numerator_bound: int = 10**6,
    denominator: int = 997,
) -> MonteCarloSummary:
    """Classify random rational samples by essentiality and uniqueness.

    Every trial draws its own generator from ``SeedSequence(rng_seed).spawn``, so the
    result only depends on the arguments.

    Parameters
    ----------
    m
        Number of points per sample.
    n
        Number of coordinates per point.
    trials
        Number of samples, at least 1.
    rng_seed
        Master seed.
    numerator_bound
        Entries are ``k / denominator`` with ``k`` uniform in
        ``[-numerator_bound, numerator_bound]``.
    denominator
        Common denominator of the entries.

    Returns
    -------
    MonteCarloSummary
        Counts per category (all categories present, in ``CATEGORIES`` order) and the
        theorem checks of the essential samples with a unique Fermat-Weber point.

    Raises
    ------
    ValueError
        If ``trials < 1``.

    """
    if trials < 1:
        raise ValueError(f"'trials' must be at least 1, got {trials}.")

    counts = dict.fromkeys(CATEGORIES, 0)
    hits = []
    for index, child in enumerate(np.random.SeedSequence(rng_seed).spawn(trials)):
        sample = random_sample(
            m, n, np.random.default_rng(child), numerator_bound, denominator
        )
        category = classify_sample(sample)
        counts[category] += 1
        if category == "essential & unique":
            hits.append(check_theorem_lowdim(sample))
        if (index + 1) % 50 == 0:
            logger.info("random_sample_experiment %d/%d trials", index + 1, trials)

    series = pd.Series(counts, name="count", dtype="int64")
    return MonteCarloSummary(series, tuple(hits))

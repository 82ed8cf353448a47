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

"""Module contains functions to compute tropical Fermat-Weber points.

A sample of m points in R^n/R1 is stored as an m x n ``SampleMatrix`` ``M``. The
minimal distance sum ``d`` is the optimum of the linear program

    minimize  c_1 + ... + c_m
    subject to c_i >= u_j - u_k - M[i][j] + M[i][k]   for all i and j != k,
               u_1 = 0,

in the variables ``(u_1, ..., u_n, c_1, ..., c_m)``. Adding ``sum(c) = d`` gives a
polytope whose projection onto ``u`` is the set of Fermat-Weber points.
"""

from __future__ import annotations  # required for Python < 3.10

import itertools
import time
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

import daiquiri

from tropfw.ratgeom import (
    HPolytope,
    LinearConstraint,
    LPProblem,
    RationalLike,
    VPolytope,
    count_facets,
    enumerate_vertices,
    lp_solve,
    to_rational,
    vertices_of_projection,
)
from tropfw.tropcore import PointLike, QuotientPoint, canonicalize, trop_dist
from tropfw.utils import (
    VALUE_ERROR_CIRCULANT_SIZE,
    VALUE_ERROR_EMPTY_SAMPLE,
    VALUE_ERROR_ESSENTIAL_SIZE,
    VALUE_ERROR_LENGTH_MISMATCH,
    BudgetExceededError,
    ConsistencyError,
    get_budget,
)

logger = daiquiri.getLogger(__name__)


@dataclass(frozen=True)
class SampleMatrix:
    """Sample points ``v_1, ..., v_m`` of R^n/R1 as canonical rows."""

    rows: tuple[QuotientPoint, ...]

    def __post_init__(self) -> None:  # noqa: D105
        rows = tuple(canonicalize(r) for r in self.rows)
        if not rows:
            raise ValueError(VALUE_ERROR_EMPTY_SAMPLE)
        if any(r.n != rows[0].n for r in rows):
            raise ValueError(VALUE_ERROR_LENGTH_MISMATCH)
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_rows(cls, rows: Iterable[PointLike]) -> SampleMatrix:
        """Build a sample from raw rational rows.

        Examples
        --------
        >>> SampleMatrix.from_rows([[1, 2, 3], [0, 0, 0]]).rows[0].coords
        (Fraction(0, 1), Fraction(1, 1), Fraction(2, 1))

        """
        return cls(tuple(rows))

    @property
    def m(self) -> int:
        """Number of sample points."""
        return len(self.rows)

    @property
    def n(self) -> int:
        """Number of coordinates per point."""
        return self.rows[0].n

    @property
    def matrix(self) -> tuple[tuple[Fraction, ...], ...]:
        """Canonical rows as plain tuples."""
        return tuple(r.coords for r in self.rows)

    def without(self, index: int) -> SampleMatrix:
        """Return the sample with row ``index`` removed."""
        return SampleMatrix(self.rows[:index] + self.rows[index + 1 :])

    def extended(self, point: PointLike) -> SampleMatrix:
        """Return the sample with ``point`` appended."""
        return SampleMatrix(self.rows + (canonicalize(point),))


def as_sample(sample: SampleMatrix | Iterable[PointLike]) -> SampleMatrix:
    """Return ``sample`` unchanged or build a ``SampleMatrix`` from raw rows."""
    if isinstance(sample, SampleMatrix):
        return sample
    return SampleMatrix.from_rows(sample)


def circulant_rows(n: int) -> list[list[int]]:
    """Return the raw n x n circulant matrix with a unique Fermat-Weber point.

    Entry ``(i, j)`` is 1 if ``(j - i) mod n`` is 0 or 1, -1 if it is 2 or 3 and 0
    otherwise.

    Examples
    --------
    >>> circulant_rows(5)[0]
    [1, 1, -1, -1, 0]

    """
    if n < 4:
        raise ValueError(VALUE_ERROR_CIRCULANT_SIZE)
    values = {0: 1, 1: 1, 2: -1, 3: -1}
    return [[values.get((j - i) % n, 0) for j in range(n)] for i in range(n)]


def circulant_instance(n: int) -> SampleMatrix:
    """Return the circulant sample of n points in R^n/R1.

    The points form an essential set and ``0`` is their unique Fermat-Weber point,
    with distance sum ``2 n``.

    Parameters
    ----------
    n
        Dimension, at least 4.

    Returns
    -------
    SampleMatrix
        The canonicalized circulant rows.

    Raises
    ------
    ValueError
        If ``n < 4``; the three-dimensional instance is ``UNIQUE_N3_SAMPLE``.

    """
    return SampleMatrix.from_rows(circulant_rows(n))


UNIQUE_N3_SAMPLE = SampleMatrix.from_rows([[-1, 1, 1], [1, -1, 1], [1, 1, -1]])


@dataclass(frozen=True)
class AssignmentPair:
    """Two maps ``sigma, tau : [m] -> [n]`` stored as tuples of column indices."""

    sigma: tuple[int, ...]
    tau: tuple[int, ...]
    n: int

    def __post_init__(self) -> None:  # noqa: D105
        object.__setattr__(self, "sigma", tuple(self.sigma))
        object.__setattr__(self, "tau", tuple(self.tau))
        if len(self.sigma) != len(self.tau):
            raise ValueError(VALUE_ERROR_LENGTH_MISMATCH)
        if any(not 0 <= j < self.n for j in self.sigma + self.tau):
            raise ValueError(f"Column indices must lie in range({self.n}).")

    @property
    def w_sigma(self) -> tuple[int, ...]:
        """Number of rows mapped to each column by ``sigma``."""
        return tuple(self.sigma.count(j) for j in range(self.n))

    @property
    def w_tau(self) -> tuple[int, ...]:
        """Number of rows mapped to each column by ``tau``."""
        return tuple(self.tau.count(j) for j in range(self.n))

    @property
    def admissible(self) -> bool:
        """True if ``sigma`` and ``tau`` hit the same columns equally often."""
        return self.w_sigma == self.w_tau

    def value(self, sample: SampleMatrix) -> Fraction:
        """Return ``|sum M[i][sigma(i)] - sum M[i][tau(i)]|``."""
        if len(self.sigma) != sample.m or self.n != sample.n:
            raise ValueError(VALUE_ERROR_LENGTH_MISMATCH)
        matrix = sample.matrix
        pairs = enumerate(zip(self.sigma, self.tau))
        total = sum((matrix[i][s] - matrix[i][t] for i, (s, t) in pairs), Fraction(0))
        return abs(total)


@dataclass(frozen=True)
class FWResult:
    """Minimal distance sum ``d`` and the polytope of Fermat-Weber points.

    ``facets`` counts the irredundant inequalities of the polytope inside its affine
    hull; a unique Fermat-Weber point has none.
    """

    d: Fraction
    polytope: VPolytope
    unique: bool
    facets: int

    @property
    def vertices(self) -> tuple[tuple[Fraction, ...], ...]:
        """Vertices as canonical vectors of length n."""
        return self.polytope.vertices

    @property
    def affine_dim(self) -> int:
        """Dimension of the polytope."""
        return self.polytope.affine_dim


@dataclass(frozen=True)
class EssentialityReport:
    """``verdicts[i]`` is True when row i is a Fermat-Weber point of the other rows."""

    essential: bool
    verdicts: tuple[bool, ...]


@dataclass(frozen=True)
class EllipseSpec:
    """Foci and level ``a`` of a tropical k-ellipse."""

    foci: SampleMatrix
    a: Fraction

    def __post_init__(self) -> None:  # noqa: D105
        object.__setattr__(self, "foci", as_sample(self.foci))
        object.__setattr__(self, "a", to_rational(self.a))


@dataclass(frozen=True)
class KEllipse:
    """Sublevel polytope ``{u : sum_i d(u, v_i) <= a}``.

    ``degenerate`` is True when ``a == d``; the set is then the Fermat-Weber
    polytope. Otherwise the k-ellipse proper is the boundary of ``polytope``.
    """

    polytope: VPolytope
    a: Fraction
    d: Fraction
    degenerate: bool


def distance_sum(x: PointLike, sample: SampleMatrix | Iterable[PointLike]) -> Fraction:
    """Return ``sum_i d(x, v_i)``.

    Examples
    --------
    >>> distance_sum([0, 0, 0], [[0, 0, 0], [0, 3, 1], [0, 2, 5]])
    Fraction(8, 1)

    """
    sample = as_sample(sample)
    x = canonicalize(x)
    if x.n != sample.n:
        raise ValueError(VALUE_ERROR_LENGTH_MISMATCH)
    return sum((trop_dist(x, v) for v in sample.rows), Fraction(0))


def fw_extended_system(
    sample: SampleMatrix,
    bound: RationalLike | None = None,
    tight: bool = False,
) -> HPolytope:
    """Return the lifted constraint system in the variables ``(u, c)``.

    Parameters
    ----------
    sample
        Sample of m points in R^n/R1.
    bound
        If given, adds ``sum(c) <= bound``.
    tight
        If True, the bound is imposed as ``sum(c) == bound`` instead.

    Returns
    -------
    HPolytope
        Polytope of dimension ``n + m`` with ``u_1 = 0`` and
        ``u_j - u_k - c_i <= M[i][j] - M[i][k]`` for all i and j != k.

    """
    n, m = sample.n, sample.m
    dim = n + m
    constraints = [LinearConstraint([1] + [0] * (dim - 1), 0, "==")]
    for i, row in enumerate(sample.matrix):
        for j, k in itertools.permutations(range(n), 2):
            coefficients = [0] * dim
            coefficients[j] = 1
            coefficients[k] = -1
            coefficients[n + i] = -1
            constraints.append(LinearConstraint(coefficients, row[j] - row[k]))
    if bound is not None:
        kind = "==" if tight else "<="
        constraints.append(
            LinearConstraint([0] * n + [1] * m, to_rational(bound), kind)
        )
    return HPolytope(dim, constraints)


def fw_direct_system(sample: SampleMatrix, bound: RationalLike) -> HPolytope:
    """Return the sublevel set ``sum_i d(u, v_i) <= bound`` without lifting.

    Every choice of one ordered pair ``j_i != k_i`` per sample point contributes the
    row ``sum_i (u_{j_i} - u_{k_i}) <= bound + sum_i (M[i][j_i] - M[i][k_i])``. The
    family has ``(n (n - 1))^m`` members before deduplication, so it is only meant
    for cross-checks on tiny samples.
    """
    n = sample.n
    bound = to_rational(bound)
    pairs = list(itertools.permutations(range(n), 2))
    rows: dict[tuple, LinearConstraint] = {}
    for choice in itertools.product(pairs, repeat=sample.m):
        coefficients = [0] * n
        rhs = bound
        for row, (j, k) in zip(sample.matrix, choice):
            coefficients[j] += 1
            coefficients[k] -= 1
            rhs += row[j] - row[k]
        constraint = LinearConstraint(coefficients, rhs).normalized()
        if any(constraint.coefficients):
            rows.setdefault((constraint.coefficients, constraint.rhs), constraint)
        elif constraint.rhs < 0:
            rows.setdefault((constraint.coefficients, constraint.rhs), constraint)
    constraints = [LinearConstraint([1] + [0] * (n - 1), 0, "==")]
    constraints.extend(rows[key] for key in sorted(rows))
    return HPolytope(n, constraints)


def min_sum_lp(sample: SampleMatrix | Iterable[PointLike]) -> Fraction:
    """Compute the minimal tropical distance sum by linear programming.

    Parameters
    ----------
    sample
        Sample points, as a ``SampleMatrix`` or raw rows.

    Returns
    -------
    Fraction
        ``min_u sum_i d(u, v_i)``.

    Raises
    ------
    ConsistencyError
        If the solver does not report an optimum, which cannot happen for a valid
        sample.

    Examples
    --------
    >>> min_sum_lp([[0, 0, 0], [0, 3, 1], [0, 2, 5]])
    Fraction(7, 1)

    """
    sample = as_sample(sample)
    system = fw_extended_system(sample)
    objective = [0] * sample.n + [1] * sample.m
    result = lp_solve(LPProblem(objective, system))
    if not result.is_optimal:
        raise ConsistencyError(f"The Fermat-Weber LP returned {result.status!r}.")
    return result.value


def _assignment_extremes(
    sample: SampleMatrix, budget: int | None
) -> tuple[Fraction, AssignmentPair]:
    n, m = sample.n, sample.m
    budget = get_budget("TROPFW_ASSIGNMENT_BUDGET", budget)
    if n**m > budget:
        raise BudgetExceededError(
            f"n^m = {n}^{m} exceeds the assignment budget {budget}; use min_sum_lp."
        )

    matrix = sample.matrix
    extremes: dict[tuple[int, ...], list] = {}
    for sigma in itertools.product(range(n), repeat=m):
        total = sum((matrix[i][j] for i, j in enumerate(sigma)), Fraction(0))
        key = tuple(sorted(sigma))
        entry = extremes.get(key)
        if entry is None:
            extremes[key] = [total, sigma, total, sigma]
        elif total < entry[0]:
            entry[0], entry[1] = total, sigma
        elif total > entry[2]:
            entry[2], entry[3] = total, sigma

    best = max(extremes.values(), key=lambda e: e[2] - e[0])
    return best[2] - best[0], AssignmentPair(best[3], best[1], n)


def min_sum_combinatorial(
    sample: SampleMatrix | Iterable[PointLike], budget: int | None = None
) -> Fraction:
    """Compute the minimal distance sum from assignment pairs.

    The value is the largest ``|sum_i M[i][sigma(i)] - sum_i M[i][tau(i)]|`` over
    maps ``sigma, tau : [m] -> [n]`` that take every column equally often. All
    ``n^m`` maps are enumerated once, grouped by their multiset of columns.

    Parameters
    ----------
    sample
        Sample points.
    budget
        Largest admissible ``n^m``; defaults to ``TROPFW_ASSIGNMENT_BUDGET``.

    Returns
    -------
    Fraction
        The minimal distance sum.

    Raises
    ------
    BudgetExceededError
        If ``n^m`` exceeds the budget.

    Examples
    --------
    >>> min_sum_combinatorial([[0, 0, 0], [0, 3, 1], [0, 2, 5]])
    Fraction(7, 1)

    """
    return _assignment_extremes(as_sample(sample), budget)[0]


def optimal_assignment_pair(
    sample: SampleMatrix | Iterable[PointLike], budget: int | None = None
) -> AssignmentPair:
    """Return an admissible assignment pair attaining the minimal distance sum."""
    return _assignment_extremes(as_sample(sample), budget)[1]


def fw_polytope(
    sample: SampleMatrix | Iterable[PointLike],
    method: Literal["extended", "direct"] = "extended",
) -> FWResult:
    """Compute the polytope of tropical Fermat-Weber points.

    Parameters
    ----------
    sample
        Sample points.
    method
        ``"extended"`` enumerates the lifted system and projects; ``"direct"``
        enumerates the exponential family of inequalities in ``u`` alone.

    Returns
    -------
    FWResult
        ``d``, the vertices as canonical vectors, the affine dimension, the number of
        facets and whether the Fermat-Weber point is unique.

    Examples
    --------
    >>> result = fw_polytope([[0, 0, 0], [0, 3, 1], [0, 2, 5]])
    >>> result.d, result.affine_dim, len(result.vertices), result.facets
    (Fraction(7, 1), 2, 3, 3)

    """
    start = time.perf_counter()
    sample = as_sample(sample)
    d = min_sum_lp(sample)
    if method == "extended":
        vertices = enumerate_vertices(fw_extended_system(sample, d, tight=True))
    elif method == "direct":
        vertices = enumerate_vertices(fw_direct_system(sample, d))
    else:
        raise ValueError(f"'method' must be 'extended' or 'direct', got {method!r}.")
    polytope = vertices_of_projection(vertices.vertices, range(sample.n))

    for vertex in polytope.vertices:
        if distance_sum(vertex, sample) != d:
            raise ConsistencyError(f"{vertex} is not a Fermat-Weber point.")

    logger.debug(
        "fw_polytope m=%d n=%d d=%s vertices=%d dim=%d elapsed=%.4fs",
        sample.m,
        sample.n,
        d,
        len(polytope.vertices),
        polytope.affine_dim,
        time.perf_counter() - start,
    )
    facets = count_facets(polytope.vertices)
    return FWResult(d, polytope, polytope.affine_dim == 0, facets)


def is_fw_point(
    x: PointLike, sample: SampleMatrix | Iterable[PointLike], d: RationalLike
) -> bool:
    """Check whether ``x`` attains the minimal distance sum ``d``.

    Examples
    --------
    >>> triangle = [[0, 0, 0], [0, 3, 1], [0, 2, 5]]
    >>> is_fw_point([0, 1, 1], triangle, 7), is_fw_point([0, 0, 0], triangle, 7)
    (True, False)

    """
    return distance_sum(x, sample) == to_rational(d)


def is_essential(sample: SampleMatrix | Iterable[PointLike]) -> EssentialityReport:
    """Check whether no sample point is a Fermat-Weber point of the other points.

    Row i is tested against the minimal distance sum of the sample without row i.
    For three points this asks whether row i lies between the other two, i.e.
    whether ``d(v_i, a) + d(v_i, b) == d(a, b)``.

    Parameters
    ----------
    sample
        At least two points.

    Returns
    -------
    EssentialityReport
        ``essential`` and the verdict per row. Two points are never essential.

    Raises
    ------
    ValueError
        If the sample has fewer than two points.

    Examples
    --------
    >>> is_essential([[-1, 1, 1], [1, -1, 1], [1, 1, -1]]).essential
    True
    >>> is_essential([[0, 0, 0], [0, 0, 0], [0, 1, 2]]).verdicts
    (True, True, False)

    """
    sample = as_sample(sample)
    if sample.m < 2:
        raise ValueError(VALUE_ERROR_ESSENTIAL_SIZE)
    if sample.m == 2:
        return EssentialityReport(False, (True, True))

    verdicts = []
    for i, row in enumerate(sample.rows):
        rest = sample.without(i)
        verdicts.append(is_fw_point(row, rest, min_sum_lp(rest)))
    return EssentialityReport(not any(verdicts), tuple(verdicts))


def k_ellipse(spec: EllipseSpec) -> KEllipse:
    """Compute the tropical k-ellipse with foci ``spec.foci`` and level ``spec.a``.

    Parameters
    ----------
    spec
        Foci and level.

    Returns
    -------
    KEllipse
        Vertices of ``{u : sum_i d(u, v_i) <= a}`` and whether ``a`` equals the
        minimal distance sum.

    Raises
    ------
    ValueError
        If ``a`` is smaller than the minimal distance sum of the foci.

    """
    foci = spec.foci
    d = min_sum_lp(foci)
    if spec.a < d:
        raise ValueError(
            f"a = {spec.a} is smaller than the minimal distance sum d = {d}; the "
            "k-ellipse needs a >= d."
        )
    lifted = enumerate_vertices(fw_extended_system(foci, spec.a))
    polytope = vertices_of_projection(lifted.vertices, range(foci.n))
    logger.debug(
        "k_ellipse a=%s d=%s lifted=%d vertices=%d",
        spec.a,
        d,
        len(lifted.vertices),
        len(polytope.vertices),
    )
    return KEllipse(polytope, spec.a, d, spec.a == d)


def convex_combination(
    points: Sequence[Sequence[Fraction]], weights: Sequence[RationalLike]
) -> tuple[Fraction, ...]:
    """Return ``sum_k weights[k] * points[k]`` for nonnegative weights summing to 1."""
    weights = [to_rational(w) for w in weights]
    if len(weights) != len(points):
        raise ValueError(VALUE_ERROR_LENGTH_MISMATCH)
    if any(w < 0 for w in weights) or sum(weights) != 1:
        raise ValueError("Weights must be nonnegative and sum to 1.")
    return tuple(
        sum((w * p[i] for w, p in zip(weights, points)), Fraction(0))
        for i in range(len(points[0]))
    )

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

"""Module contains exact rational linear programming and polyhedral primitives."""

from __future__ import annotations  # required for Python < 3.10

import math
import numbers
import re
import time
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Union

import daiquiri
import ppl

from tropfw.utils import (
    TYPE_ERROR_FLOAT,
    VALUE_ERROR_EMPTY_POINTS,
    VALUE_ERROR_LENGTH_MISMATCH,
    UnboundedPolytopeError,
)

logger = daiquiri.getLogger(__name__)

RationalLike = Union[int, Fraction, str]
Vector = tuple[Fraction, ...]

_RATIONAL_PATTERN = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")
_ZERO = Fraction(0)


def to_rational(value: RationalLike) -> Fraction:
    """Convert ``value`` into an exact ``Fraction``.

    Parameters
    ----------
    value
        An integer, a ``Fraction`` or a string of the form ``"p/q"`` or ``"p"``.

    Returns
    -------
    Fraction
        The exact rational number.

    Raises
    ------
    TypeError
        If ``value`` is a float, a bool or of any other unsupported type.
    ValueError
        If a string is not an exact rational or has a zero denominator.

    Examples
    --------
    >>> to_rational("-3/6")
    Fraction(-1, 2)

    >>> to_rational(4)
    Fraction(4, 1)

    Decimal notation is rejected, because it hides rounding.

    >>> to_rational("0.333")
    Traceback (most recent call last):
    ...
    ValueError: '0.333' is not an exact rational; use 'p/q' or an integer string.

    """
    if isinstance(value, bool):
        raise TypeError(f"{value!r} is a bool, not a rational number.")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, numbers.Integral):
        return Fraction(int(value))
    if isinstance(value, str):
        match = _RATIONAL_PATTERN.match(value)
        if match is None:
            raise ValueError(
                f"{value!r} is not an exact rational; use 'p/q' or an integer string."
            )
        numerator, denominator = match.groups()
        if denominator is not None and int(denominator) == 0:
            raise ValueError(f"{value!r} has a zero denominator.")
        return Fraction(int(numerator), int(denominator or 1))
    if isinstance(value, float):
        raise TypeError(TYPE_ERROR_FLOAT)

    raise TypeError(f"Cannot convert {type(value).__name__} to a rational number.")


def to_vector(values: Iterable[RationalLike]) -> Vector:
    """Convert an iterable into a tuple of ``Fraction``."""
    return tuple(to_rational(x) for x in values)


def format_rational(value: Fraction) -> str:
    """Return the exact string form used in reports, e.g. ``'7'`` or ``'-2/3'``."""
    return str(value)


def _dot(u: Sequence[Fraction], v: Sequence[Fraction]) -> Fraction:
    return sum((a * b for a, b in zip(u, v) if a), _ZERO)


def _integer_row(values: Sequence[Fraction]) -> tuple[list[int], int]:
    """Scale rationals by the lcm of their denominators."""
    denominator = 1
    for x in values:
        denominator = math.lcm(denominator, x.denominator)
    return [int(x * denominator) for x in values], denominator


def _primitive(values: Sequence[Fraction]) -> tuple[int, ...]:
    """Scale a rational vector by a positive factor to coprime integers."""
    ints, _ = _integer_row(values)
    divisor = 0
    for x in ints:
        divisor = math.gcd(divisor, x)
    if divisor > 1:
        ints = [x // divisor for x in ints]
    return tuple(ints)


@dataclass(frozen=True)
class LinearConstraint:
    """One row ``coefficients · x <= rhs`` (or ``==`` for equalities)."""

    coefficients: Vector
    rhs: Fraction
    kind: Literal["<=", "=="] = "<="

    def __post_init__(self) -> None:  # noqa: D105
        object.__setattr__(self, "coefficients", to_vector(self.coefficients))
        object.__setattr__(self, "rhs", to_rational(self.rhs))
        if self.kind not in ("<=", "=="):
            raise ValueError(f"'kind' must be '<=' or '==', got {self.kind!r}.")

    @property
    def dim(self) -> int:
        """Number of variables."""
        return len(self.coefficients)

    def evaluate(self, point: Sequence[RationalLike]) -> Fraction:
        """Return ``coefficients · point``."""
        if len(point) != self.dim:
            raise ValueError(VALUE_ERROR_LENGTH_MISMATCH)
        return _dot(self.coefficients, to_vector(point))

    def is_satisfied(self, point: Sequence[RationalLike]) -> bool:
        """Check the constraint exactly."""
        value = self.evaluate(point)
        return value == self.rhs if self.kind == "==" else value <= self.rhs

    def normalized(self) -> LinearConstraint:
        """Return the same constraint scaled to coprime integer coefficients.

        Equalities are additionally signed so that the first nonzero coefficient is
        positive. Rows with a zero coefficient vector are returned unchanged.

        Examples
        --------
        >>> LinearConstraint((2, -4), 6).normalized()
        LinearConstraint(coefficients=(Fraction(1, 1), Fraction(-2, 1)), rhs=Fraction(3, 1), kind='<=')

        """  # noqa: E501
        if not any(self.coefficients):
            return self
        ints = _primitive(self.coefficients)
        nonzero = next(i for i, x in enumerate(ints) if x)
        factor = Fraction(ints[nonzero]) / self.coefficients[nonzero]
        if self.kind == "==" and ints[nonzero] < 0:
            ints = tuple(-x for x in ints)
            factor = -factor
        return LinearConstraint(ints, self.rhs * factor, self.kind)


@dataclass(frozen=True)
class HPolytope:
    """Feasible set of finitely many linear constraints in ``dim`` variables."""

    dim: int
    constraints: tuple[LinearConstraint, ...] = ()

    def __post_init__(self) -> None:  # noqa: D105
        object.__setattr__(self, "constraints", tuple(self.constraints))
        if self.dim < 1:
            raise ValueError(f"'dim' must be positive, got {self.dim}.")
        for constraint in self.constraints:
            if constraint.dim != self.dim:
                raise ValueError(
                    f"Constraint of length {constraint.dim} does not fit "
                    f"dim {self.dim}."
                )

    @property
    def equalities(self) -> tuple[LinearConstraint, ...]:
        """Constraints of kind ``==``."""
        return tuple(c for c in self.constraints if c.kind == "==")

    def contains(self, point: Sequence[RationalLike]) -> bool:
        """Check membership exactly."""
        return all(c.is_satisfied(point) for c in self.constraints)


@dataclass(frozen=True)
class VPolytope:
    """Polytope given by its vertices; ``affine_dim == -1`` encodes the empty set."""

    vertices: tuple[Vector, ...]
    affine_dim: int

    @property
    def is_empty(self) -> bool:
        """True if there are no vertices."""
        return not self.vertices

    @property
    def is_point(self) -> bool:
        """True if the polytope is a single point."""
        return len(self.vertices) == 1


@dataclass(frozen=True)
class LPProblem:
    """Minimize ``objective · x`` over ``constraints``."""

    objective: Vector
    constraints: HPolytope
    sense: Literal["minimize"] = "minimize"

    def __post_init__(self) -> None:  # noqa: D105
        object.__setattr__(self, "objective", to_vector(self.objective))
        if len(self.objective) != self.constraints.dim:
            raise ValueError(VALUE_ERROR_LENGTH_MISMATCH)
        if self.sense != "minimize":
            raise ValueError("Only 'minimize' is supported; negate the objective.")


@dataclass(frozen=True)
class LPResult:
    """Outcome of ``lp_solve``; ``value`` and ``witness`` are set iff optimal."""

    status: Literal["optimal", "unbounded", "infeasible"]
    value: Fraction | None = None
    witness: Vector | None = None

    @property
    def is_optimal(self) -> bool:
        """True if an optimum was found."""
        return self.status == "optimal"


# --- linear algebra ------------------------------------------------------------------
class _Echelon:
    """Reduced row echelon basis of a growing set of vectors."""

    def __init__(self, dim: int) -> None:
        self.dim = dim
        self.rows: list[list[Fraction]] = []
        self.pivots: list[int] = []

    @property
    def rank(self) -> int:
        return len(self.rows)

    def add(self, vector: Sequence[Fraction]) -> bool:
        """Add ``vector``; return False if it is already in the span."""
        residual = [Fraction(x) for x in vector]
        for row, col in zip(self.rows, self.pivots):
            factor = residual[col]
            if factor:
                residual = [a - factor * b for a, b in zip(residual, row)]
        col = next((i for i, x in enumerate(residual) if x), None)
        if col is None:
            return False
        pivot = residual[col]
        residual = [x / pivot for x in residual]
        for idx, row in enumerate(self.rows):
            factor = row[col]
            if factor:
                self.rows[idx] = [a - factor * b for a, b in zip(row, residual)]
        self.rows.append(residual)
        self.pivots.append(col)
        return True

    def null_vector(self) -> list[Fraction]:
        """Return a nonzero vector orthogonal to every stored row."""
        free = next(c for c in range(self.dim) if c not in self.pivots)
        vector = [_ZERO] * self.dim
        vector[free] = Fraction(1)
        for row, col in zip(self.rows, self.pivots):
            vector[col] = -row[free]
        return vector


def _inverse(matrix: Sequence[Sequence[Fraction]]) -> list[list[Fraction]]:
    """Invert a nonsingular square matrix by Gauss-Jordan elimination."""
    size = len(matrix)
    work = [
        [Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(size)]
        for i, row in enumerate(matrix)
    ]
    for col in range(size):
        pivot = next(r for r in range(col, size) if work[r][col])
        work[col], work[pivot] = work[pivot], work[col]
        factor = work[col][col]
        work[col] = [x / factor for x in work[col]]
        for r in range(size):
            if r != col and work[r][col]:
                f = work[r][col]
                work[r] = [a - f * b for a, b in zip(work[r], work[col])]
    return [row[size:] for row in work]


def matrix_rank(rows: Sequence[Sequence[RationalLike]]) -> int:
    """Return the rank of a rational matrix.

    Examples
    --------
    >>> matrix_rank([[1, 2], [2, 4], [0, 1]])
    2

    """
    if not rows:
        return 0
    echelon = _Echelon(len(rows[0]))
    for row in rows:
        echelon.add(to_vector(row))
    return echelon.rank


def affine_dimension(points: Sequence[Sequence[RationalLike]]) -> int:
    """Return the dimension of the affine hull of ``points``.

    Parameters
    ----------
    points
        Nonempty list of equally long rational vectors.

    Returns
    -------
    int
        Rank of the differences ``p - p0``; a single point gives 0.

    Raises
    ------
    ValueError
        If ``points`` is empty or the vectors differ in length.

    Examples
    --------
    >>> affine_dimension([(0, 0), (1, 1), (2, 2)])
    1

    """
    if not points:
        raise ValueError(VALUE_ERROR_EMPTY_POINTS)
    vectors = [to_vector(p) for p in points]
    if any(len(v) != len(vectors[0]) for v in vectors):
        raise ValueError(VALUE_ERROR_LENGTH_MISMATCH)
    origin = vectors[0]
    return matrix_rank([[a - b for a, b in zip(v, origin)] for v in vectors[1:]])


# --- simplex -------------------------------------------------------------------------
class _ActiveSetSimplex:
    """Primal simplex on ``A x <= b`` that walks along vertices of the feasible set.

    A basis is a set of ``dim`` linearly independent rows that are tight at the
    current vertex. Rows in ``permanent`` (equalities) never leave the basis.
    Directions of the lineality space met while looking for a first vertex are
    pinned as pseudo rows. Pricing is Dantzig's rule, replaced by Bland's rule
    after every degenerate pivot.
    """

    def __init__(
        self,
        dim: int,
        rows: Sequence[Vector],
        rhs: Sequence[Fraction],
        permanent: Iterable[int] = (),
    ) -> None:
        self.dim = dim
        self.rows = list(rows)
        self.rhs = list(rhs)
        self.sparse = [[(k, a) for k, a in enumerate(row) if a] for row in self.rows]
        self.permanent = set(permanent)
        self.point: list[Fraction] = []
        self.slack: list[Fraction] = []
        self.basis: list[int | None] = []
        self.pinned: list[list[Fraction]] = []
        self.inverse: list[list[Fraction]] = []
        self.pivots = 0

    def _row_dot(self, j: int, vector: Sequence[Fraction]) -> Fraction:
        return sum((a * vector[k] for k, a in self.sparse[j]), _ZERO)

    def _blocking_row(
        self, direction: Sequence[Fraction], in_basis: set[int]
    ) -> tuple[Fraction, int, list[Fraction]] | None:
        """Ratio test: first row hit when moving along ``direction``."""
        rates = [self._row_dot(j, direction) for j in range(len(self.rows))]
        best: tuple[Fraction, int] | None = None
        for j, rate in enumerate(rates):
            if rate > 0 and j not in in_basis and j not in self.permanent:
                step = self.slack[j] / rate
                if best is None or step < best[0]:
                    best = (step, j)
        if best is None:
            return None
        return best[0], best[1], rates

    def _move(self, step: Fraction, direction: Sequence[Fraction], rates: list) -> None:
        if step:
            self.point = [x + step * d for x, d in zip(self.point, direction)]
            self.slack = [s - step * r for s, r in zip(self.slack, rates)]

    def settle(self, point: Sequence[Fraction], objective: Sequence[Fraction]) -> bool:
        """Move from a feasible ``point`` to a vertex.

        Returns False if a lineality direction shows the objective is unbounded.
        """
        self.point = list(point)
        self.slack = [
            self.rhs[j] - self._row_dot(j, self.point) for j in range(len(self.rows))
        ]
        echelon = _Echelon(self.dim)
        basis_rows: list[Sequence[Fraction]] = []
        self.basis, self.pinned = [], []

        order = sorted(self.permanent) + [
            j for j in range(len(self.rows)) if j not in self.permanent
        ]
        for j in order:
            if len(self.basis) == self.dim:
                break
            if self.slack[j] == 0 and echelon.add(self.rows[j]):
                self.basis.append(j)
                basis_rows.append(self.rows[j])

        while len(self.basis) < self.dim:
            direction = echelon.null_vector()
            if _dot(objective, direction) > 0:
                direction = [-x for x in direction]
            in_basis = {j for j in self.basis if j is not None}
            hit = self._blocking_row(direction, in_basis)
            if hit is None:
                if _dot(objective, direction) < 0:
                    return False
                direction = [-x for x in direction]
                hit = self._blocking_row(direction, in_basis)
            if hit is None:
                # both ways free: part of the lineality space
                echelon.add(direction)
                self.basis.append(None)
                self.pinned.append(direction)
                basis_rows.append(direction)
                continue
            step, j, rates = hit
            self._move(step, direction, rates)
            echelon.add(self.rows[j])
            self.basis.append(j)
            basis_rows.append(self.rows[j])

        inverse = _inverse(basis_rows)
        self.inverse = [
            [inverse[i][k] for i in range(self.dim)] for k in range(self.dim)
        ]
        return True

    def optimize(self, objective: Sequence[Fraction]) -> str:
        """Run simplex pivots from the current vertex; return the final status."""
        if any(_dot(objective, d) for d in self.pinned):
            return "unbounded"

        degenerate = False
        while True:
            multipliers = [-_dot(objective, column) for column in self.inverse]
            candidates = [
                k
                for k, j in enumerate(self.basis)
                if j is not None and j not in self.permanent and multipliers[k] < 0
            ]
            if not candidates:
                return "optimal"
            if degenerate:
                leave = min(candidates, key=lambda k: self.basis[k])
            else:
                leave = min(candidates, key=lambda k: (multipliers[k], self.basis[k]))

            direction = [-x for x in self.inverse[leave]]
            in_basis = {j for j in self.basis if j is not None}
            hit = self._blocking_row(direction, in_basis)
            if hit is None:
                return "unbounded"
            step, enter, rates = hit
            self._move(step, direction, rates)

            alphas = [self._row_dot(enter, column) for column in self.inverse]
            pivot = alphas[leave]
            new_column = [x / pivot for x in self.inverse[leave]]
            for k, alpha in enumerate(alphas):
                if k != leave and alpha:
                    self.inverse[k] = [
                        a - alpha * b for a, b in zip(self.inverse[k], new_column)
                    ]
            self.inverse[leave] = new_column
            self.basis[leave] = enter
            self.pivots += 1
            degenerate = step == 0


class _SimplexEngine:
    """Exact LP oracle over one ``HPolytope``, warm-started across objectives."""

    def __init__(self, polytope: HPolytope) -> None:
        self.polytope = polytope
        self.dim = polytope.dim
        self._simplex: _ActiveSetSimplex | None = None
        self._phase_one_done = False

    def _phase_one(self) -> list[Fraction] | None:
        """Find a feasible point by minimizing the largest violation ``t``."""
        constraints = self.polytope.constraints
        if all(
            (c.rhs == 0 if c.kind == "==" else c.rhs >= 0) for c in constraints
        ):
            return [_ZERO] * self.dim

        rows: list[Vector] = []
        rhs: list[Fraction] = []
        for c in constraints:
            rows.append(c.coefficients + (Fraction(-1),))
            rhs.append(c.rhs)
            if c.kind == "==":
                rows.append(tuple(-a for a in c.coefficients) + (Fraction(-1),))
                rhs.append(-c.rhs)
        rows.append((_ZERO,) * self.dim + (Fraction(-1),))
        rhs.append(_ZERO)

        auxiliary = _ActiveSetSimplex(self.dim + 1, rows, rhs)
        objective = [_ZERO] * self.dim + [Fraction(1)]
        start = [_ZERO] * self.dim + [max(-b for b in rhs)]
        auxiliary.settle(start, objective)
        auxiliary.optimize(objective)
        logger.debug(
            "phase one pivots=%d violation=%s", auxiliary.pivots, auxiliary.point[-1]
        )
        if auxiliary.point[-1] > 0:
            return None
        return auxiliary.point[:-1]

    def feasible_point(self) -> Vector | None:
        """Return a feasible vertex-or-point, or None if the polytope is empty."""
        if not self._phase_one_done:
            self._phase_one_done = True
            start = self._phase_one()
            if start is not None:
                constraints = self.polytope.constraints
                self._simplex = _ActiveSetSimplex(
                    self.dim,
                    [c.coefficients for c in constraints],
                    [c.rhs for c in constraints],
                    permanent=[i for i, c in enumerate(constraints) if c.kind == "=="],
                )
                self._simplex.settle(start, [_ZERO] * self.dim)
        if self._simplex is None:
            return None
        return tuple(self._simplex.point)

    def minimize(self, objective: Sequence[RationalLike]) -> LPResult:
        """Minimize ``objective`` starting from the last vertex visited."""
        objective = to_vector(objective)
        if self.feasible_point() is None:
            return LPResult("infeasible")
        status = self._simplex.optimize(objective)
        if status == "unbounded":
            return LPResult("unbounded")
        witness = tuple(self._simplex.point)
        return LPResult("optimal", _dot(objective, witness), witness)


def lp_solve(problem: LPProblem) -> LPResult:
    """Solve a linear program exactly.

    Parameters
    ----------
    problem
        Objective and constraints; variables are free unless constrained.

    Returns
    -------
    LPResult
        ``status`` is one of ``"optimal"``, ``"unbounded"``, ``"infeasible"``. If
        optimal, ``witness`` is a feasible point attaining ``value`` exactly.

    Examples
    --------
    >>> problem = LPProblem((1,), HPolytope(1, [LinearConstraint((-1,), -3)]))
    >>> result = lp_solve(problem)
    >>> result.status, result.value, result.witness
    ('optimal', Fraction(3, 1), (Fraction(3, 1),))

    """
    start = time.perf_counter()
    engine = _SimplexEngine(problem.constraints)
    result = engine.minimize(problem.objective)
    logger.debug(
        "lp_solve dim=%d rows=%d status=%s elapsed=%.4fs",
        problem.constraints.dim,
        len(problem.constraints.constraints),
        result.status,
        time.perf_counter() - start,
    )
    return result


# --- polyhedra -----------------------------------------------------------------------
def _padded(coefficients: Sequence, dim: int) -> list[int]:
    values = [int(x) for x in coefficients]
    return values + [0] * (dim - len(values))


def _ppl_constraint(c: LinearConstraint) -> ppl.Constraint:
    ints, _ = _integer_row(c.coefficients + (c.rhs,))
    *coefficients, rhs = ints
    if c.kind == "==":
        return ppl.Linear_Expression(coefficients, -rhs) == 0
    return ppl.Linear_Expression([-a for a in coefficients], rhs) >= 0


def _to_ppl(h: HPolytope) -> ppl.C_Polyhedron:
    """Build a closed ppl polyhedron from ``h``."""
    poly = ppl.C_Polyhedron(h.dim, "universe")
    for c in h.constraints:
        poly.add_constraint(_ppl_constraint(c))
    return poly


def _hull(points: Iterable[Vector], dim: int) -> ppl.C_Polyhedron:
    """Build the convex hull of rational points."""
    poly = ppl.C_Polyhedron(dim, "empty")
    for p in points:
        ints, divisor = _integer_row(p)
        poly.add_generator(ppl.point(ppl.Linear_Expression(ints, 0), divisor))
    return poly


def _constraints_of(poly: ppl.C_Polyhedron, dim: int) -> list[LinearConstraint]:
    """Read the minimized constraints back, equalities first."""
    rows = []
    for c in poly.minimized_constraints():
        coefficients = _padded(c.coefficients(), dim)
        term = int(c.inhomogeneous_term())
        if c.is_equality():
            rows.append(LinearConstraint(coefficients, -term, "==").normalized())
        else:
            rows.append(LinearConstraint([-a for a in coefficients], term))
    return sorted(rows, key=lambda r: (r.kind != "==", r.coefficients, r.rhs))


def _points_of(poly: ppl.C_Polyhedron, dim: int) -> list[Vector]:
    """Read the minimized generators back as sorted vertices."""
    vertices = []
    for g in poly.minimized_generators():
        if not g.is_point():
            raise UnboundedPolytopeError("The polytope is unbounded.")
        divisor = int(g.divisor())
        coordinates = _padded(g.coefficients(), dim)
        vertices.append(tuple(Fraction(x, divisor) for x in coordinates))
    return sorted(vertices)


def _as_points(points: Iterable[Sequence[RationalLike]]) -> list[Vector]:
    vectors = [to_vector(p) for p in points]
    if any(len(v) != len(vectors[0]) for v in vectors):
        raise ValueError(VALUE_ERROR_LENGTH_MISMATCH)
    return vectors


def enumerate_vertices(h: HPolytope) -> VPolytope:
    """Return the vertices of a bounded polytope.

    Parameters
    ----------
    h
        Inequality description of a bounded region.

    Returns
    -------
    VPolytope
        Sorted vertices and affine dimension; an empty region gives no vertices and
        affine dimension -1.

    Raises
    ------
    UnboundedPolytopeError
        If the region is unbounded.

    Examples
    --------
    >>> square = HPolytope(
    ...     2,
    ...     [
    ...         LinearConstraint((1, 0), 1),
    ...         LinearConstraint((0, 1), 1),
    ...         LinearConstraint((-1, 0), 0),
    ...         LinearConstraint((0, -1), 0),
    ...     ],
    ... )
    >>> polytope = enumerate_vertices(square)
    >>> len(polytope.vertices), polytope.affine_dim
    (4, 2)

    """
    start = time.perf_counter()
    poly = _to_ppl(h)
    if poly.is_empty():
        logger.debug("enumerate_vertices dim=%d empty", h.dim)
        return VPolytope((), -1)
    if not poly.is_bounded():
        raise UnboundedPolytopeError("The polytope is unbounded.")

    vertices = _points_of(poly, h.dim)
    affine_dim = int(poly.affine_dimension())
    logger.debug(
        "enumerate_vertices dim=%d rows=%d affine_dim=%d vertices=%d elapsed=%.4fs",
        h.dim,
        len(h.constraints),
        affine_dim,
        len(vertices),
        time.perf_counter() - start,
    )
    return VPolytope(tuple(vertices), affine_dim)


def count_facets(points: Sequence[Sequence[RationalLike]]) -> int:
    """Return the number of facets of the convex hull of ``points``.

    Facets are counted within the affine hull, so a single point has none and a
    segment has two in any ambient dimension.

    Examples
    --------
    >>> count_facets([(0, 0), (2, 0), (0, 2), (1, 1)])
    3
    >>> count_facets([(0, 0, 0), (1, 1, 1)])
    2

    """
    if not points:
        raise ValueError(VALUE_ERROR_EMPTY_POINTS)
    vectors = _as_points(points)
    hull = _hull(vectors, len(vectors[0]))
    return sum(1 for c in hull.minimized_constraints() if c.is_inequality())


# --- convex hulls --------------------------------------------------------------------
def in_convex_hull(
    point: Sequence[RationalLike], points: Sequence[Sequence[RationalLike]]
) -> bool:
    """Check whether ``point`` lies in the convex hull of ``points``.

    Examples
    --------
    >>> in_convex_hull((1, 1), [(0, 0), (2, 0), (0, 2)])
    True
    >>> in_convex_hull((2, 2), [(0, 0), (2, 0), (0, 2)])
    False

    """
    target = to_vector(point)
    if not points:
        return False
    vectors = _as_points([target, *points])
    dim = len(target)
    return _hull(vectors[1:], dim).contains(_hull(vectors[:1], dim))


def extreme_points(points: Iterable[Sequence[RationalLike]]) -> tuple[Vector, ...]:
    """Return the sorted, distinct points that are not convex combinations of others.

    Examples
    --------
    >>> extreme_points([(0,), (1,), (2,), (2,)])
    ((Fraction(0, 1),), (Fraction(2, 1),))

    """
    vectors = _as_points(points)
    if not vectors:
        return ()
    dim = len(vectors[0])
    return tuple(_points_of(_hull(vectors, dim), dim))


def project_points(
    points: Iterable[Sequence[Fraction]], indices: Sequence[int]
) -> list[Vector]:
    """Keep the coordinates ``indices`` of every point."""
    return [tuple(p[i] for i in indices) for p in points]


def vertices_of_projection(
    vertices: Iterable[Vector], indices: Sequence[int]
) -> VPolytope:
    """Project vertices and drop the images that are no longer vertices."""
    projected = project_points(vertices, indices)
    if not projected:
        return VPolytope((), -1)
    dim = len(projected[0])
    hull = _hull(projected, dim)
    return VPolytope(tuple(_points_of(hull, dim)), int(hull.affine_dimension()))


# --- projection ----------------------------------------------------------------------
def project_out(h: HPolytope, var_indices: Iterable[int]) -> HPolytope:
    """Eliminate variables from an inequality description.

    Every eliminated variable is unconstrained in the ppl polyhedron, which leaves a
    cylinder over the projection; its minimized constraints no longer mention the
    eliminated variables and are irredundant.

    Parameters
    ----------
    h
        Polytope to project.
    var_indices
        Indices of the variables to eliminate.

    Returns
    -------
    HPolytope
        Coordinate projection onto the remaining variables, in their original order.

    Raises
    ------
    ValueError
        If an index is out of range or all variables would be eliminated.

    Examples
    --------
    >>> box = HPolytope(2, [LinearConstraint((1, 1), 1), LinearConstraint((0, -1), 0)])
    >>> project_out(box, [1]).constraints
    (LinearConstraint(coefficients=(Fraction(1, 1),), rhs=Fraction(1, 1), kind='<='),)

    """
    eliminate = sorted(set(var_indices))
    if any(i < 0 or i >= h.dim for i in eliminate):
        raise ValueError(f"Indices {eliminate} out of range for dim {h.dim}.")
    if len(eliminate) == h.dim:
        raise ValueError("At least one variable must remain.")

    poly = _to_ppl(h)
    for var in eliminate:
        poly.unconstrain(ppl.Variable(var))
    rows = _constraints_of(poly, h.dim)
    logger.debug(
        "project_out eliminated=%s rows %d -> %d",
        eliminate,
        len(h.constraints),
        len(rows),
    )

    keep = [i for i in range(h.dim) if i not in set(eliminate)]
    return HPolytope(
        len(keep),
        [
            LinearConstraint([c.coefficients[i] for i in keep], c.rhs, c.kind)
            for c in rows
        ],
    )

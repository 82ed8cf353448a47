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

"""Module contains the quotient space R^n/R1 and the tropical metric."""

from __future__ import annotations  # required for Python < 3.10

from collections.abc import Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from tropfw.ratgeom import RationalLike, Vector, to_vector
from tropfw.utils import VALUE_ERROR_LENGTH_MISMATCH, VALUE_ERROR_QUOTIENT_LENGTH


@dataclass(frozen=True)
class QuotientPoint:
    """A point of R^n/R1 in canonical form, i.e. with first coordinate 0.

    Use ``canonicalize`` to build one from an arbitrary representative.
    """

    coords: Vector

    def __post_init__(self) -> None:  # noqa: D105
        coords = to_vector(self.coords)
        if len(coords) < 2:
            raise ValueError(VALUE_ERROR_QUOTIENT_LENGTH)
        if coords[0] != 0:
            raise ValueError(
                f"{coords} is not canonical; the first coordinate must be 0."
            )
        object.__setattr__(self, "coords", coords)

    @property
    def n(self) -> int:
        """Number of coordinates of a representative."""
        return len(self.coords)

    def __len__(self) -> int:  # noqa: D105
        return len(self.coords)

    def __iter__(self):  # noqa: ANN204, D105
        return iter(self.coords)

    def __getitem__(self, index: int) -> Fraction:  # noqa: D105
        return self.coords[index]


PointLike = Union[QuotientPoint, Sequence[RationalLike]]


def canonicalize(raw: PointLike) -> QuotientPoint:
    """Return the canonical representative of ``raw`` in R^n/R1.

    Parameters
    ----------
    raw
        Rational vector of length n >= 2, or a ``QuotientPoint``.

    Returns
    -------
    QuotientPoint
        ``raw - raw[0] * 1``.

    Raises
    ------
    ValueError
        If ``raw`` has fewer than two coordinates.

    Examples
    --------
    >>> canonicalize([1, 4, 2]).coords
    (Fraction(0, 1), Fraction(3, 1), Fraction(1, 1))

    >>> canonicalize(["5", "5", "5"]) == canonicalize([0, 0, 0])
    True

    """
    if isinstance(raw, QuotientPoint):
        return raw
    coords = to_vector(raw)
    if len(coords) < 2:
        raise ValueError(VALUE_ERROR_QUOTIENT_LENGTH)
    first = coords[0]
    return QuotientPoint(tuple(x - first for x in coords))


def difference_set(u: PointLike, v: PointLike) -> tuple[Fraction, ...]:
    """Return the coordinatewise differences ``u_i - v_i`` of canonical forms."""
    u, v = canonicalize(u), canonicalize(v)
    if u.n != v.n:
        raise ValueError(VALUE_ERROR_LENGTH_MISMATCH)
    return tuple(a - b for a, b in zip(u, v))


def trop_dist(u: PointLike, v: PointLike) -> Fraction:
    """Compute the tropical distance of two points of R^n/R1.

    The distance is the range ``max(u - v) - min(u - v)`` of the coordinatewise
    differences; it does not depend on the representatives.

    Parameters
    ----------
    u
        First point, canonical or raw.
    v
        Second point of the same length.

    Returns
    -------
    Fraction
        Nonnegative distance, zero iff ``u`` and ``v`` are the same class.

    Raises
    ------
    ValueError
        If the lengths differ or are smaller than 2.

    Examples
    --------
    >>> trop_dist([0, 0, 0], [0, 3, 1])
    Fraction(3, 1)

    >>> trop_dist([0, 2, 3, 5], [0, 4, 5, 7])
    Fraction(2, 1)

    """
    differences = difference_set(u, v)
    return max(differences) - min(differences)

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

"""Module holds various variables and helpers used in different unit tests."""

from __future__ import annotations  # required for Python < 3.10

from fractions import Fraction

import numpy as np

# --- samples --------------------------------------------------------------------------
# three points in R^3/R1 whose Fermat-Weber points form a triangle
triangle = [[0, 0, 0], [0, 3, 1], [0, 2, 5]]
triangle_d = Fraction(7)
triangle_vertices = [
    (Fraction(0), Fraction(1), Fraction(1)),
    (Fraction(0), Fraction(2), Fraction(1)),
    (Fraction(0), Fraction(2), Fraction(2)),
]

# three points in R^4/R1 whose Fermat-Weber points form a segment
segment = [[0, 0, 0, 5], [0, 0, 3, 1], [0, 4, 5, 7]]
segment_d = Fraction(9)
segment_vertices = [
    (Fraction(0), Fraction(2), Fraction(3), Fraction(5)),
    (Fraction(0), Fraction(3), Fraction(3), Fraction(5)),
]

# five essential points in R^3/R1 with the unique Fermat-Weber point 0
five_points = [[1, -1, -1], [-1, 1, -1], [1, 1, -1], [0, -1, 1], [-1, 0, 1]]

unique_n3 = [[-1, 1, 1], [1, -1, 1], [1, 1, -1]]

# four ultrametrics on four leaves, coordinates (01, 02, 03, 12, 13, 23)
four_trees = [
    ["32/109", "1", "124/673", "1", "32/109", "1"],
    ["1", "6/85", "1", "1", "203/445", "1"],
    ["1", "1", "1", "310/783", "310/783", "1/265"],
    ["47/510", "1", "1", "1", "1", "125/151"],
]

zero = (Fraction(0), Fraction(0), Fraction(0))

# --- messages -------------------------------------------------------------------------
FLOAT_ERR_MSG = "Floats are not exact; pass an int, a Fraction or a 'p/q' string."


# --- random helpers -------------------------------------------------------------------
def random_point(
    rng: np.random.Generator, n: int, low: int = -5, high: int = 5
) -> list:
    """Draw a point with small integer coordinates (ties are likely)."""
    return [int(x) for x in rng.integers(low, high, size=n, endpoint=True)]


def random_rational_point(
    rng: np.random.Generator, n: int, bound: int = 1000, denominator: int = 7
) -> list[Fraction]:
    """Draw a point with coordinates ``k / denominator``."""
    return [Fraction(int(k), denominator) for k in rng.integers(-bound, bound, size=n)]


def random_sample(
    rng: np.random.Generator, m: int, n: int, low: int = -5, high: int = 5
) -> list:
    """Draw m points in R^n/R1 with small integer coordinates."""
    return [random_point(rng, n, low, high) for _ in range(m)]


def random_weights(rng: np.random.Generator, k: int) -> list[Fraction]:
    """Draw positive rational weights summing to 1."""
    raw = [int(x) for x in rng.integers(1, 10, size=k, endpoint=True)]
    total = sum(raw)
    return [Fraction(x, total) for x in raw]

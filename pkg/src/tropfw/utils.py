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

"""Module contains shared constants, error classes, budgets and resource access."""

from __future__ import annotations  # required for Python < 3.10

import importlib.resources as pkg_resources
import json
import os
from typing import Any

from tropfw import resources

VALUE_ERROR_LENGTH_MISMATCH = "All vectors must have the same length."
VALUE_ERROR_QUOTIENT_LENGTH = "A point of R^n/R1 needs at least n = 2 coordinates."
VALUE_ERROR_EMPTY_SAMPLE = "A sample needs at least one point."
VALUE_ERROR_ESSENTIAL_SIZE = "Essentiality is only defined for samples with m >= 2."
VALUE_ERROR_EMPTY_POINTS = "'points' must not be empty."
VALUE_ERROR_CIRCULANT_SIZE = (
    "circulant_instance needs n >= 4; use UNIQUE_N3_SAMPLE for n = 3."
)
VALUE_ERROR_NOT_SQUARE = "The tropical determinant needs a square matrix."
VALUE_ERROR_LEAVES = "Trees need at least N = 3 leaves."
TYPE_ERROR_FLOAT = "Floats are not exact; pass an int, a Fraction or a 'p/q' string."

# environment variables holding the search budgets and their defaults
BUDGET_DEFAULTS = {
    "TROPFW_ASSIGNMENT_BUDGET": 1_000_000,
    "TROPFW_WITNESS_MAX_SIZE": 8,
    "TROPFW_WITNESS_NODE_BUDGET": 2_000_000,
    "TROPFW_TROPDET_MAX_SIDE": 8,
    "TROPFW_MAX_LEAVES": 6,
}

INSTANCES = ("triangle", "segment", "five_points", "four_trees", "unique_n3")


class UnboundedPolytopeError(ValueError):
    """Raised when a region that should be a polytope turns out to be unbounded."""


class BudgetExceededError(RuntimeError):
    """Raised when an exponential enumeration would exceed its configured budget."""


class ConsistencyError(AssertionError):
    """Raised when two independent computations disagree."""


def get_budget(name: str, override: int | None = None) -> int:
    """Return a search budget.

    An explicit ``override`` wins, then the environment variable ``name``, then the
    documented default.

    Parameters
    ----------
    name
        One of the keys of ``BUDGET_DEFAULTS``.
    override
        Value passed explicitly by the caller.

    Returns
    -------
    int
        Positive integer budget.

    Raises
    ------
    ValueError
        If ``name`` is unknown or the resulting value is not a positive integer.

    Examples
    --------
    >>> get_budget("TROPFW_WITNESS_MAX_SIZE", override=3)
    3

    """
    if name not in BUDGET_DEFAULTS:
        raise ValueError(
            f"{name!r} is not a known budget. Use {list(BUDGET_DEFAULTS)}."
        )

    if override is not None:
        value: Any = override
    else:
        value = os.environ.get(name, BUDGET_DEFAULTS[name])

    try:
        budget = int(value)
    except (TypeError, ValueError):
        raise ValueError(f"{name} must be a positive integer, got {value!r}.") from None
    if budget < 1:
        raise ValueError(f"{name} must be a positive integer, got {value!r}.")

    return budget


def load_instance(name: str) -> dict[str, Any]:
    """Load one of the shipped sample documents.

    Parameters
    ----------
    name
        Name of the instance, one of ``INSTANCES``.

    Returns
    -------
    dict
        Parsed JSON document with keys ``n``, ``points`` and optionally ``labels``.

    Raises
    ------
    AssertionError
        If ``name`` is not a shipped instance.

    Examples
    --------
    >>> load_instance("triangle")["points"]
    [['0', '0', '0'], ['0', '3', '1'], ['0', '2', '5']]

    """
    if name not in INSTANCES:
        raise AssertionError(
            f"{name!r} is not a shipped instance. 'name' must be in {list(INSTANCES)}."
        )

    path = pkg_resources.files(resources).joinpath(f"{name}.json")
    return json.loads(path.read_text(encoding="utf-8"))

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

"""Module contains ultrametrics, equidistant trees and Fermat-Weber points in treespace.

An ultrametric on N leaves is stored as a vector of length ``C(N, 2)`` indexed by the
pairs ``(0, 1), (0, 2), ..., (N - 2, N - 1)`` in lexicographic order. Leaves are
numbered from 0.
"""

from __future__ import annotations  # required for Python < 3.10

import itertools
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

import daiquiri
import numpy as np
import pandas as pd

from tropfw.fermatweber import FWResult, SampleMatrix, fw_extended_system, fw_polytope
from tropfw.ratgeom import (
    HPolytope,
    LinearConstraint,
    RationalLike,
    Vector,
    VPolytope,
    enumerate_vertices,
    matrix_rank,
    to_vector,
    vertices_of_projection,
)
from tropfw.tropcore import PointLike, canonicalize
from tropfw.utils import (
    VALUE_ERROR_EMPTY_POINTS,
    VALUE_ERROR_LEAVES,
    VALUE_ERROR_LENGTH_MISMATCH,
    BudgetExceededError,
    get_budget,
)

logger = daiquiri.getLogger(__name__)

Cluster = tuple[int, ...]
Seed = Union[int, np.random.SeedSequence, None]


def pairs(N: int) -> list[tuple[int, int]]:
    """Return the leaf pairs in coordinate order.

    Examples
    --------
    >>> pairs(3)
    [(0, 1), (0, 2), (1, 2)]

    """
    return list(itertools.combinations(range(N), 2))


def pair_index(i: int, j: int, N: int) -> int:
    """Return the coordinate of the pair ``{i, j}``.

    Examples
    --------
    >>> pair_index(2, 1, 4)
    3

    """
    i, j = min(i, j), max(i, j)
    if i == j or not 0 <= i < N or j >= N:
        raise ValueError(f"({i}, {j}) is not a pair of distinct leaves in range({N}).")
    return i * N - i * (i + 1) // 2 + (j - i - 1)


def leaves_from_length(length: int) -> int:
    """Return N with ``C(N, 2) == length``."""
    N = (1 + math.isqrt(1 + 8 * length)) // 2
    if N * (N - 1) // 2 != length:
        raise ValueError(f"Length {length} is not C(N, 2) for any N.")
    return N


def _check_length(v: Sequence, N: int) -> None:
    if N < 3:
        raise ValueError(VALUE_ERROR_LEAVES)
    if len(v) != N * (N - 1) // 2:
        raise ValueError(
            f"An ultrametric on {N} leaves has {N * (N - 1) // 2} coordinates, "
            f"got {len(v)}."
        )


def find_ultrametric_violation(
    v: Sequence[RationalLike], N: int
) -> Optional[tuple[int, int, int]]:
    """Return the first triple violating ``D_ik <= max(D_ij, D_jk)``, if any.

    Parameters
    ----------
    v
        Vector of length ``C(N, 2)``.
    N
        Number of leaves.

    Returns
    -------
    tuple or None
        ``(i, j, k)`` such that ``D_ik > max(D_ij, D_jk)``, or None if ``v`` is an
        ultrametric.

    Examples
    --------
    >>> find_ultrametric_violation([1, 2, 3], 3)
    (2, 0, 1)

    """
    _check_length(v, N)
    v = to_vector(v)
    for a, b, c in itertools.combinations(range(N), 3):
        for i, j, k in ((a, b, c), (b, c, a), (c, a, b)):
            d_ik = v[pair_index(i, k, N)]
            if d_ik > max(v[pair_index(i, j, N)], v[pair_index(j, k, N)]):
                return i, j, k
    return None


def is_ultrametric(v: Sequence[RationalLike], N: int) -> bool:
    """Check all triple conditions ``D_ik <= max(D_ij, D_jk)`` exactly.

    Raises
    ------
    ValueError
        If ``v`` does not have length ``C(N, 2)``.

    Examples
    --------
    >>> is_ultrametric([1, 1, 1, 1, 1, 1], 4), is_ultrametric([1, 2, 3], 3)
    (True, False)

    """
    return find_ultrametric_violation(v, N) is None


@dataclass(frozen=True)
class UltrametricVector:
    """Positive ultrametric on N leaves."""

    N: int
    coords: Vector

    def __post_init__(self) -> None:  # noqa: D105
        coords = to_vector(self.coords)
        _check_length(coords, self.N)
        if any(x <= 0 for x in coords):
            raise ValueError("Ultrametric coordinates must be positive.")
        violation = find_ultrametric_violation(coords, self.N)
        if violation is not None:
            raise ValueError(
                f"Not an ultrametric; leaves {violation} violate the bound."
            )
        object.__setattr__(self, "coords", coords)

    @classmethod
    def from_vector(cls, v: Sequence[RationalLike]) -> UltrametricVector:
        """Build from a raw vector, inferring N from its length."""
        return cls(leaves_from_length(len(v)), to_vector(v))

    def __getitem__(self, pair: tuple[int, int]) -> Fraction:  # noqa: D105
        return self.coords[pair_index(*pair, self.N)]


@dataclass(frozen=True)
class TreeTopology:
    """Rooted binary tree shape on N leaves, given by its ranked merges.

    ``merge_sequence`` lists the N - 1 merges ``(left, right)`` of two clusters,
    ordered by the size of the merged cluster and then lexicographically; any tree
    shape has exactly one such sequence.
    """

    N: int
    merge_sequence: tuple[tuple[Cluster, Cluster], ...]

    @classmethod
    def from_clusters(cls, N: int, clusters: Iterable[Iterable[int]]) -> TreeTopology:
        """Build the topology from its N - 1 clusters of two or more leaves."""
        found = sorted({tuple(sorted(c)) for c in clusters}, key=lambda c: (len(c), c))
        if len(found) != N - 1 or found[-1] != tuple(range(N)):
            raise ValueError(
                f"{found} are not the clusters of a binary tree on {N} leaves."
            )

        merges = []
        for cluster in found:
            members = set(cluster)
            # maximal proper sub-clusters, singletons included
            children: list[Cluster] = []
            candidates = sorted(found + [(x,) for x in cluster], key=len, reverse=True)
            for candidate in candidates:
                if len(candidate) < len(cluster) and members.issuperset(candidate):
                    if not any(set(candidate) <= set(c) for c in children):
                        children.append(candidate)
            if len(children) != 2:
                raise ValueError(f"Cluster {cluster} does not split into two children.")
            merges.append(tuple(sorted(children)))
        return cls(N, tuple(merges))

    @property
    def clusters(self) -> tuple[Cluster, ...]:
        """Clusters with at least two leaves, in merge order."""
        return tuple(tuple(sorted(left + right)) for left, right in self.merge_sequence)

    def lca(self, i: int, j: int) -> Cluster:
        """Return the smallest cluster containing both leaves."""
        return next(c for c in self.clusters if i in c and j in c)

    def parent(self, cluster: Cluster) -> Optional[Cluster]:
        """Return the smallest cluster strictly containing ``cluster``."""
        members = set(cluster)
        return next(
            (c for c in self.clusters if len(c) > len(cluster) and members <= set(c)),
            None,
        )


def _nested_trees(N: int) -> list:
    """Build every rooted binary tree as nested pairs by inserting leaves one by one."""

    def insert(tree, leaf: int) -> list:  # noqa: ANN001
        shapes = [(tree, leaf)]
        if isinstance(tree, tuple):
            left, right = tree
            shapes.extend((shape, right) for shape in insert(left, leaf))
            shapes.extend((left, shape) for shape in insert(right, leaf))
        return shapes

    trees: list = [(0, 1)]
    for leaf in range(2, N):
        trees = [shape for tree in trees for shape in insert(tree, leaf)]
    return trees


def _clusters_of(tree) -> list[Cluster]:  # noqa: ANN001
    if not isinstance(tree, tuple):
        return []
    left, right = tree
    below = _clusters_of(left) + _clusters_of(right)
    leaves = tuple(sorted(_leaves_of(tree)))
    return below + [leaves]


def _leaves_of(tree) -> list[int]:  # noqa: ANN001
    if not isinstance(tree, tuple):
        return [tree]
    return _leaves_of(tree[0]) + _leaves_of(tree[1])


def enumerate_topologies(N: int, max_leaves: int | None = None) -> list[TreeTopology]:
    """Enumerate all rooted binary tree shapes on N leaves.

    Parameters
    ----------
    N
        Number of leaves, at least 3.
    max_leaves
        Cap on N; defaults to ``TROPFW_MAX_LEAVES``.

    Returns
    -------
    list of TreeTopology
        ``(2 N - 3)!!`` distinct topologies.

    Raises
    ------
    ValueError
        If ``N < 3``.
    BudgetExceededError
        If N exceeds the cap.

    Examples
    --------
    >>> len(enumerate_topologies(3)), len(enumerate_topologies(4))
    (3, 15)

    """
    if N < 3:
        raise ValueError(VALUE_ERROR_LEAVES)
    max_leaves = get_budget("TROPFW_MAX_LEAVES", max_leaves)
    if N > max_leaves:
        raise BudgetExceededError(f"N = {N} exceeds the leaf cap {max_leaves}.")
    return [TreeTopology.from_clusters(N, _clusters_of(t)) for t in _nested_trees(N)]


def topology_cone(topology: TreeTopology) -> HPolytope:
    """Return the closed cone of ultrametrics with the given tree shape.

    Coordinates sharing a lowest common ancestor are equal, and the value at a
    cluster is at most the value at its parent cluster. The cone contains the line
    spanned by the all-one vector.
    """
    N = topology.N
    dim = N * (N - 1) // 2
    by_cluster: dict[Cluster, list[int]] = {c: [] for c in topology.clusters}
    for i, j in pairs(N):
        by_cluster[topology.lca(i, j)].append(pair_index(i, j, N))

    constraints = []
    for cluster, indices in by_cluster.items():
        for first, second in zip(indices, indices[1:]):
            coefficients = [0] * dim
            coefficients[first], coefficients[second] = 1, -1
            constraints.append(LinearConstraint(coefficients, 0, "=="))
        parent = topology.parent(cluster)
        if parent is not None:
            coefficients = [0] * dim
            coefficients[indices[0]] = 1
            coefficients[by_cluster[parent][0]] = -1
            constraints.append(LinearConstraint(coefficients, 0))
    return HPolytope(dim, constraints)


def cone_dimension(topology: TreeTopology) -> int:
    """Return the dimension of the cone of ``topology`` modulo the all-one line."""
    cone = topology_cone(topology)
    equalities = [c.coefficients for c in cone.equalities]
    rank = matrix_rank(equalities) if equalities else 0
    return cone.dim - rank - 1


def ultrametric_from_merges(
    N: int,
    merges: Sequence[tuple[int, int]],
    heights: Sequence[RationalLike],
) -> UltrametricVector:
    """Return the equidistant tree metric ``D_ij = 2 h(lca(i, j))`` of ranked merges.

    Parameters
    ----------
    N
        Number of leaves.
    merges
        N - 1 pairs of leaves; the k-th merge joins the clusters currently holding
        its two leaves.
    heights
        Strictly increasing positive merge heights, not normalized.

    Returns
    -------
    UltrametricVector
        The induced ultrametric.

    Examples
    --------
    >>> tree = ultrametric_from_merges(3, [(0, 1), (0, 2)], ["1/4", "1/2"])
    >>> [str(x) for x in tree.coords]
    ['1/2', '1', '1']

    """
    if N < 3:
        raise ValueError(VALUE_ERROR_LEAVES)
    heights = to_vector(heights)
    if len(merges) != N - 1 or len(heights) != N - 1:
        raise ValueError(f"A tree on {N} leaves needs {N - 1} merges and heights.")
    if heights[0] <= 0 or any(a >= b for a, b in zip(heights, heights[1:])):
        raise ValueError("Merge heights must be positive and strictly increasing.")

    cluster_of = {leaf: frozenset([leaf]) for leaf in range(N)}
    coords = [Fraction(0)] * (N * (N - 1) // 2)
    for (a, b), height in zip(merges, heights):
        left, right = cluster_of[a], cluster_of[b]
        if left == right:
            raise ValueError(f"Leaves {a} and {b} are already in the same cluster.")
        for i in left:
            for j in right:
                coords[pair_index(i, j, N)] = 2 * height
        merged = left | right
        for leaf in merged:
            cluster_of[leaf] = merged
    return UltrametricVector(N, tuple(coords))


def random_equidistant_tree(N: int, rng_seed: Seed = None) -> UltrametricVector:
    """Draw a random equidistant tree by a coalescent process.

    Starting from N singleton clusters, two uniformly chosen clusters are merged at
    each step. Merge heights are distinct random integers in increasing order,
    divided by the largest one so that the root sits at height 1 and every
    coordinate is at most 2.

    Examples
    --------
    >>> tree = random_equidistant_tree(5, 11)
    >>> max(tree.coords), is_ultrametric(tree.coords, 5)
    (Fraction(2, 1), True)

    """
    if N < 3:
        raise ValueError(VALUE_ERROR_LEAVES)
    rng = np.random.default_rng(rng_seed)
    draws = sorted(int(x) + 1 for x in rng.choice(10**6, size=N - 1, replace=False))
    heights = [Fraction(x, draws[-1]) for x in draws]

    active = list(range(N))
    merges = []
    for _ in range(N - 1):
        chosen = rng.choice(len(active), size=2, replace=False)
        first, second = sorted(int(k) for k in chosen)
        merges.append((active[first], active[second]))
        del active[second]
    return ultrametric_from_merges(N, merges, heights)


def ultrametric_representative(point: PointLike) -> Vector:
    """Shift a class of R^n/R1 so that its smallest coordinate is 1.

    Examples
    --------
    >>> ultrametric_representative([0, 0, 0])
    (Fraction(1, 1), Fraction(1, 1), Fraction(1, 1))

    """
    coords = canonicalize(point).coords
    low = min(coords)
    return tuple(x - low + 1 for x in coords)


@dataclass(frozen=True)
class ConeIntersection:
    """Fermat-Weber points whose class meets the cone of ``topology``."""

    topology: TreeTopology
    polytope: VPolytope

    @property
    def dim(self) -> int:
        """Affine dimension, -1 if empty."""
        return self.polytope.affine_dim


@dataclass(frozen=True)
class TreespaceIntersection:
    """Fermat-Weber polytope of a tree sample and its intersection with treespace."""

    fw: FWResult
    cones: tuple[ConeIntersection, ...]

    @property
    def max_dim(self) -> int:
        """Largest dimension over all cones, -1 if treespace is missed."""
        return max((c.dim for c in self.cones), default=-1)

    @property
    def vertices(self) -> tuple[Vector, ...]:
        """Sorted union of the vertices of all nonempty cone intersections."""
        return tuple(sorted({v for c in self.cones for v in c.polytope.vertices}))

    @property
    def unique(self) -> bool:
        """True if the intersection is a single point."""
        return self.max_dim == 0 and len(self.vertices) == 1


def _as_trees(
    sample: Iterable[UltrametricVector | Sequence[RationalLike]],
) -> list[Vector]:
    vectors = [
        s.coords if isinstance(s, UltrametricVector) else to_vector(s) for s in sample
    ]
    if not vectors:
        raise ValueError(VALUE_ERROR_EMPTY_POINTS)
    if any(len(v) != len(vectors[0]) for v in vectors):
        raise ValueError(VALUE_ERROR_LENGTH_MISMATCH)
    return vectors


def fw_intersect_treespace(
    sample: Iterable[UltrametricVector | Sequence[RationalLike]],
    max_leaves: int | None = None,
) -> TreespaceIntersection:
    """Intersect the Fermat-Weber polytope of tree metrics with treespace.

    For every tree shape the lifted Fermat-Weber system in ``(u, c)`` is joined by a
    scalar ``s``; the cone constraints hold for the representative ``y = u + s 1``,
    ``y`` is nonnegative and ``s`` is bounded by the largest shift any Fermat-Weber
    vertex needs. Projecting the vertices onto ``u`` gives the Fermat-Weber points
    whose class contains a tree of that shape.

    Parameters
    ----------
    sample
        Ultrametrics on the same number of leaves.
    max_leaves
        Cap on the number of leaves; defaults to ``TROPFW_MAX_LEAVES``.

    Returns
    -------
    TreespaceIntersection
        Fermat-Weber result and one ``ConeIntersection`` per tree shape.

    """
    vectors = _as_trees(sample)
    N = leaves_from_length(len(vectors[0]))
    topologies = enumerate_topologies(N, max_leaves)

    matrix = SampleMatrix.from_rows(vectors)
    fw = fw_polytope(matrix)
    n, m = matrix.n, matrix.m
    shift_bound = max(-min(v) for v in fw.vertices)

    base = fw_extended_system(matrix, fw.d, tight=True)
    lifted = [
        LinearConstraint(c.coefficients + (0,), c.rhs, c.kind) for c in base.constraints
    ]
    lifted.append(LinearConstraint([0] * (n + m) + [1], shift_bound))

    cones = []
    for topology in topologies:
        cone = topology_cone(topology)
        rows = list(lifted)
        for c in cone.constraints:
            rows.append(
                LinearConstraint(
                    c.coefficients + (0,) * m + (sum(c.coefficients),), c.rhs, c.kind
                )
            )
        for left, right in topology.merge_sequence:
            if len(left) == 1 and len(right) == 1:
                coefficients = [0] * (n + m + 1)
                coefficients[pair_index(left[0], right[0], N)] = -1
                coefficients[-1] = -1
                rows.append(LinearConstraint(coefficients, 0))
        vertices = enumerate_vertices(HPolytope(n + m + 1, rows)).vertices
        projection = vertices_of_projection(vertices, range(n))
        cones.append(ConeIntersection(topology, projection))

    result = TreespaceIntersection(fw, tuple(cones))
    logger.debug(
        "fw_intersect_treespace N=%d m=%d fw_dim=%d max_dim=%d",
        N,
        m,
        fw.affine_dim,
        result.max_dim,
    )
    return result


def is_all_ones(point: PointLike) -> bool:
    """True if ``point`` is the class of the all-one vector."""
    return not any(canonicalize(point).coords)


@dataclass(frozen=True)
class TreespaceExperiment:
    """Counts of the largest intersection dimension per subsample size.

    ``unique_hits`` lists ``(size, pool indices, representative, is all-one)`` for
    every subsample whose Fermat-Weber points meet treespace in a single point.
    """

    table: pd.DataFrame
    unique_hits: tuple[tuple[int, tuple[int, ...], Vector, bool], ...]


def random_tree_pool(
    pool_size: int, N: int = 4, rng_seed: Seed = None
) -> list[UltrametricVector]:
    """Draw ``pool_size`` random equidistant trees with independent child seeds."""
    seq = (
        rng_seed
        if isinstance(rng_seed, np.random.SeedSequence)
        else np.random.SeedSequence(rng_seed)
    )
    children = seq.spawn(pool_size)
    return [random_equidistant_tree(N, child) for child in children]


def table1_experiment(
    pool_size: int = 60,
    subsample_sizes: Sequence[int] = (4, 5, 6),
    trials_per_size: int = 100,
    rng_seed: int = 0,
    N: int = 4,
    max_leaves: int | None = None,
) -> TreespaceExperiment:
    """Tabulate the dimension of Fermat-Weber points in treespace for random trees.

    A pool of random equidistant trees is drawn; for every size, ``trials_per_size``
    subsets of the pool are intersected with treespace and the largest dimension is
    counted. Single-point intersections are checked against the all-one class and a
    different point is logged as a warning.

    Parameters
    ----------
    pool_size
        Number of trees in the pool.
    subsample_sizes
        Subset sizes, each at most ``pool_size``.
    trials_per_size
        Number of subsets per size.
    rng_seed
        Seed of the pool and of the subset draws.
    N
        Number of leaves; sizes above 4 are slow.
    max_leaves
        Cap on N; defaults to ``TROPFW_MAX_LEAVES``.

    Returns
    -------
    TreespaceExperiment
        Table with one row per size and one column per dimension; empty if
        ``trials_per_size`` is 0.

    """
    if any(not 1 <= size <= pool_size for size in subsample_sizes):
        raise ValueError(f"Subsample sizes must lie between 1 and {pool_size}.")
    if trials_per_size < 0:
        raise ValueError(
            f"'trials_per_size' must be nonnegative, got {trials_per_size}."
        )
    if trials_per_size == 0:
        return TreespaceExperiment(pd.DataFrame(dtype="int64"), ())

    pool_seed, subset_seed = np.random.SeedSequence(rng_seed).spawn(2)
    pool = random_tree_pool(pool_size, N, pool_seed)
    rng = np.random.default_rng(subset_seed)

    records = []
    hits = []
    for size in subsample_sizes:
        for trial in range(trials_per_size):
            chosen = rng.choice(pool_size, size, replace=False)
            indices = tuple(sorted(int(k) for k in chosen))
            result = fw_intersect_treespace([pool[k] for k in indices], max_leaves)
            records.append((size, result.max_dim))
            if result.unique:
                point = result.vertices[0]
                all_ones = is_all_ones(point)
                representative = ultrametric_representative(point)
                hits.append((size, indices, representative, all_ones))
                if not all_ones:
                    logger.warning(
                        "unique Fermat-Weber tree is not the all-one class: size=%d "
                        "trees=%s point=%s",
                        size,
                        indices,
                        [str(x) for x in representative],
                    )
        logger.info("table1_experiment size=%d done (%d trials)", size, trials_per_size)

    frame = pd.DataFrame.from_records(records, columns=["size", "max_dim"])
    columns = sorted(set(range(N - 1)) | {int(x) for x in frame["max_dim"]})
    table = (
        pd.crosstab(frame["size"], frame["max_dim"])
        .reindex(index=list(subsample_sizes), columns=columns, fill_value=0)
        .astype("int64")
    )
    table.index.name, table.columns.name = "size", "max_dim"
    return TreespaceExperiment(table, tuple(hits))

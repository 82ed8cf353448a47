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

"""Command line interface.

Every command writes one JSON document to stdout; logs go to stderr. Numbers are
printed as exact rational strings and all indices are 0-based.

Exit codes are 0 on success, 1 for usage and input errors, 2 when a precondition
fails (e.g. ``a < d`` or an exhausted budget) and 3 when an internal cross-check
disagrees.
"""

from __future__ import annotations  # required for Python < 3.10

import argparse
import hashlib
import json
import math
import sys
import time
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

import daiquiri
from matplotlib.figure import Figure

from tropfw import degeneracy, fermatweber, treespace
from tropfw.ratgeom import Vector, format_rational, in_convex_hull, to_rational
from tropfw.tropcore import trop_dist
from tropfw.utils import (
    INSTANCES,
    BudgetExceededError,
    ConsistencyError,
    UnboundedPolytopeError,
    load_instance,
)

logger = daiquiri.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PRECONDITION = 2
EXIT_CONSISTENCY = 3


class DocumentError(ValueError):
    """Raised when an input document cannot be parsed."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _strings(values: Sequence[Fraction]) -> list[str]:
    return [format_rational(x) for x in values]


@dataclass(frozen=True)
class SampleDocument:
    """Parsed input file.

    The JSON document reads ``{"n": 3, "points": [["0", "3", "1"], ...]}`` with an
    optional list of ``labels``.
    """

    n: int
    points: tuple[Vector, ...]
    labels: Optional[tuple[str, ...]] = None
    digest: str = ""

    @classmethod
    def parse(cls, raw: dict[str, Any], digest: str = "") -> SampleDocument:
        """Validate a decoded JSON document.

        Raises
        ------
        DocumentError
            If a field is missing, a number is not an exact rational string or the
            point lengths disagree with ``n``.

        """
        if not isinstance(raw, dict) or "n" not in raw or "points" not in raw:
            raise DocumentError("The document needs the keys 'n' and 'points'.")
        n = raw["n"]
        if not isinstance(n, int) or isinstance(n, bool) or n < 2:
            raise DocumentError(f"'n' must be an integer >= 2, got {n!r}.")
        if not isinstance(raw["points"], list) or not raw["points"]:
            raise DocumentError("'points' must be a nonempty list.")

        points = []
        for index, point in enumerate(raw["points"]):
            if not isinstance(point, list) or len(point) != n:
                raise DocumentError(f"Point {index} must be a list of {n} rationals.")
            try:
                points.append(tuple(to_rational(x) for x in point))
            except (TypeError, ValueError) as err:
                raise DocumentError(f"Point {index}: {err}") from None

        labels = raw.get("labels")
        if labels is not None:
            if not isinstance(labels, list) or len(labels) != len(points):
                raise DocumentError("'labels' must hold one label per point.")
            labels = tuple(str(x) for x in labels)
        return cls(n, tuple(points), labels, digest)

    @classmethod
    def load(cls, source: str) -> SampleDocument:
        """Read a JSON file, or one of the shipped instances by name."""
        path = Path(source)
        try:
            if path.is_file():
                text = path.read_text(encoding="utf-8")
                raw = json.loads(text)
            elif source in INSTANCES:
                raw = load_instance(source)
                text = json.dumps(raw, sort_keys=True)
            else:
                raise DocumentError(
                    f"{source!r} is neither a file nor one of {list(INSTANCES)}."
                )
        except json.JSONDecodeError as err:
            raise DocumentError(f"{source}: invalid JSON ({err.msg}).") from None
        digest = hashlib.sha256(text.encode("utf-8")).hexdigest()
        return cls.parse(raw, digest)

    def to_sample(self) -> fermatweber.SampleMatrix:
        """Return the canonicalized sample."""
        return fermatweber.SampleMatrix.from_rows(self.points)


@dataclass
class RunReport:
    """JSON report of one command; unset entries are left out."""

    command: str
    digest: str = ""
    d: Optional[Fraction] = None
    vertices: Optional[Sequence[Vector]] = None
    affine_dim: Optional[int] = None
    flags: dict[str, Any] = field(default_factory=dict)
    extra: dict[str, Any] = field(default_factory=dict)
    timing: Optional[float] = None

    def to_dict(self) -> dict[str, Any]:
        """Return the report with every number as an exact string."""
        report: dict[str, Any] = {"command": self.command}
        if self.digest:
            report["input_sha256"] = self.digest
        if self.d is not None:
            report["d"] = format_rational(self.d)
        if self.vertices is not None:
            report["vertices"] = [_strings(v) for v in self.vertices]
        if self.affine_dim is not None:
            report["affine_dim"] = self.affine_dim
        if self.flags:
            report["flags"] = self.flags
        report.update(self.extra)
        if self.timing is not None:
            report["timing_seconds"] = f"{self.timing:.6f}"
        return report

    def dump(self) -> None:
        """Print the report to stdout."""
        print(json.dumps(self.to_dict(), indent=2))


def _pair_to_json(pair: Optional[degeneracy.IndexSubsetPair]) -> Optional[dict]:
    if pair is None:
        return None
    return {
        "S": [list(c) for c in sorted(pair.S)],
        "T": [list(c) for c in sorted(pair.T)],
    }


def cmd_dist(args: argparse.Namespace) -> None:
    """Print the tropical distance of two points of a document."""
    document = SampleDocument.load(args.file)
    for index in (args.i, args.j):
        if not 0 <= index < len(document.points):
            raise DocumentError(
                f"Point index {index} is out of range for {len(document.points)} "
                "points."
            )
    print(format_rational(trop_dist(document.points[args.i], document.points[args.j])))


def cmd_fw(args: argparse.Namespace) -> None:
    """Compute the minimal distance sum and the Fermat-Weber polytope."""
    start = time.perf_counter()
    document = SampleDocument.load(args.file)
    sample = document.to_sample()

    method = "direct" if args.direct else "extended"
    result = fermatweber.fw_polytope(sample, method=method)
    flags: dict[str, Any] = {"unique": result.unique}
    if sample.m >= 2:
        flags["essential"] = fermatweber.is_essential(sample).essential

    extra: dict[str, Any] = {"facets": result.facets}
    if args.oracle:
        try:
            combinatorial = fermatweber.min_sum_combinatorial(sample)
        except BudgetExceededError as err:
            logger.warning("oracle skipped, keeping the LP value: %s", err)
            flags["oracle_agrees"] = "skipped"
        else:
            extra["oracle_d"] = format_rational(combinatorial)
            if combinatorial != result.d:
                raise ConsistencyError(
                    f"LP value {result.d} differs from the combinatorial value "
                    f"{combinatorial}."
                )
            flags["oracle_agrees"] = True
    if args.hull_check:
        for index, vertex in enumerate(result.vertices):
            if not fermatweber.is_fw_point(vertex, sample, result.d):
                raise ConsistencyError(f"Vertex {vertex} is not a Fermat-Weber point.")
            others = result.vertices[:index] + result.vertices[index + 1 :]
            if in_convex_hull(vertex, others):
                raise ConsistencyError(
                    f"Vertex {vertex} lies in the hull of the others."
                )
        flags["hull_check"] = True
    if args.witness:
        search = degeneracy.find_similar_pair(sample)
        flags["witness"] = search.verdict
        extra["witness"] = _pair_to_json(search.pair)

    RunReport(
        "fw",
        document.digest,
        result.d,
        result.vertices,
        result.affine_dim,
        flags,
        extra,
        time.perf_counter() - start if args.timing else None,
    ).dump()


def _polygon_order(points: Sequence[tuple[float, float]]) -> list[tuple[float, float]]:
    cx = sum(p[0] for p in points) / len(points)
    cy = sum(p[1] for p in points) / len(points)
    return sorted(points, key=lambda p: math.atan2(p[1] - cy, p[0] - cx))


def write_ellipse_svg(
    path: str, vertices: Sequence[Vector], foci: Sequence[Vector], title: str
) -> None:
    """Draw a polygon of R^3/R1 in the coordinates ``(x_2, x_3)`` with its foci."""
    polygon = _polygon_order([(float(v[1]), float(v[2])) for v in vertices])
    figure = Figure(figsize=(4, 4))
    ax = figure.add_subplot()
    if len(polygon) >= 3:
        xs, ys = zip(*(polygon + polygon[:1]))
        ax.fill(xs, ys, facecolor="tab:blue", alpha=0.25, edgecolor="tab:blue")
    else:
        xs, ys = zip(*polygon)
        ax.plot(xs, ys, color="tab:blue", marker="o")
    ax.scatter([float(f[1]) for f in foci], [float(f[2]) for f in foci], color="black")
    ax.set_xlabel("x2")
    ax.set_ylabel("x3")
    ax.set_title(title)
    ax.set_aspect("equal")
    figure.savefig(path, format="svg", metadata={"Date": None})
    logger.info("wrote %s", path)


def cmd_ellipse(args: argparse.Namespace) -> None:
    """Compute a tropical k-ellipse and optionally draw it."""
    start = time.perf_counter()
    document = SampleDocument.load(args.file)
    foci = document.to_sample()
    try:
        a = to_rational(args.a)
    except (TypeError, ValueError) as err:
        raise DocumentError(f"--a: {err}") from None

    ellipse = fermatweber.k_ellipse(fermatweber.EllipseSpec(foci, a))
    if args.svg:
        if foci.n == 3:
            write_ellipse_svg(
                args.svg,
                ellipse.polytope.vertices,
                foci.matrix,
                f"a = {a}, {len(ellipse.polytope.vertices)} vertices",
            )
        else:
            logger.warning("SVG output needs n = 3, got n = %d; skipped", foci.n)

    RunReport(
        "ellipse",
        document.digest,
        ellipse.d,
        ellipse.polytope.vertices,
        ellipse.polytope.affine_dim,
        {"degenerate": ellipse.degenerate},
        {"a": format_rational(a)},
        time.perf_counter() - start if args.timing else None,
    ).dump()


def cmd_treespace_check(args: argparse.Namespace) -> None:
    """Check every point of a document for the ultrametric condition."""
    document = SampleDocument.load(args.file)
    N = treespace.leaves_from_length(document.n)
    results = []
    for index, point in enumerate(document.points):
        violation = treespace.find_ultrametric_violation(point, N)
        results.append(
            {
                "index": index,
                "ultrametric": violation is None,
                "violation": None if violation is None else list(violation),
            }
        )
    RunReport("treespace check", document.digest, extra={"results": results}).dump()


def cmd_treespace_intersect(args: argparse.Namespace) -> None:
    """Intersect the Fermat-Weber polytope of tree metrics with treespace."""
    start = time.perf_counter()
    document = SampleDocument.load(args.file)
    result = treespace.fw_intersect_treespace(document.points, args.max_leaves)
    representatives = [treespace.ultrametric_representative(v) for v in result.vertices]
    RunReport(
        "treespace intersect",
        document.digest,
        result.fw.d,
        result.fw.vertices,
        result.fw.affine_dim,
        {
            "unique": result.unique,
            "all_ones": result.unique and treespace.is_all_ones(result.vertices[0]),
        },
        {
            "max_dim": result.max_dim,
            "treespace_vertices": [_strings(v) for v in result.vertices],
            "ultrametric_representatives": [_strings(v) for v in representatives],
        },
        time.perf_counter() - start if args.timing else None,
    ).dump()


def cmd_treespace_experiment(args: argparse.Namespace) -> None:
    """Run the treespace dimension experiment."""
    experiment = treespace.table1_experiment(
        args.pool, args.sizes, args.trials, args.seed, args.leaves, args.max_leaves
    )
    table = {
        str(size): {str(dim): int(count) for dim, count in row.items()}
        for size, row in experiment.table.iterrows()
    }
    hits = [
        {
            "size": size,
            "trees": list(indices),
            "representative": _strings(point),
            "all_ones": all_ones,
        }
        for size, indices, point, all_ones in experiment.unique_hits
    ]
    RunReport(
        "treespace experiment",
        extra={
            "pool": args.pool,
            "seed": args.seed,
            "trials": args.trials,
            "table": table,
            "unique_hits": hits,
        },
    ).dump()


def cmd_treespace_pool(args: argparse.Namespace) -> None:
    """Print a pool of random equidistant trees as an input document."""
    pool = treespace.random_tree_pool(args.pool, args.leaves, args.seed)
    document = {
        "n": args.leaves * (args.leaves - 1) // 2,
        "points": [_strings(tree.coords) for tree in pool],
        "labels": [f"tree{k}" for k in range(len(pool))],
    }
    print(json.dumps(document, indent=2))


def cmd_degeneracy_witness(args: argparse.Namespace) -> None:
    """Search a similar pair of cell sets with equal sums."""
    document = SampleDocument.load(args.file)
    sample = document.to_sample()
    search = degeneracy.find_similar_pair(sample, args.max_size, args.node_budget)
    extra: dict[str, Any] = {"verdict": search.verdict, "examined": search.examined}
    if search.pair is not None:
        extra.update(_pair_to_json(search.pair))
        extra["sums"] = _strings(search.pair.sums(sample.matrix))
    RunReport(
        "degeneracy witness",
        document.digest,
        flags={"witness": search.verdict},
        extra=extra,
    ).dump()


def cmd_degeneracy_tropdet(args: argparse.Namespace) -> None:
    """Report the tropical determinants of all square minors."""
    document = SampleDocument.load(args.file)
    report = degeneracy.minor_report(document.points)
    singular = report[report["singular"]]
    equal_terms = report[report["equal_terms"]]
    RunReport(
        "degeneracy tropdet",
        document.digest,
        flags={
            "singular_minor": not singular.empty,
            "equal_terms": not equal_terms.empty,
        },
        extra={
            "minors": len(report),
            "verdict": "singular minor found" if len(singular) else "no singular minor",
            "singular_minors": [
                {"rows": list(r), "columns": list(c)}
                for r, c in zip(singular["rows"], singular["columns"])
            ],
            "minors_with_equal_terms": len(equal_terms),
        },
    ).dump()


def cmd_degeneracy_montecarlo(args: argparse.Namespace) -> None:
    """Classify random samples by essentiality and uniqueness."""
    summary = degeneracy.random_sample_experiment(
        args.m, args.n, args.trials, args.seed, args.numerator_bound, args.denominator
    )
    hits = [
        {
            "verdict": check.verdict,
            "consistent": check.consistent,
            **(_pair_to_json(check.pair) or {}),
        }
        for check in summary.hits
    ]
    for check in summary.hits:
        if not check.consistent:
            raise ConsistencyError(
                "A unique essential random sample has no similar pair."
            )
    RunReport(
        "degeneracy montecarlo",
        extra={
            "m": args.m,
            "n": args.n,
            "trials": args.trials,
            "seed": args.seed,
            "counts": {k: int(v) for k, v in summary.counts.items()},
            "hits": hits,
        },
    ).dump()


def build_parser() -> argparse.ArgumentParser:
    """Return the argument parser of the ``tropfw`` command."""
    parser = _Parser(prog="tropfw", description="Exact tropical Fermat-Weber points.")
    parser.add_argument(
        "--log-level",
        default="WARNING",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        help="Logging level on stderr (default: WARNING)",
    )
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="Same as --log-level DEBUG"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    source_help = "JSON sample document, or a shipped instance name"

    p_dist = commands.add_parser("dist", help="Tropical distance of two points")
    p_dist.add_argument("file", help=source_help)
    p_dist.add_argument("i", type=int, help="First point index (0-based)")
    p_dist.add_argument("j", type=int, help="Second point index (0-based)")
    p_dist.set_defaults(func=cmd_dist)

    p_fw = commands.add_parser("fw", help="Fermat-Weber polytope of a sample")
    p_fw.add_argument("file", help=source_help)
    p_fw.add_argument(
        "--oracle", action="store_true", help="Cross-check d combinatorially"
    )
    p_fw.add_argument(
        "--hull-check", action="store_true", help="Verify every reported vertex"
    )
    p_fw.add_argument(
        "--direct", action="store_true", help="Enumerate the unlifted inequality family"
    )
    p_fw.add_argument("--witness", action="store_true", help="Search a similar pair")
    p_fw.add_argument("--timing", action="store_true", help="Add elapsed seconds")
    p_fw.set_defaults(func=cmd_fw)

    p_ellipse = commands.add_parser("ellipse", help="Tropical k-ellipse of a sample")
    p_ellipse.add_argument("file", help=source_help)
    p_ellipse.add_argument(
        "--a", required=True, help="Level a >= d as a rational string"
    )
    p_ellipse.add_argument("--svg", help="Write an SVG drawing (n = 3 only)")
    p_ellipse.add_argument("--timing", action="store_true", help="Add elapsed seconds")
    p_ellipse.set_defaults(func=cmd_ellipse)

    p_tree = commands.add_parser("treespace", help="Ultrametrics and treespace")
    tree_commands = p_tree.add_subparsers(dest="treespace_command", required=True)

    p_check = tree_commands.add_parser("check", help="Check the ultrametric condition")
    p_check.add_argument("file", help=source_help)
    p_check.set_defaults(func=cmd_treespace_check)

    p_intersect = tree_commands.add_parser(
        "intersect", help="Fermat-Weber points within treespace"
    )
    p_intersect.add_argument("file", help=source_help)
    p_intersect.add_argument(
        "--max-leaves", type=int, help="Cap on the number of leaves"
    )
    p_intersect.add_argument(
        "--timing", action="store_true", help="Add elapsed seconds"
    )
    p_intersect.set_defaults(func=cmd_treespace_intersect)

    p_experiment = tree_commands.add_parser(
        "experiment", help="Dimension counts for random tree subsamples"
    )
    p_experiment.add_argument(
        "--pool", type=int, default=60, help="Pool size (default: 60)"
    )
    p_experiment.add_argument(
        "--sizes", type=int, nargs="+", default=[4, 5, 6], help="Subsample sizes"
    )
    p_experiment.add_argument(
        "--trials", type=int, default=100, help="Subsamples per size (default: 100)"
    )
    p_experiment.add_argument("--seed", type=int, default=0, help="Random seed")
    p_experiment.add_argument(
        "--leaves", type=int, default=4, help="Leaves (default: 4)"
    )
    p_experiment.add_argument(
        "--max-leaves", type=int, help="Cap on the number of leaves"
    )
    p_experiment.set_defaults(func=cmd_treespace_experiment)

    p_pool = tree_commands.add_parser("pool", help="Print random equidistant trees")
    p_pool.add_argument("--pool", type=int, default=60, help="Pool size (default: 60)")
    p_pool.add_argument("--seed", type=int, default=0, help="Random seed")
    p_pool.add_argument("--leaves", type=int, default=4, help="Leaves (default: 4)")
    p_pool.set_defaults(func=cmd_treespace_pool)

    p_degeneracy = commands.add_parser("degeneracy", help="Degeneracy checks")
    degeneracy_commands = p_degeneracy.add_subparsers(
        dest="degeneracy_command", required=True
    )

    p_witness = degeneracy_commands.add_parser("witness", help="Search a similar pair")
    p_witness.add_argument("file", help=source_help)
    p_witness.add_argument("--max-size", type=int, help="Largest |S|")
    p_witness.add_argument(
        "--node-budget", type=int, help="Largest number of candidates"
    )
    p_witness.set_defaults(func=cmd_degeneracy_witness)

    p_tropdet = degeneracy_commands.add_parser(
        "tropdet", help="Tropical determinants of all square minors"
    )
    p_tropdet.add_argument("file", help=source_help)
    p_tropdet.set_defaults(func=cmd_degeneracy_tropdet)

    p_montecarlo = degeneracy_commands.add_parser(
        "montecarlo", help="Classify random samples"
    )
    p_montecarlo.add_argument("--m", type=int, default=3, help="Points per sample")
    p_montecarlo.add_argument("--n", type=int, default=3, help="Coordinates per point")
    p_montecarlo.add_argument(
        "--trials", type=int, default=100, help="Number of samples"
    )
    p_montecarlo.add_argument("--seed", type=int, default=0, help="Random seed")
    p_montecarlo.add_argument(
        "--numerator-bound", type=int, default=10**6, help="Largest |numerator|"
    )
    p_montecarlo.add_argument(
        "--denominator", type=int, default=997, help="Common denominator"
    )
    p_montecarlo.set_defaults(func=cmd_degeneracy_montecarlo)

    return parser


def main(args: Optional[Sequence[str]] = None) -> int:
    """Run the ``tropfw`` command and return its exit code."""
    parser = build_parser()
    args = parser.parse_args(args)

    log_output = daiquiri.output.Stream(
        sys.stderr,
        formatter=daiquiri.formatter.ColorFormatter(
            fmt="[%(levelname)s] %(name)s: %(message)s"
        ),
    )
    level = "DEBUG" if args.verbose else args.log_level
    daiquiri.setup(level=level, outputs=[log_output])

    try:
        args.func(args)
    except (DocumentError, OSError) as err:
        logger.error("%s", err)
        return EXIT_USAGE
    except ConsistencyError as err:
        logger.error("consistency check failed: %s", err)
        return EXIT_CONSISTENCY
    except (ValueError, TypeError, BudgetExceededError, UnboundedPolytopeError) as err:
        logger.error("%s", err)
        return EXIT_PRECONDITION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

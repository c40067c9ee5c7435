"""Command-line driver: build a polygon mesh from Triangle files or random points.

Exit codes: 0 ok, 1 usage, 2 input or I/O error, 3 verification failure,
4 internal invariant violation.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
import time
from dataclasses import dataclass, field
from typing import Optional

from .errors import InternalConsistencyError, MeshError
from .generator import PointSetSpec, delaunay, random_points
from .io_export import ExportOptions, WRITERS, write_stats_json
from .pipeline import PhaseTimes, run_pipeline
from .polymesh import verify
from .triangulation import read_triangle_files, write_triangle_files

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_VERIFY, EXIT_INTERNAL = 0, 1, 2, 3, 4

log = logging.getLogger("termesh")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    node: Optional[str] = None
    ele: Optional[str] = None
    neigh: Optional[str] = None
    random: Optional[int] = None
    seed: int = 0
    gamma: Optional[float] = None
    outputs: dict = field(default_factory=dict)  # format name -> path
    stats: Optional[str] = None
    verify: bool = False
    bench: Optional[list] = None
    reps: int = 1
    parallel: bool = False
    deterministic: bool = False
    precision: int = 17
    dump_triangulation: Optional[str] = None

    def __post_init__(self):
        files = self.node is not None or self.ele is not None
        if files and self.random is not None:
            raise UsageError("choose either --node/--ele or --random, not both")
        if self.bench is None and not files and self.random is None:
            raise UsageError("no input: give --node and --ele, or --random N")
        if files and (self.node is None or self.ele is None):
            raise UsageError("--node and --ele must be given together")
        if self.neigh is not None and not files:
            raise UsageError("--neigh needs --node and --ele")
        if self.bench is not None and files:
            raise UsageError("--bench generates its own inputs; drop --node/--ele")
        if self.reps < 1:
            raise UsageError("--reps must be at least 1")
        if self.random is not None and self.random < 0:
            raise UsageError("--random must be non-negative")

    @property
    def workers(self) -> int:
        return (os.cpu_count() or 1) if self.parallel else 1

    def point_spec(self, count: Optional[int] = None) -> PointSetSpec:
        return PointSetSpec(self.random if count is None else count, seed=self.seed, gamma=self.gamma)


def _write(path: str, text: str):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _load(config: RunConfig):
    if config.random is not None:
        t0 = time.perf_counter()
        T = delaunay(random_points(config.point_spec()))
        return T, time.perf_counter() - t0
    return read_triangle_files(config.node, config.ele, config.neigh), None


def run(config: RunConfig) -> int:
    try:
        T, tri_seconds = _load(config)
    except (MeshError, OSError) as exc:
        print(f"termesh: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        results = [run_pipeline(T, workers=config.workers) for _ in range(config.reps)]
    except InternalConsistencyError as exc:
        print(f"termesh: internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    res = results[0]
    times = PhaseTimes.mean(r.times for r in results)
    stats = res.stats
    log.info("%d triangles -> %d regions -> %d polygons (%d tips)", stats.triangle_count,
             stats.region_count, stats.polygon_count, stats.tip_count)

    try:
        if config.dump_triangulation:
            for ext, text in zip(("node", "ele", "neigh"), write_triangle_files(T)):
                _write(f"{config.dump_triangulation}.{ext}", text)
        for fmt, path in config.outputs.items():
            _write(path, WRITERS[fmt](res.mesh, ExportOptions(format=fmt, precision=config.precision)))
        if config.stats:
            timing = {} if config.deterministic else dict(times.as_dict())
            if tri_seconds is not None and not config.deterministic:
                timing["triangulation_seconds"] = tri_seconds
            _write(config.stats, write_stats_json(stats, timing))
    except OSError as exc:
        print(f"termesh: cannot write output: {exc}", file=sys.stderr)
        return EXIT_INPUT

    if config.verify:
        issues = verify(res.mesh, T, res.labels)
        if issues:
            for issue in issues:
                print(f"verify: {issue.kind}: {issue.detail}", file=sys.stderr)
            return EXIT_VERIFY
        log.info("verification passed")
    return EXIT_OK


BENCH_COLUMNS = ("n", "triangles", "polygons", "triangulation_seconds", "label_seconds",
                 "traversal_seconds", "repair_seconds", "total_seconds")


def bench(config: RunConfig) -> str:
    """CSV with one row per requested point count; phase times are means over ``reps`` runs."""
    rows = [",".join(BENCH_COLUMNS)]
    for n in config.bench:
        t0 = time.perf_counter()
        T = delaunay(random_points(config.point_spec(n)))
        tri_seconds = time.perf_counter() - t0
        results = [run_pipeline(T, workers=config.workers) for _ in range(config.reps)]
        m = PhaseTimes.mean(r.times for r in results)
        rows.append(",".join([str(n), str(T.n_triangles), str(results[0].mesh.n_polygons),
                              f"{tri_seconds:.6f}", f"{m.label:.6f}", f"{m.traversal:.6f}",
                              f"{m.repair:.6f}", f"{m.total:.6f}"]))
    return "\n".join(rows) + "\n"


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _counts(text: str) -> list[int]:
    try:
        out = [int(float(x)) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated point counts, got {text!r}") from None
    if not out or any(n < 0 for n in out):
        raise argparse.ArgumentTypeError("point counts must be non-negative")
    return out


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="termesh", description="Polygon meshes from terminal-edge regions of a triangulation.")
    src = p.add_argument_group("input")
    src.add_argument("--node", help="Triangle .node file")
    src.add_argument("--ele", help="Triangle .ele file")
    src.add_argument("--neigh", help="optional Triangle .neigh file")
    src.add_argument("--random", type=int, metavar="N", help="N uniform random points in the unit square plus its corners")
    src.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    src.add_argument("--gamma", type=float, help="boundary snapping tolerance (default 1e-9 of the side)")
    out = p.add_argument_group("output")
    for fmt in ("off", "vtk", "svg", "meshtxt"):
        out.add_argument(f"--{fmt}", metavar="PATH")
    out.add_argument("--stats", metavar="PATH", help="statistics and phase timings as JSON")
    out.add_argument("--deterministic", action="store_true",
                     help="leave wall-clock timings out of the stats JSON so reruns are byte-identical")
    out.add_argument("--precision", type=int, default=17, help="significant digits for coordinates (6-17)")
    out.add_argument("--dump-triangulation", metavar="PREFIX", help="write the input triangulation as PREFIX.node/.ele/.neigh")
    run_g = p.add_argument_group("run")
    run_g.add_argument("--verify", action="store_true", help="check mesh invariants; exit 3 on failure")
    run_g.add_argument("--bench", type=_counts, metavar="LIST", help="comma-separated point counts; prints CSV timings")
    run_g.add_argument("--reps", type=int, default=1, help="repetitions averaged for timings")
    run_g.add_argument("--parallel", action="store_true", help="walk regions on a thread pool")
    run_g.add_argument("-v", "--verbose", action="count", default=0)
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    if not 6 <= ns.precision <= 17:
        raise UsageError("--precision must be in [6, 17]")
    outputs = {fmt: getattr(ns, fmt) for fmt in ("off", "vtk", "svg", "meshtxt") if getattr(ns, fmt)}
    return RunConfig(node=ns.node, ele=ns.ele, neigh=ns.neigh, random=ns.random, seed=ns.seed,
                     gamma=ns.gamma, outputs=outputs, stats=ns.stats, verify=ns.verify, bench=ns.bench,
                     reps=ns.reps, parallel=ns.parallel, deterministic=ns.deterministic,
                     precision=ns.precision, dump_triangulation=ns.dump_triangulation)


def main(argv=None) -> int:
    try:
        ns = build_parser().parse_args(argv)
        config = config_from_args(ns)
    except UsageError as exc:
        print(f"termesh: {exc}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.WARNING - 10 * min(ns.verbose, 2), format="%(name)s: %(message)s")
    if config.bench is not None:
        try:
            sys.stdout.write(bench(config))
        except InternalConsistencyError as exc:
            print(f"termesh: internal invariant violated: {exc}", file=sys.stderr)
            return EXIT_INTERNAL
        except MeshError as exc:
            print(f"termesh: input error: {exc}", file=sys.stderr)
            return EXIT_INPUT
        return EXIT_OK
    return run(config)

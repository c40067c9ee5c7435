"""Run label, traversal and repair on a triangulation and time each phase."""
from __future__ import annotations

import gc
import time
from dataclasses import dataclass

from .labeling import EdgeLabels, label
from .polymesh import MeshStats, PolyMesh, assemble, compute_stats
from .repair import RepairResult, repair
from .traversal import TraversalResult, build_all
from .triangulation import Triangulation


@dataclass(frozen=True)
class PhaseTimes:
    label: float
    traversal: float
    repair: float
    total: float

    def as_dict(self) -> dict:
        return {"label_seconds": self.label, "traversal_seconds": self.traversal,
                "repair_seconds": self.repair, "total_seconds": self.total}

    @staticmethod
    def mean(times) -> "PhaseTimes":
        times = list(times)
        k = len(times)
        return PhaseTimes(*(sum(getattr(t, f) for t in times) / k for f in ("label", "traversal", "repair", "total")))


@dataclass
class PipelineResult:
    triangulation: Triangulation
    labels: EdgeLabels
    traversal: TraversalResult
    repair: RepairResult
    mesh: PolyMesh
    times: PhaseTimes

    @property
    def stats(self) -> MeshStats:
        return compute_stats(self.mesh, self.triangulation, self.labels,
                             [p.tips for p in self.traversal.polylines])


def run_pipeline(T: Triangulation, workers: int = 1) -> PipelineResult:
    """Build the polygon mesh of ``T``. Garbage collection is paused while phases are timed."""
    enabled = gc.isenabled()
    gc.disable()
    try:
        t0 = time.perf_counter()
        labels = label(T)
        t1 = time.perf_counter()
        trav = build_all(T, labels, workers=workers)
        t2 = time.perf_counter()
        rep = repair(T, labels, trav)
        t3 = time.perf_counter()
        mesh = assemble(T, rep.polylines)
        t4 = time.perf_counter()
    finally:
        if enabled:
            gc.enable()
    return PipelineResult(T, labels, trav, rep, mesh, PhaseTimes(t1 - t0, t2 - t1, t3 - t2, t4 - t0))

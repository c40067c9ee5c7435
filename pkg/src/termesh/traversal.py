"""Traversal phase: trace each terminal-edge region's boundary as a ccw polyline.

The walk keeps a current triangle ``t`` and the last emitted vertex
``v_end``. If the edge leaving ``v_end`` in ``t`` (ccw) is a frontier edge its
far endpoint is appended; otherwise the walk crosses that non-frontier edge,
which rotates clockwise around ``v_end`` to the next triangle of the region.
The walk ends when it is back at the starting (triangle, vertex) corner.
Triangles are only entered across non-frontier edges, each at most once per
edge, so no triangle is entered more than three times.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .errors import InternalConsistencyError
from .labeling import EdgeLabels
from .triangulation import BOUNDARY, Triangulation


@dataclass
class Polyline:
    """Closed ccw boundary of one region (last vertex connects to the first)."""

    vertex_ids: list[int]
    source_triangles: list[int]
    tips: list[int] = field(default_factory=list)
    seed: int = -1

    @property
    def is_simple(self) -> bool:
        return len(set(self.vertex_ids)) == len(self.vertex_ids)

    def __len__(self):
        return len(self.vertex_ids)


def detect_tips(vertex_ids) -> list[int]:
    """Vertices ``v_j`` with ``v_{j-1} == v_{j+1}`` (cyclically): barrier-edge tips."""
    ids = list(vertex_ids)
    n = len(ids)
    tips = []
    seen = set()
    if n < 3:
        return tips
    for j in range(n):
        if ids[j - 1] == ids[(j + 1) % n] and ids[j] not in seen:
            seen.add(ids[j])
            tips.append(ids[j])
    return tips


class _Walker:
    """Plain-list view of the mesh arrays so the inner loop stays in Python scalars."""

    def __init__(self, T: Triangulation, frontier, visits: Optional[list] = None, tri=None, nb=None):
        self.tri = T.triangles.tolist() if tri is None else tri
        self.nb = T.neighbors.tolist() if nb is None else nb
        self.frontier = frontier.tolist() if hasattr(frontier, "tolist") else frontier
        self.visits = [0] * T.n_triangles if visits is None else visits

    def start_corner(self, seed):
        """Initial vertex per the seed's frontier-edge count (3, 2, 1 or 0)."""
        tri, fr = self.tri, self.frontier
        b = 3 * seed
        v = tri[b:b + 3]
        # outgoing edge of local vertex i is (v[i], v[i+1]) = slot (i + 2) % 3
        out = [fr[b + (i + 2) % 3] for i in range(3)]
        nf = sum(out)
        if nf == 3:
            return v[0], 3
        if nf == 2:
            j = out.index(False)
            return v[(j + 1) % 3], 2
        if nf == 1:
            return v[out.index(True)], 1
        return min(v), 0

    def walk(self, seed: int) -> Polyline:
        tri, nb, fr, visits = self.tri, self.nb, self.frontier, self.visits
        v_init, nf = self.start_corner(seed)
        visits[seed] += 1
        if visits[seed] > 3:
            raise InternalConsistencyError(f"triangle {seed} visited more than 3 times")
        if nf == 3:
            return Polyline(tri[3 * seed:3 * seed + 3], [seed], [], seed)
        poly = [v_init]
        used = [seed]
        t = seed
        v_end = v_init
        while True:
            b = 3 * t
            if tri[b] == v_end:
                i = 0
            elif tri[b + 1] == v_end:
                i = 1
            else:
                i = 2
            h = b + (i + 2) % 3
            if fr[h]:
                v_end = tri[b + (i + 1) % 3]
                if v_end == v_init and t == seed:
                    break
                poly.append(v_end)
            else:
                t = nb[h]
                if t == BOUNDARY:
                    raise InternalConsistencyError(f"boundary edge at half-edge {h} is not a frontier edge")
                if t == seed and v_end == v_init:
                    break
                c = visits[t] + 1
                visits[t] = c
                if c > 3:
                    raise InternalConsistencyError(f"triangle {t} visited more than 3 times (seed {seed})")
                if c == 1:
                    used.append(t)
        if poly[-1] == v_init and len(poly) > 1:
            poly.pop()
        return Polyline(poly, used, detect_tips(poly), seed)


def build_polygon(T: Triangulation, labels: EdgeLabels, seed: int, visits: Optional[list] = None) -> Polyline:
    """Boundary polyline of the region containing ``seed``."""
    return _Walker(T, labels.frontier, visits).walk(seed)


@dataclass
class TraversalResult:
    polylines: list[Polyline]
    visits: list[int]

    @property
    def simple(self) -> list[Polyline]:
        return [p for p in self.polylines if p.is_simple]

    @property
    def non_simple(self) -> list[Polyline]:
        return [p for p in self.polylines if not p.is_simple]

    @property
    def tip_count(self) -> int:
        return sum(len(p.tips) for p in self.polylines)


def build_all(T: Triangulation, labels: EdgeLabels, workers: int = 1) -> TraversalResult:
    """One polyline per seed, in seed order.

    With ``workers > 1`` seeds are walked on a thread pool; regions are
    disjoint so the shared visit counters are written by one walk each, and
    results are merged back in seed order.
    """
    walker = _Walker(T, labels.frontier)
    if workers > 1 and len(labels.seeds) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            polylines = list(pool.map(walker.walk, labels.seeds))
    else:
        polylines = [walker.walk(s) for s in labels.seeds]
    return TraversalResult(polylines, walker.visits)

"""Repair phase: split non-simple polylines into simple polygons.

For every barrier-edge tip ``b`` the internal edges around ``b`` are listed in
ccw order starting after the barrier edge, and the middle one (the lower
middle for an even count) is relabeled as a frontier edge. The two triangles
sharing each promoted edge become seeds, and the traversal walk is rerun from
them; a per-triangle flag array keeps one polygon from being generated twice.

Two situations go beyond the one-pass scheme and are handled by re-entering
the split on any product that is still non-simple:

* products that still contain tips, which are split again the same way;
* *pinches*: a region that touches itself at a vertex without any barrier
  edge. The region's triangles form a tree under internal-edge adjacency, so
  the middle internal edge on the tree path between the two touching wedges
  is promoted, which separates them.
"""
from __future__ import annotations

import logging
from collections import Counter, defaultdict, deque
from dataclasses import dataclass, field

import numpy as np

from .errors import InternalConsistencyError
from .labeling import EdgeClass, EdgeLabels
from .traversal import Polyline, TraversalResult, _Walker
from .triangulation import EdgeKey, Triangulation

log = logging.getLogger(__name__)


@dataclass
class RepairState:
    """Per-polygon bookkeeping: seed list, pending-seed flags, promoted edges."""

    local_seeds: list[int] = field(default_factory=list)
    seed_flags: dict = field(default_factory=dict)
    promoted_edges: list[EdgeKey] = field(default_factory=list)


class Repairer:
    """Holds the mutable frontier flags and counters for one repair phase.

    Promotions change a private list of frontier flags, never the caller's labels.
    """

    def __init__(self, T: Triangulation, labels: EdgeLabels):
        self.T = T
        self.base_labels = labels
        self.tri = T.triangles.tolist()
        self.nb = T.neighbors.tolist()
        self.twin = labels.twin_slot.tolist()
        self.frontier = labels.frontier.tolist()
        self.walker = _Walker(T, self.frontier, defaultdict(int), self.tri, self.nb)
        # one incident triangle per vertex
        vt = np.full(T.n_vertices, -1, dtype=np.int64)
        vt[T.triangles] = np.arange(3 * T.n_triangles) // 3
        self.vertex_triangle = vt.tolist()
        self.degree_visits: defaultdict = defaultdict(int)
        self.reentries = 0
        self.max_walk_visits = 0
        self.pinches = 0
        self.promoted: list[EdgeKey] = []
        self.promoted_halfedges: list[int] = []
        self.states: list[RepairState] = []

    @property
    def labels(self) -> EdgeLabels:
        """Copy of the input labels with every promoted edge turned into a frontier edge."""
        out = self.base_labels.copy()
        h = np.asarray(self.promoted_halfedges, dtype=np.int64)
        out.frontier[h] = True
        out.halfedge_class[h] = EdgeClass.FRONTIER
        out._edge_class = None
        return out

    # --- rotation around a vertex -------------------------------------------------------------

    def _local(self, t, v):
        b = 3 * t
        tri = self.tri
        if tri[b] == v:
            return 0
        if tri[b + 1] == v:
            return 1
        if tri[b + 2] == v:
            return 2
        raise InternalConsistencyError(f"vertex {v} is not in triangle {t}")

    def _fan(self, b):
        """Triangles around interior vertex ``b`` in ccw order with the far end of each one's outgoing edge."""
        start = self.vertex_triangle[b]
        tris, ends = [], []
        t = start
        while True:
            i = self._local(t, b)
            tris.append(t)
            ends.append(self.tri[3 * t + (i + 1) % 3])
            self.degree_visits[t] += 1
            if self.degree_visits[t] > 3:
                raise InternalConsistencyError(f"triangle {t} visited more than 3 times computing tip degrees")
            t = self.nb[3 * t + (i + 1) % 3]
            if t < 0:
                raise InternalConsistencyError(f"barrier-edge tip {b} lies on the domain boundary")
            if t == start:
                return tris, ends

    def _out_halfedge(self, t, b):
        return 3 * t + (self._local(t, b) + 2) % 3

    def incident_internal_edges(self, b, barrier_end):
        """Non-frontier edges at tip ``b`` in ccw order after the barrier edge (b, barrier_end).

        Returns a list of (far vertex, triangle owning the outgoing half-edge, previous triangle).
        """
        tris, ends = self._fan(b)
        d = len(tris)
        try:
            k0 = ends.index(barrier_end)
        except ValueError:
            raise InternalConsistencyError(f"({b}, {barrier_end}) is not an edge around tip {b}") from None
        out = []
        for step in range(1, d):
            k = (k0 + step) % d
            t = tris[k]
            if not self.frontier[self._out_halfedge(t, b)]:
                out.append((ends[k], t, tris[k - 1]))
        return out

    def tip_degree(self, b, barrier_end) -> int:
        return len(self.incident_internal_edges(b, barrier_end))

    # --- promotion ----------------------------------------------------------------------------

    def _promote_halfedge(self, h):
        t, k = divmod(h, 3)
        j = self.nb[h]
        kk = self.twin[h]
        if self.frontier[h]:
            raise InternalConsistencyError(f"half-edge {h} is already a frontier edge")
        for hh in (h, 3 * j + kk):
            self.frontier[hh] = True
            self.promoted_halfedges.append(hh)
        a = self.tri[3 * t + (k + 1) % 3]
        c = self.tri[3 * t + (k + 2) % 3]
        key = EdgeKey.of(a, c)
        self.promoted.append(key)
        return key, t, j

    def promote_middle_edge(self, b, barrier_end):
        """Relabel the middle internal edge at tip ``b``; return its key and both triangles."""
        return self._promote_middle(b, self.incident_internal_edges(b, barrier_end))

    def _promote_middle(self, b, edges):
        deg = len(edges)
        if deg == 0:
            raise InternalConsistencyError(f"tip {b} has no incident internal edge")
        _, t_out, _ = edges[(deg + 1) // 2 - 1]
        return self._promote_halfedge(self._out_halfedge(t_out, b))

    # --- splitting ----------------------------------------------------------------------------

    @staticmethod
    def _barrier_pairs(vertex_ids):
        ids = vertex_ids
        n = len(ids)
        seen = set()
        pairs = []
        for j in range(n):
            if ids[j - 1] == ids[(j + 1) % n] and ids[j] not in seen:
                seen.add(ids[j])
                pairs.append((ids[j], ids[j - 1]))
        return pairs

    def _regenerate(self, state: RepairState) -> list[Polyline]:
        # each regeneration walks disjoint pieces, so it gets its own counters
        self.walker.visits = defaultdict(int)
        products = []
        for t in state.local_seeds:
            if not state.seed_flags.get(t):
                continue
            state.seed_flags[t] = False
            p = self.walker.walk(t)
            self.max_walk_visits = max(self.max_walk_visits, max(self.walker.visits.values()))
            for s in p.source_triangles:
                state.seed_flags[s] = False
            products.append(p)
        return products

    def _pinch_cut(self, P: Polyline, state: RepairState):
        """Promote one internal edge separating two wedges of a vertex repeated without a tip."""
        counts = Counter(P.vertex_ids)
        v = next(x for x in P.vertex_ids if counts[x] > 1)
        region = set(P.source_triangles)
        around = [t for t in P.source_triangles if v in self.tri[3 * t:3 * t + 3]]
        # group region triangles at v into wedges connected by non-frontier edges at v
        wedge_of = {}
        for t0 in around:
            if t0 in wedge_of:
                continue
            wedge_of[t0] = t0
            stack = [t0]
            while stack:
                t = stack.pop()
                i = self._local(t, v)
                for slot in ((i + 1) % 3, (i + 2) % 3):
                    h = 3 * t + slot
                    j = self.nb[h]
                    if not self.frontier[h] and j in region and j not in wedge_of:
                        wedge_of[j] = t0
                        stack.append(j)
        roots = sorted(set(wedge_of.values()), key=around.index)
        if len(roots) < 2:
            raise InternalConsistencyError(f"vertex {v} repeats in a polyline but has a single wedge")
        w1 = {t for t, r in wedge_of.items() if r == roots[0]}
        w2 = {t for t, r in wedge_of.items() if r == roots[1]}
        parent = {t: None for t in w1}
        queue = deque(sorted(w1, key=around.index))
        hit = None
        while queue and hit is None:
            t = queue.popleft()
            for slot in range(3):
                h = 3 * t + slot
                j = self.nb[h]
                if self.frontier[h] or j not in region or j in parent:
                    continue
                parent[j] = (t, h)
                if j in w2:
                    hit = j
                    break
                queue.append(j)
        if hit is None:
            raise InternalConsistencyError(f"no internal-edge path between the wedges at vertex {v}")
        path = []
        t = hit
        while parent[t] is not None:
            prev, h = parent[t]
            path.append(h)
            t = prev
        path.reverse()
        h = path[(len(path) + 1) // 2 - 1]
        key, t1, t2 = self._promote_halfedge(h)
        state.promoted_edges.append(key)
        for s in (t1, t2):
            state.local_seeds.append(s)
            state.seed_flags[s] = True
        self.pinches += 1
        log.info("split pinch at vertex %d by promoting edge %s", v, tuple(key))

    def split(self, P: Polyline, depth: int = 0) -> list[Polyline]:
        """Simple polylines whose triangles partition those of ``P``."""
        if P.is_simple:
            return [P]
        if depth > len(P.source_triangles):
            raise InternalConsistencyError("repair did not converge")
        state = RepairState()
        self.states.append(state)
        pairs = self._barrier_pairs(P.vertex_ids)
        if pairs:
            for b, a in pairs:
                edges = self.incident_internal_edges(b, a)
                if not edges:
                    # every internal edge at b was already promoted by a neighbouring tip
                    continue
                key, t1, t2 = self._promote_middle(b, edges)
                state.promoted_edges.append(key)
                for s in (t1, t2):
                    state.local_seeds.append(s)
                    state.seed_flags[s] = True
        else:
            self._pinch_cut(P, state)
        products = self._regenerate(state)
        out = []
        for p in products:
            if p.is_simple:
                out.append(p)
            else:
                self.reentries += 1
                log.info("repair product from seed %d is still non-simple; splitting again", p.seed)
                out.extend(self.split(p, depth + 1))
        return out


@dataclass
class RepairResult:
    """Products of the repair phase.

    ``products[i]`` lists the simple polylines replacing polyline ``i`` of the
    traversal result (a one-element list holding the original when it was
    already simple).
    """

    products: list[list[Polyline]]
    labels: EdgeLabels
    promoted_edges: list[EdgeKey]
    max_degree_visits: int
    max_walk_visits: int
    reentries: int
    pinches: int

    @property
    def polylines(self) -> list[Polyline]:
        return [p for group in self.products for p in group]


def split_nonsimple(T: Triangulation, labels: EdgeLabels, P: Polyline) -> list[Polyline]:
    """Split one polyline into simple polylines covering the same triangles."""
    return Repairer(T, labels).split(P)


def repair(T: Triangulation, labels: EdgeLabels, traversal: TraversalResult) -> RepairResult:
    """Split every non-simple polyline of ``traversal``; simple ones pass through unchanged."""
    if all(p.is_simple for p in traversal.polylines):
        return RepairResult([[p] for p in traversal.polylines], labels, [], 0, 0, 0, 0)
    r = Repairer(T, labels)
    products = [r.split(p) for p in traversal.polylines]
    return RepairResult(products, r.labels, r.promoted,
                        max(r.degree_visits.values(), default=0), r.max_walk_visits,
                        r.reentries, r.pinches)

"""Label phase: longest edges, edge classes and one seed triangle per region.

Edges are compared by a strict total order: exact squared length first, then
the canonical :class:`EdgeKey` lexicographically. Because both triangles that
share an edge see the same key, every Lepp crosses strictly increasing edges
and therefore always ends at a terminal edge; no randomized tie-breaking and
no special handling of terminal-edge-free regions is needed.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .triangulation import BOUNDARY, EdgeKey, Triangulation, slot_edge


class EdgeClass(enum.IntEnum):
    FRONTIER = 0
    INTERNAL = 1
    TERMINAL = 2
    BOUNDARY_TERMINAL = 3


@dataclass
class EdgeLabels:
    """Output of the label phase.

    ``halfedge_class[3*t + k]`` classifies the edge across slot ``k`` of
    triangle ``t``; ``frontier`` is the boolean view used by the traversal
    (boundary edges are frontier edges, including boundary terminal ones).
    ``edge_class`` is the same information keyed by :class:`EdgeKey`.
    """

    triangulation: Triangulation = field(repr=False)
    longest_slot: np.ndarray
    halfedge_class: np.ndarray
    frontier: np.ndarray
    twin_slot: np.ndarray = field(repr=False)
    seeds: list[int] = field(default_factory=list)
    _edge_class: Optional[dict] = field(default=None, repr=False, compare=False)

    @property
    def edge_class(self) -> dict[EdgeKey, EdgeClass]:
        if self._edge_class is None:
            tri = self.triangulation.triangles.tolist()
            nb = self.triangulation.neighbors.tolist()
            cls = self.halfedge_class.tolist()
            table = {}
            for h in range(len(tri)):
                j = nb[h]
                if j == BOUNDARY or h // 3 < j:
                    a, b = slot_edge(tri, h // 3, h % 3)
                    table[EdgeKey.of(a, b)] = EdgeClass(cls[h])
            self._edge_class = table
        return self._edge_class

    def class_counts(self) -> dict[EdgeClass, int]:
        counts = {c: 0 for c in EdgeClass}
        for v in self.edge_class.values():
            counts[v] += 1
        return counts

    def is_frontier(self, t: int, slot: int) -> bool:
        return bool(self.frontier[3 * t + slot])

    def copy(self) -> "EdgeLabels":
        """Independent copy whose frontier flags may be changed (used by the repair phase)."""
        return EdgeLabels(self.triangulation, self.longest_slot, self.halfedge_class.copy(),
                          self.frontier.copy(), self.twin_slot, list(self.seeds))


def _slot_sqlengths(T: Triangulation) -> np.ndarray:
    p = T.points
    tri = T.triangles.reshape(-1, 3)
    out = np.empty(tri.shape, dtype=np.float64)
    for k in range(3):
        a = p[tri[:, (k + 1) % 3]]
        b = p[tri[:, (k + 2) % 3]]
        d = a - b
        out[:, k] = d[:, 0] * d[:, 0] + d[:, 1] * d[:, 1]
    return out


def _slot_keys(T: Triangulation):
    tri = T.triangles.reshape(-1, 3)
    lo = np.empty(tri.shape, dtype=np.int64)
    hi = np.empty(tri.shape, dtype=np.int64)
    for k in range(3):
        a = tri[:, (k + 1) % 3]
        b = tri[:, (k + 2) % 3]
        lo[:, k] = np.minimum(a, b)
        hi[:, k] = np.maximum(a, b)
    return lo, hi


def _exact_order_key(T: Triangulation, t: int, k: int):
    a, b = slot_edge(T.triangles, t, k)
    a, b = (int(a), int(b)) if a < b else (int(b), int(a))
    v = T.vertices
    dx = Fraction(float(v[2 * b])) - Fraction(float(v[2 * a]))
    dy = Fraction(float(v[2 * b + 1])) - Fraction(float(v[2 * a + 1]))
    return dx * dx + dy * dy, a, b


def longest_edges(T: Triangulation) -> np.ndarray:
    """Per-triangle slot (0..2) of the longest edge under the (length, EdgeKey) order."""
    m = T.n_triangles
    if m == 0:
        return np.zeros(0, dtype=np.int8)
    L = _slot_sqlengths(T)
    lo, hi = _slot_keys(T)

    def beats(i, j):
        return (L[:, i] > L[:, j]) | ((L[:, i] == L[:, j]) &
                                      ((lo[:, i] > lo[:, j]) | ((lo[:, i] == lo[:, j]) & (hi[:, i] > hi[:, j]))))

    best = np.zeros(m, dtype=np.int8)
    b1 = beats(1, 0)
    best[b1] = 1
    rows = np.arange(m)
    Lb = L[rows, best]
    lob, hib = lo[rows, best], hi[rows, best]
    b2 = (L[:, 2] > Lb) | ((L[:, 2] == Lb) & ((lo[:, 2] > lob) | ((lo[:, 2] == lob) & (hi[:, 2] > hib))))
    best[b2] = 2

    # float squared lengths within rounding of each other are re-ranked exactly
    top = L.max(axis=1)
    srt = np.sort(L, axis=1)
    close = (srt[:, 2] - srt[:, 1]) <= 8.0 * np.finfo(float).eps * top
    for t in np.flatnonzero(close).tolist():
        best[t] = max(range(3), key=lambda k: _exact_order_key(T, t, k))
    return best


def _twin_slots(T: Triangulation) -> np.ndarray:
    """``twin[3*t + k]`` = slot of the neighbor across slot k that faces back to t, or -1."""
    nb = T.neighbors
    m = T.n_triangles
    twin = np.full(3 * m, -1, dtype=np.int64)
    h = np.flatnonzero(nb != BOUNDARY)
    j = nb[h]
    t = h // 3
    for k in range(3):
        hit = nb[3 * j + k] == t
        twin[h[hit]] = k
    return twin


def classify_edges(T: Triangulation, longest_slot) -> EdgeLabels:
    """Classify every edge; the returned labels carry no seeds yet."""
    longest_slot = np.asarray(longest_slot, dtype=np.int8)
    m = T.n_triangles
    nb = T.neighbors
    twin = _twin_slots(T)
    slots = np.tile(np.arange(3), m)
    tri_of = np.repeat(np.arange(m), 3)
    is_longest = longest_slot[tri_of] == slots
    boundary = nb == BOUNDARY
    nbr_longest = np.zeros(3 * m, dtype=bool)
    inner = ~boundary
    nbr_longest[inner] = longest_slot[nb[inner]] == twin[inner]

    cls = np.full(3 * m, EdgeClass.FRONTIER, dtype=np.int8)
    cls[inner & is_longest & nbr_longest] = EdgeClass.TERMINAL
    cls[inner & (is_longest ^ nbr_longest)] = EdgeClass.INTERNAL
    cls[boundary & is_longest] = EdgeClass.BOUNDARY_TERMINAL
    frontier = boundary | (inner & ~is_longest & ~nbr_longest)
    return EdgeLabels(T, longest_slot, cls, frontier, twin)


def collect_seeds(T: Triangulation, labels: EdgeLabels) -> list[int]:
    """One triangle per terminal edge: the smaller incident index (the only one on the boundary)."""
    ls = labels.longest_slot
    m = len(ls)
    h = np.arange(m) * 3 + ls.astype(np.int64)
    cls = labels.halfedge_class[h]
    nbr = T.neighbors[h]
    own = np.arange(m)
    keep = (cls == EdgeClass.BOUNDARY_TERMINAL) | ((cls == EdgeClass.TERMINAL) & (own < nbr))
    return np.flatnonzero(keep).tolist()


def label(T: Triangulation) -> EdgeLabels:
    """Run the whole label phase and return labels with seeds."""
    labels = classify_edges(T, longest_edges(T))
    labels.seeds = collect_seeds(T, labels)
    return labels


def lepp(T: Triangulation, longest_slot, t: int) -> list[int]:
    """Longest-edge propagation path from triangle ``t``.

    Follows longest edges until reaching a terminal edge. When that edge is
    interior, both terminal triangles end the list; when it lies on the
    boundary, the list ends with the triangle that owns it.
    """
    nb = T.neighbors
    path = [t]
    seen = {t}
    while True:
        k = int(longest_slot[t])
        j = int(nb[3 * t + k])
        if j == BOUNDARY:
            return path
        jk = int(longest_slot[j])
        if int(nb[3 * j + jk]) == t:
            path.append(j)
            return path
        if j in seen:
            raise AssertionError("Lepp revisited a triangle; longest-edge order is inconsistent")
        path.append(j)
        seen.add(j)
        t = j


def lepp_terminal_edge(T: Triangulation, longest_slot, t: int) -> EdgeKey:
    """Terminal edge reached by the Lepp of ``t``."""
    last = lepp(T, longest_slot, t)[-1]
    a, b = slot_edge(T.triangles, last, int(longest_slot[last]))
    return EdgeKey.of(int(a), int(b))

"""Seeded random point sets in a square and their Delaunay triangulations.

The triangulator is a radial sweep-hull: points are inserted in order of
distance from the circumcenter of a seed triangle, each new point is joined
to the visible part of the current convex hull, and new edges are legalized
by Lawson flips. Orientation and in-circle tests are exact; exactly
co-circular configurations are resolved by :func:`incircle_perturbed`, so the
output depends only on the point coordinates and their indices.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import GeometryError
from .predicates import incircle_perturbed, orient2d
from .triangulation import BOUNDARY, Triangulation


@dataclass(frozen=True)
class PointSetSpec:
    """Random points in the square ``[x0, x0 + side] x [y0, y0 + side]``.

    ``gamma`` is the snapping distance; ``None`` means ``1e-9 * side``.
    """

    count: int
    seed: int = 0
    origin: tuple[float, float] = (0.0, 0.0)
    side: float = 1.0
    gamma: Optional[float] = None

    def __post_init__(self):
        if self.count < 3:
            raise ValueError("count must be at least 3")
        if not self.side > 0:
            raise ValueError("side length must be positive")
        if self.gamma is not None and not 0 <= self.gamma < 0.5 * self.side:
            raise ValueError("gamma must be >= 0 and well below the side length")

    @property
    def tolerance(self) -> float:
        return 1e-9 * self.side if self.gamma is None else self.gamma


def snap_to_square(xy: np.ndarray, x0: float, y0: float, side: float, gamma: float) -> np.ndarray:
    """Project coordinates lying within ``gamma`` of a square side onto that side."""
    out = np.array(xy, dtype=np.float64, copy=True)
    x1, y1 = x0 + side, y0 + side
    out[:, 0] = np.where(out[:, 0] - x0 <= gamma, x0, out[:, 0])
    out[:, 0] = np.where(x1 - out[:, 0] <= gamma, x1, out[:, 0])
    out[:, 1] = np.where(out[:, 1] - y0 <= gamma, y0, out[:, 1])
    out[:, 1] = np.where(y1 - out[:, 1] <= gamma, y1, out[:, 1])
    return out


def random_points(spec: PointSetSpec) -> np.ndarray:
    """``spec.count`` distinct uniform points plus the four square corners (listed first).

    Uses numpy's PCG64 bit generator, whose stream is identical on every
    platform for a given seed. Points that snap onto a corner or duplicate an
    earlier point are re-drawn.
    """
    rng = np.random.Generator(np.random.PCG64(spec.seed))
    (x0, y0), side, gamma = spec.origin, spec.side, spec.tolerance
    corners = np.array([[x0, y0], [x0 + side, y0], [x0 + side, y0 + side], [x0, y0 + side]])
    seen = {tuple(c) for c in corners.tolist()}
    kept: list[list[float]] = []
    need = spec.count
    while need:
        raw = rng.random((need, 2)) * side + (x0, y0)
        for p in snap_to_square(raw, x0, y0, side, gamma).tolist():
            key = (p[0], p[1])
            if key in seen:
                continue
            seen.add(key)
            kept.append(p)
        need = spec.count - len(kept)
    return np.vstack([corners, np.array(kept, dtype=np.float64)])


def _pseudo_angle(dx, dy):
    p = dx / (abs(dx) + abs(dy))
    return (3.0 - p) / 4.0 if dy > 0 else (1.0 + p) / 4.0


def _circumcenter(ax, ay, bx, by, cx, cy):
    dx, dy = bx - ax, by - ay
    ex, ey = cx - ax, cy - ay
    bl = dx * dx + dy * dy
    cl = ex * ex + ey * ey
    d = 0.5 / (dx * ey - dy * ex)
    return ax + (ey * bl - dy * cl) * d, ay + (dx * cl - ex * bl) * d


def _circumradius2(ax, ay, bx, by, cx, cy):
    dx, dy = bx - ax, by - ay
    ex, ey = cx - ax, cy - ay
    den = dx * ey - dy * ex
    if den == 0:
        return math.inf
    bl = dx * dx + dy * dy
    cl = ex * ex + ey * ey
    d = 0.5 / den
    x = (ey * bl - dy * cl) * d
    y = (dx * cl - ex * bl) * d
    return x * x + y * y


@dataclass
class _SweepHull:
    """Half-edge triangulation under construction.

    Half-edge ``h`` runs from ``tri[h]`` to ``tri[h - h % 3 + (h + 1) % 3]``
    with its triangle on the left; ``twin[h]`` is the opposite half-edge or -1.
    """

    xs: list
    ys: list
    tri: list = field(default_factory=list)
    twin: list = field(default_factory=list)
    hull_next: list = field(default_factory=list)
    hull_prev: list = field(default_factory=list)
    hull_tri: list = field(default_factory=list)
    flips: int = 0

    def link(self, a, b):
        self.twin[a] = b
        if b != -1:
            self.twin[b] = a

    def add_triangle(self, i0, i1, i2, a, b, c):
        t = len(self.tri)
        self.tri.extend((i0, i1, i2))
        self.twin.extend((-1, -1, -1))
        self.link(t, a)
        self.link(t + 1, b)
        self.link(t + 2, c)
        return t

    def _mark_hull(self, h):
        if self.twin[h] == -1:
            self.hull_tri[self.tri[h]] = h

    def legalize(self, a):
        """Flip edges opposite the newly inserted point until all are locally Delaunay."""
        tri, twin, xs, ys = self.tri, self.twin, self.xs, self.ys
        stack = [a]
        while stack:
            a = stack.pop()
            b = twin[a]
            if b == -1:
                continue
            a0 = a - a % 3
            b0 = b - b % 3
            an = a0 + (a + 1) % 3
            ap = a0 + (a + 2) % 3
            bn = b0 + (b + 1) % 3
            bp = b0 + (b + 2) % 3
            u, v, p = tri[a], tri[an], tri[ap]
            q = tri[bp]
            if incircle_perturbed(xs, ys, u, v, p, q) <= 0:
                continue
            # (u, v, p) + (v, u, q)  ->  (q, v, p) + (p, u, q)
            tri[a] = q
            tri[b] = p
            hbp = twin[bp]
            hap = twin[ap]
            self.link(a, hbp)
            self.link(b, hap)
            self.link(ap, bp)
            self._mark_hull(a)
            self._mark_hull(b)
            self.flips += 1
            stack.append(bn)
            stack.append(a)

    def locate_and_split(self, i):
        """Insert a point that fell inside the current hull (rounding in the sweep order)."""
        xs, ys, tri = self.xs, self.ys, self.tri
        px, py = xs[i], ys[i]
        for t in range(0, len(tri), 3):
            a, b, c = tri[t], tri[t + 1], tri[t + 2]
            oa = orient2d(xs[a], ys[a], xs[b], ys[b], px, py)
            ob = orient2d(xs[b], ys[b], xs[c], ys[c], px, py)
            oc = orient2d(xs[c], ys[c], xs[a], ys[a], px, py)
            if oa < 0 or ob < 0 or oc < 0:
                continue
            zeros = [h for h, o in zip((t, t + 1, t + 2), (oa, ob, oc)) if o == 0]
            if len(zeros) > 1:
                raise GeometryError(f"point {i} duplicates an existing vertex")
            if zeros:
                self._split_edge(zeros[0], i)
            else:
                self._split_triangle(t, i)
            return
        raise GeometryError(f"point {i} could not be located in the triangulation")

    def _split_triangle(self, t, i):
        tri, twin = self.tri, self.twin
        a, b, c = tri[t], tri[t + 1], tri[t + 2]
        ta, tb, tc = twin[t], twin[t + 1], twin[t + 2]
        # reuse t for (a, b, i); new (b, c, i) and (c, a, i)
        tri[t + 2] = i
        t1 = self.add_triangle(b, c, i, tb, -1, -1)
        t2 = self.add_triangle(c, a, i, tc, -1, -1)
        self.link(t, ta)
        self.link(t + 1, t1 + 2)
        self.link(t1 + 1, t2 + 2)
        self.link(t2 + 1, t + 2)
        for h in (t, t1, t2):
            self._mark_hull(h)
        for h in (t, t1, t2):
            self.legalize(h)

    def _split_edge(self, h, i):
        tri, twin = self.tri, self.twin
        g = twin[h]
        t = h - h % 3
        hn = t + (h + 1) % 3
        hp = t + (h + 2) % 3
        u, v, w = tri[h], tri[hn], tri[hp]
        thn, thp = twin[hn], twin[hp]
        # (u, v, w) -> (u, i, w) + (i, v, w)
        tri[hn] = i
        t1 = self.add_triangle(i, v, w, -1, thn, -1)
        self.link(hn, t1 + 2)
        self.link(hp, thp)
        new = [h, t1]
        if g == -1:
            self.link(h, -1)
            self.hull_next[i] = v
            self.hull_prev[i] = u
            self.hull_next[u] = i
            self.hull_prev[v] = i
            self.hull_tri[u] = h
            self.hull_tri[i] = t1
        else:
            s = g - g % 3
            gn = s + (g + 1) % 3
            gp = s + (g + 2) % 3
            z = tri[gp]
            tgn, tgp = twin[gn], twin[gp]
            # (v, u, z) -> (v, i, z) + (i, u, z)
            tri[gn] = i
            t2 = self.add_triangle(i, u, z, -1, tgn, -1)
            self.link(gn, t2 + 2)
            self.link(h, t2)
            self.link(t1, g)
            new += [g, t2]
        for e in list(new):
            for k in range(3):
                self._mark_hull(e - e % 3 + k)
        for e in new:
            t0 = e - e % 3
            for k in range(3):
                if tri[t0 + k] != i and tri[t0 + (k + 1) % 3] != i:
                    self.legalize(t0 + k)


def _sweep(xs, ys, order_hook=None):
    n = len(xs)
    if n < 3:
        raise GeometryError("need at least 3 points")
    minx, maxx, miny, maxy = min(xs), max(xs), min(ys), max(ys)
    cx, cy = 0.5 * (minx + maxx), 0.5 * (miny + maxy)

    i0 = min(range(n), key=lambda i: ((xs[i] - cx) ** 2 + (ys[i] - cy) ** 2, i))
    x0, y0 = xs[i0], ys[i0]
    i1 = min((i for i in range(n) if i != i0), key=lambda i: ((xs[i] - x0) ** 2 + (ys[i] - y0) ** 2, i))
    x1, y1 = xs[i1], ys[i1]
    best, i2 = math.inf, -1
    for i in range(n):
        if i == i0 or i == i1 or orient2d(x0, y0, x1, y1, xs[i], ys[i]) == 0:
            continue
        r = _circumradius2(x0, y0, x1, y1, xs[i], ys[i])
        if r < best:
            best, i2 = r, i
    if i2 < 0:
        raise GeometryError("all points are collinear")
    if orient2d(x0, y0, x1, y1, xs[i2], ys[i2]) < 0:
        i1, i2 = i2, i1
    x1, y1, x2, y2 = xs[i1], ys[i1], xs[i2], ys[i2]
    ccx, ccy = _circumcenter(x0, y0, x1, y1, x2, y2)

    dists = [(xs[i] - ccx) ** 2 + (ys[i] - ccy) ** 2 for i in range(n)]
    order = sorted(range(n), key=lambda i: (dists[i], i))
    if order_hook is not None:
        order = order_hook(order)

    h = _SweepHull(xs, ys, hull_next=[-1] * n, hull_prev=[-1] * n, hull_tri=[-1] * n)
    hash_size = max(1, math.ceil(math.sqrt(n)))
    hull_hash = [-1] * hash_size

    def hash_key(x, y):
        dx, dy = x - ccx, y - ccy
        if dx == 0 and dy == 0:
            return 0
        return int(math.floor(_pseudo_angle(dx, dy) * hash_size)) % hash_size

    hn, hp, ht = h.hull_next, h.hull_prev, h.hull_tri
    hn[i0], hn[i1], hn[i2] = i1, i2, i0
    hp[i0], hp[i1], hp[i2] = i2, i0, i1
    h.add_triangle(i0, i1, i2, -1, -1, -1)
    ht[i0], ht[i1], ht[i2] = 0, 1, 2
    for i in (i0, i1, i2):
        hull_hash[hash_key(xs[i], ys[i])] = i
    hull_start = i0
    in_hull = {i0, i1, i2}

    for i in order:
        if i in in_hull:
            continue
        x, y = xs[i], ys[i]
        key = hash_key(x, y)
        start = -1
        for j in range(hash_size):
            s = hull_hash[(key + j) % hash_size]
            if s != -1 and hn[s] != s:
                start = s
                break
        if start == -1:
            start = hull_start
        start = hp[start]
        e = start
        while True:
            q = hn[e]
            if orient2d(xs[e], ys[e], xs[q], ys[q], x, y) < 0:
                break
            e = q
            if e == start:
                e = -1
                break
        if e == -1:
            h.locate_and_split(i)
            in_hull.add(i)
            if hn[i] != -1:
                hull_hash[hash_key(x, y)] = i
                hull_start = i
            continue

        q = hn[e]
        t = h.add_triangle(e, i, q, -1, -1, ht[e])
        ht[e] = t
        ht[i] = t + 1
        h.legalize(t + 2)

        nxt = q
        while True:
            r = hn[nxt]
            if orient2d(xs[nxt], ys[nxt], xs[r], ys[r], x, y) >= 0:
                break
            t = h.add_triangle(nxt, i, r, ht[i], -1, ht[nxt])
            ht[i] = t + 1
            h.legalize(t + 2)
            hn[nxt] = nxt
            nxt = r

        while True:
            q = hp[e]
            if orient2d(xs[q], ys[q], xs[e], ys[e], x, y) >= 0:
                break
            t = h.add_triangle(q, i, e, -1, ht[e], ht[q])
            ht[q] = t
            h.legalize(t + 2)
            hn[e] = e
            e = q

        hull_start = e
        hp[i] = e
        hn[e] = i
        hp[nxt] = i
        hn[i] = nxt
        hull_hash[hash_key(x, y)] = i
        hull_hash[hash_key(xs[e], ys[e])] = e
        in_hull.add(i)
    return h


def _to_triangulation(points: np.ndarray, h: _SweepHull) -> Triangulation:
    tri = h.tri
    twin = h.twin
    m = len(tri) // 3
    nbrs = [BOUNDARY] * (3 * m)
    for t in range(m):
        for k in range(3):
            # neighbor slot k faces half-edge (k + 1) % 3
            g = twin[3 * t + (k + 1) % 3]
            nbrs[3 * t + k] = BOUNDARY if g == -1 else g // 3
    return Triangulation(np.ascontiguousarray(points.reshape(-1)),
                         np.array(tri, dtype=np.int64), np.array(nbrs, dtype=np.int64))


def delaunay(points) -> Triangulation:
    """Delaunay triangulation of the convex hull of ``points`` (an (n, 2) array).

    Raises GeometryError for fewer than three points, duplicate points or a
    fully collinear set.
    """
    pts = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    if len(pts) < 3:
        raise GeometryError("need at least 3 points")
    if len(np.unique(pts, axis=0)) != len(pts):
        raise GeometryError("duplicate points")
    h = _sweep(pts[:, 0].tolist(), pts[:, 1].tolist())
    return _to_triangulation(pts, h)

"""Final polygon mesh, its statistics and the invariant checks run on it."""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import asdict, dataclass

import numpy as np

from .labeling import EdgeLabels
from .traversal import Polyline
from .triangulation import Issue, Triangulation, boundary_edges, triangle_areas


@dataclass(frozen=True, eq=False)
class PolyMesh:
    """Polygons over the triangulation's vertices.

    ``mesh_array`` holds, per polygon, its vertex count followed by its ccw
    vertex indices. ``offsets[i]`` is where polygon ``i``'s count sits.
    """

    vertices: np.ndarray
    mesh_array: np.ndarray
    offsets: np.ndarray
    polygon_triangles: tuple

    @property
    def n_polygons(self) -> int:
        return len(self.offsets)

    def polygon(self, i: int) -> list[int]:
        o = int(self.offsets[i])
        return self.mesh_array[o + 1:o + 1 + int(self.mesh_array[o])].tolist()

    def polygons(self):
        for i in range(self.n_polygons):
            yield self.polygon(i)

    def coords(self, i: int) -> np.ndarray:
        return self.vertices.reshape(-1, 2)[self.polygon(i)]


@dataclass(frozen=True)
class MeshStats:
    input_points: int
    triangle_count: int
    region_count: int
    polygon_count: int
    tip_count: int
    max_tips_in_one_polygon: int
    avg_triangles_per_polygon: float
    avg_vertices_per_polygon: float
    min_interior_angle: float
    max_interior_angle: float

    def as_dict(self) -> dict:
        return asdict(self)


def assemble(T: Triangulation, polylines) -> PolyMesh:
    """Lay out simple polylines in the given order."""
    flat = []
    offsets = []
    groups = []
    for k, p in enumerate(polylines):
        if not isinstance(p, Polyline):
            p = Polyline(list(p[0]), list(p[1]))
        if not p.is_simple or len(p.vertex_ids) < 3:
            raise ValueError(f"polyline {k} (seed {p.seed}) is not a simple polygon")
        offsets.append(len(flat))
        flat.append(len(p.vertex_ids))
        flat.extend(p.vertex_ids)
        groups.append(tuple(p.source_triangles))
    mesh_array = np.asarray(flat, dtype=np.int64)
    off = np.asarray(offsets, dtype=np.int64)
    mesh_array.setflags(write=False)
    off.setflags(write=False)
    return PolyMesh(T.vertices, mesh_array, off, tuple(groups))


def _angles(xy: np.ndarray) -> np.ndarray:
    nxt = np.roll(xy, -1, axis=0) - xy
    prv = np.roll(xy, 1, axis=0) - xy
    cross = nxt[:, 0] * prv[:, 1] - nxt[:, 1] * prv[:, 0]
    dot = nxt[:, 0] * prv[:, 0] + nxt[:, 1] * prv[:, 1]
    return np.degrees(np.arctan2(cross, dot)) % 360.0


def interior_angles(mesh: PolyMesh, i: int) -> list[float]:
    """Interior angle in degrees at each vertex of ccw polygon ``i`` (reflex corners exceed 180)."""
    return _angles(mesh.coords(i)).tolist()


def _all_angles(mesh: PolyMesh) -> np.ndarray:
    if mesh.n_polygons == 0:
        return np.zeros(0)
    return np.concatenate([_angles(mesh.coords(i)) for i in range(mesh.n_polygons)])


def triangle_angle_range(T: Triangulation) -> tuple[float, float]:
    """(min, max) interior angle over all triangles, in degrees."""
    p = T.points
    t = T.triangles.reshape(-1, 3)
    out = []
    for k in range(3):
        xy = np.stack([p[t[:, k]], p[t[:, (k + 1) % 3]], p[t[:, (k + 2) % 3]]], axis=1)
        a = xy[:, 1] - xy[:, 0]
        b = xy[:, 2] - xy[:, 0]
        out.append(np.degrees(np.arctan2(a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0], (a * b).sum(axis=1))))
    ang = np.concatenate(out)
    return float(ang.min()), float(ang.max())


def polygon_area(xy: np.ndarray) -> float:
    x, y = xy[:, 0], xy[:, 1]
    return 0.5 * math.fsum((x * np.roll(y, -1) - np.roll(x, -1) * y).tolist())


def compute_stats(mesh: PolyMesh, T: Triangulation, labels: EdgeLabels, tips) -> MeshStats:
    """Mesh statistics; ``tips`` holds the tip list of each traversal polyline."""
    tips = [list(t) for t in tips]
    n_poly = mesh.n_polygons
    counts = mesh.mesh_array[mesh.offsets] if n_poly else np.zeros(0)
    ang = _all_angles(mesh)
    return MeshStats(
        input_points=T.n_vertices,
        triangle_count=T.n_triangles,
        region_count=len(labels.seeds),
        polygon_count=n_poly,
        tip_count=sum(len(t) for t in tips),
        max_tips_in_one_polygon=max((len(t) for t in tips), default=0),
        avg_triangles_per_polygon=T.n_triangles / n_poly if n_poly else 0.0,
        avg_vertices_per_polygon=float(counts.sum()) / n_poly if n_poly else 0.0,
        min_interior_angle=float(ang.min()) if len(ang) else 0.0,
        max_interior_angle=float(ang.max()) if len(ang) else 0.0,
    )


def verify(mesh: PolyMesh, T: Triangulation, labels: EdgeLabels = None, area_rtol: float = 1e-9,
           angle_tol: float = 1e-9) -> list[Issue]:
    """Check every mesh invariant; an empty list means the mesh is valid."""
    issues = []
    xy_all = T.points
    tri_area = triangle_areas(T)

    # polygon shape
    for i, poly in enumerate(mesh.polygons()):
        if len(poly) < 3:
            issues.append(Issue("simplicity", f"polygon {i} has {len(poly)} vertices"))
        elif len(set(poly)) != len(poly):
            issues.append(Issue("simplicity", f"polygon {i} repeats a vertex"))
        area = polygon_area(xy_all[poly])
        if area <= 0:
            issues.append(Issue("orientation", f"polygon {i} is not counter-clockwise (area {area:.3g})"))
        own = math.fsum(tri_area[list(mesh.polygon_triangles[i])].tolist())
        if abs(area - own) > area_rtol * max(abs(own), 1e-300):
            issues.append(Issue("area", f"polygon {i} area {area!r} differs from its triangles' {own!r}"))

    # triangle partition
    assigned = Counter(t for g in mesh.polygon_triangles for t in g)
    twice = [t for t, c in assigned.items() if c > 1]
    missing = T.n_triangles - len(assigned)
    stray = [t for t in assigned if not 0 <= t < T.n_triangles]
    if twice or missing or stray:
        issues.append(Issue("partition", f"{len(twice)} triangle(s) in several polygons, "
                                         f"{missing} unassigned, {len(stray)} out of range"))

    # vertex coverage
    used = set(T.triangles.tolist())
    on_mesh = {v for poly in mesh.polygons() for v in poly}
    lost = used - on_mesh
    if lost:
        issues.append(Issue("coverage", f"{len(lost)} vertex(es) on no polygon boundary, e.g. {min(lost)}"))

    # total area
    total_t = math.fsum(tri_area.tolist())
    total_p = math.fsum(polygon_area(xy_all[poly]) for poly in mesh.polygons())
    if abs(total_p - total_t) > area_rtol * abs(total_t):
        issues.append(Issue("area", f"polygon area {total_p!r} != triangulation area {total_t!r}"))

    # angle bound
    if mesh.n_polygons:
        tmin, _ = triangle_angle_range(T)
        pmin = float(_all_angles(mesh).min())
        if pmin < tmin - angle_tol:
            issues.append(Issue("angle", f"polygon min angle {pmin!r} below triangulation min angle {tmin!r}"))

    # polygon edges: every one is a mesh edge; boundary edges once, interior edges once per side
    tri = T.triangles.tolist()
    halfedges = set()
    for t in range(T.n_triangles):
        a, b, c = tri[3 * t:3 * t + 3]
        halfedges.update(((a, b), (b, c), (c, a)))
    directed = Counter()
    for poly in mesh.polygons():
        for k in range(len(poly)):
            directed[(poly[k], poly[(k + 1) % len(poly)])] += 1
    bnd = set(boundary_edges(T))
    bad_edges = [e for e in directed if e not in halfedges]
    if bad_edges:
        issues.append(Issue("boundary", f"{len(bad_edges)} polygon edge(s) are not triangulation edges"))
    multi = [e for e, c in directed.items() if c > 1]
    if multi:
        issues.append(Issue("boundary", f"{len(multi)} directed polygon edge(s) used more than once"))
    lost_b = [e for e in bnd if directed[e] != 1]
    if lost_b:
        issues.append(Issue("boundary", f"{len(lost_b)} domain boundary edge(s) not used exactly once"))
    unpaired = [e for e in directed if e not in bnd and (e[1], e[0]) not in directed]
    if unpaired:
        issues.append(Issue("boundary", f"{len(unpaired)} interior polygon edge(s) without a twin"))
    return issues

"""Indexed triangle mesh with flat vertex / triangle / neighbor arrays.

Layout (all 0-based):

* ``vertices[2*v], vertices[2*v+1]`` are the x, y coordinates of vertex ``v``.
* ``triangles[3*t:3*t+3]`` are the vertex indices of triangle ``t`` in ccw order.
* ``neighbors[3*t+k]`` is the triangle across the edge *opposite* local vertex
  ``k``, i.e. slot 2 holds the neighbor across edge (v0, v1), slot 0 across
  (v1, v2) and slot 1 across (v2, v0). This is also Triangle's ``.neigh``
  convention. Boundary edges hold :data:`BOUNDARY` (``-1``).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional

import numpy as np

from .errors import GeometryError, ParseError, TopologyError
from .predicates import orient2d

BOUNDARY = -1


class EdgeKey(NamedTuple):
    """Undirected edge identity, ``lo < hi``."""

    lo: int
    hi: int

    @classmethod
    def of(cls, a: int, b: int) -> "EdgeKey":
        if a == b:
            raise ValueError(f"degenerate edge ({a}, {a})")
        return cls(a, b) if a < b else cls(b, a)


class Issue(NamedTuple):
    """One entry of a validation or verification report."""

    kind: str
    detail: str


def slot_edge(tri, t, slot):
    """Vertex pair (a, b) of the edge across neighbor slot ``slot``, in the triangle's ccw order."""
    return tri[3 * t + (slot + 1) % 3], tri[3 * t + (slot + 2) % 3]


@dataclass(frozen=True, eq=False)
class Triangulation:
    vertices: np.ndarray
    triangles: np.ndarray
    neighbors: np.ndarray
    constrained_vertex_flags: Optional[np.ndarray] = None

    def __post_init__(self):
        for arr in (self.vertices, self.triangles, self.neighbors, self.constrained_vertex_flags):
            if arr is not None:
                arr.setflags(write=False)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices) // 2

    @property
    def n_triangles(self) -> int:
        return len(self.triangles) // 3

    @property
    def points(self) -> np.ndarray:
        return self.vertices.reshape(-1, 2)

    def triangle(self, t: int) -> tuple[int, int, int]:
        a, b, c = self.triangles[3 * t:3 * t + 3]
        return int(a), int(b), int(c)

    def edge_geometry(self, t: int, slot: int) -> tuple[EdgeKey, float]:
        return edge_geometry(self, t, slot)

    @classmethod
    def from_arrays(cls, vertices, triangles, neighbors=None, constrained_vertex_flags=None):
        """Build a triangulation, normalizing to ccw and reconstructing neighbors if absent.

        Raises GeometryError on zero-area triangles and TopologyError on
        non-manifold edges or neighbor arrays that disagree with the triangles.
        """
        verts = np.ascontiguousarray(np.asarray(vertices, dtype=np.float64).reshape(-1))
        tris = np.asarray(triangles, dtype=np.int64).reshape(-1).copy()
        if len(verts) % 2 or len(tris) % 3:
            raise ValueError("vertices must hold 2n values and triangles 3m values")
        n = len(verts) // 2
        if len(tris) and (tris.min() < 0 or tris.max() >= n):
            raise TopologyError("triangle vertex index out of range")
        nbrs = None
        if neighbors is not None:
            nbrs = np.asarray(neighbors, dtype=np.int64).reshape(-1).copy()
            if len(nbrs) != len(tris):
                raise TopologyError("neighbor array length differs from triangle array length")
        tris, nbrs = normalize_orientation(verts, tris, nbrs)
        if nbrs is None:
            nbrs = build_neighbors(tris)
        flags = None
        if constrained_vertex_flags is not None:
            flags = np.asarray(constrained_vertex_flags, dtype=bool).reshape(-1).copy()
            if len(flags) != n:
                raise ValueError("constrained_vertex_flags must have one entry per vertex")
        tri = cls(verts, tris, nbrs, flags)
        problems = [i for i in validate(tri) if i.kind in ("symmetry", "manifold", "range")]
        if problems:
            raise TopologyError("; ".join(i.detail for i in problems[:5]))
        return tri


def normalize_orientation(vertices, triangles, neighbors=None):
    """Return copies of ``triangles`` (and ``neighbors``) with every triangle ccw.

    A clockwise triangle (a, b, c) becomes (a, c, b); neighbor slots 1 and 2
    are swapped with it so each slot still faces the same edge.
    """
    xs = vertices[0::2].tolist()
    ys = vertices[1::2].tolist()
    tris = np.array(triangles, dtype=np.int64).reshape(-1)
    nbrs = None if neighbors is None else np.array(neighbors, dtype=np.int64).reshape(-1)
    tl = tris.tolist()
    for t in range(len(tl) // 3):
        a, b, c = tl[3 * t:3 * t + 3]
        if a == b or b == c or a == c:
            raise GeometryError(f"triangle {t} repeats a vertex index ({a}, {b}, {c})")
        s = orient2d(xs[a], ys[a], xs[b], ys[b], xs[c], ys[c])
        if s == 0:
            raise GeometryError(f"triangle {t} ({a}, {b}, {c}) has zero area")
        if s < 0:
            tris[3 * t + 1], tris[3 * t + 2] = c, b
            if nbrs is not None:
                nbrs[3 * t + 1], nbrs[3 * t + 2] = nbrs[3 * t + 2], nbrs[3 * t + 1]
    return tris, nbrs


def build_neighbors(triangles) -> np.ndarray:
    """Neighbor array for a flat triangle index array (sentinel for boundary slots)."""
    tris = np.asarray(triangles, dtype=np.int64).reshape(-1, 3)
    m = len(tris)
    nbrs = np.full(3 * m, BOUNDARY, dtype=np.int64)
    if m == 0:
        return nbrs
    # slot k faces edge (v[k+1], v[k+2])
    a = np.concatenate([tris[:, 1], tris[:, 2], tris[:, 0]])
    b = np.concatenate([tris[:, 2], tris[:, 0], tris[:, 1]])
    halfedge = np.concatenate([np.arange(m) * 3 + k for k in range(3)])
    lo = np.minimum(a, b)
    hi = np.maximum(a, b)
    order = np.lexsort((hi, lo))
    lo_s, hi_s, he_s = lo[order], hi[order], halfedge[order]
    same = (lo_s[1:] == lo_s[:-1]) & (hi_s[1:] == hi_s[:-1])
    if len(same) > 1 and np.any(same[1:] & same[:-1]):
        i = int(np.flatnonzero(same[1:] & same[:-1])[0])
        raise TopologyError(f"edge ({lo_s[i]}, {hi_s[i]}) is shared by more than two triangles")
    idx = np.flatnonzero(same)
    h1, h2 = he_s[idx], he_s[idx + 1]
    if np.any(h1 // 3 == h2 // 3):
        raise TopologyError("a triangle uses the same edge twice")
    nbrs[h1] = h2 // 3
    nbrs[h2] = h1 // 3
    return nbrs


def _exact_sqlen(x0, y0, x1, y1):
    dx = Fraction(x1) - Fraction(x0)
    dy = Fraction(y1) - Fraction(y0)
    return dx * dx + dy * dy


def edge_geometry(T: Triangulation, t: int, slot: int) -> tuple[EdgeKey, float]:
    """Canonical key and squared length of the edge across ``slot`` of triangle ``t``."""
    if not 0 <= slot <= 2:
        raise IndexError(f"local slot must be 0..2, got {slot}")
    if not 0 <= t < T.n_triangles:
        raise IndexError(f"triangle index {t} out of range")
    a, b = slot_edge(T.triangles, t, slot)
    key = EdgeKey.of(int(a), int(b))
    v = T.vertices
    dx = v[2 * key.hi] - v[2 * key.lo]
    dy = v[2 * key.hi + 1] - v[2 * key.lo + 1]
    return key, float(dx * dx + dy * dy)


def validate(T: Triangulation, tol: float = 0.0) -> list[Issue]:
    """List violations of the triangulation invariants; an empty list means valid."""
    issues: list[Issue] = []
    n, m = T.n_vertices, T.n_triangles
    tri = T.triangles.tolist()
    nb = T.neighbors.tolist()
    xs = T.vertices[0::2].tolist()
    ys = T.vertices[1::2].tolist()
    if len(nb) != len(tri):
        return [Issue("range", "neighbor array length differs from triangle array length")]
    for t in range(m):
        a, b, c = tri[3 * t:3 * t + 3]
        if not (0 <= a < n and 0 <= b < n and 0 <= c < n):
            issues.append(Issue("range", f"triangle {t} has a vertex index out of range"))
            continue
        if a == b or b == c or a == c:
            issues.append(Issue("degenerate", f"triangle {t} repeats a vertex index ({a}, {b}, {c})"))
            continue
        s = orient2d(xs[a], ys[a], xs[b], ys[b], xs[c], ys[c])
        if s == 0:
            issues.append(Issue("degenerate", f"triangle {t} has zero area"))
        elif s < 0:
            issues.append(Issue("orientation", f"triangle {t} is clockwise"))
    if any(i.kind in ("range",) for i in issues):
        return issues

    edge_count: dict[tuple[int, int], int] = {}
    for t in range(m):
        for k in range(3):
            a, b = slot_edge(tri, t, k)
            if a == b:
                continue
            key = (a, b) if a < b else (b, a)
            edge_count[key] = edge_count.get(key, 0) + 1
            j = nb[3 * t + k]
            if j == BOUNDARY:
                continue
            if not 0 <= j < m:
                issues.append(Issue("range", f"neighbor {3 * t + k} = {j} out of range"))
                continue
            back = [kk for kk in range(3) if nb[3 * j + kk] == t]
            if not back:
                issues.append(Issue("symmetry", f"triangle {j} does not name {t} as a neighbor"))
                continue
            if not any({a, b} == set(slot_edge(tri, j, kk)) for kk in back):
                issues.append(Issue("symmetry",
                                    f"triangles {t} and {j} are neighbors but do not share edge ({a}, {b})"))
    for key, count in edge_count.items():
        if count > 2:
            issues.append(Issue("manifold", f"edge {key} is shared by {count} triangles"))
    for t in range(m):
        for k in range(3):
            a, b = slot_edge(tri, t, k)
            key = (a, b) if a < b else (b, a)
            if nb[3 * t + k] == BOUNDARY and edge_count.get(key, 0) == 2:
                issues.append(Issue("symmetry", f"edge {key} of triangle {t} is interior but marked boundary"))

    pts = T.points
    if n:
        if tol > 0:
            q = np.round(pts / tol).astype(np.int64)
            _, counts = np.unique(q, axis=0, return_counts=True)
        else:
            _, counts = np.unique(pts, axis=0, return_counts=True)
        dup = int(np.sum(counts[counts > 1] - 1))
        if dup:
            issues.append(Issue("duplicate", f"{dup} duplicate vertex coordinate(s)"))
    return issues


def triangle_areas(T: Triangulation) -> np.ndarray:
    p = T.points
    t = T.triangles.reshape(-1, 3)
    a, b, c = p[t[:, 0]], p[t[:, 1]], p[t[:, 2]]
    return 0.5 * ((b[:, 0] - a[:, 0]) * (c[:, 1] - a[:, 1]) - (b[:, 1] - a[:, 1]) * (c[:, 0] - a[:, 0]))


def boundary_edges(T: Triangulation) -> list[tuple[int, int]]:
    """Directed boundary edges (a, b) with the domain on their left."""
    tri = T.triangles.tolist()
    nb = T.neighbors.tolist()
    out = []
    for h, j in enumerate(nb):
        if j == BOUNDARY:
            out.append(slot_edge(tri, h // 3, h % 3))
    return out


# --- Triangle .node / .ele / .neigh -------------------------------------------------------------

def _data_lines(text: str, source: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line.split()


def _ints(fields, lineno, source):
    try:
        return [int(f) for f in fields]
    except ValueError:
        raise ParseError(f"expected integers, got {' '.join(fields)!r}", lineno, source) from None


def _parse_node(text):
    rows = _data_lines(text, ".node")
    try:
        lineno, header = next(rows)
    except StopIteration:
        raise ParseError("empty file", None, ".node") from None
    if len(header) < 2:
        raise ParseError("header needs <#points> <dim> [<#attrs> <#markers>]", lineno, ".node")
    hdr = _ints(header[:4], lineno, ".node")
    npts, dim = hdr[0], hdr[1]
    nattr = hdr[2] if len(hdr) > 2 else 0
    nmark = hdr[3] if len(hdr) > 3 else 0
    if dim != 2:
        raise ParseError(f"only 2D nodes are supported (dim={dim})", lineno, ".node")
    width = 3 + nattr + (1 if nmark else 0)
    coords = np.empty(2 * npts, dtype=np.float64)
    markers = np.zeros(npts, dtype=bool)
    base = None
    count = 0
    for lineno, fields in rows:
        if count == npts:
            raise ParseError("more rows than declared in header", lineno, ".node")
        if len(fields) < width:
            raise ParseError(f"expected {width} fields, got {len(fields)}", lineno, ".node")
        idx = _ints(fields[:1], lineno, ".node")[0]
        if base is None:
            if idx not in (0, 1):
                raise ParseError(f"first node index must be 0 or 1, got {idx}", lineno, ".node")
            base = idx
        if idx != base + count:
            raise ParseError(f"node index {idx} out of sequence (expected {base + count})", lineno, ".node")
        try:
            coords[2 * count] = float(fields[1])
            coords[2 * count + 1] = float(fields[2])
        except ValueError:
            raise ParseError(f"bad coordinate in {' '.join(fields)!r}", lineno, ".node") from None
        if nmark:
            markers[count] = _ints(fields[3 + nattr:4 + nattr], lineno, ".node")[0] != 0
        count += 1
    if count != npts:
        raise ParseError(f"header declares {npts} points, found {count}", None, ".node")
    return coords, (markers if nmark else None), (0 if base is None else base)


def _parse_ele(text, node_base, npts):
    rows = _data_lines(text, ".ele")
    try:
        lineno, header = next(rows)
    except StopIteration:
        raise ParseError("empty file", None, ".ele") from None
    hdr = _ints(header[:3], lineno, ".ele")
    if len(hdr) < 2:
        raise ParseError("header needs <#triangles> <nodes per triangle> [<#attrs>]", lineno, ".ele")
    ntri, per = hdr[0], hdr[1]
    nattr = hdr[2] if len(hdr) > 2 else 0
    if per != 3:
        raise ParseError(f"only 3-node triangles are supported (got {per})", lineno, ".ele")
    tris = np.empty(3 * ntri, dtype=np.int64)
    base = None
    count = 0
    for lineno, fields in rows:
        if count == ntri:
            raise ParseError("more rows than declared in header", lineno, ".ele")
        if len(fields) < 4 + nattr:
            raise ParseError(f"expected {4 + nattr} fields, got {len(fields)}", lineno, ".ele")
        vals = _ints(fields[:4], lineno, ".ele")
        if base is None:
            base = vals[0]
        if vals[0] != base + count:
            raise ParseError(f"triangle index {vals[0]} out of sequence", lineno, ".ele")
        for k in range(3):
            v = vals[1 + k] - node_base
            if not 0 <= v < npts:
                raise ParseError(f"node index {vals[1 + k]} out of range", lineno, ".ele")
            tris[3 * count + k] = v
        count += 1
    if count != ntri:
        raise ParseError(f"header declares {ntri} triangles, found {count}", None, ".ele")
    return tris, (0 if base is None else base)


def _parse_neigh(text, ele_base, ntri):
    rows = _data_lines(text, ".neigh")
    try:
        lineno, header = next(rows)
    except StopIteration:
        raise ParseError("empty file", None, ".neigh") from None
    hdr = _ints(header[:2], lineno, ".neigh")
    if hdr[0] != ntri:
        raise ParseError(f"declares {hdr[0]} triangles but .ele has {ntri}", lineno, ".neigh")
    nbrs = np.empty(3 * ntri, dtype=np.int64)
    count = 0
    for lineno, fields in rows:
        if count == ntri:
            raise ParseError("more rows than declared in header", lineno, ".neigh")
        if len(fields) < 4:
            raise ParseError(f"expected 4 fields, got {len(fields)}", lineno, ".neigh")
        vals = _ints(fields[:4], lineno, ".neigh")
        for k in range(3):
            j = vals[1 + k]
            if j < 0:
                nbrs[3 * count + k] = BOUNDARY
            else:
                j -= ele_base
                if not 0 <= j < ntri:
                    raise ParseError(f"neighbor index {vals[1 + k]} out of range", lineno, ".neigh")
                nbrs[3 * count + k] = j
        count += 1
    if count != ntri:
        raise ParseError(f"header declares {ntri} triangles, found {count}", None, ".neigh")
    return nbrs


def load_triangle_files(node_text: str, ele_text: str, neigh_text: Optional[str] = None) -> Triangulation:
    """Parse Triangle-format texts into a validated, ccw-normalized triangulation.

    The index base (0 or 1) is taken from the first node index; triangle
    numbering in ``.neigh`` follows the first index of ``.ele``.
    """
    coords, markers, node_base = _parse_node(node_text)
    npts = len(coords) // 2
    tris, ele_base = _parse_ele(ele_text, node_base, npts)
    nbrs = None
    if neigh_text is not None:
        nbrs = _parse_neigh(neigh_text, ele_base, len(tris) // 3)
    return Triangulation.from_arrays(coords, tris, nbrs, markers)


def read_triangle_files(node_path, ele_path, neigh_path=None) -> Triangulation:
    def read(p):
        with open(p) as fh:
            return fh.read()

    try:
        return load_triangle_files(read(node_path), read(ele_path),
                                   None if neigh_path is None else read(neigh_path))
    except ParseError as exc:
        path = {".node": node_path, ".ele": ele_path, ".neigh": neigh_path}.get(exc.source, exc.source)
        raise ParseError(exc.message, exc.line, str(path)) from None


def write_triangle_files(T: Triangulation, base: int = 0) -> tuple[str, str, str]:
    """Serialize to (.node, .ele, .neigh) texts using ``repr`` floats (round-trip exact)."""
    n, m = T.n_vertices, T.n_triangles
    flags = T.constrained_vertex_flags
    xs = T.vertices[0::2].tolist()
    ys = T.vertices[1::2].tolist()
    node = [f"{n} 2 0 {1 if flags is not None else 0}"]
    for v in range(n):
        row = f"{v + base} {xs[v]!r} {ys[v]!r}"
        if flags is not None:
            row += f" {int(flags[v])}"
        node.append(row)
    tri = T.triangles.tolist()
    ele = [f"{m} 3 0"]
    for t in range(m):
        a, b, c = tri[3 * t:3 * t + 3]
        ele.append(f"{t + base} {a + base} {b + base} {c + base}")
    nb = T.neighbors.tolist()
    neigh = [f"{m} 3"]
    for t in range(m):
        vals = [j + base if j != BOUNDARY else -1 for j in nb[3 * t:3 * t + 3]]
        neigh.append(f"{t + base} {vals[0]} {vals[1]} {vals[2]}")
    return "\n".join(node) + "\n", "\n".join(ele) + "\n", "\n".join(neigh) + "\n"

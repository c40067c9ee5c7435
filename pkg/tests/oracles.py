"""Brute-force reference computations, independent of the package internals.

Only the raw vertex and triangle arrays are used: adjacency is rebuilt from
an edge dictionary and lengths are exact rationals.
"""
from collections import Counter, defaultdict
from fractions import Fraction


def _points(T):
    v = T.vertices.tolist()
    return [(Fraction(v[2 * i]), Fraction(v[2 * i + 1])) for i in range(len(v) // 2)]


def _tris(T):
    t = T.triangles.tolist()
    return [tuple(t[3 * i:3 * i + 3]) for i in range(len(t) // 3)]


def edge_owners(T):
    owners = defaultdict(list)
    for i, (a, b, c) in enumerate(_tris(T)):
        for e in ((a, b), (b, c), (c, a)):
            owners[frozenset(e)].append(i)
    return owners


def longest_edge(T):
    """Triangle index -> frozenset edge, ordered by (exact squared length, lo, hi)."""
    pts = _points(T)

    def rank(e):
        a, b = sorted(e)
        dx = pts[a][0] - pts[b][0]
        dy = pts[a][1] - pts[b][1]
        return (dx * dx + dy * dy, a, b)

    out = {}
    for i, (a, b, c) in enumerate(_tris(T)):
        out[i] = max((frozenset((a, b)), frozenset((b, c)), frozenset((c, a))), key=rank)
    return out


def lepp_terminal(T):
    """Triangle index -> terminal edge (frozenset) reached by following longest edges."""
    owners = edge_owners(T)
    le = longest_edge(T)
    out = {}
    for start in le:
        t = start
        for _ in range(len(le) + 1):
            e = le[t]
            other = [j for j in owners[e] if j != t]
            if not other or le[other[0]] == e:
                out[start] = e
                break
            t = other[0]
        else:
            raise AssertionError("Lepp did not terminate")
    return out


def lepp_groups(T):
    """Partition of triangle indices into terminal-edge regions (set of frozensets)."""
    groups = defaultdict(set)
    for t, e in lepp_terminal(T).items():
        groups[e].add(t)
    return {frozenset(g) for g in groups.values()}


def frontier_edges(T):
    """Edges that are the longest edge of neither adjacent triangle, plus all boundary edges."""
    owners = edge_owners(T)
    le = longest_edge(T)
    out = set()
    for e, ts in owners.items():
        if len(ts) == 1 or all(le[t] != e for t in ts):
            out.add(e)
    return out


def region_boundary(T, triangles):
    """Multiset of frontier edges seen from inside a region: barrier edges count twice."""
    fr = frontier_edges(T)
    tris = _tris(T)
    out = Counter()
    for t in triangles:
        a, b, c = tris[t]
        for e in ((a, b), (b, c), (c, a)):
            if frozenset(e) in fr:
                out[frozenset(e)] += 1
    return out


def polyline_edges(ids):
    return Counter(frozenset((ids[k], ids[(k + 1) % len(ids)])) for k in range(len(ids)))


def cyclic_tips(ids):
    """Every j with ids[j-1] == ids[j+1], scanning all cyclic triples."""
    n = len(ids)
    return {ids[j] for j in range(n) if n >= 3 and ids[(j - 1) % n] == ids[(j + 1) % n]}


def empty_circumcircle_violations(T):
    """(triangle, point) pairs with the point strictly inside the triangle's circumcircle."""
    pts = _points(T)
    bad = []
    for i, (a, b, c) in enumerate(_tris(T)):
        (ax, ay), (bx, by), (cx, cy) = pts[a], pts[b], pts[c]
        for p, (dx, dy) in enumerate(pts):
            if p in (a, b, c):
                continue
            adx, ady = ax - dx, ay - dy
            bdx, bdy = bx - dx, by - dy
            cdx, cdy = cx - dx, cy - dy
            det = ((adx * adx + ady * ady) * (bdx * cdy - cdx * bdy)
                   - (bdx * bdx + bdy * bdy) * (adx * cdy - cdx * ady)
                   + (cdx * cdx + cdy * cdy) * (adx * bdy - bdx * ady))
            if det > 0:
                bad.append((i, p))
    return bad


def shoelace(points, ids):
    s = Fraction(0)
    for k in range(len(ids)):
        x0, y0 = points[ids[k]]
        x1, y1 = points[ids[(k + 1) % len(ids)]]
        s += Fraction(x0) * Fraction(y1) - Fraction(x1) * Fraction(y0)
    return s / 2

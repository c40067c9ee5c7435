"""Orientation and in-circle predicates with an exact fallback.

Both predicates first evaluate in floating point and accept the sign when it
clears Shewchuk's static error bound; otherwise the determinant is recomputed
exactly with ``fractions.Fraction`` (every double is a dyadic rational, so the
result is the true sign).
"""
from fractions import Fraction

_EPS = 2.0 ** -53
_CCW_BOUND = (3.0 + 16.0 * _EPS) * _EPS
_ICC_BOUND = (10.0 + 96.0 * _EPS) * _EPS


def _orient_exact(ax, ay, bx, by, cx, cy):
    ax, ay, bx, by, cx, cy = map(Fraction, (ax, ay, bx, by, cx, cy))
    det = (ax - cx) * (by - cy) - (ay - cy) * (bx - cx)
    return (det > 0) - (det < 0)


def orient2d(ax, ay, bx, by, cx, cy):
    """Sign of the turn a -> b -> c: +1 ccw, -1 cw, 0 collinear."""
    detleft = (ax - cx) * (by - cy)
    detright = (ay - cy) * (bx - cx)
    det = detleft - detright
    if abs(det) > _CCW_BOUND * (abs(detleft) + abs(detright)):
        return 1 if det > 0 else -1
    return _orient_exact(ax, ay, bx, by, cx, cy)


def orient2d_value(ax, ay, bx, by, cx, cy):
    """Twice the signed area of triangle abc (plain floating point)."""
    return (ax - cx) * (by - cy) - (ay - cy) * (bx - cx)


def _incircle_exact(ax, ay, bx, by, cx, cy, dx, dy):
    ax, ay, bx, by, cx, cy, dx, dy = map(Fraction, (ax, ay, bx, by, cx, cy, dx, dy))
    adx, ady = ax - dx, ay - dy
    bdx, bdy = bx - dx, by - dy
    cdx, cdy = cx - dx, cy - dy
    det = ((adx * adx + ady * ady) * (bdx * cdy - cdx * bdy)
           + (bdx * bdx + bdy * bdy) * (cdx * ady - adx * cdy)
           + (cdx * cdx + cdy * cdy) * (adx * bdy - bdx * ady))
    return (det > 0) - (det < 0)


def incircle(ax, ay, bx, by, cx, cy, dx, dy):
    """+1 if d lies strictly inside the circle through ccw a, b, c; -1 outside; 0 on it."""
    adx, ady = ax - dx, ay - dy
    bdx, bdy = bx - dx, by - dy
    cdx, cdy = cx - dx, cy - dy
    bdxcdy = bdx * cdy
    cdxbdy = cdx * bdy
    cdxady = cdx * ady
    adxcdy = adx * cdy
    adxbdy = adx * bdy
    bdxady = bdx * ady
    alift = adx * adx + ady * ady
    blift = bdx * bdx + bdy * bdy
    clift = cdx * cdx + cdy * cdy
    det = alift * (bdxcdy - cdxbdy) + blift * (cdxady - adxcdy) + clift * (adxbdy - bdxady)
    permanent = (alift * (abs(bdxcdy) + abs(cdxbdy))
                 + blift * (abs(cdxady) + abs(adxcdy))
                 + clift * (abs(adxbdy) + abs(bdxady)))
    if abs(det) > _ICC_BOUND * permanent:
        return 1 if det > 0 else -1
    return _incircle_exact(ax, ay, bx, by, cx, cy, dx, dy)


def incircle_perturbed(xs, ys, a, b, c, d):
    """In-circle sign for point indices with a symbolic tie-break; never returns 0.

    Exact co-circular cases are resolved by lowering each lifted point
    ``(x, y, x^2 + y^2)`` by an infinitesimal that shrinks with its index, so
    the smallest index dominates. The result is the Delaunay triangulation of
    the perturbed (generic) lifting, which is unique.
    """
    s = incircle(xs[a], ys[a], xs[b], ys[b], xs[c], ys[c], xs[d], ys[d])
    if s:
        return s
    k = min(a, b, c, d)
    if k == a:
        return -orient2d(xs[b], ys[b], xs[c], ys[c], xs[d], ys[d])
    if k == b:
        return orient2d(xs[a], ys[a], xs[c], ys[c], xs[d], ys[d])
    if k == c:
        return -orient2d(xs[a], ys[a], xs[b], ys[b], xs[d], ys[d])
    return orient2d(xs[a], ys[a], xs[b], ys[b], xs[c], ys[c])

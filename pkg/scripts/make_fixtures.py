"""Regenerate the triangulation fixtures in tests/data.

* ``tip1``: a single terminal-edge region with one barrier-edge tip.
* ``tip3``: a single region with three tips whose repair gives four polygons.
* ``nondelaunay``: a random Delaunay mesh with a batch of diagonals flipped.

Regions are cut out of seeded random meshes and renumbered; cutting keeps
every triangle's longest edge, so the cut-out is again one region with the
same tips.
"""
import argparse
import random
from pathlib import Path

import numpy as np

from termesh import Triangulation, delaunay, label, build_all, random_points, PointSetSpec, write_triangle_files
from termesh.predicates import incircle, orient2d
from termesh.repair import repair


def extract(T, tris):
    tri = T.triangles.reshape(-1, 3)[sorted(tris)]
    used = np.unique(tri)
    remap = {int(v): i for i, v in enumerate(used)}
    pts = T.points[used]
    new = np.vectorize(remap.get)(tri)
    return Triangulation.from_arrays(pts.ravel(), new.ravel())


def find_region(tips, products, n=400, max_triangles=40):
    for seed in range(2000):
        T = delaunay(random_points(PointSetSpec(n, seed=seed)))
        L = label(T)
        R = build_all(T, L)
        rep = repair(T, L, R)
        for p, group in zip(R.polylines, rep.products):
            if len(p.tips) == tips and len(group) == products and len(p.source_triangles) <= max_triangles:
                sub = extract(T, p.source_triangles)
                sl = label(sub)
                sr = build_all(sub, sl)
                if len(sl.seeds) == 1 and len(sr.polylines[0].tips) == tips:
                    return sub, seed
    raise SystemExit(f"no region with {tips} tips found")


def flip_some(T, count, rng):
    """Flip ``count`` random interior edges whose quad is strictly convex (each flip breaks Delaunay)."""
    tri = T.triangles.reshape(-1, 3).tolist()
    p = T.points
    done = 0
    for _ in range(50 * count):
        if done == count:
            break
        t = rng.randrange(len(tri))
        nb = Triangulation.from_arrays(T.vertices, np.asarray(tri).ravel()).neighbors
        k = rng.randrange(3)
        j = int(nb[3 * t + k])
        if j < 0:
            continue
        a = tri[t][k]
        b, c = tri[t][(k + 1) % 3], tri[t][(k + 2) % 3]
        d = next(v for v in tri[j] if v not in (b, c))
        if orient2d(*p[a], *p[b], *p[d]) <= 0 or orient2d(*p[a], *p[d], *p[c]) <= 0:
            continue
        if incircle(*p[a], *p[b], *p[c], *p[d]) == 0:
            continue
        tri[t] = [a, b, d]
        tri[j] = [a, d, c]
        done += 1
    return Triangulation.from_arrays(T.vertices, np.asarray(tri).ravel())


def save(T, stem: Path):
    for ext, text in zip(("node", "ele", "neigh"), write_triangle_files(T)):
        stem.with_suffix("." + ext).write_text(text)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default=str(Path(__file__).resolve().parent.parent / "tests" / "data"))
    args = ap.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)

    t1, s1 = find_region(1, 2, max_triangles=12)
    save(t1, out / "tip1")
    t3, s3 = find_region(3, 4)
    save(t3, out / "tip3")
    nd = flip_some(delaunay(random_points(PointSetSpec(60, seed=3))), 25, random.Random(3))
    save(nd, out / "nondelaunay")
    print(f"tip1 from seed {s1}: {t1.n_triangles} triangles; tip3 from seed {s3}: {t3.n_triangles} triangles; "
          f"nondelaunay: {nd.n_triangles} triangles")


if __name__ == "__main__":
    main()

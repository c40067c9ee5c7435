"""Mesh statistics for random point sets of growing size, averaged over seeds.

    python3 scripts/table_stats.py --sizes 10,100,1000,10000 --seeds 5
"""
import argparse
import statistics
from dataclasses import dataclass, field

from termesh import PointSetSpec, delaunay, random_points, run_pipeline


@dataclass(frozen=True)
class Config:
    sizes: tuple = (10, 100, 1000, 10000)
    seeds: int = 5
    gamma: float = None
    columns: tuple = field(default=("triangle_count", "region_count", "polygon_count", "max_tips_in_one_polygon",
                                    "tip_count", "avg_triangles_per_polygon", "avg_vertices_per_polygon",
                                    "min_interior_angle", "max_interior_angle"))


def run(cfg: Config):
    print("n," + ",".join(cfg.columns))
    for n in cfg.sizes:
        rows = []
        for seed in range(cfg.seeds):
            T = delaunay(random_points(PointSetSpec(n, seed=seed, gamma=cfg.gamma)))
            rows.append(run_pipeline(T).stats.as_dict())
        means = [statistics.fmean(r[c] for r in rows) for c in cfg.columns]
        print(f"{n}," + ",".join(f"{m:.2f}" for m in means))


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--sizes", default="10,100,1000,10000")
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--gamma", type=float, default=None)
    a = ap.parse_args()
    run(Config(tuple(int(float(s)) for s in a.sizes.split(",")), a.seeds, a.gamma))


if __name__ == "__main__":
    main()

"""Draw a random-point polygon mesh as a colored SVG.

    python3 scripts/render.py --points 200 --seed 1 --out mesh.svg
"""
import argparse
from dataclasses import dataclass

from termesh import ExportOptions, PointSetSpec, delaunay, random_points, run_pipeline, write_svg

PALETTE = ("#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462", "#b3de69", "#fccde5")


@dataclass(frozen=True)
class Config:
    points: int = 200
    seed: int = 1
    out: str = "mesh.svg"
    canvas: int = 800


def run(cfg: Config):
    r = run_pipeline(delaunay(random_points(PointSetSpec(cfg.points, seed=cfg.seed))))
    svg = write_svg(r.mesh, ExportOptions(format="svg", precision=8, canvas_size=cfg.canvas), PALETTE)
    with open(cfg.out, "w") as fh:
        fh.write(svg)
    print(f"{r.mesh.n_polygons} polygons -> {cfg.out}")


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--points", type=int, default=200)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--out", default="mesh.svg")
    a = ap.parse_args()
    run(Config(a.points, a.seed, a.out))


if __name__ == "__main__":
    main()

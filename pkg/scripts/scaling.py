"""Per-phase wall time versus input size; prints CSV and the ratio between consecutive sizes.

    python3 scripts/scaling.py --sizes 1000,10000,100000 --reps 5
"""
import argparse
from dataclasses import dataclass

from termesh.cli import RunConfig, bench


@dataclass(frozen=True)
class Config:
    sizes: tuple = (1000, 10000, 100000)
    reps: int = 5
    seed: int = 0


def run(cfg: Config) -> str:
    csv = bench(RunConfig(bench=list(cfg.sizes), reps=cfg.reps, seed=cfg.seed))
    print(csv, end="")
    rows = [line.split(",") for line in csv.strip().splitlines()]
    head, body = rows[0], rows[1:]
    phases = [i for i, h in enumerate(head) if h.endswith("_seconds")]
    for prev, cur in zip(body, body[1:]):
        ratio = ", ".join(f"{head[i][:-8]} x{float(cur[i]) / max(float(prev[i]), 1e-12):.1f}" for i in phases)
        print(f"# {prev[0]} -> {cur[0]}: {ratio}")
    return csv


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--sizes", default="1000,10000,100000")
    ap.add_argument("--reps", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    run(Config(tuple(int(float(s)) for s in a.sizes.split(",")), a.reps, a.seed))


if __name__ == "__main__":
    main()

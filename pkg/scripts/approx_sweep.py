"""Run the matrix approximation on random bounded-degree graphs across k.

Prints, per instance and k, whether the greedy chain succeeded and the
verified stretch against the guaranteed bound.

    python scripts/approx_sweep.py --n 60 --d 3 --seeds 5 --ks 1 2 4
"""
import argparse
from dataclasses import dataclass, field

from stretchwidth.generators import random_bounded_degree
from stretchwidth.matrix import adjacency_matrix, approx_stw


@dataclass
class SweepConfig:
    n: int = 60
    d: int = 3
    seeds: int = 5
    ks: list = field(default_factory=lambda: [1, 2, 4])


def run(cfg: SweepConfig):
    for seed in range(cfg.seeds):
        G = random_bounded_degree(cfg.n, cfg.d, seed)
        M = adjacency_matrix(G)
        for k in cfg.ks:
            out = approx_stw(M, k)
            if out.success:
                yield seed, k, "ok", out.verified_stretch, out.bound
            else:
                yield seed, k, "refused", out.refusal_division.p, out.bound


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=60)
    ap.add_argument("--d", type=int, default=3)
    ap.add_argument("--seeds", type=int, default=5)
    ap.add_argument("--ks", type=int, nargs="+", default=[1, 2, 4])
    cfg = SweepConfig(**vars(ap.parse_args()))
    print("seed  k  result   stretch/blocks  bound")
    for seed, k, status, value, bound in run(cfg):
        print(f"{seed:>4} {k:>2}  {status:<8} {value:>14}  {bound}")

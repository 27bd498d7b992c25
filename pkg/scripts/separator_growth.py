"""Balanced separator size on flattened k x k grids, with a log2 n slope fit.

    python scripts/separator_growth.py --kmax 6
"""
import argparse
import math
import time
from dataclasses import dataclass
from fractions import Fraction

from stretchwidth.generators import gen_flattened_grid
from stretchwidth.overlap import certified_t
from stretchwidth.separator import balanced_separator, verify_separation


@dataclass
class GrowthConfig:
    kmin: int = 2
    kmax: int = 6
    budget: int = 10 ** 7


def run(cfg: GrowthConfig):
    rows = []
    for k in range(cfg.kmin, cfg.kmax + 1):
        t0 = time.perf_counter()
        G = gen_flattened_grid(k)
        t = certified_t(G, budget=cfg.budget)
        sep = balanced_separator(G, t)
        ok = verify_separation(G, sep, Fraction(1, 12))
        rows.append((k, G.n, t, len(sep.C), sep.method, ok, time.perf_counter() - t0))
    xs = [math.log2(r[1]) for r in rows]
    ys = [r[3] for r in rows]
    beta = sum(x * y for x, y in zip(xs, ys)) / sum(x * x for x in xs)
    return rows, beta


if __name__ == "__main__":
    ap = argparse.ArgumentParser()
    ap.add_argument("--kmin", type=int, default=2)
    ap.add_argument("--kmax", type=int, default=6)
    cfg = GrowthConfig(**{k: v for k, v in vars(ap.parse_args()).items()})
    rows, beta = run(cfg)
    print(f"{'k':>3} {'n':>6} {'t':>3} {'|C|':>4} {'|C|/log2n':>10} {'method':>8} valid  secs")
    for k, n, t, c, method, ok, secs in rows:
        print(f"{k:>3} {n:>6} {t:>3} {c:>4} {c / math.log2(n):>10.3f} {method:>8} {str(ok):>5} {secs:5.1f}")
    print(f"fitted |C| ~ {beta:.3f} * log2 n")

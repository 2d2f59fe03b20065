"""Flow oracle vs halfspace test over every small 0/1 matrix and every column subset."""

import argparse
import itertools
import time
import zlib
from dataclasses import dataclass

from shintani.polyhedra import verify_sets


@dataclass(frozen=True)
class Config:
    max_n: int = 4
    max_r: int = 4
    samples: int = 1000


def families(cfg: Config):
    """Distinct (n, sorted column masks of J) with the number of (A, J) pairs behind them."""
    keys: dict = {}
    for n in range(1, cfg.max_n + 1):
        for r in range(1, cfg.max_r + 1):
            for cols in itertools.product(range(1, 1 << n), repeat=r):
                cover = 0
                for c in cols:
                    cover |= c
                if cover != (1 << n) - 1:
                    continue
                for k in range(1, 1 << r):
                    key = (n, tuple(sorted(cols[j] for j in range(r) if k >> j & 1)))
                    keys[key] = keys.get(key, 0) + 1
    return keys


def run(cfg: Config) -> int:
    t = time.perf_counter()
    keys = families(cfg)
    print(f"{sum(keys.values())} (A,J) pairs, {len(keys)} distinct set families")
    bad = agree = discarded = 0
    for n, masks in sorted(keys):
        sets = [[i for i in range(n) if m >> i & 1] for m in masks]
        rep = verify_sets(sets, n, cfg.samples, zlib.crc32(repr((n, masks)).encode()))
        agree += rep.agree
        discarded += rep.discarded
        for p in rep.disagree:
            bad += 1
            print(f"disagreement n={n} sets={sets} sigma={p}")
    print(f"agree {agree}, discarded {discarded}, disagree {bad}, {time.perf_counter() - t:.1f}s")
    return 1 if bad else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=4)
    ap.add_argument("--max-r", type=int, default=4)
    ap.add_argument("--samples", type=int, default=1000)
    a = ap.parse_args()
    raise SystemExit(run(Config(a.max_n, a.max_r, a.samples)))

"""Stress the graph procedure and count how often the augmenting stage is needed."""

import argparse
import logging
import random
import time
from dataclasses import dataclass

from shintani.weights import WeightInstance, check_hall_condition, decompose_graph


@dataclass(frozen=True)
class Config:
    instances: int = 20000
    max_n: int = 8
    max_m: int = 6
    seed: int = 0
    tight: bool = False


class _Counter(logging.Handler):
    def __init__(self):
        super().__init__(logging.DEBUG)
        self.hits = 0

    def emit(self, record):
        self.hits += 1


def instance(rng: random.Random, cfg: Config) -> WeightInstance:
    n, m = rng.randint(1, cfg.max_n), rng.randint(1, cfg.max_m)
    sets = [sorted(rng.sample(range(n), rng.randint(1, n))) for _ in range(m)]
    if cfg.tight:
        sigma = [0.0] * n
        for s in sets:
            w = [rng.random() for _ in s]
            for i, x in zip(s, w):
                sigma[i] += x / sum(w)
    else:
        sigma = [rng.uniform(0, 2.5) for _ in range(n)]
    return WeightInstance.create(n, sets, sigma)


def run(cfg: Config) -> None:
    counter = _Counter()
    log = logging.getLogger("shintani.weights")
    log.addHandler(counter)
    log.setLevel(logging.DEBUG)
    rng = random.Random(cfg.seed)
    done = failed = 0
    t = time.perf_counter()
    while done < cfg.instances:
        inst = instance(rng, cfg)
        if not check_hall_condition(inst).feasible:
            continue
        done += 1
        if not decompose_graph(inst).is_valid(inst):
            failed += 1
            print("invalid:", inst.to_json())
    print(f"{done} feasible instances, {failed} invalid, "
          f"{counter.hits} rounds needed the augmenting stage, {time.perf_counter() - t:.1f}s")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--instances", type=int, default=20000)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--tight", action="store_true", help="sigma built from exactly-unit parts")
    a = ap.parse_args()
    run(Config(instances=a.instances, seed=a.seed, tight=a.tight))

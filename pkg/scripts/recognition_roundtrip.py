"""Expand random P/Q, recover a presentation from the coefficients, and
count how often the recovered denominator is the original one."""
import argparse
import random
import time
from dataclasses import dataclass

from novikov_kit.group_ring import GradingForm, LaurentElement
from novikov_kit.rationality import RationalPresentation, expand, recognize


@dataclass
class Config:
    trials: int = 100
    depth: int = 60
    max_deg: int = 3
    coeff_bound: int = 3
    seed: int = 1


def random_presentation(rng, cfg):
    xi = GradingForm((1,))
    order = rng.randint(0, cfg.max_deg)
    b = cfg.coeff_bound
    Q = LaurentElement({(0,): 1, **{(-i,): rng.randint(-b, b) for i in range(1, order + 1)}})
    P = LaurentElement({(-i,): rng.randint(-b, b) for i in range(rng.randint(1, cfg.max_deg))}, rank=1)
    return RationalPresentation(P, Q, (rng.randint(-3, 3),), xi)


def main(cfg: Config) -> None:
    rng = random.Random(cfg.seed)
    matched = same_q = 0
    t0 = time.perf_counter()
    for _ in range(cfg.trials):
        rp = random_presentation(rng, cfg)
        series = expand(rp, -cfg.depth)
        got = recognize(series, (-1,), cfg.max_deg)
        if got is not None and expand(got, -cfg.depth) == series:
            matched += 1
            same_q += got.Q == rp.Q
    dt = time.perf_counter() - t0
    print(f"{matched}/{cfg.trials} expansions reproduced, {same_q} with the original Q "
          f"(others are reduced forms), {dt:.2f}s")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--trials", type=int, default=Config.trials)
    p.add_argument("--depth", type=int, default=Config.depth)
    p.add_argument("--seed", type=int, default=Config.seed)
    a = p.parse_args()
    main(Config(trials=a.trials, depth=a.depth, seed=a.seed))

"""Level sums of sum_s A^s for random matrices over the grade -1 level,
compared against the bound (size * ||A||)^k.  Reports how tight the bound is."""
import argparse
import random
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from novikov_kit import matrix as mx
from novikov_kit.group_ring import GradingForm, LaurentElement
from novikov_kit.novikov_series import default_theta, geometric_series, level_sums


@dataclass
class Config:
    trials: int = 200
    levels: int = 15
    max_size: int = 3
    max_norm: int = 2
    max_rank: int = 3
    seed: int = 0


def random_form(rng, m):
    while True:
        w = [rng.randint(-2, 2) for _ in range(m)]
        g = 0
        for x in w:
            g = gcd(g, x)
        if g == 1:
            return GradingForm(tuple(w))


def random_level_matrix(rng, xi, size, max_norm):
    """Entries at grade -1 with 1-norm <= max_norm."""
    theta = default_theta(xi)

    def point():
        v = [rng.randint(-2, 2) for _ in xi.weights]
        k = xi(v) + 1
        return tuple(x + k * t for x, t in zip(v, theta))

    def entry():
        norm = rng.randint(0, max_norm)
        terms = []
        while norm:
            c = rng.randint(1, norm)
            norm -= c
            terms.append((point(), rng.choice((c, -c))))
        return LaurentElement(terms, rank=xi.rank)

    return [[entry() for _ in range(size)] for _ in range(size)]


def main(cfg: Config) -> None:
    rng = random.Random(cfg.seed)
    worst = {}
    violations = 0
    for _ in range(cfg.trials):
        xi = random_form(rng, rng.randint(1, cfg.max_rank))
        size = rng.randint(1, cfg.max_size)
        A = random_level_matrix(rng, xi, size, cfg.max_norm)
        base = size * mx.matrix_norm(A)
        for row in geometric_series(A, xi, -cfg.levels):
            for e in row:
                sums = level_sums(e.terms, xi)
                for k in range(1, cfg.levels + 1):
                    s, b = sums.get(-k, 0), base ** k
                    if s > b:
                        violations += 1
                    if b:
                        worst[k] = max(worst.get(k, Fraction(0)), Fraction(s, b))
    print(f"violations: {violations}")
    print(" k  max level sum / bound")
    for k in sorted(worst):
        print(f"{k:2d}  {float(worst[k]):.4f}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--trials", type=int, default=Config.trials)
    p.add_argument("--levels", type=int, default=Config.levels)
    p.add_argument("--seed", type=int, default=Config.seed)
    a = p.parse_args()
    main(Config(trials=a.trials, levels=a.levels, seed=a.seed))

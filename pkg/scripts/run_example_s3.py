"""Coefficients of the surface example, their recurrence, the closed form,
and the asymptotic growth rate fitted from the tail."""
import argparse
import math
from dataclasses import dataclass

from novikov_kit.complex import builtin_example_s3, incidence_series
from novikov_kit.group_ring import format_element
from novikov_kit.novikov_series import growth_fit, growth_profile


@dataclass
class Config:
    depth: int = 30
    tail_from: int = -10


def main(cfg: Config) -> None:
    sys, rep = builtin_example_s3(cfg.depth)
    for row in rep.rows:
        cf = "" if row.closed is None else f"{float(row.closed) + 0.0:.6g}"
        print(f"{row.k:3d} {row.n:>18d} {cf:>16}")
    print("recurrence holds:", rep.recurrence_ok)
    print("max relative error:", f"{rep.max_rel_error:.2e}")
    rp = rep.closed_form_presentation
    print(f"closed form: t^{rp.shift[0]} ({format_element(rp.P)}) / ({format_element(rp.Q)})")

    prof = growth_profile(incidence_series(sys, "x", "y", -cfg.depth), cfg.depth)
    fit = growth_fit(prof, cfg.tail_from)
    target = math.log((3 + math.sqrt(5)) / 2)
    print(f"fitted B = {fit.B:.6f}, ln((3+sqrt5)/2) = {target:.6f}")


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--depth", type=int, default=Config.depth)
    p.add_argument("--tail-from", type=int, default=Config.tail_from)
    a = p.parse_args()
    main(Config(a.depth, a.tail_from))

#!/usr/bin/env python3
"""Empirical uniform-continuity moduli of the built-in triangle operations.

For each operation and each target eps, reports the largest tested eta such
that perturbations within eta of the unit step at 0 moved no sampled
function by eps or more.  These are sampled estimates, not certificates.

Usage: python scripts/modulus_sweep.py [--seed 1] [--budget 200]
"""

import argparse
import random

from pmspace import STAR_LUKA, STAR_MIN, STAR_PROD, estimate_modulus, random_step_cdf


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--budget", type=int, default=200)
    args = ap.parse_args()

    stars = [("min", STAR_MIN), ("prod", STAR_PROD), ("luka", STAR_LUKA)]
    eps_grid = (0.5, 0.2, 0.1, 0.05, 0.02)
    print(f"{'star':<6}" + "".join(f"eps={e:<9}" for e in eps_grid))
    for name, star in stars:
        row = [f"{name:<6}"]
        for eps in eps_grid:
            rng = random.Random(f"modulus:{args.seed}:{name}:{eps}")
            est = estimate_modulus(
                star, eps, lambda: random_step_cdf(rng), budget=args.budget
            )
            row.append(f"{est.eta:<13.4g}")
        print("".join(row))
    print(f"(each entry backed by {2 * args.budget} draws)")


if __name__ == "__main__":
    main()

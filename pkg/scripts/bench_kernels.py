"""Time the counting kernels against box size and number of generators."""
import argparse
import time

import numpy as np

from mixedmult.monomial import colength, power
from mixedmult.multiplicities import IdealTuple, mixed_multiplicities
from mixedmult.suite import random_ideal, random_primary_ideal


def timed(fn):
    t0 = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)
    for n in (2, 3, 4):
        I = random_primary_ideal(rng, n, 4, extra=3)
        for t in (2, 4, 8):
            best = min(timed(lambda: colength(power(I, t)))[1] for _ in range(args.repeat))
            print(f"colength  n={n} t={t:<2} gens={len(power(I, t).gens):<4} {best * 1e3:8.2f} ms")
    for n in (2, 3):
        I = random_primary_ideal(rng, n, 3, extra=1)
        J = random_ideal(rng, n, 2, 3)
        mm, dt = timed(lambda: mixed_multiplicities(IdealTuple(I, [J])))
        print(f"mixed     n={n} e={mm.as_list()} {dt * 1e3:8.2f} ms")


if __name__ == "__main__":
    main()

"""Empirical probe of an Alexandroff-Fenchel type inequality for non-primary ideals.

For (m | J_1, J_2) in k[x, y, z] it compares e_(r-2,1,1)^2 with
e_(r-2,2,0) * e_(r-2,0,2) on random monomial ideals and tallies the outcomes.
Nothing is asserted; the counts are printed.
"""
import argparse
import json

import numpy as np

from mixedmult.multiplicities import IdealTuple, mixed_multiplicities
from mixedmult.monomial import format_ideal
from mixedmult.suite import random_ideal


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--count", type=int, default=20)
    ap.add_argument("--vars", type=int, default=3)
    ap.add_argument("--json", action="store_true", help="print every instance as JSON")
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    tally = {"holds": 0, "fails": 0, "degenerate": 0}
    rows = []
    for _ in range(args.count):
        J1 = random_ideal(rng, args.vars, 2, 3)
        J2 = random_ideal(rng, args.vars, 2, 3)
        T = IdealTuple(J1.ring.maximal(), [J1, J2])
        mm = mixed_multiplicities(T)
        r = mm.total_degree
        if r < 2:
            tally["degenerate"] += 1
            continue
        mid, a, b = mm[(r - 2, 1, 1)], mm[(r - 2, 2, 0)], mm[(r - 2, 0, 2)]
        key = "holds" if mid * mid >= a * b else "fails"
        tally[key] += 1
        rows.append({"J1": format_ideal(J1), "J2": format_ideal(J2), "mixed": mid, "left": a, "right": b, "outcome": key})
    if args.json:
        print(json.dumps(rows, indent=2))
    print(json.dumps(tally, sort_keys=True))


if __name__ == "__main__":
    main()

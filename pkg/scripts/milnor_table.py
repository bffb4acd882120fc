"""Print mu* for Brieskorn singularities x_0^{a_0} + ... + x_n^{a_n}."""
import argparse
import itertools

from mixedmult.multiplicities import milnor_sequence


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--vars", type=int, default=3, help="number of variables n + 1")
    ap.add_argument("--max", type=int, default=4, help="largest exponent")
    args = ap.parse_args()
    for a in itertools.combinations_with_replacement(range(2, args.max + 1), args.vars):
        ms = milnor_sequence(a)
        print(f"{a}: mu* = {ms.star}")


if __name__ == "__main__":
    main()

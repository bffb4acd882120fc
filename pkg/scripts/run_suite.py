"""Run the randomized identity suite for a range of seeds and summarize failures."""
import argparse
import time

from mixedmult.suite import run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seeds", type=int, nargs="+", default=[0])
    ap.add_argument("--size", choices=("small", "full"), default="full")
    ap.add_argument("--no-ehrhart-check", action="store_true")
    args = ap.parse_args()
    bad_total = 0
    for seed in args.seeds:
        t0 = time.perf_counter()
        ledger = run_suite(seed, args.size, ehrhart_check=not args.no_ehrhart_check)
        bad = [c for c in ledger.checks if not c.passed]
        bad_total += len(bad)
        print(f"seed {seed}: {len(ledger.checks)} checks, {len(bad)} failed, {time.perf_counter() - t0:.1f}s")
        for c in bad:
            print(f"  FAIL {c.name} ({c.anchor}) {c.detail}")
    return 1 if bad_total else 0


if __name__ == "__main__":
    raise SystemExit(main())

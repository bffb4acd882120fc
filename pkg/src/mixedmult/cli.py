"""Command line entry point: ``mixedmult <command> [--job FILE] ...``.

Exit codes: 0 success, 1 input error, 2 inconclusive fit, 3 invariant failure.
"""
from __future__ import annotations

import argparse
import json
import sys

from .errors import MixedMultError, UnstableRegion
from .jobs import COMMANDS, parse_job
from .runner import Report, RunOptions, run


def emit(report: Report, fmt: str = "json") -> bytes:
    if fmt == "json":
        return (json.dumps(report.to_json(), sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode("utf-8")
    lines = [f"[{report.command}]"]
    lines.extend(report.text)
    for c in report.checks:
        lines.append(f"{'PASS' if c.passed else 'FAIL'}  {c.name}  ({c.anchor})")
    lines.append("status: " + ("pass" if report.passed else "fail"))
    return ("\n".join(lines) + "\n").encode("utf-8")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mixedmult", description="Exact Hilbert polynomials, mixed multiplicities and mixed volumes.")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--job", help="JSON job file, or - for stdin")
    ap.add_argument("--box", type=int, help="largest region offset tried by the fitter")
    ap.add_argument("--format", choices=("json", "text"), default="json")
    ap.add_argument("--seed", type=int, help="seed for the random instances of suite")
    ap.add_argument("--no-ehrhart-check", action="store_true", help="skip the Ehrhart cross-check of volumes")
    return ap


def _load(args) -> dict:
    if args.job is None:
        if args.command != "suite":
            raise MixedMultError(f"{args.command} needs --job")
        return {"command": "suite"}
    if args.job == "-":
        text = sys.stdin.read()
    else:
        with open(args.job, encoding="utf-8") as fh:
            text = fh.read()
    return text


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    out = sys.stdout.buffer
    try:
        job = parse_job(_load(args))
        if job.command != args.command:
            raise MixedMultError(f"command: job says {job.command!r}, command line says {args.command!r}")
        opts = RunOptions(box=args.box, seed=args.seed, ehrhart_check=not args.no_ehrhart_check)
        report = run(job, opts)
    except UnstableRegion as exc:
        region = exc.region.to_json() if hasattr(exc.region, "to_json") else exc.region
        detail = {"error": "inconclusive fit", "message": str(exc), "point": exc.point, "region": region}
        sys.stderr.write(json.dumps(detail, sort_keys=True, default=str) + "\n")
        return exc.exit_code
    except MixedMultError as exc:
        sys.stderr.write(f"mixedmult: {type(exc).__name__}: {exc}\n")
        return exc.exit_code
    except OSError as exc:
        sys.stderr.write(f"mixedmult: {exc}\n")
        return 1
    out.write(emit(report, args.format))
    out.flush()
    return 0 if report.passed else 3


if __name__ == "__main__":
    sys.exit(main())
